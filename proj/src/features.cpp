/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/features.hpp"
#include "geez/error.hpp"
#include "geez/labeling.hpp"
#include "geez/morphology.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace geez {

void
FeatureConfig::validate() const
{
	if (norm_side < 1) {
		throw ParameterError("norm_side must be positive");
	}
	if (zones < 1 || zones > norm_side) {
		throw ParameterError("zones must be in 1..norm_side");
	}
	if (hog.cell_px < 1 || norm_side % hog.cell_px != 0) {
		throw ParameterError(
			"norm_side " + std::to_string(norm_side) + " is not divisible by hog cell " +
			std::to_string(hog.cell_px)
		);
	}
	if (hog.bins < 2) {
		throw ParameterError("hog bins must be >= 2");
	}
	if (hog.block_cells < 1 || hog.block_cells > norm_side / hog.cell_px) {
		throw ParameterError("hog block does not fit in the cell grid");
	}
	if (hog.block_stride_cells < 1) {
		throw ParameterError("hog block stride must be positive");
	}
}

int
hog_length(int side, HogConfig const& cfg)
{
	int const cells = side / cfg.cell_px;
	int const blocks = (cells - cfg.block_cells) / cfg.block_stride_cells + 1;
	return blocks * blocks * cfg.block_cells * cfg.block_cells * cfg.bins;
}

FeatureLayout
feature_layout(FeatureConfig const& cfg)
{
	cfg.validate();
	int const z2 = cfg.zones * cfg.zones;
	std::pair<char const*, int> const groups[] = {
		{"zoning", z2},
		{"zoning_density", z2},
		{"hu_moments", 7},
		{"euler", 1},
		{"skeleton_area", 1},
		{"centroid", 2},
		{"eccentricity", 1},
		{"hog", hog_length(cfg.norm_side, cfg.hog)},
		{"extent", 1},
		{"component_count", 1},
		{"h_profile", cfg.norm_side},
	};
	FeatureLayout layout;
	int offset = 0;
	for (auto const& [name, len] : groups) {
		layout.push_back({name, offset, len});
		offset += len;
	}
	return layout;
}

int
feature_dimension(FeatureLayout const& layout)
{
	int d = 0;
	for (auto const& g : layout) {
		d += g.length;
	}
	return d;
}

SegmentedChar
tight_glyph(BinaryImage const& img)
{
	BoundingBox const box = foreground_box(img);
	if (box.width == 0) {
		throw DimensionError("glyph image has no foreground");
	}
	return {crop(img, box), box, 0};
}

BinaryImage
normalize_glyph(SegmentedChar const& glyph, int side)
{
	if (glyph.image.empty() || foreground_count(glyph.image) == 0) {
		throw DimensionError("cannot normalize an empty glyph");
	}
	return resize_nearest(glyph.image, side);
}

namespace {

// Row/col range of zone i out of z over n pixels; the last zone takes the remainder.
std::pair<int, int>
zone_span(int i, int z, int n)
{
	int const step = n / z;
	return {i * step, i + 1 == z ? n : (i + 1) * step};
}

Eigen::MatrixXd
zone_counts(BinaryImage const& img, int zones)
{
	if (zones < 1 || zones > img.width() || zones > img.height()) {
		throw ParameterError("zone grid " + std::to_string(zones) + " does not fit the glyph");
	}
	Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(zones, zones);
	for (int zr = 0; zr < zones; ++zr) {
		auto const [r0, r1] = zone_span(zr, zones, img.height());
		for (int zc = 0; zc < zones; ++zc) {
			auto const [c0, c1] = zone_span(zc, zones, img.width());
			for (int r = r0; r < r1; ++r) {
				for (int c = c0; c < c1; ++c) {
					counts(zr, zc) += img.get(r, c) ? 1 : 0;
				}
			}
		}
	}
	return counts;
}

} // namespace

Eigen::VectorXd
zoning(BinaryImage const& img, int zones)
{
	Eigen::MatrixXd const counts = zone_counts(img, zones);
	Eigen::VectorXd out(zones * zones);
	for (int zr = 0; zr < zones; ++zr) {
		auto const [r0, r1] = zone_span(zr, zones, img.height());
		for (int zc = 0; zc < zones; ++zc) {
			auto const [c0, c1] = zone_span(zc, zones, img.width());
			out(zr * zones + zc) = counts(zr, zc) / static_cast<double>((r1 - r0) * (c1 - c0));
		}
	}
	return out;
}

Eigen::VectorXd
zoning_density(BinaryImage const& img, int zones)
{
	Eigen::MatrixXd const counts = zone_counts(img, zones);
	double const total = counts.sum();
	Eigen::VectorXd out = Eigen::VectorXd::Zero(zones * zones);
	if (total == 0) {
		return out;
	}
	for (int zr = 0; zr < zones; ++zr) {
		for (int zc = 0; zc < zones; ++zc) {
			out(zr * zones + zc) = counts(zr, zc) / total;
		}
	}
	return out;
}

Eigen::Matrix<double, 7, 1>
hu_moments(BinaryImage const& img)
{
	Eigen::Matrix<double, 7, 1> phi = Eigen::Matrix<double, 7, 1>::Zero();
	double m00 = 0, m10 = 0, m01 = 0;
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			if (img.get(r, c)) {
				m00 += 1;
				m10 += c;
				m01 += r;
			}
		}
	}
	if (m00 == 0) {
		return phi;
	}
	double const xbar = m10 / m00;
	double const ybar = m01 / m00;

	// mu(p, q) for p + q in 2..3
	Eigen::Matrix4d mu = Eigen::Matrix4d::Zero();
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			if (!img.get(r, c)) {
				continue;
			}
			double const dx = c - xbar;
			double const dy = r - ybar;
			mu(2, 0) += dx * dx;
			mu(0, 2) += dy * dy;
			mu(1, 1) += dx * dy;
			mu(3, 0) += dx * dx * dx;
			mu(0, 3) += dy * dy * dy;
			mu(2, 1) += dx * dx * dy;
			mu(1, 2) += dx * dy * dy;
		}
	}
	auto eta = [&](int p, int q) { return mu(p, q) / std::pow(m00, 1.0 + (p + q) / 2.0); };
	double const n20 = eta(2, 0), n02 = eta(0, 2), n11 = eta(1, 1);
	double const n30 = eta(3, 0), n03 = eta(0, 3), n21 = eta(2, 1), n12 = eta(1, 2);

	double const a = n30 + n12;
	double const b = n21 + n03;
	double const c = n30 - 3 * n12;
	double const d = 3 * n21 - n03;

	phi(0) = n20 + n02;
	phi(1) = (n20 - n02) * (n20 - n02) + 4 * n11 * n11;
	phi(2) = c * c + d * d;
	phi(3) = a * a + b * b;
	phi(4) = c * a * (a * a - 3 * b * b) + d * b * (3 * a * a - b * b);
	phi(5) = (n20 - n02) * (a * a - b * b) + 4 * n11 * a * b;
	phi(6) = d * a * (a * a - 3 * b * b) - c * b * (3 * a * a - b * b);
	return phi;
}

int
euler_number(BinaryImage const& img)
{
	if (img.empty()) {
		return 0;
	}
	int const objects = label_components(img, Connectivity::eight).count;
	LabelMap const bg = label_components(complement(img), Connectivity::four);
	std::vector<char> touches(static_cast<size_t>(bg.count) + 1, 0);
	int const h = img.height(), w = img.width();
	for (int c = 0; c < w; ++c) {
		touches[bg.labels(0, c)] = 1;
		touches[bg.labels(h - 1, c)] = 1;
	}
	for (int r = 0; r < h; ++r) {
		touches[bg.labels(r, 0)] = 1;
		touches[bg.labels(r, w - 1)] = 1;
	}
	int holes = 0;
	for (int l = 1; l <= bg.count; ++l) {
		holes += touches[l] ? 0 : 1;
	}
	return objects - holes;
}

double
skeleton_area(BinaryImage const& img)
{
	if (img.empty()) {
		return 0.0;
	}
	return static_cast<double>(foreground_count(thin(img))) /
	       (static_cast<double>(img.width()) * img.height());
}

Eigen::Vector2d
centroid(BinaryImage const& img)
{
	double n = 0, rs = 0, cs = 0;
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			if (img.get(r, c)) {
				n += 1;
				rs += r;
				cs += c;
			}
		}
	}
	if (n == 0) {
		return Eigen::Vector2d::Zero();
	}
	return {rs / n / img.height(), cs / n / img.width()};
}

double
eccentricity(BinaryImage const& img)
{
	// Integer sums keep symmetric shapes exactly symmetric.
	long long n = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			if (img.get(r, c)) {
				++n;
				sx += c;
				sy += r;
				sxx += static_cast<long long>(c) * c;
				syy += static_cast<long long>(r) * r;
				sxy += static_cast<long long>(c) * r;
			}
		}
	}
	if (n < 2) {
		return 0.0;
	}
	// n^2 * covariance, exact in integers for any realistic glyph size.
	double const a = static_cast<double>(n * sxx - sx * sx);
	double const c = static_cast<double>(n * syy - sy * sy);
	double const b = static_cast<double>(n * sxy - sx * sy);
	double const spread = std::hypot((a - c) / 2.0, b);
	double const lmax = (a + c) / 2.0 + spread;
	if (lmax <= 0) {
		return 0.0;
	}
	// 1 - lmin/lmax == 2 * spread / lmax
	return std::sqrt(std::min(1.0, 2.0 * spread / lmax));
}

Eigen::VectorXd
hog(BinaryImage const& img, HogConfig const& cfg)
{
	int const h = img.height();
	int const w = img.width();
	if (cfg.cell_px < 1 || h % cfg.cell_px != 0 || w % cfg.cell_px != 0 || h != w) {
		throw ParameterError("hog needs a square image whose side is divisible by the cell size");
	}
	if (cfg.bins < 2 || cfg.block_stride_cells < 1 || cfg.block_cells < 1 || cfg.block_cells > w / cfg.cell_px) {
		throw ParameterError("invalid hog block geometry");
	}
	int const cells = w / cfg.cell_px;
	Eigen::MatrixXd hist = Eigen::MatrixXd::Zero(cells * cells, cfg.bins);
	double const bin_width = 180.0 / cfg.bins;

	auto px = [&](int r, int c) {
		r = std::clamp(r, 0, h - 1);
		c = std::clamp(c, 0, w - 1);
		return img.get(r, c) ? 1.0 : 0.0;
	};
	for (int r = 0; r < h; ++r) {
		for (int c = 0; c < w; ++c) {
			double const gx = px(r, c + 1) - px(r, c - 1);
			double const gy = px(r + 1, c) - px(r - 1, c);
			double const mag = std::hypot(gx, gy);
			if (mag == 0) {
				continue;
			}
			double angle = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
			if (angle < 0) {
				angle += 180.0;
			}
			if (angle >= 180.0) {
				angle -= 180.0;
			}
			// Bin b is centred on b * bin_width; vote split between the two nearest centres.
			double const pos = angle / bin_width;
			int const lo = static_cast<int>(std::floor(pos)) % cfg.bins;
			int const hi = (lo + 1) % cfg.bins;
			double const frac = pos - std::floor(pos);
			int const cell = (r / cfg.cell_px) * cells + c / cfg.cell_px;
			hist(cell, lo) += mag * (1.0 - frac);
			hist(cell, hi) += mag * frac;
		}
	}

	int const blocks = (cells - cfg.block_cells) / cfg.block_stride_cells + 1;
	int const block_len = cfg.block_cells * cfg.block_cells * cfg.bins;
	Eigen::VectorXd out(blocks * blocks * block_len);
	for (int by = 0; by < blocks; ++by) {
		for (int bx = 0; bx < blocks; ++bx) {
			auto block = out.segment((by * blocks + bx) * block_len, block_len);
			int k = 0;
			for (int cy = 0; cy < cfg.block_cells; ++cy) {
				for (int cx = 0; cx < cfg.block_cells; ++cx) {
					int const cell = (by * cfg.block_stride_cells + cy) * cells + bx * cfg.block_stride_cells + cx;
					block.segment(k, cfg.bins) = hist.row(cell).transpose();
					k += cfg.bins;
				}
			}
			double const norm = block.norm();
			if (norm > 0) {
				block /= norm;
			}
		}
	}
	return out;
}

double
extent(BinaryImage const& img)
{
	BoundingBox const box = foreground_box(img);
	if (box.width == 0) {
		return 0.0;
	}
	return static_cast<double>(foreground_count(img)) / static_cast<double>(box.area());
}

int
component_count(BinaryImage const& img)
{
	return label_components(img).count;
}

Eigen::VectorXd
h_profile(BinaryImage const& img)
{
	Eigen::VectorXd out(img.height());
	for (int r = 0; r < img.height(); ++r) {
		long long n = 0;
		for (auto const w : img.row(r)) {
			n += std::popcount(w);
		}
		out(r) = static_cast<double>(n) / img.width();
	}
	return out;
}

GlobalFeatureVector
assemble(BinaryImage const& glyph, FeatureConfig const& cfg)
{
	FeatureLayout layout = feature_layout(cfg);
	BinaryImage const img = normalize_glyph({glyph, {0, 0, glyph.width(), glyph.height()}, 0}, cfg.norm_side);

	Eigen::VectorXd v(feature_dimension(layout));
	auto put = [&](int group, auto const& values) {
		v.segment(layout[group].offset, layout[group].length) = values;
	};
	auto scalar = [](double x) { return Eigen::Matrix<double, 1, 1>::Constant(x); };

	put(0, zoning(img, cfg.zones));
	put(1, zoning_density(img, cfg.zones));
	put(2, hu_moments(img));
	put(3, scalar(euler_number(img)));
	put(4, scalar(skeleton_area(img)));
	put(5, centroid(img));
	put(6, scalar(eccentricity(img)));
	put(7, hog(img, cfg.hog));
	put(8, scalar(extent(img)));
	put(9, scalar(component_count(img)));
	put(10, h_profile(img));
	return {std::move(v), std::move(layout)};
}

GlobalFeatureVector
assemble(SegmentedChar const& glyph, FeatureConfig const& cfg)
{
	return assemble(glyph.image, cfg);
}

} // namespace geez
