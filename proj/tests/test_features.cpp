/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include "geez/error.hpp"
#include "geez/features.hpp"
#include "geez/morphology.hpp"

#include <doctest.h>

#include <cmath>

using namespace geez;

namespace {

BinaryImage
rect(int w, int h, int row, int col, int rh, int rw)
{
	BinaryImage img(w, h);
	for (int r = row; r < row + rh; ++r) {
		for (int c = col; c < col + rw; ++c) {
			img.set(r, c, true);
		}
	}
	return img;
}

BinaryImage
translated(oracle::Grid const& g, int side, int dr, int dc)
{
	BinaryImage img(side, side);
	for (size_t r = 0; r < g.size(); ++r) {
		for (size_t c = 0; c < g[r].size(); ++c) {
			if (g[r][c]) {
				img.set(static_cast<int>(r) + dr, static_cast<int>(c) + dc, true);
			}
		}
	}
	return img;
}

int
holes_by_flood(oracle::Grid const& g)
{
	int const h = static_cast<int>(g.size()), w = static_cast<int>(g[0].size());
	oracle::Grid bg(h, std::vector<std::uint8_t>(w));
	for (int r = 0; r < h; ++r) {
		for (int c = 0; c < w; ++c) {
			bg[r][c] = g[r][c] ? 0 : 1;
		}
	}
	int count = 0;
	auto const lab = oracle::flood_labels(bg, false, count);
	std::vector<bool> border(count + 1, false);
	for (int r = 0; r < h; ++r) {
		border[lab[r][0]] = border[lab[r][w - 1]] = true;
	}
	for (int c = 0; c < w; ++c) {
		border[lab[0][c]] = border[lab[h - 1][c]] = true;
	}
	int holes = 0;
	for (int l = 1; l <= count; ++l) {
		holes += border[l] ? 0 : 1;
	}
	return holes;
}

} // namespace

TEST_CASE("default layout has 240 dimensions")
{
	FeatureConfig const cfg;
	FeatureLayout const layout = feature_layout(cfg);
	CHECK(feature_dimension(layout) == 25 + 25 + 7 + 1 + 1 + 2 + 1 + 144 + 1 + 1 + 32);
	CHECK(feature_dimension(layout) == 240);
	CHECK(hog_length(32, cfg.hog) == 144);
	int offset = 0;
	for (auto const& g : layout) {
		CHECK(g.offset == offset);
		offset += g.length;
	}

	FeatureConfig large;
	large.zones = 7;
	large.hog.cell_px = 4;
	CHECK(feature_dimension(feature_layout(large)) == 49 + 49 + 7 + 1 + 1 + 2 + 1 + 576 + 1 + 1 + 32);

	FeatureConfig bad;
	bad.norm_side = 30;
	CHECK_THROWS_AS(feature_layout(bad), ParameterError);
}

TEST_CASE("zoning")
{
	CHECK(zoning(BinaryImage(10, 10, true), 5) == Eigen::VectorXd::Ones(25));
	CHECK(zoning(BinaryImage(10, 10), 5) == Eigen::VectorXd::Zero(25));
	BinaryImage const quad = rect(4, 4, 0, 0, 2, 2);
	CHECK(zoning(quad, 2) == Eigen::Vector4d(1, 0, 0, 0));
	CHECK(zoning_density(quad, 2) == Eigen::Vector4d(1, 0, 0, 0));
	CHECK(zoning_density(BinaryImage(8, 8, true), 4) == Eigen::VectorXd::Constant(16, 1.0 / 16));
	CHECK_THROWS_AS(zoning(quad, 5), ParameterError);

	Rng rng(6);
	for (int i = 0; i < 30; ++i) {
		int const side = rng.range(8, 40), z = rng.range(1, 7);
		oracle::Grid const g = oracle::random_grid(rng, side, side, 0.3);
		Eigen::VectorXd const d = zoning_density(pack(g), z);
		Eigen::VectorXd const occ = zoning(pack(g), z);
		int const step = side / z;
		double total = 0;
		std::vector<double> counts(z * z, 0.0), areas(z * z, 0.0);
		for (int r = 0; r < side; ++r) {
			for (int c = 0; c < side; ++c) {
				int const k = std::min(r / step, z - 1) * z + std::min(c / step, z - 1);
				counts[k] += g[r][c];
				areas[k] += 1;
				total += g[r][c];
			}
		}
		if (total > 0) {
			REQUIRE(std::abs(d.sum() - 1.0) <= 1e-9);
		}
		for (int k = 0; k < z * z; ++k) {
			REQUIRE(d(k) == doctest::Approx(total > 0 ? counts[k] / total : 0.0).epsilon(1e-12));
			REQUIRE(occ(k) == doctest::Approx(counts[k] / areas[k]).epsilon(1e-12));
		}
	}
}

TEST_CASE("hu moments")
{
	CHECK(hu_moments(BinaryImage(5, 5)).isZero());

	oracle::Grid const l_shape{{1, 0}, {1, 1}};
	auto const ref = oracle::hu_by_raw_moments(l_shape);
	auto const phi = hu_moments(pack(l_shape));
	for (int k = 0; k < 7; ++k) {
		CHECK(phi(k) == doctest::Approx(ref[k]).epsilon(1e-12));
	}

	Rng rng(14);
	for (int i = 0; i < 50; ++i) {
		oracle::Grid const g = oracle::random_blob(rng, 16, 16, 50);
		auto const a = hu_moments(translated(g, 40, 0, 0));
		auto const b = hu_moments(translated(g, 40, rng.range(0, 24), rng.range(0, 24)));
		REQUIRE(a.allFinite());
		REQUIRE((a - b).cwiseAbs().maxCoeff() <= 1e-9);
		auto const r = oracle::hu_by_raw_moments(g);
		for (int k = 0; k < 7; ++k) {
			REQUIRE(std::abs(a(k) - r[k]) <= 1e-9 * std::max(1.0, std::abs(r[k])));
		}
	}
}

TEST_CASE("euler number")
{
	CHECK(euler_number(rect(9, 9, 2, 2, 5, 5)) == 1);
	BinaryImage ring = rect(9, 9, 2, 2, 5, 5);
	for (int r = 3; r <= 5; ++r) {
		for (int c = 3; c <= 5; ++c) {
			ring.set(r, c, false);
		}
	}
	CHECK(euler_number(ring) == 0);
	BinaryImage two = rect(12, 6, 1, 1, 3, 3);
	two.set(2, 8, true);
	CHECK(euler_number(two) == 2);

	Rng rng(15);
	for (int i = 0; i < 40; ++i) {
		oracle::Grid const g = oracle::random_grid(rng, rng.range(3, 40), rng.range(3, 40), rng.uniform());
		int objects = 0;
		oracle::flood_labels(g, true, objects);
		REQUIRE(euler_number(pack(g)) == objects - holes_by_flood(g));
		REQUIRE(component_count(pack(g)) == objects);
	}
}

TEST_CASE("skeleton area, centroid and extent")
{
	CHECK(skeleton_area(BinaryImage(8, 8)) == 0.0);
	CHECK(skeleton_area(rect(10, 10, 4, 1, 1, 7)) == 7.0 / 100.0);
	BinaryImage const sq = rect(12, 12, 3, 3, 6, 6);
	CHECK(skeleton_area(sq) == static_cast<double>(foreground_count(thin(sq))) / 144.0);

	BinaryImage px(10, 8);
	px.set(3, 5, true);
	CHECK(centroid(px) == Eigen::Vector2d(3.0 / 8, 5.0 / 10));
	CHECK(centroid(BinaryImage(4, 4)) == Eigen::Vector2d::Zero());
	CHECK(centroid(rect(11, 11, 2, 2, 7, 7)) == Eigen::Vector2d(5.0 / 11, 5.0 / 11));
	BinaryImage const l = pack(oracle::Grid{{1, 0, 0}, {1, 0, 0}, {1, 1, 1}});
	CHECK(centroid(l)(0) == doctest::Approx((0 + 1 + 2 + 2 + 2) / 5.0 / 3));
	CHECK(centroid(l)(1) == doctest::Approx((0 + 0 + 0 + 1 + 2) / 5.0 / 3));

	CHECK(extent(rect(10, 10, 2, 3, 4, 5)) == 1.0);
	CHECK(extent(pack(oracle::Grid{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == doctest::Approx(1.0 / 3));
	CHECK(extent(BinaryImage(3, 3)) == 0.0);
}

TEST_CASE("eccentricity")
{
	CHECK(eccentricity(rect(10, 10, 4, 1, 1, 7)) == 1.0);
	CHECK(eccentricity(rect(10, 10, 2, 2, 5, 5)) == 0.0);
	oracle::Grid const block{{1, 1, 1, 1}, {1, 1, 1, 1}};
	CHECK(eccentricity(pack(block)) == doctest::Approx(oracle::eigen_eccentricity(block)).epsilon(1e-12));
	// Hand covariance of a 2x4 block: var(x) = 5/4, var(y) = 1/4, cov = 0.
	CHECK(eccentricity(pack(block)) == doctest::Approx(std::sqrt(1.0 - 0.25 / 1.25)));

	Rng rng(16);
	for (int i = 0; i < 40; ++i) {
		oracle::Grid const g = oracle::random_blob(rng, 24, 24, rng.range(5, 80));
		REQUIRE(std::abs(eccentricity(pack(g)) - oracle::eigen_eccentricity(g)) <= 1e-9);
	}
}

TEST_CASE("hog")
{
	HogConfig const cfg;
	CHECK(hog(BinaryImage(32, 32), cfg).isZero());
	CHECK(hog(BinaryImage(32, 32, true), cfg).isZero());
	CHECK_THROWS_AS(hog(BinaryImage(30, 30), cfg), ParameterError);
	CHECK_THROWS_AS(hog(BinaryImage(32, 16), cfg), ParameterError);

	// Vertical step between columns 7 and 8: gx = 1 at columns 7 and 8, so
	// each of the four cells gets magnitude 8 in bin 0 and the block
	// normalizes to 0.5 per cell.
	Eigen::VectorXd const step = hog(rect(16, 16, 0, 8, 16, 8), cfg);
	REQUIRE(step.size() == 36);
	for (int k = 0; k < 36; ++k) {
		CHECK(step(k) == (k % 9 == 0 ? 0.5 : 0.0));
	}

	Rng rng(17);
	for (int i = 0; i < 20; ++i) {
		Eigen::VectorXd const h = hog(oracle::random_image(rng, 32, 32, 0.4), cfg);
		for (int b = 0; b < 4; ++b) {
			double const n = h.segment(b * 36, 36).norm();
			REQUIRE((n == 0.0 || std::abs(n - 1.0) <= 1e-12));
		}
	}
}

TEST_CASE("components and profile")
{
	CHECK(component_count(BinaryImage(5, 5)) == 0);
	CHECK(component_count(pack(oracle::Grid{{1, 0}, {0, 1}})) == 1);
	CHECK(h_profile(BinaryImage(4, 6)).isZero());
	BinaryImage const row = rect(8, 8, 3, 0, 1, 8);
	CHECK(h_profile(row)(3) == 1.0);

	Rng rng(18);
	oracle::Grid const g = oracle::random_grid(rng, 32, 32, 0.3);
	Eigen::VectorXd const p = h_profile(pack(g));
	for (int r = 0; r < 32; ++r) {
		int n = 0;
		for (auto v : g[r]) {
			n += v;
		}
		CHECK(p(r) == n / 32.0);
	}
}

TEST_CASE("assemble")
{
	FeatureConfig const cfg;
	CHECK_THROWS_AS(tight_glyph(BinaryImage(5, 5)), DimensionError);
	CHECK_THROWS_AS(assemble(BinaryImage(5, 5), cfg), DimensionError);

	Rng rng(20);
	oracle::Grid const g = oracle::random_blob(rng, 20, 20, 60);
	SegmentedChar const a = tight_glyph(translated(g, 50, 0, 0));
	SegmentedChar const b = tight_glyph(translated(g, 50, 17, 29));
	GlobalFeatureVector const fa = assemble(a, cfg);
	GlobalFeatureVector const fb = assemble(b, cfg);
	CHECK(fa.values.size() == 240);
	CHECK(fa.layout == feature_layout(cfg));
	CHECK(fa.values == fb.values);
	CHECK(fa.values.allFinite());

	BinaryImage const norm = normalize_glyph(a, 32);
	CHECK(fa.values.segment(0, 25) == zoning(norm, 5));
	CHECK(fa.values.segment(50, 7) == hu_moments(norm));
	CHECK(fa.values.tail(32) == h_profile(norm));
}
