/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/preprocess.hpp"
#include "geez/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace geez {

namespace {

constexpr double variance_floor = 1e-12;

int
mirror(int i, int n)
{
	int const period = 2 * n;
	i %= period;
	if (i < 0) {
		i += period;
	}
	return i < n ? i : period - 1 - i;
}

} // namespace

LocalStats
local_statistics(GrayImage const& img, int window)
{
	if (window < 3 || window % 2 == 0) {
		throw ParameterError("denoise window must be odd and >= 3, got " + std::to_string(window));
	}
	int const h = img.height();
	int const w = img.width();
	int const half = window / 2;
	double const n = static_cast<double>(window) * window;

	// Horizontal then vertical running sums over the mirrored image.
	Eigen::MatrixXd row_sum(h, w), row_sq(h, w);
	for (int r = 0; r < h; ++r) {
		for (int c = 0; c < w; ++c) {
			double s = 0, s2 = 0;
			for (int k = -half; k <= half; ++k) {
				double const v = img(r, mirror(c + k, w));
				s += v;
				s2 += v * v;
			}
			row_sum(r, c) = s;
			row_sq(r, c) = s2;
		}
	}
	LocalStats stats{Eigen::MatrixXd(h, w), Eigen::MatrixXd(h, w)};
	for (int r = 0; r < h; ++r) {
		for (int c = 0; c < w; ++c) {
			double s = 0, s2 = 0;
			for (int k = -half; k <= half; ++k) {
				int const rr = mirror(r + k, h);
				s += row_sum(rr, c);
				s2 += row_sq(rr, c);
			}
			double const mu = s / n;
			stats.mean(r, c) = mu;
			stats.variance(r, c) = std::max(0.0, s2 / n - mu * mu);
		}
	}
	return stats;
}

GrayImage
adaptive_denoise(GrayImage const& img, DenoiseParams const& params)
{
	if (params.noise_variance && *params.noise_variance < 0) {
		throw ParameterError("noise variance must be nonnegative");
	}
	LocalStats const stats = local_statistics(img, params.window);
	double const nu2 = params.noise_variance ? *params.noise_variance : stats.variance.mean();

	GrayImage out(img.width(), img.height());
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			double const mu = stats.mean(r, c);
			double const var = stats.variance(r, c);
			double const gain = std::max(var - nu2, 0.0) / std::max({var, nu2, variance_floor});
			double const v = mu + gain * (img(r, c) - mu);
			out(r, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
		}
	}
	return out;
}

Threshold
isodata_threshold(GrayImage const& img)
{
	std::array<long long, 256> hist{};
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			++hist[img(r, c)];
		}
	}
	long long total = 0;
	double sum = 0;
	for (int v = 0; v < 256; ++v) {
		total += hist[v];
		sum += static_cast<double>(v) * hist[v];
	}
	double t = sum / static_cast<double>(total);

	for (int iter = 0; iter < 100; ++iter) {
		long long n_lo = 0;
		double s_lo = 0;
		for (int v = 0; v < 256 && v <= t; ++v) {
			n_lo += hist[v];
			s_lo += static_cast<double>(v) * hist[v];
		}
		long long const n_hi = total - n_lo;
		if (n_lo == 0 || n_hi == 0) {
			return {t};
		}
		double const next = (s_lo / n_lo + (sum - s_lo) / n_hi) / 2.0;
		if (std::abs(next - t) <= 0.5) {
			// t itself satisfies the fixed-point condition within 0.5
			return {t};
		}
		t = next;
	}
	return {t};
}

BinaryImage
binarize(GrayImage const& img, Threshold t)
{
	BinaryImage out(img.width(), img.height());
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			if (img(r, c) <= t.value) {
				out.set(r, c, true);
			}
		}
	}
	return out;
}

} // namespace geez
