/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geez/image.hpp"

#include <optional>

namespace geez {

struct DenoiseParams
{
	int window = 3;                         ///< odd, >= 3
	std::optional<double> noise_variance;   ///< estimated from the image when empty
};

struct Threshold
{
	double value = 0.0;
};

/**
 * Local-statistics adaptive filter:
 *
 *   out = mu + max(var - nu2, 0) / max(var, nu2, eps) * (x - mu)
 *
 * with mu/var taken over a window x window neighbourhood (borders mirrored,
 * edge pixel repeated) and nu2 the noise variance. When nu2 is not given it
 * is the mean of all local variances. Results are rounded and clamped.
 */
GrayImage adaptive_denoise(GrayImage const& img, DenoiseParams const& params);

/// Local mean and variance maps used by adaptive_denoise.
struct LocalStats
{
	Eigen::MatrixXd mean;
	Eigen::MatrixXd variance;
};

LocalStats local_statistics(GrayImage const& img, int window);

/**
 * Ridler-Calvard (Isodata) global threshold. Starts at the global mean and
 * iterates T <- (mean(x <= T) + mean(x > T)) / 2 until the update moves by
 * at most 0.5, capped at 100 iterations. Returns the current T unchanged if
 * either class is empty.
 */
Threshold isodata_threshold(GrayImage const& img);

/// Pixels with intensity <= t become foreground (dark ink).
BinaryImage binarize(GrayImage const& img, Threshold t);

} // namespace geez
