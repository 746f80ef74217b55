/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geez/image.hpp"
#include "geez/segmentation.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace geez {

struct HogConfig
{
	int cell_px = 8;
	int block_cells = 2;
	int block_stride_cells = 2;
	int bins = 9; ///< unsigned orientation, 0..180 degrees

	friend bool operator==(HogConfig const&, HogConfig const&) = default;
};

struct FeatureConfig
{
	int norm_side = 32;
	int zones = 5;
	HogConfig hog;

	/// Throws ParameterError when the geometry is inconsistent.
	void validate() const;

	friend bool operator==(FeatureConfig const&, FeatureConfig const&) = default;
};

struct FeatureGroup
{
	std::string name;
	int offset = 0;
	int length = 0;

	friend bool operator==(FeatureGroup const&, FeatureGroup const&) = default;
};

using FeatureLayout = std::vector<FeatureGroup>;

struct GlobalFeatureVector
{
	Eigen::VectorXd values;
	FeatureLayout layout;
};

/// Group order and lengths for a config. The total is the descriptor dimension.
FeatureLayout feature_layout(FeatureConfig const& cfg);
int feature_dimension(FeatureLayout const& layout);

/// Wraps a whole glyph image as a segment cropped to its foreground box.
SegmentedChar tight_glyph(BinaryImage const& img);

BinaryImage normalize_glyph(SegmentedChar const& glyph, int side);

Eigen::VectorXd zoning(BinaryImage const& img, int zones);
Eigen::VectorXd zoning_density(BinaryImage const& img, int zones);

/// The seven Hu invariants of the foreground indicator (x = column, y = row).
Eigen::Matrix<double, 7, 1> hu_moments(BinaryImage const& img);

/// 8-connected objects minus 4-connected background holes.
int euler_number(BinaryImage const& img);

double skeleton_area(BinaryImage const& img);

/// (mean row / height, mean col / width) of the foreground; (0, 0) when empty.
Eigen::Vector2d centroid(BinaryImage const& img);

/// sqrt(1 - lambda_min / lambda_max) of the coordinate covariance.
double eccentricity(BinaryImage const& img);

Eigen::VectorXd hog(BinaryImage const& img, HogConfig const& cfg);
int hog_length(int side, HogConfig const& cfg);

double extent(BinaryImage const& img);
int component_count(BinaryImage const& img);
Eigen::VectorXd h_profile(BinaryImage const& img);

/// Normalizes the glyph and concatenates all groups in canonical order.
GlobalFeatureVector assemble(SegmentedChar const& glyph, FeatureConfig const& cfg);
GlobalFeatureVector assemble(BinaryImage const& glyph, FeatureConfig const& cfg);

} // namespace geez
