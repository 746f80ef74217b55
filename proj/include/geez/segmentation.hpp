/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geez/image.hpp"
#include "geez/labeling.hpp"

#include <optional>
#include <vector>

namespace geez {

/// A glyph cut out of a page, with its box in page coordinates.
struct SegmentedChar
{
	BinaryImage image;
	BoundingBox source_box;
	int order_index = 0;
};

struct SegmenterConfig
{
	long long min_area = 8;
	double se_scale = 0.25;
	std::optional<StructuringElement> se_override;
};

/// Plain bounding-box segmentation: area-open, label, crop every component.
std::vector<SegmentedChar> segment_plain(BinaryImage const& img, long long min_area);

/// SE sized to `scale` times the mean component box (rows from heights, cols from widths).
StructuringElement estimate_se(std::vector<BoundingBox> const& boxes, double scale);

/**
 * Modified bounding-box segmentation. The area-opened page is closed with a
 * rectangle (dilate then erode) so strokes separated by small gaps join,
 * the closed image is labeled, and each label's box is cropped out of the
 * area-opened page (not the closed one). Segments come back in label order.
 */
std::vector<SegmentedChar> segment_modified(BinaryImage const& img, SegmenterConfig const& cfg);

/**
 * Groups segments into text lines (two boxes share a line when their row
 * ranges overlap by at least half the shorter height, closed transitively),
 * orders lines top to bottom by mean centre row and glyphs left to right,
 * then renumbers order_index.
 */
std::vector<SegmentedChar> order_reading(std::vector<SegmentedChar> segs);

} // namespace geez
