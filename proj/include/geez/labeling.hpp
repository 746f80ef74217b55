/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geez/image.hpp"

#include <vector>

namespace geez {

enum class Connectivity { four, eight };

/**
 * Two-pass union-find labeling of foreground pixels. Labels are 1..count,
 * assigned in raster order of each component's first pixel. With the
 * default 8-connectivity, pixels touching only at a corner are joined.
 */
LabelMap label_components(BinaryImage const& img, Connectivity conn = Connectivity::eight);

/// Box k-1 is the tight box of label k.
std::vector<BoundingBox> component_boxes(LabelMap const& map);

/// Pixel count per label; index 0 holds the background count.
std::vector<long long> component_areas(LabelMap const& map);

} // namespace geez
