/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geez/image.hpp"

namespace geez {

/// Value assumed for pixels outside the raster.
enum class Border { background, foreground };

/**
 * Dilation by a rectangular structuring element. Output pixel p is set iff
 * a foreground pixel lies in the SE window placed with its origin on p,
 * i.e. rows [p.r - origin_row, p.r - origin_row + rows) and likewise for
 * columns. Runs as a 1 x cols pass followed by a rows x 1 pass, both
 * word-parallel over the packed rows. Outside pixels are background.
 */
BinaryImage dilate_rect(BinaryImage const& img, StructuringElement const& se);

/**
 * Erosion by a rectangular structuring element: p is set iff the whole SE
 * window placed on p is foreground. The default foreground border makes
 * erode(X) == complement(dilate(complement(X))) hold exactly and keeps
 * closing extensive; Border::background reproduces the strict variant in
 * which windows overlapping the edge are rejected.
 */
BinaryImage erode_rect(BinaryImage const& img, StructuringElement const& se, Border outside = Border::foreground);

/// Dilation followed by erosion with the same element.
BinaryImage close_rect(BinaryImage const& img, StructuringElement const& se);

/// Removes 8-connected components with fewer than `min_area` pixels.
BinaryImage area_open(BinaryImage const& img, long long min_area);

/// Zhang-Suen two-subcycle thinning, repeated until nothing changes.
BinaryImage thin(BinaryImage const& img);

} // namespace geez
