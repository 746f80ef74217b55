/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include "geez/labeling.hpp"

#include <doctest.h>

using namespace geez;

TEST_CASE("corner touching pixels form one component")
{
	BinaryImage const img = pack(oracle::Grid{{1, 0}, {0, 1}});
	CHECK(label_components(img).count == 1);
	CHECK(label_components(img, Connectivity::four).count == 2);
	CHECK(label_components(BinaryImage(5, 5)).count == 0);
}

TEST_CASE("labels follow raster order of first pixel")
{
	BinaryImage const img = pack(oracle::Grid{{0, 0, 1}, {1, 0, 1}, {1, 0, 0}});
	LabelMap const map = label_components(img);
	CHECK(map.count == 2);
	CHECK(map.labels(0, 2) == 1);
	CHECK(map.labels(1, 0) == 2);
}

TEST_CASE("labeling matches flood fill")
{
	Rng rng(31);
	for (int i = 0; i < 60; ++i) {
		int const w = rng.range(1, 140), h = rng.range(1, 60);
		double const density = 0.1 + 0.8 * rng.uniform();
		oracle::Grid const g = oracle::random_grid(rng, w, h, density);
		for (bool eight : {true, false}) {
			int count = 0;
			auto const ref = oracle::flood_labels(g, eight, count);
			LabelMap const map = label_components(pack(g), eight ? Connectivity::eight : Connectivity::four);
			REQUIRE(map.count == count);
			// Raster-order numbering makes the labels themselves equal, not just the partition.
			for (int r = 0; r < h; ++r) {
				for (int c = 0; c < w; ++c) {
					REQUIRE(map.labels(r, c) == ref[r][c]);
				}
			}
		}
	}
}

TEST_CASE("component boxes and areas match a pixel scan")
{
	BinaryImage single(10, 6);
	single.set(4, 7, true);
	CHECK(component_boxes(label_components(single)).at(0) == BoundingBox{7, 4, 1, 1});

	BinaryImage span(10, 6);
	for (int r = 2; r <= 4; ++r) {
		for (int c = 3; c <= 7; ++c) {
			span.set(r, c, true);
		}
	}
	CHECK(component_boxes(label_components(span)).at(0) == BoundingBox{3, 2, 5, 3});

	Rng rng(8);
	for (int i = 0; i < 30; ++i) {
		BinaryImage const img = oracle::random_image(rng, rng.range(1, 100), rng.range(1, 50), 0.3);
		LabelMap const map = label_components(img);
		std::vector<BoundingBox> const boxes = component_boxes(map);
		std::vector<long long> const areas = component_areas(map);
		REQUIRE(static_cast<int>(boxes.size()) == map.count);
		std::vector<int> r0(map.count + 1, 1 << 30), r1(map.count + 1, -1), c0(map.count + 1, 1 << 30),
			c1(map.count + 1, -1);
		std::vector<long long> n(map.count + 1, 0);
		for (int r = 0; r < map.height(); ++r) {
			for (int c = 0; c < map.width(); ++c) {
				int const l = map.labels(r, c);
				++n[l];
				r0[l] = std::min(r0[l], r);
				r1[l] = std::max(r1[l], r);
				c0[l] = std::min(c0[l], c);
				c1[l] = std::max(c1[l], c);
			}
		}
		REQUIRE(areas == n);
		for (int l = 1; l <= map.count; ++l) {
			REQUIRE(boxes[l - 1] == BoundingBox{c0[l], r0[l], c1[l] - c0[l] + 1, r1[l] - r0[l] + 1});
		}
	}
}
