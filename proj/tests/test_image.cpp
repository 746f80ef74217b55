/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include "geez/error.hpp"
#include "geez/image.hpp"

#include <doctest.h>

#include <bit>

using namespace geez;

namespace {

void
check_padding(BinaryImage const& img)
{
	if (img.empty()) {
		return;
	}
	for (int r = 0; r < img.height(); ++r) {
		REQUIRE((img.row(r).back() & ~img.last_word_mask()) == 0);
	}
}

} // namespace

TEST_CASE("pack basics")
{
	BinaryImage const one = pack(oracle::Grid{{1}});
	CHECK(one.width() == 1);
	CHECK(foreground_count(one) == 1);
	CHECK(foreground_count(pack(oracle::Grid{{0, 0}, {0, 0}})) == 0);
	CHECK_THROWS_AS(pack(oracle::Grid{{0, 1}, {1}}), DimensionError);
	CHECK_THROWS_AS(GrayImage(0, 3), DimensionError);
}

TEST_CASE("pack and unpack round trip on random sizes")
{
	Rng rng(11);
	for (int i = 0; i < 60; ++i) {
		int const w = rng.range(1, 200), h = rng.range(1, 20);
		oracle::Grid const g = oracle::random_grid(rng, w, h, rng.uniform());
		BinaryImage const img = pack(g);
		check_padding(img);
		REQUIRE(unpack(img) == g);
		REQUIRE(pack(to_matrix(img)) == img);
	}
	BinaryImage const sq = pack(oracle::random_grid(rng, 67, 67, 0.5));
	CHECK(pack(unpack(sq)) == sq);
}

TEST_CASE("foreground count and complement")
{
	CHECK(foreground_count(BinaryImage(4, 4, true)) == 16);
	CHECK(foreground_count(complement(BinaryImage(3, 3, true))) == 0);

	oracle::Grid dot(5, std::vector<std::uint8_t>(5));
	dot[2][2] = 1;
	CHECK(foreground_count(complement(pack(dot))) == 24);

	Rng rng(3);
	for (int i = 0; i < 40; ++i) {
		int const w = rng.range(1, 150), h = rng.range(1, 30);
		oracle::Grid const g = oracle::random_grid(rng, w, h, rng.uniform());
		BinaryImage const img = pack(g);
		long long scan = 0;
		for (auto const& row : g) {
			for (auto v : row) {
				scan += v;
			}
		}
		REQUIRE(foreground_count(img) == scan);
		BinaryImage const inv = complement(img);
		check_padding(inv);
		REQUIRE(foreground_count(img) + foreground_count(inv) == static_cast<long long>(w) * h);
		REQUIRE(complement(inv) == img);
	}
}

TEST_CASE("crop")
{
	Rng rng(5);
	BinaryImage const img = oracle::random_image(rng, 10, 10, 0.5);
	CHECK(crop(img, {0, 0, 10, 10}) == img);
	CHECK_THROWS_AS(crop(img, {8, 0, 3, 2}), BoundsError);
	CHECK_THROWS_AS(crop(img, {-1, 0, 3, 2}), BoundsError);

	BinaryImage const sub = crop(img, {2, 3, 4, 5});
	REQUIRE(sub.width() == 4);
	REQUIRE(sub.height() == 5);
	for (int r = 0; r < 5; ++r) {
		for (int c = 0; c < 4; ++c) {
			CHECK(sub.get(r, c) == img.get(r + 3, c + 2));
		}
	}

	for (int i = 0; i < 50; ++i) {
		int const w = rng.range(1, 300), h = rng.range(1, 8);
		BinaryImage const big = oracle::random_image(rng, w, h, 0.5);
		int const x = rng.range(0, w - 1), y = rng.range(0, h - 1);
		BoundingBox const box{x, y, rng.range(1, w - x), rng.range(1, h - y)};
		BinaryImage const part = crop(big, box);
		check_padding(part);
		for (int r = 0; r < box.height; ++r) {
			for (int c = 0; c < box.width; ++c) {
				REQUIRE(part.get(r, c) == big.get(r + box.min_row, c + box.min_col));
			}
		}
	}

	oracle::Grid dot(4, std::vector<std::uint8_t>(4));
	dot[1][2] = 1;
	CHECK(crop(pack(dot), {2, 1, 1, 1}) == BinaryImage(1, 1, true));
}

TEST_CASE("resize_nearest")
{
	Rng rng(9);
	BinaryImage const img = oracle::random_image(rng, 12, 12, 0.5);
	CHECK(resize_nearest(img, 12) == img);
	CHECK(resize_nearest(pack(oracle::Grid{{1, 0}, {0, 1}}), 4) ==
		  pack(oracle::Grid{{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}}));
	CHECK_THROWS_AS(resize_nearest(BinaryImage(), 4), DimensionError);

	oracle::Grid const glyph = oracle::random_grid(rng, 30, 30, 0.4);
	CHECK(unpack(resize_nearest(pack(glyph), 15)) == oracle::reference_resize(glyph, 15));
	for (int i = 0; i < 30; ++i) {
		oracle::Grid const g = oracle::random_grid(rng, rng.range(1, 70), rng.range(1, 70), 0.4);
		int const side = rng.range(1, 48);
		REQUIRE(unpack(resize_nearest(pack(g), side)) == oracle::reference_resize(g, side));
	}
}

TEST_CASE("boxes")
{
	BinaryImage img(12, 9);
	CHECK(foreground_box(img).width == 0);
	img.set(2, 3, true);
	img.set(4, 7, true);
	CHECK(foreground_box(img) == BoundingBox{3, 2, 5, 3});

	BoundingBox const a{0, 0, 4, 4}, b{2, 2, 4, 4};
	CHECK(intersection_area(a, b) == 4);
	CHECK(iou(a, b) == doctest::Approx(4.0 / 28.0));
	CHECK(iou(a, a) == 1.0);
	CHECK(iou(a, {10, 10, 1, 1}) == 0.0);
}
