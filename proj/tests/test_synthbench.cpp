/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include "geez/error.hpp"
#include "geez/labeling.hpp"
#include "geez/morphology.hpp"
#include "geez/synthbench.hpp"

#include <doctest.h>

#include <sstream>

using namespace geez;

namespace {

SegmenterConfig
fixed_se(int rows, int cols)
{
	SegmenterConfig cfg;
	cfg.se_override = StructuringElement(rows, cols);
	return cfg;
}

void
check_conserved(std::array<SegCounts, 3> const& per)
{
	for (auto const& c : per) {
		REQUIRE(c.correct + c.over + c.under + c.missed == c.total);
	}
}

} // namespace

TEST_CASE("glyph generation")
{
	GlyphRaster const dots = gen_glyph(two_dot_punctuation(2, 3));
	CHECK(dots.image.height() == 7);
	CHECK(dots.truth == BoundingBox{0, 0, 2, 7});
	CHECK(dots.category == GlyphCategory::punctuation);
	CHECK(label_components(dots.image).count == 2);

	Rng rng(1);
	GlyphSpec const ch = random_character(rng);
	GlyphRaster const a = gen_glyph(ch);
	CHECK(a.truth == foreground_box(a.image));
	CHECK(label_components(a.image).count == 1);
	CHECK(gen_glyph(ch).image == a.image);

	GlyphSpec bad = two_dot_punctuation(2, 3);
	bad.gap = 0;
	CHECK_THROWS(gen_glyph(bad));
	CHECK_THROWS(gen_glyph(GlyphSpec{}));

	GlyphSpec noisy = ch;
	noisy.margin = 4;
	noisy.speckle = 0.05;
	noisy.seed = 9;
	CHECK(gen_glyph(noisy).image == gen_glyph(noisy).image);
}

TEST_CASE("number glyphs are split by exactly their gap")
{
	Rng rng(2);
	for (int i = 0; i < 30; ++i) {
		int const gap = rng.range(1, 5);
		GlyphRaster const g = gen_glyph(random_number(rng, gap));
		REQUIRE(label_components(g.image).count == 2);
		REQUIRE(label_components(close_rect(g.image, StructuringElement(gap + 1, 1))).count == 1);
	}
}

TEST_CASE("class glyphs")
{
	int const n = 191;
	std::set<std::vector<std::vector<std::uint8_t>>> shapes;
	for (int c = 0; c < n; ++c) {
		GlyphRaster const g = gen_glyph(class_glyph(c, n, 0));
		REQUIRE(foreground_count(g.image) > 0);
		shapes.insert(unpack(g.image));
		REQUIRE(gen_glyph(class_glyph(c, n, 0)).image == g.image);
	}
	CHECK(shapes.size() == static_cast<size_t>(n));
	CHECK(class_glyph(n - 1, n, 0).category == GlyphCategory::punctuation);
	CHECK(class_glyph(n - 5, n, 0).category == GlyphCategory::number);
	CHECK(class_glyph(0, n, 0).category == GlyphCategory::character);
	CHECK_THROWS_AS(class_glyph(n, n, 0), ParameterError);
}

TEST_CASE("page rendering")
{
	Rng rng(3);
	GlyphRaster const g = gen_glyph(random_character(rng));
	Page const one = render_page({g}, {10, 4});
	CHECK(one.truth.size() == 1);
	CHECK(crop(one.image, one.truth[0]) == crop(g.image, g.truth));

	std::vector<GlyphRaster> nine;
	for (int i = 0; i < 9; ++i) {
		nine.push_back(gen_glyph(random_character(rng)));
	}
	Page const grid = render_page(nine, {3, 6});
	REQUIRE(grid.truth.size() == 9);
	for (int i = 1; i < 9; ++i) {
		auto const& prev = grid.truth[i - 1];
		auto const& cur = grid.truth[i];
		if (i % 3) {
			CHECK(cur.min_col > prev.max_col());
		} else {
			CHECK(cur.min_row > prev.max_row());
		}
	}
	CHECK_THROWS_AS(render_page(nine, {3, 0}), LayoutError);
	CHECK_THROWS_AS(render_page(nine, {0, 5}), LayoutError);
}

TEST_CASE("speckle below the area threshold is removed by area opening")
{
	SynthParams p;
	p.glyphs = 40;
	p.speckle = 0.01;
	p.seed = 5;
	Page const noisy = synthesize_page(p);
	p.speckle = 0;
	Page const clean = synthesize_page(p);
	BinaryImage const opened = area_open(noisy.image, 8);
	CHECK(label_components(noisy.image).count > label_components(clean.image).count);
	CHECK(label_components(opened).count == label_components(clean.image).count);
	CHECK(foreground_count(opened) == foreground_count(clean.image));
	for (int r = 0; r < opened.height(); ++r) {
		for (int c = 0; c < opened.width(); ++c) {
			if (opened.get(r, c)) {
				bool inside = false;
				for (auto const& b : noisy.truth) {
					inside = inside || (r >= b.min_row && r <= b.max_row() && c >= b.min_col && c <= b.max_col());
				}
				REQUIRE(inside);
			}
		}
	}
}

TEST_CASE("segmenter comparison")
{
	SynthParams p;
	p.glyphs = 60;
	p.disconnected_frac = 0;
	p.seed = 6;
	SegReport const connected = compare_segmenters(synthesize_page(p), fixed_se(5, 1));
	CHECK(SegReport::overall(connected.plain).correct == 60);
	CHECK(SegReport::overall(connected.modified).correct == 60);

	std::vector<GlyphRaster> dots;
	for (int i = 0; i < 12; ++i) {
		dots.push_back(gen_glyph(two_dot_punctuation(3, 3)));
	}
	Page const punct = render_page(dots, {4, 8});
	SegReport const r = compare_segmenters(punct, fixed_se(5, 1));
	auto const& plain = r.plain[static_cast<int>(GlyphCategory::punctuation)];
	auto const& modified = r.modified[static_cast<int>(GlyphCategory::punctuation)];
	CHECK(plain.correct == 0);
	CHECK(plain.over == 12);
	CHECK(modified.correct == 12);

	p.glyphs = 200;
	p.disconnected_frac = 0.3;
	Page const mixed = synthesize_page(p);
	SegReport const m = compare_segmenters(mixed, fixed_se(5, 1));
	check_conserved(m.plain);
	check_conserved(m.modified);
	SegCounts const pa = SegReport::overall(m.plain), mo = SegReport::overall(m.modified);
	CHECK(mo.correct_rate() - pa.correct_rate() == doctest::Approx(0.3));
	CHECK(mo.under == 0);
}

TEST_CASE("truth and report files")
{
	SynthParams p;
	p.glyphs = 25;
	p.seed = 8;
	Page const page = synthesize_page(p);
	CHECK(synthesize_page(p).image == page.image);

	std::stringstream truth;
	write_truth(truth, page);
	Page const back = read_truth(truth);
	CHECK(back.truth == page.truth);
	CHECK(back.categories == page.categories);

	std::ostringstream report;
	write_report(report, compare_segmenters(page, fixed_se(5, 1)));
	std::string const text = report.str();
	CHECK(text.find("segmenter,category,total,correct,over,under,missed,correct_rate") != std::string::npos);
	CHECK(text.find("modified,all,25,25") != std::string::npos);

	for (auto c : all_categories) {
		CHECK(parse_category(category_name(c)) == c);
	}
}

TEST_CASE("gray rendering")
{
	BinaryImage img(4, 4);
	img.set(1, 1, true);
	GrayImage const g = to_gray(img, 40, 200, 0.0, 1);
	CHECK(g(1, 1) == 40);
	CHECK(g(0, 0) == 200);
	CHECK(to_gray(img, 40, 200, 15.0, 3) == to_gray(img, 40, 200, 15.0, 3));
}
