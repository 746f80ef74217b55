/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geez/image.hpp"
#include "geez/rng.hpp"
#include "geez/segmentation.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace geez {

// Synthetic stand-in for manuscript pages: glyphs made of rectangles, some
// of them split into strokes separated by a small vertical gap.

enum class GlyphKind { connected, disconnected };
enum class GlyphCategory { character = 0, number = 1, punctuation = 2 };

inline constexpr std::array<GlyphCategory, 3> all_categories = {
	GlyphCategory::character, GlyphCategory::number, GlyphCategory::punctuation};

std::string category_name(GlyphCategory c);
GlyphCategory parse_category(std::string const& name);

/// Axis-aligned ink rectangle in glyph coordinates (may be negative).
struct Stroke
{
	int row = 0;
	int col = 0;
	int height = 1;
	int width = 1;
};

struct GlyphSpec
{
	GlyphKind kind = GlyphKind::connected;
	GlyphCategory category = GlyphCategory::character;
	std::vector<Stroke> strokes;
	int gap = 0;           ///< vertical gap between strokes, >= 1 for disconnected glyphs
	double speckle = 0.0;  ///< salt probability for pixels not touching ink
	int margin = 0;        ///< background ring around the strokes
	std::uint64_t seed = 0;
};

struct GlyphRaster
{
	BinaryImage image;
	BoundingBox truth; ///< tight box over all strokes of the glyph
	GlyphCategory category = GlyphCategory::character;
};

GlyphRaster gen_glyph(GlyphSpec const& spec);

/// Random thick polyline; always one 8-connected stroke set.
GlyphSpec random_character(Rng& rng);
/// A polyline body with a detached bar `gap` rows above it.
GlyphSpec random_number(Rng& rng, int gap);
/// Two square dots of side `dot`, stacked with `gap` empty rows between them.
GlyphSpec two_dot_punctuation(int dot, int gap);

/**
 * Glyph for class `class_id` of an n-class alphabet, drawn as variant
 * `variant`. Classes share nothing but the drawing rules; variants of one
 * class jitter stroke lengths. The last 4 classes are
 * punctuation-like dot patterns and the 17 before them number-like glyphs
 * with a detached bar (when the alphabet is large enough).
 */
GlyphSpec class_glyph(int class_id, int n_classes, std::uint64_t variant);

struct PageLayout
{
	int columns = 10;
	int spacing = 8; ///< blank pixels between neighbouring glyph cells, >= 1
};

struct Page
{
	BinaryImage image;
	std::vector<BoundingBox> truth; ///< in row-major grid order
	std::vector<GlyphCategory> categories;
};

/// Places glyphs on a grid of uniform cells (largest glyph + spacing).
Page render_page(std::vector<GlyphRaster> const& glyphs, PageLayout const& layout);

struct SynthParams
{
	int glyphs = 100;
	double disconnected_frac = 0.3;
	int gap = 3;
	double speckle = 0.0;
	int columns = 20;
	int spacing = 8;
	std::uint64_t seed = 0;
};

/// Seeded page mixing characters with number and punctuation glyphs.
Page synthesize_page(SynthParams const& params);

/// Ink on paper with additive Gaussian noise, for exercising the gray pipeline.
GrayImage to_gray(BinaryImage const& img, int ink, int paper, double noise_sigma, std::uint64_t seed);

struct SegCounts
{
	int total = 0;
	int correct = 0;
	int over = 0;
	int under = 0;
	int missed = 0;

	double correct_rate() const { return total == 0 ? 0.0 : static_cast<double>(correct) / total; }
};

struct SegReport
{
	std::array<SegCounts, 3> plain;
	std::array<SegCounts, 3> modified;

	static SegCounts overall(std::array<SegCounts, 3> const& per_category);
};

/**
 * Scores each truth glyph against a segment list:
 *   correct - exactly one segment reaches IoU >= min_iou and it covers no other glyph
 *   under   - otherwise, some segment touching it also touches another glyph
 *   over    - otherwise, two or more segments touch it
 *   missed  - anything else (nothing found, or one poorly fitting segment)
 */
std::array<SegCounts, 3> score_segments(
	std::vector<SegmentedChar> const& segs, Page const& page, double min_iou = 0.8
);

SegReport compare_segmenters(Page const& page, SegmenterConfig const& cfg, double min_iou = 0.8);

void write_truth(std::ostream& out, Page const& page);
/// Reads truth rows back; the page image is left empty.
Page read_truth(std::istream& in);
void write_report(std::ostream& out, SegReport const& report);

} // namespace geez
