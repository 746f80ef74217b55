/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/synthbench.hpp"
#include "geez/error.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace geez {

std::string
category_name(GlyphCategory c)
{
	switch (c) {
	case GlyphCategory::character:
		return "character";
	case GlyphCategory::number:
		return "number";
	case GlyphCategory::punctuation:
		return "punctuation";
	}
	return "unknown";
}

GlyphCategory
parse_category(std::string const& name)
{
	for (auto c : all_categories) {
		if (category_name(c) == name) {
			return c;
		}
	}
	throw ParseError("unknown glyph category '" + name + "'");
}

// ---------------------------------------------------------------- glyphs

GlyphRaster
gen_glyph(GlyphSpec const& spec)
{
	if (spec.strokes.empty()) {
		throw ParameterError("glyph has no strokes");
	}
	if (spec.kind == GlyphKind::disconnected && spec.gap < 1) {
		throw ParameterError("disconnected glyph needs a gap of at least 1 pixel");
	}
	if (spec.margin < 0 || spec.speckle < 0.0 || spec.speckle > 1.0) {
		throw ParameterError("glyph margin and speckle probability out of range");
	}
	int r0 = spec.strokes.front().row, c0 = spec.strokes.front().col;
	int r1 = r0, c1 = c0;
	for (auto const& s : spec.strokes) {
		if (s.height < 1 || s.width < 1) {
			throw ParameterError("degenerate stroke");
		}
		r0 = std::min(r0, s.row);
		c0 = std::min(c0, s.col);
		r1 = std::max(r1, s.row + s.height - 1);
		c1 = std::max(c1, s.col + s.width - 1);
	}
	int const m = spec.margin;
	BoundingBox const truth{m, m, c1 - c0 + 1, r1 - r0 + 1};
	BinaryImage img(truth.width + 2 * m, truth.height + 2 * m);
	for (auto const& s : spec.strokes) {
		for (int r = 0; r < s.height; ++r) {
			for (int c = 0; c < s.width; ++c) {
				img.set(s.row - r0 + m + r, s.col - c0 + m + c, true);
			}
		}
	}
	if (spec.speckle > 0.0) {
		BinaryImage const ink = img;
		Rng rng(mix_seed(spec.seed, 0x5eed));
		for (int r = 0; r < img.height(); ++r) {
			for (int c = 0; c < img.width(); ++c) {
				if (!rng.chance(spec.speckle)) {
					continue;
				}
				bool near_ink = false;
				for (int dr = -1; dr <= 1 && !near_ink; ++dr) {
					for (int dc = -1; dc <= 1 && !near_ink; ++dc) {
						int const rr = r + dr, cc = c + dc;
						near_ink = rr >= 0 && cc >= 0 && rr < img.height() && cc < img.width() && ink.get(rr, cc);
					}
				}
				if (!near_ink) {
					img.set(r, c, true);
				}
			}
		}
	}
	return {std::move(img), truth, spec.category};
}

namespace {

struct Dir
{
	int dr, dc;
};

constexpr Dir directions[8] = {{0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};

// Squares of side `thick` centred along a path; consecutive squares overlap,
// so the result is a single connected stroke set.
std::vector<Stroke>
polyline(std::vector<int> const& dirs, std::vector<int> const& lengths, int thick)
{
	std::vector<Stroke> strokes;
	int r = 0, c = 0;
	strokes.push_back({r, c, thick, thick});
	for (size_t s = 0; s < dirs.size(); ++s) {
		for (int k = 0; k < lengths[s]; ++k) {
			r += directions[dirs[s]].dr;
			c += directions[dirs[s]].dc;
			strokes.push_back({r, c, thick, thick});
		}
	}
	return strokes;
}

std::vector<int>
random_turns(Rng& rng, int segments)
{
	std::vector<int> dirs;
	for (int s = 0; s < segments; ++s) {
		int d;
		do {
			d = rng.range(0, 7);
		} while (!dirs.empty() && (d == dirs.back() || d == (dirs.back() + 4) % 8));
		dirs.push_back(d);
	}
	return dirs;
}

// Places a bar `gap` rows above the topmost stroke of `body`, over its column.
void
add_bar_above(std::vector<Stroke>& body, int gap, int bar_width, int bar_height)
{
	auto const top = std::min_element(body.begin(), body.end(), [](Stroke const& a, Stroke const& b) {
		return a.row != b.row ? a.row < b.row : a.col < b.col;
	});
	Stroke const anchor = *top;
	body.push_back({anchor.row - gap - bar_height, anchor.col - (bar_width - anchor.width) / 2, bar_height, bar_width});
}

} // namespace

GlyphSpec
random_character(Rng& rng)
{
	int const segments = rng.range(2, 4);
	std::vector<int> const dirs = random_turns(rng, segments);
	std::vector<int> lengths;
	for (int s = 0; s < segments; ++s) {
		lengths.push_back(rng.range(4, 9));
	}
	GlyphSpec spec;
	spec.strokes = polyline(dirs, lengths, rng.range(2, 3));
	spec.seed = rng.next();
	return spec;
}

GlyphSpec
random_number(Rng& rng, int gap)
{
	GlyphSpec spec = random_character(rng);
	int top = spec.strokes.front().row;
	int bottom = top;
	for (auto const& s : spec.strokes) {
		top = std::min(top, s.row);
		bottom = std::max(bottom, s.row + s.height);
	}
	// A bar a third of the body height keeps the body alone below IoU 0.8.
	add_bar_above(spec.strokes, gap, rng.range(4, 7), std::max(2, (bottom - top + 2) / 3));
	spec.kind = GlyphKind::disconnected;
	spec.category = GlyphCategory::number;
	spec.gap = gap;
	return spec;
}

GlyphSpec
two_dot_punctuation(int dot, int gap)
{
	GlyphSpec spec;
	spec.kind = GlyphKind::disconnected;
	spec.category = GlyphCategory::punctuation;
	spec.gap = gap;
	spec.strokes = {{0, 0, dot, dot}, {dot + gap, 0, dot, dot}};
	return spec;
}

GlyphSpec
class_glyph(int class_id, int n_classes, std::uint64_t variant)
{
	if (class_id < 0 || class_id >= n_classes) {
		throw ParameterError("class id outside the alphabet");
	}
	constexpr int punctuation_classes = 4;
	constexpr int number_classes = 17;
	bool const full_alphabet = n_classes >= 30;
	int const first_punct = full_alphabet ? n_classes - punctuation_classes : n_classes;
	int const first_number = full_alphabet ? first_punct - number_classes : n_classes;

	Rng var(mix_seed(static_cast<std::uint64_t>(class_id), variant + 1));
	int const thick = 2 + static_cast<int>(mix_seed(static_cast<std::uint64_t>(class_id), 0x7c) % 2);
	int const gap = 2;

	GlyphSpec spec;
	spec.seed = mix_seed(variant, static_cast<std::uint64_t>(class_id));
	if (class_id >= first_punct) {
		spec.kind = GlyphKind::disconnected;
		spec.category = GlyphCategory::punctuation;
		spec.gap = gap;
		int const dot = thick + 1;
		switch (class_id - first_punct) {
		case 0: // two dots
			spec.strokes = {{0, 0, dot, dot}, {dot + gap, 0, dot, dot}};
			break;
		case 1: // three dots
			spec.strokes = {{0, 0, dot, dot}, {dot + gap, 0, dot, dot}, {2 * (dot + gap), 0, dot, dot}};
			break;
		case 2: // dot over bar
			spec.strokes = {{0, 3, dot, dot}, {dot + gap, 0, thick, dot + 6}};
			break;
		default: // bar over dot
			spec.strokes = {{0, 0, thick, dot + 6}, {thick + gap, 3, dot, dot}};
			break;
		}
		return spec;
	}

	// Class shape: a distinct turn sequence from a fixed shuffle of all
	// 3-segment paths without straight continuations or reversals.
	static std::vector<std::vector<int>> const paths = [] {
		std::vector<std::vector<int>> all;
		for (int a = 0; a < 8; ++a) {
			for (int b = 0; b < 8; ++b) {
				for (int c = 0; c < 8; ++c) {
					bool const ok = b != a && b != (a + 4) % 8 && c != b && c != (b + 4) % 8;
					if (ok) {
						all.push_back({a, b, c});
					}
				}
			}
		}
		std::vector<int> const perm = seeded_permutation(static_cast<int>(all.size()), 0x6ee2);
		std::vector<std::vector<int>> shuffled;
		for (int i : perm) {
			shuffled.push_back(all[i]);
		}
		return shuffled;
	}();
	std::vector<int> const& dirs = paths[static_cast<size_t>(class_id) % paths.size()];
	Rng shape(mix_seed(static_cast<std::uint64_t>(class_id), 0xc1a55));
	std::vector<int> lengths;
	for (size_t s = 0; s < dirs.size(); ++s) {
		lengths.push_back(shape.range(7, 12) + var.range(-1, 1));
	}
	spec.strokes = polyline(dirs, lengths, thick);
	if (class_id >= first_number) {
		add_bar_above(spec.strokes, gap, 5 + shape.range(0, 2), 2);
		spec.kind = GlyphKind::disconnected;
		spec.category = GlyphCategory::number;
		spec.gap = gap;
	}
	return spec;
}

// ---------------------------------------------------------------- pages

Page
render_page(std::vector<GlyphRaster> const& glyphs, PageLayout const& layout)
{
	if (layout.columns < 1) {
		throw LayoutError("page needs at least one column");
	}
	if (layout.spacing < 1) {
		throw LayoutError("spacing " + std::to_string(layout.spacing) + " would let neighbouring glyphs touch");
	}
	int cell_w = 1, cell_h = 1;
	for (auto const& g : glyphs) {
		cell_w = std::max(cell_w, g.image.width());
		cell_h = std::max(cell_h, g.image.height());
	}
	cell_w += layout.spacing;
	cell_h += layout.spacing;
	auto const n = static_cast<int>(glyphs.size());
	int const cols = std::max(1, std::min(layout.columns, n));
	int const rows = std::max(1, (n + cols - 1) / cols);

	Page page;
	page.image = BinaryImage(layout.spacing + cols * cell_w, layout.spacing + rows * cell_h);
	for (int i = 0; i < n; ++i) {
		auto const& g = glyphs[i];
		int const top = layout.spacing + (i / cols) * cell_h;
		int const left = layout.spacing + (i % cols) * cell_w;
		for (int r = 0; r < g.image.height(); ++r) {
			for (int c = 0; c < g.image.width(); ++c) {
				if (g.image.get(r, c)) {
					page.image.set(top + r, left + c, true);
				}
			}
		}
		page.truth.push_back({left + g.truth.min_col, top + g.truth.min_row, g.truth.width, g.truth.height});
		page.categories.push_back(g.category);
	}
	return page;
}

Page
synthesize_page(SynthParams const& params)
{
	if (params.glyphs < 0 || params.disconnected_frac < 0.0 || params.disconnected_frac > 1.0) {
		throw ParameterError("glyph count or disconnected fraction out of range");
	}
	if (params.gap < 1) {
		throw ParameterError("gap must be at least 1");
	}
	int const n = params.glyphs;
	auto const n_disc = static_cast<int>(std::llround(params.disconnected_frac * n));
	std::vector<int> const perm = seeded_permutation(n, params.seed);
	std::vector<char> disconnected(static_cast<size_t>(n), 0);
	for (int i = 0; i < n_disc; ++i) {
		disconnected[perm[i]] = 1;
	}

	std::vector<GlyphRaster> glyphs;
	glyphs.reserve(static_cast<size_t>(n));
	for (int i = 0; i < n; ++i) {
		Rng rng(mix_seed(params.seed, static_cast<std::uint64_t>(i)));
		GlyphSpec spec;
		if (!disconnected[i]) {
			spec = random_character(rng);
		} else if (rng.chance(0.5)) {
			spec = random_number(rng, params.gap);
		} else {
			spec = two_dot_punctuation(rng.range(3, 4), params.gap);
		}
		spec.speckle = params.speckle;
		spec.margin = params.speckle > 0 ? 2 : 0;
		spec.seed = mix_seed(params.seed ^ 0xabcdef, static_cast<std::uint64_t>(i));
		glyphs.push_back(gen_glyph(spec));
	}
	return render_page(glyphs, {params.columns, params.spacing});
}

GrayImage
to_gray(BinaryImage const& img, int ink, int paper, double noise_sigma, std::uint64_t seed)
{
	GrayImage out(img.width(), img.height());
	Rng rng(seed);
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			double v = img.get(r, c) ? ink : paper;
			if (noise_sigma > 0) {
				v += noise_sigma * rng.normal();
			}
			out(r, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
		}
	}
	return out;
}

// ---------------------------------------------------------------- scoring

SegCounts
SegReport::overall(std::array<SegCounts, 3> const& per_category)
{
	SegCounts all;
	for (auto const& c : per_category) {
		all.total += c.total;
		all.correct += c.correct;
		all.over += c.over;
		all.under += c.under;
		all.missed += c.missed;
	}
	return all;
}

std::array<SegCounts, 3>
score_segments(std::vector<SegmentedChar> const& segs, Page const& page, double min_iou)
{
	size_t const n_truth = page.truth.size();
	std::vector<std::vector<size_t>> hits(n_truth);
	std::vector<int> spans(segs.size(), 0);
	for (size_t s = 0; s < segs.size(); ++s) {
		for (size_t g = 0; g < n_truth; ++g) {
			if (intersection_area(segs[s].source_box, page.truth[g]) > 0) {
				hits[g].push_back(s);
				++spans[s];
			}
		}
	}

	std::array<SegCounts, 3> out{};
	for (size_t g = 0; g < n_truth; ++g) {
		auto& counts = out[static_cast<size_t>(page.categories[g])];
		++counts.total;
		int matches = 0;
		bool matched_clean = false;
		bool merged = false;
		for (size_t s : hits[g]) {
			if (spans[s] >= 2) {
				merged = true;
			}
			if (iou(segs[s].source_box, page.truth[g]) >= min_iou) {
				++matches;
				matched_clean = spans[s] == 1;
			}
		}
		if (matches == 1 && matched_clean) {
			++counts.correct;
		} else if (merged) {
			++counts.under;
		} else if (hits[g].size() >= 2) {
			++counts.over;
		} else {
			++counts.missed;
		}
	}
	return out;
}

SegReport
compare_segmenters(Page const& page, SegmenterConfig const& cfg, double min_iou)
{
	SegReport report;
	report.plain = score_segments(segment_plain(page.image, cfg.min_area), page, min_iou);
	report.modified = score_segments(segment_modified(page.image, cfg), page, min_iou);
	return report;
}

void
write_truth(std::ostream& out, Page const& page)
{
	out << "index,category,min_col,min_row,width,height\n";
	for (size_t i = 0; i < page.truth.size(); ++i) {
		auto const& b = page.truth[i];
		out << i << ',' << category_name(page.categories[i]) << ',' << b.min_col << ',' << b.min_row << ','
		    << b.width << ',' << b.height << '\n';
	}
}

Page
read_truth(std::istream& in)
{
	Page page;
	std::string line;
	int lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (!line.empty() && line.back() == '\r') {
			line.pop_back();
		}
		if (line.empty() || line[0] == '#' || line.rfind("index,", 0) == 0) {
			continue;
		}
		std::istringstream ss(line);
		std::string field;
		std::vector<std::string> f;
		while (std::getline(ss, field, ',')) {
			f.push_back(field);
		}
		if (f.size() != 6) {
			throw ParseError("line " + std::to_string(lineno) + ": expected 6 truth fields");
		}
		try {
			page.categories.push_back(parse_category(f[1]));
			page.truth.push_back({std::stoi(f[2]), std::stoi(f[3]), std::stoi(f[4]), std::stoi(f[5])});
		} catch (std::logic_error const&) {
			throw ParseError("line " + std::to_string(lineno) + ": bad truth number");
		}
	}
	return page;
}

void
write_report(std::ostream& out, SegReport const& report)
{
	out << "# glyphs";
	for (auto c : all_categories) {
		out << ',' << category_name(c) << '=' << report.plain[static_cast<size_t>(c)].total;
	}
	out << '\n';
	out << "segmenter,category,total,correct,over,under,missed,correct_rate\n";
	auto rows = [&out](char const* name, std::array<SegCounts, 3> const& per) {
		auto line = [&](std::string const& cat, SegCounts const& c) {
			out << name << ',' << cat << ',' << c.total << ',' << c.correct << ',' << c.over << ',' << c.under << ','
			    << c.missed << ',' << c.correct_rate() << '\n';
		};
		for (auto c : all_categories) {
			line(category_name(c), per[static_cast<size_t>(c)]);
		}
		line("all", SegReport::overall(per));
	};
	rows("plain", report.plain);
	rows("modified", report.modified);
}

} // namespace geez
