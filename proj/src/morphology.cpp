/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/morphology.hpp"
#include "geez/error.hpp"
#include "geez/labeling.hpp"

#include <algorithm>
#include <vector>

namespace geez {

namespace {

using Word = BinaryImage::Word;

enum class Combine { any, all };

// 1 x n pass. Output column c combines input columns [c + first, c + first + n).
BinaryImage
horizontal_pass(BinaryImage const& img, int n, int first, Combine op, Word fill)
{
	int const wpr = img.words_per_row();
	int const margin = (n + 63) / 64 + 1;
	std::vector<Word> buf(static_cast<size_t>(wpr + 2 * margin));
	BinaryImage out(img.width(), img.height());
	Word const tail_mask = img.last_word_mask();

	auto read = [&buf](long long start) {
		auto const q = static_cast<size_t>(start >> 6);
		int const s = static_cast<int>(start & 63);
		return s == 0 ? buf[q] : (buf[q] >> s) | (buf[q + 1] << (64 - s));
	};

	for (int r = 0; r < img.height(); ++r) {
		std::fill(buf.begin(), buf.end(), fill);
		auto const src = img.row(r);
		std::copy(src.begin(), src.end(), buf.begin() + margin);
		buf[margin + wpr - 1] |= fill & ~tail_mask;

		auto dst = out.row(r);
		for (int w = 0; w < wpr; ++w) {
			long long const base = static_cast<long long>(margin + w) * 64;
			Word acc = op == Combine::any ? Word(0) : ~Word(0);
			for (int k = first; k < first + n; ++k) {
				if (op == Combine::any) {
					acc |= read(base + k);
				} else {
					acc &= read(base + k);
				}
			}
			dst[w] = acc;
		}
	}
	out.clear_padding();
	return out;
}

// m x 1 pass. Output row r combines input rows [r + first, r + first + m).
BinaryImage
vertical_pass(BinaryImage const& img, int m, int first, Combine op, Word fill)
{
	int const wpr = img.words_per_row();
	BinaryImage out(img.width(), img.height());
	for (int r = 0; r < img.height(); ++r) {
		auto dst = out.row(r);
		std::fill(dst.begin(), dst.end(), op == Combine::any ? Word(0) : ~Word(0));
		for (int k = first; k < first + m; ++k) {
			int const rr = r + k;
			bool const inside = rr >= 0 && rr < img.height();
			for (int w = 0; w < wpr; ++w) {
				Word const v = inside ? img.row(rr)[w] : fill;
				if (op == Combine::any) {
					dst[w] |= v;
				} else {
					dst[w] &= v;
				}
			}
		}
	}
	out.clear_padding();
	return out;
}

} // namespace

BinaryImage
dilate_rect(BinaryImage const& img, StructuringElement const& se)
{
	if (img.empty()) {
		return img;
	}
	// Reflected window: p is set when p - b hits the input for some b in the element.
	BinaryImage const h = horizontal_pass(img, se.cols(), se.origin_col() - se.cols() + 1, Combine::any, 0);
	return vertical_pass(h, se.rows(), se.origin_row() - se.rows() + 1, Combine::any, 0);
}

BinaryImage
erode_rect(BinaryImage const& img, StructuringElement const& se, Border outside)
{
	if (img.empty()) {
		return img;
	}
	Word const fill = outside == Border::foreground ? ~Word(0) : Word(0);
	BinaryImage const h = horizontal_pass(img, se.cols(), -se.origin_col(), Combine::all, fill);
	return vertical_pass(h, se.rows(), -se.origin_row(), Combine::all, fill);
}

BinaryImage
close_rect(BinaryImage const& img, StructuringElement const& se)
{
	return erode_rect(dilate_rect(img, se), se);
}

BinaryImage
area_open(BinaryImage const& img, long long min_area)
{
	if (min_area < 0) {
		throw ParameterError("min_area must be nonnegative");
	}
	if (min_area <= 1 || img.empty()) {
		return img;
	}
	LabelMap const lm = label_components(img);
	std::vector<long long> const area = component_areas(lm);
	BinaryImage out(img.width(), img.height());
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			int const l = lm.labels(r, c);
			if (l != 0 && area[l] >= min_area) {
				out.set(r, c, true);
			}
		}
	}
	return out;
}

BinaryImage
thin(BinaryImage const& img)
{
	if (img.empty()) {
		return img;
	}
	int const h = img.height();
	int const w = img.width();
	// One pixel of zero border so neighbour lookups need no bounds checks.
	BitMatrix px = BitMatrix::Zero(h + 2, w + 2);
	px.block(1, 1, h, w) = to_matrix(img);

	std::vector<std::pair<int, int>> doomed;
	bool changed = true;
	while (changed) {
		changed = false;
		for (int pass = 0; pass < 2; ++pass) {
			doomed.clear();
			for (int r = 1; r <= h; ++r) {
				for (int c = 1; c <= w; ++c) {
					if (!px(r, c)) {
						continue;
					}
					// P2..P9 clockwise from north.
					int const p2 = px(r - 1, c), p3 = px(r - 1, c + 1), p4 = px(r, c + 1);
					int const p5 = px(r + 1, c + 1), p6 = px(r + 1, c), p7 = px(r + 1, c - 1);
					int const p8 = px(r, c - 1), p9 = px(r - 1, c - 1);
					int const b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
					if (b < 2 || b > 6) {
						continue;
					}
					int const a = (!p2 && p3) + (!p3 && p4) + (!p4 && p5) + (!p5 && p6) +
					              (!p6 && p7) + (!p7 && p8) + (!p8 && p9) + (!p9 && p2);
					if (a != 1) {
						continue;
					}
					bool const del = pass == 0
						? (p2 * p4 * p6 == 0 && p4 * p6 * p8 == 0)
						: (p2 * p4 * p8 == 0 && p2 * p6 * p8 == 0);
					if (del) {
						doomed.emplace_back(r, c);
					}
				}
			}
			for (auto const& [r, c] : doomed) {
				px(r, c) = 0;
			}
			changed = changed || !doomed.empty();
		}
	}
	return pack(BitMatrix(px.block(1, 1, h, w)));
}

} // namespace geez
