/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/image.hpp"
#include "geez/error.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace geez {

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
{
	if (width < 1 || height < 1) {
		throw DimensionError("gray image must be at least 1x1");
	}
	m_pixels = GrayMatrix::Constant(height, width, fill);
}

GrayImage::GrayImage(GrayMatrix pixels)
:	m_pixels(std::move(pixels))
{
	if (m_pixels.rows() < 1 || m_pixels.cols() < 1) {
		throw DimensionError("gray image must be at least 1x1");
	}
}

BinaryImage::BinaryImage(int width, int height, bool fill)
:	m_width(width),
	m_height(height),
	m_wpr((width + word_bits - 1) / word_bits)
{
	if (width < 0 || height < 0) {
		throw DimensionError("negative image dimensions");
	}
	m_words.assign(static_cast<size_t>(m_wpr) * height, fill ? ~Word(0) : Word(0));
	if (fill) {
		clear_padding();
	}
}

BinaryImage::Word
BinaryImage::last_word_mask() const
{
	int const tail = m_width % word_bits;
	return tail == 0 ? ~Word(0) : (Word(1) << tail) - 1;
}

void
BinaryImage::clear_padding()
{
	if (m_wpr == 0) {
		return;
	}
	Word const mask = last_word_mask();
	for (int r = 0; r < m_height; ++r) {
		m_words[static_cast<size_t>(r) * m_wpr + m_wpr - 1] &= mask;
	}
}

long long
intersection_area(BoundingBox const& a, BoundingBox const& b)
{
	int const c0 = std::max(a.min_col, b.min_col);
	int const c1 = std::min(a.max_col(), b.max_col());
	int const r0 = std::max(a.min_row, b.min_row);
	int const r1 = std::min(a.max_row(), b.max_row());
	if (c1 < c0 || r1 < r0) {
		return 0;
	}
	return static_cast<long long>(c1 - c0 + 1) * (r1 - r0 + 1);
}

double
iou(BoundingBox const& a, BoundingBox const& b)
{
	long long const inter = intersection_area(a, b);
	long long const uni = a.area() + b.area() - inter;
	return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

StructuringElement::StructuringElement(int rows, int cols)
:	m_rows(rows),
	m_cols(cols)
{
	if (rows < 1 || cols < 1) {
		throw ParameterError("structuring element must be at least 1x1");
	}
}

BinaryImage
pack(std::vector<std::vector<std::uint8_t>> const& bits)
{
	int const height = static_cast<int>(bits.size());
	int const width = height == 0 ? 0 : static_cast<int>(bits.front().size());
	BinaryImage img(width, height);
	for (int r = 0; r < height; ++r) {
		if (static_cast<int>(bits[r].size()) != width) {
			throw DimensionError(
				"ragged input: row " + std::to_string(r) + " has " +
				std::to_string(bits[r].size()) + " columns, expected " + std::to_string(width)
			);
		}
		for (int c = 0; c < width; ++c) {
			if (bits[r][c]) {
				img.set(r, c, true);
			}
		}
	}
	return img;
}

BinaryImage
pack(BitMatrix const& bits)
{
	BinaryImage img(static_cast<int>(bits.cols()), static_cast<int>(bits.rows()));
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			if (bits(r, c)) {
				img.set(r, c, true);
			}
		}
	}
	return img;
}

std::vector<std::vector<std::uint8_t>>
unpack(BinaryImage const& img)
{
	std::vector<std::vector<std::uint8_t>> out(img.height(), std::vector<std::uint8_t>(img.width(), 0));
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			out[r][c] = img.get(r, c) ? 1 : 0;
		}
	}
	return out;
}

BitMatrix
to_matrix(BinaryImage const& img)
{
	BitMatrix m(img.height(), img.width());
	for (int r = 0; r < img.height(); ++r) {
		for (int c = 0; c < img.width(); ++c) {
			m(r, c) = img.get(r, c) ? 1 : 0;
		}
	}
	return m;
}

BinaryImage
complement(BinaryImage const& img)
{
	BinaryImage out = img;
	for (int r = 0; r < out.height(); ++r) {
		for (auto& w : out.row(r)) {
			w = ~w;
		}
	}
	out.clear_padding();
	return out;
}

namespace {

// Reads 64 bits of a row starting at an arbitrary bit offset. Bits past the
// end of the row read as zero.
BinaryImage::Word
read_bits(std::span<BinaryImage::Word const> row, long long start)
{
	auto const q = static_cast<size_t>(start >> 6);
	int const s = static_cast<int>(start & 63);
	BinaryImage::Word lo = q < row.size() ? row[q] : 0;
	if (s == 0) {
		return lo;
	}
	BinaryImage::Word hi = q + 1 < row.size() ? row[q + 1] : 0;
	return (lo >> s) | (hi << (64 - s));
}

} // namespace

BinaryImage
crop(BinaryImage const& img, BoundingBox const& box)
{
	if (box.width < 1 || box.height < 1 || box.min_col < 0 || box.min_row < 0 ||
	    box.max_col() >= img.width() || box.max_row() >= img.height()) {
		throw BoundsError(
			"crop box (" + std::to_string(box.min_col) + "," + std::to_string(box.min_row) + "," +
			std::to_string(box.width) + "," + std::to_string(box.height) + ") outside " +
			std::to_string(img.width()) + "x" + std::to_string(img.height()) + " image"
		);
	}
	BinaryImage out(box.width, box.height);
	for (int r = 0; r < box.height; ++r) {
		auto const src = img.row(r + box.min_row);
		auto dst = out.row(r);
		for (size_t w = 0; w < dst.size(); ++w) {
			dst[w] = read_bits(src, box.min_col + static_cast<long long>(w) * 64);
		}
	}
	out.clear_padding();
	return out;
}

BinaryImage
resize_nearest(BinaryImage const& img, int side)
{
	if (img.empty()) {
		throw DimensionError("cannot resize an empty image");
	}
	if (side < 1) {
		throw ParameterError("resize side must be positive");
	}
	std::vector<int> src_row(side), src_col(side);
	for (int i = 0; i < side; ++i) {
		src_row[i] = std::min(img.height() - 1, static_cast<int>((2LL * i + 1) * img.height() / (2LL * side)));
		src_col[i] = std::min(img.width() - 1, static_cast<int>((2LL * i + 1) * img.width() / (2LL * side)));
	}
	BinaryImage out(side, side);
	for (int r = 0; r < side; ++r) {
		for (int c = 0; c < side; ++c) {
			if (img.get(src_row[r], src_col[c])) {
				out.set(r, c, true);
			}
		}
	}
	return out;
}

long long
foreground_count(BinaryImage const& img)
{
	long long n = 0;
	for (auto const w : img.words()) {
		n += std::popcount(w);
	}
	return n;
}

BoundingBox
foreground_box(BinaryImage const& img)
{
	int r0 = img.height(), r1 = -1, c0 = img.width(), c1 = -1;
	for (int r = 0; r < img.height(); ++r) {
		auto const row = img.row(r);
		for (size_t w = 0; w < row.size(); ++w) {
			if (!row[w]) {
				continue;
			}
			int const lo = static_cast<int>(w) * 64 + std::countr_zero(row[w]);
			int const hi = static_cast<int>(w) * 64 + 63 - std::countl_zero(row[w]);
			r0 = std::min(r0, r);
			r1 = r;
			c0 = std::min(c0, lo);
			c1 = std::max(c1, hi);
		}
	}
	if (r1 < 0) {
		return {0, 0, 0, 0};
	}
	return {c0, r0, c1 - c0 + 1, r1 - r0 + 1};
}

} // namespace geez
