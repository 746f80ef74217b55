/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace geez {

using GrayMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using BitMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using LabelMatrix = Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// 8-bit intensity raster, row-major, at least 1x1.
class GrayImage
{
public:
	GrayImage(int width, int height, std::uint8_t fill = 0);
	explicit GrayImage(GrayMatrix pixels);

	int width() const { return static_cast<int>(m_pixels.cols()); }
	int height() const { return static_cast<int>(m_pixels.rows()); }

	std::uint8_t operator()(int row, int col) const { return m_pixels(row, col); }
	std::uint8_t& operator()(int row, int col) { return m_pixels(row, col); }

	GrayMatrix const& pixels() const { return m_pixels; }

	friend bool operator==(GrayImage const& a, GrayImage const& b) { return a.m_pixels == b.m_pixels; }

private:
	GrayMatrix m_pixels;
};

/**
 * Bit-packed binary raster. Each row occupies a whole number of 64-bit
 * words; column c of a row lives in bit (c % 64) of word (c / 64), so the
 * least significant bit is the leftmost pixel. 1 = foreground = ink.
 *
 * Padding bits past width() in the last word of a row are always zero.
 * Every kernel that writes words directly must call clear_padding()
 * (or otherwise keep the invariant) before handing the image out.
 */
class BinaryImage
{
public:
	using Word = std::uint64_t;
	static constexpr int word_bits = 64;

	BinaryImage() = default;
	BinaryImage(int width, int height, bool fill = false);

	int width() const { return m_width; }
	int height() const { return m_height; }
	int words_per_row() const { return m_wpr; }
	bool empty() const { return m_width == 0 || m_height == 0; }

	bool get(int row, int col) const
	{
		Word const w = m_words[static_cast<size_t>(row) * m_wpr + (col >> 6)];
		return (w >> (col & 63)) & 1u;
	}

	void set(int row, int col, bool value)
	{
		Word& w = m_words[static_cast<size_t>(row) * m_wpr + (col >> 6)];
		Word const bit = Word(1) << (col & 63);
		if (value) {
			w |= bit;
		} else {
			w &= ~bit;
		}
	}

	std::span<Word const> row(int r) const
	{
		return {m_words.data() + static_cast<size_t>(r) * m_wpr, static_cast<size_t>(m_wpr)};
	}

	std::span<Word> row(int r)
	{
		return {m_words.data() + static_cast<size_t>(r) * m_wpr, static_cast<size_t>(m_wpr)};
	}

	std::span<Word const> words() const { return m_words; }

	/// Mask covering the valid bits of the last word in a row.
	Word last_word_mask() const;

	void clear_padding();

	friend bool operator==(BinaryImage const&, BinaryImage const&) = default;

private:
	int m_width = 0;
	int m_height = 0;
	int m_wpr = 0;
	std::vector<Word> m_words;
};

/// Tightest axis-aligned box. Min corner plus extents, integer pixel centres.
struct BoundingBox
{
	int min_col = 0;
	int min_row = 0;
	int width = 0;
	int height = 0;

	int max_col() const { return min_col + width - 1; }
	int max_row() const { return min_row + height - 1; }
	long long area() const { return static_cast<long long>(width) * height; }

	friend bool operator==(BoundingBox const&, BoundingBox const&) = default;
};

long long intersection_area(BoundingBox const& a, BoundingBox const& b);
double iou(BoundingBox const& a, BoundingBox const& b);

/// Component labels, 0 = background, 1..count() = 8-connected components.
struct LabelMap
{
	LabelMatrix labels;
	int count = 0;

	int width() const { return static_cast<int>(labels.cols()); }
	int height() const { return static_cast<int>(labels.rows()); }
};

/// Rectangular structuring element of `rows` x `cols` with origin at (rows/2, cols/2).
class StructuringElement
{
public:
	StructuringElement(int rows, int cols);

	int rows() const { return m_rows; }
	int cols() const { return m_cols; }
	int origin_row() const { return m_rows / 2; }
	int origin_col() const { return m_cols / 2; }

	friend bool operator==(StructuringElement const&, StructuringElement const&) = default;

private:
	int m_rows;
	int m_cols;
};

BinaryImage pack(std::vector<std::vector<std::uint8_t>> const& bits);
BinaryImage pack(BitMatrix const& bits);
std::vector<std::vector<std::uint8_t>> unpack(BinaryImage const& img);
BitMatrix to_matrix(BinaryImage const& img);

BinaryImage complement(BinaryImage const& img);
BinaryImage crop(BinaryImage const& img, BoundingBox const& box);

/// Nearest-neighbour resample to side x side. Output pixel (r, c) samples
/// source ((r + 0.5) * h / side, (c + 0.5) * w / side), floored.
BinaryImage resize_nearest(BinaryImage const& img, int side);

long long foreground_count(BinaryImage const& img);

/// Tight box around all foreground pixels. Width and height are 0 when there are none.
BoundingBox foreground_box(BinaryImage const& img);

} // namespace geez
