/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/segmentation.hpp"
#include "geez/error.hpp"
#include "geez/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace geez {

namespace {

std::vector<SegmentedChar>
crop_components(BinaryImage const& source, LabelMap const& map)
{
	std::vector<SegmentedChar> segs;
	for (auto const& box : component_boxes(map)) {
		BinaryImage glyph = crop(source, box);
		if (foreground_count(glyph) == 0) {
			continue;
		}
		segs.push_back({std::move(glyph), box, static_cast<int>(segs.size())});
	}
	return segs;
}

} // namespace

std::vector<SegmentedChar>
segment_plain(BinaryImage const& img, long long min_area)
{
	BinaryImage const opened = area_open(img, min_area);
	return crop_components(opened, label_components(opened));
}

StructuringElement
estimate_se(std::vector<BoundingBox> const& boxes, double scale)
{
	if (boxes.empty()) {
		throw ParameterError("cannot estimate a structuring element from zero boxes");
	}
	if (!(scale > 0.0)) {
		throw ParameterError("se scale must be positive");
	}
	double h = 0, w = 0;
	for (auto const& b : boxes) {
		h += b.height;
		w += b.width;
	}
	h /= static_cast<double>(boxes.size());
	w /= static_cast<double>(boxes.size());
	auto const rows = std::max(1L, std::lround(scale * h));
	auto const cols = std::max(1L, std::lround(scale * w));
	return StructuringElement(static_cast<int>(rows), static_cast<int>(cols));
}

std::vector<SegmentedChar>
segment_modified(BinaryImage const& img, SegmenterConfig const& cfg)
{
	BinaryImage const opened = area_open(img, cfg.min_area);
	if (opened.empty() || foreground_count(opened) == 0) {
		return {};
	}
	StructuringElement const se = cfg.se_override
		? *cfg.se_override
		: estimate_se(component_boxes(label_components(opened)), cfg.se_scale);
	BinaryImage const closed = erode_rect(dilate_rect(opened, se), se);
	return crop_components(opened, label_components(closed));
}

std::vector<SegmentedChar>
order_reading(std::vector<SegmentedChar> segs)
{
	size_t const n = segs.size();
	std::vector<size_t> parent(n);
	std::iota(parent.begin(), parent.end(), size_t{0});
	auto find = [&parent](size_t x) {
		while (parent[x] != x) {
			parent[x] = parent[parent[x]];
			x = parent[x];
		}
		return x;
	};

	for (size_t i = 0; i < n; ++i) {
		auto const& a = segs[i].source_box;
		for (size_t j = i + 1; j < n; ++j) {
			auto const& b = segs[j].source_box;
			int const overlap = std::min(a.max_row(), b.max_row()) - std::max(a.min_row, b.min_row) + 1;
			if (overlap <= 0) {
				continue;
			}
			if (2 * overlap >= std::min(a.height, b.height)) {
				size_t const ra = find(i), rb = find(j);
				if (ra != rb) {
					parent[std::max(ra, rb)] = std::min(ra, rb);
				}
			}
		}
	}

	struct Line
	{
		double row_sum = 0;
		int members = 0;
		std::vector<size_t> items;
	};
	std::vector<Line> lines;
	std::vector<int> line_of_root(n, -1);
	for (size_t i = 0; i < n; ++i) {
		size_t const root = find(i);
		if (line_of_root[root] < 0) {
			line_of_root[root] = static_cast<int>(lines.size());
			lines.emplace_back();
		}
		Line& line = lines[line_of_root[root]];
		auto const& b = segs[i].source_box;
		line.row_sum += b.min_row + (b.height - 1) / 2.0;
		++line.members;
		line.items.push_back(i);
	}
	std::stable_sort(lines.begin(), lines.end(), [](Line const& a, Line const& b) {
		return a.row_sum / a.members < b.row_sum / b.members;
	});

	std::vector<SegmentedChar> out;
	out.reserve(n);
	for (auto& line : lines) {
		std::stable_sort(line.items.begin(), line.items.end(), [&segs](size_t a, size_t b) {
			auto const& ba = segs[a].source_box;
			auto const& bb = segs[b].source_box;
			return ba.min_col != bb.min_col ? ba.min_col < bb.min_col : ba.min_row < bb.min_row;
		});
		for (size_t i : line.items) {
			out.push_back(std::move(segs[i]));
			out.back().order_index = static_cast<int>(out.size()) - 1;
		}
	}
	return out;
}

} // namespace geez
