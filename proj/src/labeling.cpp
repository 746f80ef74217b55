/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#include "geez/labeling.hpp"

#include <algorithm>
#include <numeric>

namespace geez {

namespace {

class DisjointSet
{
public:
	int make()
	{
		int const id = static_cast<int>(m_parent.size());
		m_parent.push_back(id);
		return id;
	}

	int find(int x)
	{
		while (m_parent[x] != x) {
			m_parent[x] = m_parent[m_parent[x]];
			x = m_parent[x];
		}
		return x;
	}

	void unite(int a, int b)
	{
		a = find(a);
		b = find(b);
		if (a == b) {
			return;
		}
		// Keep the older root so roots stay the earliest provisional label.
		if (a < b) {
			m_parent[b] = a;
		} else {
			m_parent[a] = b;
		}
	}

	size_t size() const { return m_parent.size(); }

private:
	std::vector<int> m_parent;
};

} // namespace

LabelMap
label_components(BinaryImage const& img, Connectivity conn)
{
	int const h = img.height();
	int const w = img.width();
	LabelMap out{LabelMatrix::Zero(h, w), 0};
	DisjointSet ds;
	ds.make(); // provisional label 0 = background

	auto& lab = out.labels;
	for (int r = 0; r < h; ++r) {
		for (int c = 0; c < w; ++c) {
			if (!img.get(r, c)) {
				continue;
			}
			int best = 0;
			auto touch = [&](int rr, int cc) {
				if (rr < 0 || cc < 0 || cc >= w) {
					return;
				}
				int const l = lab(rr, cc);
				if (l == 0) {
					return;
				}
				if (best == 0) {
					best = l;
				} else {
					ds.unite(best, l);
				}
			};
			touch(r, c - 1);
			touch(r - 1, c);
			if (conn == Connectivity::eight) {
				touch(r - 1, c - 1);
				touch(r - 1, c + 1);
			}
			lab(r, c) = best != 0 ? best : ds.make();
		}
	}

	std::vector<int> final_label(ds.size(), 0);
	int next = 0;
	for (Eigen::Index i = 0; i < lab.size(); ++i) {
		int& l = lab.data()[i];
		if (l == 0) {
			continue;
		}
		int const root = ds.find(l);
		if (final_label[root] == 0) {
			final_label[root] = ++next;
		}
		l = final_label[root];
	}
	out.count = next;
	return out;
}

std::vector<BoundingBox>
component_boxes(LabelMap const& map)
{
	struct Extent
	{
		int r0, r1, c0, c1;
	};
	std::vector<Extent> ext(static_cast<size_t>(map.count), Extent{map.height(), -1, map.width(), -1});
	for (int r = 0; r < map.height(); ++r) {
		for (int c = 0; c < map.width(); ++c) {
			int const l = map.labels(r, c);
			if (l == 0) {
				continue;
			}
			auto& e = ext[l - 1];
			e.r0 = std::min(e.r0, r);
			e.r1 = std::max(e.r1, r);
			e.c0 = std::min(e.c0, c);
			e.c1 = std::max(e.c1, c);
		}
	}
	std::vector<BoundingBox> boxes;
	boxes.reserve(ext.size());
	for (auto const& e : ext) {
		boxes.push_back({e.c0, e.r0, e.c1 - e.c0 + 1, e.r1 - e.r0 + 1});
	}
	return boxes;
}

std::vector<long long>
component_areas(LabelMap const& map)
{
	std::vector<long long> area(static_cast<size_t>(map.count) + 1, 0);
	for (Eigen::Index i = 0; i < map.labels.size(); ++i) {
		++area[map.labels.data()[i]];
	}
	return area;
}

} // namespace geez
