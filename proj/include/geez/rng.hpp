/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace geez {

/// mt19937_64 with distribution code spelled out here, so sequences do not
/// depend on the standard library's distribution implementations.
class Rng
{
public:
	explicit Rng(std::uint64_t seed) : m_engine(seed) {}

	std::uint64_t next() { return m_engine(); }

	/// Uniform integer in [0, n), n > 0.
	std::uint64_t below(std::uint64_t n)
	{
		std::uint64_t const limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
		std::uint64_t v;
		do {
			v = m_engine();
		} while (v >= limit);
		return v % n;
	}

	/// Uniform integer in [lo, hi].
	int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }

	/// Uniform double in [0, 1).
	double uniform() { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }

	bool chance(double p) { return uniform() < p; }

	double normal()
	{
		double u1 = uniform();
		while (u1 <= 0.0) {
			u1 = uniform();
		}
		double const u2 = uniform();
		return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
	}

private:
	std::mt19937_64 m_engine;
};

/// Seeded Fisher-Yates permutation of 0..n-1.
inline std::vector<int>
seeded_permutation(int n, std::uint64_t seed)
{
	std::vector<int> p(static_cast<size_t>(n));
	std::iota(p.begin(), p.end(), 0);
	Rng rng(seed);
	for (int i = n - 1; i > 0; --i) {
		auto const j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
		std::swap(p[i], p[j]);
	}
	return p;
}

/// SplitMix64 finaliser, for deriving independent seeds from (seed, index) pairs.
inline std::uint64_t
mix_seed(std::uint64_t a, std::uint64_t b = 0)
{
	std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
	z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
	z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
	return z ^ (z >> 31);
}

} // namespace geez
