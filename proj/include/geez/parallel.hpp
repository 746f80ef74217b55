/*
 * Copyright 2026 The geez-ocr Authors
 */
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace geez {

/// Worker count: OCR_THREADS when set to a positive integer, else the hardware concurrency.
inline int
thread_budget()
{
	if (char const* env = std::getenv("OCR_THREADS")) {
		int const n = std::atoi(env);
		if (n > 0) {
			return n;
		}
	}
	return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, n). Each index is independent, so results do
/// not depend on scheduling. The first exception thrown is rethrown.
template <typename Fn>
void
parallel_for(int n, Fn&& fn)
{
	int const workers = std::min(thread_budget(), n);
	if (workers <= 1) {
		for (int i = 0; i < n; ++i) {
			fn(i);
		}
		return;
	}
	std::atomic<int> next{0};
	std::exception_ptr error;
	std::mutex error_mutex;
	auto body = [&] {
		for (int i = next++; i < n; i = next++) {
			try {
				fn(i);
			} catch (...) {
				std::lock_guard lock(error_mutex);
				if (!error) {
					error = std::current_exception();
				}
				next = n;
			}
		}
	};
	std::vector<std::jthread> pool;
	for (int t = 1; t < workers; ++t) {
		pool.emplace_back(body);
	}
	body();
	pool.clear();
	if (error) {
		std::rethrow_exception(error);
	}
}

} // namespace geez
