#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace fuzzyrel {

/// Runs fn(i) for i in [0, n), split into contiguous chunks over `threads`
/// worker threads. Each index is visited exactly once; fn must only write
/// state owned by index i.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
	threads = std::max(1u, threads);
	if (threads == 1 || n < 2) {
		for (std::size_t i = 0; i < n; ++i) {
			fn(i);
		}
		return;
	}
	const std::size_t workers = std::min<std::size_t>(threads, n);
	const std::size_t chunk = (n + workers - 1) / workers;
	std::vector<std::jthread> pool;
	pool.reserve(workers);
	for (std::size_t w = 0; w < workers; ++w) {
		const std::size_t lo = w * chunk;
		const std::size_t hi = std::min(n, lo + chunk);
		pool.emplace_back([lo, hi, &fn] {
			for (std::size_t i = lo; i < hi; ++i) {
				fn(i);
			}
		});
	}
}

} // namespace fuzzyrel
