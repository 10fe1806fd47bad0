#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rouser {

// Mixes a base seed with stream identifiers (epoch index, sample index, ...)
// into an independent 64-bit seed. splitmix64 finalizer.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                       std::uint64_t c = 0);

// Fisher-Yates with explicit draws so the permutation depends only on the
// seed, not on the standard library's std::shuffle internals.
void deterministic_shuffle(std::vector<std::size_t>& indices, std::uint64_t seed);

// FNV-1a over a byte range; used for weight fingerprints in metrics headers.
std::uint64_t fnv1a_init();
std::uint64_t fnv1a_update(std::uint64_t h, const void* data, std::size_t n);

// Formats a double with 9 significant digits (metrics CSV contract).
std::string format_sig9(double x);

// Formats a double so that parsing the text recovers the exact same value
// (config round-trips).
std::string format_exact(double x);

// Worker count for batch-level parallelism: ROUSER_THREADS if set, else
// hardware concurrency. Always >= 1.
int worker_threads();

// Runs fn(i) for i in [0, n). Results must not depend on scheduling; callers
// write into per-index slots and reduce in index order afterwards. The first
// exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Same, with an explicit worker count instead of worker_threads().
void parallel_for_workers(std::size_t n, int workers,
                          const std::function<void(std::size_t)>& fn);

// 16 hex digits, zero padded; the fingerprint notation in metrics headers.
std::string format_hex16(std::uint64_t value);

}  // namespace rouser
