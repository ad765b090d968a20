#pragma once

#include <cstdint>
#include <functional>

namespace trustgame {

// Worker cap for the exhaustive enumeration loops. Defaults to 1.
int worker_count();
void set_worker_count(int workers);

namespace detail {

// Splits [0, total) into chunks whose boundaries depend only on `total`
// and hands them to fn(chunk_index, begin, end), possibly from several
// threads. Callers merge per-chunk results in chunk order, so the outcome
// is identical for every worker count.
void for_chunks(std::uint64_t total,
                const std::function<void(int, std::uint64_t, std::uint64_t)>& fn);

inline constexpr int kChunkCount = 64;

}  // namespace detail
}  // namespace trustgame
