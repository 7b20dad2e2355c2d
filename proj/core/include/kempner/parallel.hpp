#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "kempner/enclosure.hpp"

namespace kempner::parallel {

/// Runs task(0) .. task(count-1) on up to `threads` workers and returns the
/// results indexed by task. The task list is fixed by the caller, so the
/// returned vector does not depend on the thread count. The first exception
/// thrown by any task is rethrown here.
std::vector<Enclosure> run_tasks(std::size_t count, unsigned threads,
                                 const std::function<Enclosure(std::size_t)>& task);

/// Sum of `parts` in index order with outward rounding.
Enclosure ordered_sum(const std::vector<Enclosure>& parts, mpfr_prec_t precision);

/// Splits [first, last] into consecutive blocks of `block_size` indices.
struct IndexBlocks {
  std::uint64_t first;
  std::uint64_t last;
  std::uint64_t block_size;

  std::size_t count() const;
  std::uint64_t block_first(std::size_t i) const;
  std::uint64_t block_last(std::size_t i) const;
};

}  // namespace kempner::parallel
