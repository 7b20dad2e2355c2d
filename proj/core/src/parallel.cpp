#include "kempner/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace kempner::parallel {

std::vector<Enclosure> run_tasks(std::size_t count, unsigned threads,
                                 const std::function<Enclosure(std::size_t)>& task) {
  std::vector<std::optional<Enclosure>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        slots[i] = task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Enclosure> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

Enclosure ordered_sum(const std::vector<Enclosure>& parts, mpfr_prec_t precision) {
  Enclosure total(precision);
  for (const auto& p : parts) total += p;
  return total;
}

std::size_t IndexBlocks::count() const {
  if (last < first) return 0;
  return static_cast<std::size_t>((last - first) / block_size + 1);
}

std::uint64_t IndexBlocks::block_first(std::size_t i) const { return first + i * block_size; }

std::uint64_t IndexBlocks::block_last(std::size_t i) const {
  const std::uint64_t start = block_first(i);
  return (last - start < block_size) ? last : start + block_size - 1;
}

}  // namespace kempner::parallel
