#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kempner {

/// A finite word over {0, ..., base-1}, most significant digit first.
class Word {
 public:
  Word() = default;
  /// Throws std::invalid_argument on an empty word, base < 2, or a symbol >= base.
  Word(std::vector<std::uint8_t> symbols, unsigned base = 2);

  /// Parses a digit string such as "0110". Throws std::invalid_argument.
  static Word parse(std::string_view text, unsigned base = 2);

  unsigned base() const noexcept { return base_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  std::span<const std::uint8_t> symbols() const noexcept { return symbols_; }
  std::uint8_t operator[](std::size_t i) const { return symbols_[i]; }

  bool is_all_zero() const noexcept;
  std::string str() const;

  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<std::uint8_t> symbols_;
  unsigned base_ = 2;
};

/// The digit statistic a restricted sum is taken over.
class StatisticSpec {
 public:
  struct DigitSum {
    unsigned base;
    friend bool operator==(const DigitSum&, const DigitSum&) = default;
  };
  struct BlockCount {
    Word word;
    friend bool operator==(const BlockCount&, const BlockCount&) = default;
  };

  static StatisticSpec digit_sum(unsigned base);
  static StatisticSpec block_count(Word word);

  bool is_digit_sum() const noexcept { return std::holds_alternative<DigitSum>(kind_); }
  bool is_block_count() const noexcept { return std::holds_alternative<BlockCount>(kind_); }
  unsigned base() const;
  const Word& word() const;

  /// s_b(n) or a_w(n).
  unsigned value(std::uint64_t n) const;

  /// "sb:<b>" or "word:<w>".
  std::string to_string() const;

  friend bool operator==(const StatisticSpec&, const StatisticSpec&) = default;

 private:
  explicit StatisticSpec(std::variant<DigitSum, BlockCount> kind) : kind_(std::move(kind)) {}
  std::variant<DigitSum, BlockCount> kind_;
};

namespace digitstat {

/// Integer whose binary digits are `t` (leading zeros allowed).
/// Throws std::domain_error for non-binary words or words longer than 63 symbols.
std::uint64_t word_value(const Word& t);

/// Sum of the base-b digits of n; digit_sum(0, b) = 0.
unsigned digit_sum(std::uint64_t n, unsigned base);

/// Number of base-b digits of n (0 for n = 0).
unsigned digit_count(std::uint64_t n, unsigned base);

/// Possibly overlapping occurrences of the binary word `w` in n.
///
/// Words that start with 0 but contain a 1 see n with |w|-1 leading zeros;
/// 0^l is matched against the canonical expansion. a_w(0) = 0.
unsigned count_occurrences(const Word& w, std::uint64_t n);

/// Precomputed form of count_occurrences for repeated queries with one word.
class WindowCounter {
 public:
  explicit WindowCounter(const Word& w);
  unsigned count(std::uint64_t n) const noexcept;

 private:
  std::uint64_t pattern_;
  std::uint64_t mask_;
  unsigned length_;
  bool padded_;  // starts with 0 and contains a 1
};

unsigned complement_digit(unsigned x);

bool is_suffix(const Word& z, const Word& w);

/// Streaming occurrence counter: a KMP automaton over {0,1} fed bits most
/// significant first. Independent of `count_occurrences`, which scans
/// fixed-width windows.
class BlockAutomaton {
 public:
  explicit BlockAutomaton(const Word& w);
  unsigned count(std::uint64_t n) const;

 private:
  std::vector<std::array<std::uint32_t, 2>> next_;
  std::size_t length_;
  bool pad_;
};

/// Calls `visit(n)` for every 1 <= n <= limit with statistic value k, in
/// ascending order. Digit sums are generated digit by digit (output
/// sensitive); block counts scan the range, except w = "1" which is s_2.
void for_each_in_class(const StatisticSpec& spec, unsigned k, std::uint64_t limit,
                       const std::function<void(std::uint64_t)>& visit);

/// Digit-sum class members among the fixed-width strings of `length` base-b
/// digits (leading zeros allowed) that start with `prefix`, ascending. Used
/// to split a class over [1, b^length) into fixed, thread-independent tasks.
void for_each_digit_sum_with_prefix(unsigned base, unsigned k, unsigned length,
                                    std::span<const std::uint8_t> prefix,
                                    const std::function<void(std::uint64_t)>& visit);

}  // namespace digitstat
}  // namespace kempner
