#include "kempner/digitstat.hpp"

#include <bit>
#include <stdexcept>

namespace kempner {

Word::Word(std::vector<std::uint8_t> symbols, unsigned base)
    : symbols_(std::move(symbols)), base_(base) {
  if (base_ < 2) {
    throw std::invalid_argument("Word: base must be >= 2");
  }
  if (symbols_.empty()) {
    throw std::invalid_argument("Word: empty word");
  }
  for (auto s : symbols_) {
    if (s >= base_) {
      throw std::invalid_argument("Word: symbol out of range for base");
    }
  }
}

Word Word::parse(std::string_view text, unsigned base) {
  std::vector<std::uint8_t> symbols;
  symbols.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("Word: non-digit character '" + std::string(1, c) + "'");
    }
    symbols.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Word(std::move(symbols), base);
}

bool Word::is_all_zero() const noexcept {
  for (auto s : symbols_) {
    if (s != 0) return false;
  }
  return true;
}

std::string Word::str() const {
  std::string out;
  out.reserve(symbols_.size());
  for (auto s : symbols_) {
    out.push_back(static_cast<char>('0' + s));
  }
  return out;
}

StatisticSpec StatisticSpec::digit_sum(unsigned base) {
  if (base < 2) {
    throw std::invalid_argument("StatisticSpec: digit-sum base must be >= 2");
  }
  return StatisticSpec(DigitSum{base});
}

StatisticSpec StatisticSpec::block_count(Word word) {
  if (word.empty() || word.base() != 2) {
    throw std::invalid_argument("StatisticSpec: block count needs a nonempty binary word");
  }
  return StatisticSpec(BlockCount{std::move(word)});
}

unsigned StatisticSpec::base() const {
  if (const auto* d = std::get_if<DigitSum>(&kind_)) {
    return d->base;
  }
  return 2;
}

const Word& StatisticSpec::word() const {
  if (const auto* b = std::get_if<BlockCount>(&kind_)) {
    return b->word;
  }
  throw std::logic_error("StatisticSpec::word on a digit-sum statistic");
}

unsigned StatisticSpec::value(std::uint64_t n) const {
  if (const auto* d = std::get_if<DigitSum>(&kind_)) {
    return digitstat::digit_sum(n, d->base);
  }
  return digitstat::count_occurrences(std::get<BlockCount>(kind_).word, n);
}

std::string StatisticSpec::to_string() const {
  if (const auto* d = std::get_if<DigitSum>(&kind_)) {
    return "sb:" + std::to_string(d->base);
  }
  return "word:" + std::get<BlockCount>(kind_).word.str();
}

namespace digitstat {

namespace {

void require_binary(const Word& w, const char* what) {
  if (w.base() != 2) {
    throw std::domain_error(std::string(what) + ": word must be binary");
  }
}

}  // namespace

std::uint64_t word_value(const Word& t) {
  require_binary(t, "word_value");
  if (t.size() > 63) {
    throw std::domain_error("word_value: word longer than 63 symbols");
  }
  std::uint64_t v = 0;
  for (auto s : t.symbols()) {
    v = (v << 1) | s;
  }
  return v;
}

unsigned digit_sum(std::uint64_t n, unsigned base) {
  if (base == 2) {
    return static_cast<unsigned>(std::popcount(n));
  }
  unsigned s = 0;
  while (n != 0) {
    s += static_cast<unsigned>(n % base);
    n /= base;
  }
  return s;
}

unsigned digit_count(std::uint64_t n, unsigned base) {
  unsigned c = 0;
  while (n != 0) {
    ++c;
    n /= base;
  }
  return c;
}

WindowCounter::WindowCounter(const Word& w)
    : pattern_(0), mask_(0), length_(static_cast<unsigned>(w.size())), padded_(false) {
  require_binary(w, "WindowCounter");
  pattern_ = word_value(w);
  mask_ = (std::uint64_t{1} << length_) - 1;
  padded_ = !w.is_all_zero() && w[0] == 0;
}

unsigned WindowCounter::count(std::uint64_t n) const noexcept {
  if (n == 0) {
    return 0;
  }
  const auto bits = static_cast<unsigned>(std::bit_width(n));
  // The window starting at bit i covers bits i .. i+r-1 (bit 0 least
  // significant); windows reaching past the top bit read padding zeros.
  unsigned last_start;
  if (padded_) {
    last_start = bits - 1;
  } else {
    if (bits < length_) return 0;
    last_start = bits - length_;
  }
  unsigned count = 0;
  for (unsigned i = 0; i <= last_start; ++i) {
    count += ((n >> i) & mask_) == pattern_;
  }
  return count;
}

unsigned count_occurrences(const Word& w, std::uint64_t n) { return WindowCounter(w).count(n); }

unsigned complement_digit(unsigned x) {
  if (x > 1) {
    throw std::domain_error("complement_digit: not a binary digit");
  }
  return 1 - x;
}

bool is_suffix(const Word& z, const Word& w) {
  if (z.size() > w.size()) {
    return false;
  }
  const auto offset = w.size() - z.size();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] != w[offset + i]) return false;
  }
  return true;
}

BlockAutomaton::BlockAutomaton(const Word& w)
    : length_(w.size()), pad_(!w.is_all_zero() && w[0] == 0) {
  require_binary(w, "BlockAutomaton");
  // Standard KMP failure function, then the full transition table.
  std::vector<std::size_t> fail(length_ + 1, 0);
  for (std::size_t i = 1, j = 0; i < length_; ++i) {
    while (j > 0 && w[i] != w[j]) j = fail[j];
    if (w[i] == w[j]) ++j;
    fail[i + 1] = j;
  }
  next_.assign(length_ + 1, {0, 0});
  for (std::size_t state = 0; state <= length_; ++state) {
    for (std::uint8_t bit = 0; bit < 2; ++bit) {
      std::size_t j = state == length_ ? fail[state] : state;
      while (j > 0 && w[j] != bit) j = fail[j];
      if (w[j] == bit) ++j;
      next_[state][bit] = static_cast<std::uint32_t>(j);
    }
  }
}

unsigned BlockAutomaton::count(std::uint64_t n) const {
  if (n == 0) {
    return 0;
  }
  std::size_t state = 0;
  unsigned hits = 0;
  if (pad_) {
    for (std::size_t i = 0; i + 1 < length_; ++i) {
      state = next_[state][0];
      if (state == length_) ++hits;
    }
  }
  for (int i = std::bit_width(n) - 1; i >= 0; --i) {
    state = next_[state][(n >> i) & 1];
    if (state == length_) ++hits;
  }
  return hits;
}

namespace {

struct DigitSumWalker {
  unsigned base;
  std::vector<unsigned> limit_digits;  // most significant first, fixed width
  const std::function<void(std::uint64_t)>& visit;

  // Emits every number whose remaining `positions` digits sum to `remaining`.
  void walk(std::size_t pos, std::uint64_t prefix, unsigned remaining, bool tight) const {
    const std::size_t positions = limit_digits.size() - pos;
    if (positions == 0) {
      if (remaining == 0 && prefix != 0) visit(prefix);
      return;
    }
    if (static_cast<std::uint64_t>(remaining) > static_cast<std::uint64_t>(positions) * (base - 1)) {
      return;
    }
    const unsigned top = tight ? limit_digits[pos] : base - 1;
    for (unsigned d = 0; d <= top && d <= remaining; ++d) {
      walk(pos + 1, prefix * base + d, remaining - d, tight && d == top);
    }
  }
};

}  // namespace

void for_each_in_class(const StatisticSpec& spec, unsigned k, std::uint64_t limit,
                       const std::function<void(std::uint64_t)>& visit) {
  if (limit == 0) {
    return;
  }
  const bool digit_sum_like =
      spec.is_digit_sum() || (spec.word().size() == 1 && spec.word()[0] == 1);
  if (digit_sum_like) {
    if (k == 0) {
      return;  // only n = 0 has digit sum 0
    }
    const unsigned base = spec.base();
    DigitSumWalker walker{base, {}, visit};
    for (std::uint64_t m = limit; m != 0; m /= base) {
      walker.limit_digits.insert(walker.limit_digits.begin(), static_cast<unsigned>(m % base));
    }
    walker.walk(0, 0, k, true);
    return;
  }
  const WindowCounter counter(spec.word());
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (counter.count(n) == k) {
      visit(n);
    }
    if (n == UINT64_MAX) break;
  }
}

void for_each_digit_sum_with_prefix(unsigned base, unsigned k, unsigned length,
                                    std::span<const std::uint8_t> prefix,
                                    const std::function<void(std::uint64_t)>& visit) {
  if (prefix.size() > length) {
    throw std::invalid_argument("for_each_digit_sum_with_prefix: prefix longer than length");
  }
  std::uint64_t head = 0;
  unsigned used = 0;
  for (auto d : prefix) {
    if (d >= base) throw std::invalid_argument("for_each_digit_sum_with_prefix: bad digit");
    head = head * base + d;
    used += d;
  }
  if (used > k) {
    return;
  }
  DigitSumWalker walker{base, std::vector<unsigned>(length, base - 1), visit};
  walker.walk(prefix.size(), head, k - used, false);
}

}  // namespace digitstat
}  // namespace kempner
