#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "kempner/engine.hpp"
#include "kempner/oracle.hpp"
#include "kempner/qw.hpp"
#include "kempner/transfer.hpp"

namespace kempner::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, text };

struct RunConfig {
  mpfr_prec_t precision = kDefaultPrecision;
  std::uint64_t N = 1'000'000;
  Format format = Format::text;
  std::string out_path;
  unsigned threads = 1;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) return std::nullopt;
  return value;
}

StatisticSpec require_spec(const std::string& text) {
  auto spec = parse_spec(text);
  if (!spec) throw UsageError("malformed spec '" + text + "' (expected s2, sb:<b> or word:<w>)");
  return *spec;
}

Word require_binary_word(const std::string& text) {
  if (text.empty() || text.size() > 62 || text.find_first_not_of("01") != std::string::npos) {
    throw UsageError("'" + text + "' is not a binary word of length 1..62");
  }
  return Word::parse(text);
}

// Decimal rendering shared by every command.
struct Printer {
  mpfr_prec_t precision;
  int digits;

  explicit Printer(mpfr_prec_t p) : precision(p), digits(decimal_digits(p)) {}

  std::string lo(const Enclosure& e) const { return e.lo().to_decimal(digits, Round::down); }
  std::string hi(const Enclosure& e) const { return e.hi().to_decimal(digits, Round::up); }
  std::string up(const Rational& q) const {
    return Float(q, precision + 16, Round::up).to_decimal(digits, Round::up);
  }
  std::string down(const Rational& q) const {
    return Float(q, precision + 16, Round::down).to_decimal(digits, Round::down);
  }
  std::string nearest(const Float& x) const { return x.to_decimal(digits, Round::nearest); }
  std::string interval(const Enclosure& e) const { return "[" + lo(e) + ", " + hi(e) + "]"; }
};

// Exact when short, otherwise a decimal approximation marked with '~'.
std::string rational_text(const Rational& q, const Printer& p) {
  std::string exact = to_string(q);
  if (exact.size() <= 120) return exact;
  return "~" + Float(q, p.precision + 16, Round::nearest).to_decimal(p.digits, Round::nearest);
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void write_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << cells[i];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void write_pairs(std::ostream& os, const Json& object, Format format) {
  if (format == Format::json) {
    os << object.dump(2) << '\n';
    return;
  }
  std::vector<std::string> header;
  std::vector<std::string> values;
  for (const auto& [key, value] : object.items()) {
    header.push_back(key);
    values.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  if (format == Format::csv) {
    write_csv(os, header, {values});
    return;
  }
  std::size_t w = 0;
  for (const auto& h : header) w = std::max(w, h.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    os << std::left << std::setw(static_cast<int>(w)) << header[i] << std::right << "  " << values[i] << '\n';
  }
}

engine::SumOptions sum_options(const RunConfig& config) {
  return {config.precision, config.threads};
}

// ---- limits

int cmd_limits(const std::string& spec_text, const RunConfig& config, std::ostream& out) {
  const StatisticSpec spec = require_spec(spec_text);
  const Printer p(config.precision);
  const Enclosure limit = engine::limit_value(spec, config.precision);
  Json j;
  j["spec"] = spec.to_string();
  j["limit_lo"] = p.lo(limit);
  j["limit_hi"] = p.hi(limit);
  write_pairs(out, j, config.format);
  return kOk;
}

// ---- converge

int cmd_converge(const std::string& spec_text, const std::string& k_text, const RunConfig& config,
                 std::ostream& out) {
  const StatisticSpec spec = require_spec(spec_text);
  const auto range = parse_k_range(k_text);
  if (!range) throw UsageError("malformed k range '" + k_text + "' (expected a..b)");
  const auto rows = engine::convergence_table(spec, range->first, range->second, config.N, sum_options(config));
  const Printer p(config.precision);

  const std::vector<std::string> keys{"spec",      "k",        "N",        "value_lo", "value_hi",
                                      "tail_bound", "limit_lo", "limit_hi", "gap_lo",   "gap_hi"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.push_back({r.spec.to_string(), std::to_string(r.k), std::to_string(r.N), p.lo(r.value),
                     p.hi(r.value), p.up(r.tail_bound), p.lo(r.limit), p.hi(r.limit), p.lo(r.gap),
                     p.hi(r.gap)});
  }
  switch (config.format) {
    case Format::json: {
      Json table = Json::array();
      for (const auto& c : cells) {
        Json row;
        for (std::size_t i = 0; i < keys.size(); ++i) row[keys[i]] = c[i];
        table.push_back(std::move(row));
      }
      out << table.dump(2) << '\n';
      break;
    }
    case Format::csv:
      write_csv(out, keys, cells);
      break;
    case Format::text: {
      out << "spec " << spec.to_string() << "  limit " << p.interval(engine::limit_value(spec, config.precision))
          << '\n';
      std::vector<std::vector<std::string>> shown;
      for (const auto& c : cells) shown.push_back({c[1], c[2], c[3], c[4], c[5], c[8], c[9]});
      write_table(out, {"k", "N", "value_lo", "value_hi", "tail_bound", "gap_lo", "gap_hi"}, shown);
      break;
    }
  }
  return kOk;
}

// ---- partial

int cmd_partial(const std::string& spec_text, unsigned k, bool exact, const RunConfig& config,
                std::ostream& out) {
  const StatisticSpec spec = require_spec(spec_text);
  const oracle::ClassQuery query{spec, k, config.N};
  const auto members = oracle::enumerate_class(query);
  const Rational sum = reciprocal_sum(members);
  const Printer p(config.precision);
  Json j;
  j["spec"] = spec.to_string();
  j["k"] = std::to_string(k);
  j["N"] = std::to_string(config.N);
  j["terms"] = std::to_string(members.size());
  j["sum_lo"] = p.down(sum);
  j["sum_hi"] = p.up(sum);
  if (exact) j["exact"] = to_string(sum);
  write_pairs(out, j, config.format);
  return kOk;
}

// ---- bw

int cmd_bw(const std::string& word_text, std::optional<std::uint64_t> eval_at, const RunConfig& config,
           std::ostream& out) {
  const Word w = require_binary_word(word_text);
  const qw::QwExpression e = qw::build(w);
  const auto coeff = qw::asymptotic_coefficients(e);
  const Printer p(config.precision);
  Json j;
  j["word"] = w.str();
  j["terms"] = e.to_string();
  j["term_count"] = std::to_string(e.terms().size());
  j["rational_function"] = e.rational_function();
  j["sign_sum"] = std::to_string(coeff.sign_sum);
  j["scale_sum"] = std::to_string(coeff.scale_sum);
  j["offset_sum"] = to_string(coeff.offset_sum);
  j["remainder_constant"] = to_string(qw::remainder_constant(e));
  if (eval_at) {
    const Enclosure v = qw::evaluate(e, *eval_at, config.precision);
    j["eval_n"] = std::to_string(*eval_at);
    j["eval_lo"] = p.lo(v);
    j["eval_hi"] = p.hi(v);
  }
  write_pairs(out, j, config.format);
  return kOk;
}

// ---- verify

struct Check {
  std::string name;
  bool holds;
  std::string lhs;
  std::string rhs;
};

struct VerifyArgs {
  std::optional<unsigned> b;
  std::optional<unsigned> k;
  std::optional<unsigned> j;
  std::optional<std::uint64_t> n;
  unsigned maxlen = 8;
};

Check from_identity(std::string name, const oracle::IdentityCheck& c, const Printer& p) {
  return {std::move(name), c.holds, rational_text(c.lhs, p), rational_text(c.rhs, p)};
}

std::vector<unsigned> values_or(const std::optional<unsigned>& v, unsigned first, unsigned last) {
  if (v) return {*v};
  std::vector<unsigned> out;
  for (unsigned x = first; x <= last; ++x) out.push_back(x);
  return out;
}

void suite_split(const VerifyArgs& a, const Printer& p, std::vector<Check>& out) {
  for (unsigned b : values_or(a.b, 2, 5))
    for (unsigned k : values_or(a.k, 1, 6))
      for (unsigned J : values_or(a.j, 1, 6)) {
        std::ostringstream name;
        name << "split b=" << b << " k=" << k << " J=" << J;
        out.push_back(from_identity(name.str(), oracle::split_identity_check(b, k, J), p));
      }
}

void suite_vsum(const VerifyArgs& a, const Printer& p, std::vector<Check>& out) {
  const std::uint64_t n_max = a.n.value_or(500);
  for (unsigned b : values_or(a.b, 2, 10)) {
    const auto sweep = oracle::vsum_identity_sweep(b, n_max);
    std::size_t good = 0;
    for (const auto& c : sweep) good += c.holds ? 1 : 0;
    std::ostringstream name;
    name << "vsum b=" << b << " N=1.." << n_max << " (" << good << "/" << sweep.size() << " hold)";
    Check check = from_identity(name.str(), sweep.back(), p);
    check.holds = good == sweep.size();
    out.push_back(std::move(check));
  }
}

void suite_partition(const VerifyArgs& a, const Printer& p, std::vector<Check>& out) {
  for (unsigned b : values_or(a.b, 2, 3))
    for (unsigned J : values_or(a.j, 1, 10)) {
      std::ostringstream name;
      name << "partition b=" << b << " J=" << J;
      out.push_back(from_identity(name.str(), oracle::class_partition_check(b, J), p));
    }
}

void suite_qw(const VerifyArgs& a, std::vector<Check>& out) {
  std::size_t words = 0;
  std::size_t good = 0;
  std::string first_bad;
  for (unsigned len = 1; len <= a.maxlen; ++len) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      std::vector<std::uint8_t> symbols(len);
      for (unsigned i = 0; i < len; ++i) symbols[i] = static_cast<std::uint8_t>((bits >> (len - 1 - i)) & 1);
      const Word w(symbols);
      const auto c = qw::asymptotic_coefficients(qw::build(w));
      Rational expected(1, 1);
      expected /= Rational(power(2, len));
      const bool ok = c.sign_sum == 0 && c.scale_sum == 0 && c.offset_sum == -expected;
      ++words;
      if (ok) {
        ++good;
      } else if (first_bad.empty()) {
        first_bad = w.str();
      }
    }
  }
  std::ostringstream name;
  name << "qw invariants |w|<=" << a.maxlen;
  out.push_back({name.str(), good == words, std::to_string(good) + " words hold",
                 std::to_string(words) + " words" + (first_bad.empty() ? "" : ", first failure " + first_bad)});
}

void suite_transfer(const VerifyArgs& a, const Printer& p, std::vector<Check>& out) {
  for (unsigned b : values_or(a.b, 3, 12)) {
    const auto poly = transfer::corollary_polynomial(b);
    const Enclosure m = transfer::max_root_modulus(poly, p.precision);
    out.push_back({"transfer b=" + std::to_string(b) + " max root modulus < 1", m.hi() < Float(1, 2),
                   p.hi(m), "1"});
    const auto lhs = transfer::Polynomial({Rational(-1), Rational(1)}) * poly;
    const auto rhs = transfer::corollary_expansion(b);
    out.push_back({"transfer b=" + std::to_string(b) + " (1-X)P(X) expansion", lhs == rhs, lhs.to_string(),
                   rhs.to_string()});
  }
}

int cmd_verify(const std::string& suite, const VerifyArgs& args, const RunConfig& config, std::ostream& out) {
  const Printer p(config.precision);
  std::vector<Check> checks;
  const bool all = suite == "all";
  if (all || suite == "split") suite_split(args, p, checks);
  if (all || suite == "vsum") suite_vsum(args, p, checks);
  if (all || suite == "partition") suite_partition(args, p, checks);
  if (all || suite == "qw") suite_qw(args, checks);
  if (all || suite == "transfer") suite_transfer(args, p, checks);
  if (checks.empty()) throw UsageError("unknown suite '" + suite + "'");

  bool passed = true;
  for (const auto& c : checks) passed = passed && c.holds;

  switch (config.format) {
    case Format::json: {
      Json report;
      report["suite"] = suite;
      report["passed"] = passed;
      report["checks"] = Json::array();
      for (const auto& c : checks) {
        Json item;
        item["name"] = c.name;
        item["holds"] = c.holds;
        item["lhs"] = c.lhs;
        item["rhs"] = c.rhs;
        report["checks"].push_back(std::move(item));
      }
      out << report.dump(2) << '\n';
      break;
    }
    case Format::csv: {
      std::vector<std::vector<std::string>> rows;
      for (const auto& c : checks) rows.push_back({c.name, c.holds ? "pass" : "FAIL", c.lhs, c.rhs});
      write_csv(out, {"name", "result", "lhs", "rhs"}, rows);
      break;
    }
    case Format::text:
      for (const auto& c : checks) {
        out << (c.holds ? "pass  " : "FAIL  ") << c.name << "  lhs=" << c.lhs << "  rhs=" << c.rhs << '\n';
      }
      out << (passed ? "all checks passed" : "some checks FAILED") << '\n';
      break;
  }
  return passed ? kOk : kFailure;
}

// ---- transfer

int cmd_transfer(unsigned b, const RunConfig& config, std::ostream& out) {
  if (b < 2) throw UsageError("--b must be >= 2");
  const auto poly = transfer::corollary_polynomial(b);
  const Printer p(config.precision);
  Json j;
  j["b"] = std::to_string(b);
  j["polynomial"] = poly.to_string();
  if (poly.degree() == 0) {
    j["roots"] = Json::array();
    j["note"] = "constant polynomial, the filter is the identity";
    if (config.format == Format::json) {
      out << j.dump(2) << '\n';
    } else {
      write_pairs(out, j, config.format);
    }
    return kOk;
  }
  const auto report = transfer::find_roots(poly, config.precision);
  const bool below_one = report.max_modulus.hi() < Float(1, 2);

  if (config.format == Format::json) {
    j["roots"] = Json::array();
    for (const auto& r : report.roots) {
      Json root;
      root["re"] = p.nearest(r.re);
      root["im"] = p.nearest(r.im);
      root["radius"] = r.radius.to_decimal(6, Round::up);
      root["modulus_lo"] = p.lo(r.modulus);
      root["modulus_hi"] = p.hi(r.modulus);
      j["roots"].push_back(std::move(root));
    }
    j["isolated"] = report.isolated;
    j["max_modulus_lo"] = p.lo(report.max_modulus);
    j["max_modulus_hi"] = p.hi(report.max_modulus);
    j["below_one"] = below_one;
    out << j.dump(2) << '\n';
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.roots) {
      rows.push_back({p.nearest(r.re), p.nearest(r.im), r.radius.to_decimal(6, Round::up), p.lo(r.modulus),
                      p.hi(r.modulus)});
    }
    const std::vector<std::string> header{"re", "im", "radius", "modulus_lo", "modulus_hi"};
    if (config.format == Format::csv) {
      write_csv(out, header, rows);
    } else {
      out << "P(X) = " << poly.to_string() << '\n';
      write_table(out, header, rows);
      out << "max modulus " << p.interval(report.max_modulus) << (below_one ? "  < 1" : "  NOT < 1")
          << (report.isolated ? "" : "  (disks overlap)") << '\n';
    }
  }
  return below_one ? kOk : kFailure;
}

}  // namespace

std::optional<StatisticSpec> parse_spec(std::string_view text) {
  if (text == "s2") return StatisticSpec::digit_sum(2);
  if (text.starts_with("sb:")) {
    const auto b = parse_number<unsigned>(text.substr(3));
    if (!b || *b < 2 || *b > 1000) return std::nullopt;
    return StatisticSpec::digit_sum(*b);
  }
  if (text.starts_with("word:")) {
    const auto w = text.substr(5);
    if (w.empty() || w.size() > 62 || w.find_first_not_of("01") != std::string_view::npos) return std::nullopt;
    return StatisticSpec::block_count(Word::parse(w));
  }
  return std::nullopt;
}

std::optional<std::pair<unsigned, unsigned>> parse_k_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto k = parse_number<unsigned>(text);
    if (!k) return std::nullopt;
    return std::pair{*k, *k};
  }
  const auto a = parse_number<unsigned>(text.substr(0, dots));
  const auto b = parse_number<unsigned>(text.substr(dots + 2));
  if (!a || !b) return std::nullopt;
  return std::pair{*a, *b};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified restricted harmonic sums over digit statistics", "kempner"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "text";
  app.add_option("--precision", config.precision, "Working precision in bits")
      ->check(CLI::Range(32, 1 << 20))
      ->capture_default_str();
  app.add_option("--n", config.N, "Summation bound N")->check(CLI::Range(std::uint64_t{1}, UINT64_MAX))
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--out", config.out_path, "Write output to this file instead of stdout");
  app.add_option("--threads", config.threads, "Worker threads for summation")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  std::string spec_text;
  auto* limits = app.add_subcommand("limits", "Enclosure of the limit constant");
  limits->add_option("spec", spec_text, "s2, sb:<b> or word:<w>")->required();

  std::string k_text;
  auto* converge = app.add_subcommand("converge", "Certified convergence table over k");
  converge->add_option("spec", spec_text, "s2, sb:<b> or word:<w>")->required();
  converge->add_option("--k", k_text, "k range a..b")->required();

  unsigned partial_k = 0;
  bool exact = false;
  auto* partial = app.add_subcommand("partial", "Exact partial class sum up to N");
  partial->add_option("spec", spec_text, "s2, sb:<b> or word:<w>")->required();
  partial->add_option("--k", partial_k, "Statistic value k")->required();
  partial->add_flag("--exact", exact, "Also print the exact fraction");

  std::string word_text;
  std::optional<std::uint64_t> eval_at;
  auto* bw = app.add_subcommand("bw", "log b_w(n) as a combination of log(2^l n + c)");
  bw->add_option("word", word_text, "Binary word")->required();
  bw->add_option("--eval", eval_at, "Also enclose log b_w(n) at this n");

  std::string suite;
  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Exact identity suites");
  verify->add_option("suite", suite, "split, vsum, partition, qw, transfer or all")
      ->required()
      ->check(CLI::IsMember({"split", "vsum", "partition", "qw", "transfer", "all"}));
  verify->add_option("--b", verify_args.b, "Base");
  verify->add_option("--k", verify_args.k, "Digit sum k");
  verify->add_option("--j", verify_args.j, "Length J");
  verify->add_option("--maxlen", verify_args.maxlen, "Longest word for the qw suite")->check(CLI::Range(1, 20));

  unsigned transfer_b = 0;
  auto* transfer_cmd = app.add_subcommand("transfer", "Roots of the corollary polynomial");
  transfer_cmd->add_option("--b", transfer_b, "Base")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  config.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
  // --n doubles as the vsum bound inside `verify`.
  if (app.count("--n") > 0) verify_args.n = config.N;

  std::ofstream file;
  if (!config.out_path.empty()) {
    file.open(config.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << config.out_path << " for writing\n";
      return kFailure;
    }
  }
  std::ostream& sink = config.out_path.empty() ? out : file;

  try {
    if (*limits) return cmd_limits(spec_text, config, sink);
    if (*converge) return cmd_converge(spec_text, k_text, config, sink);
    if (*partial) return cmd_partial(spec_text, partial_k, exact, config, sink);
    if (*bw) return cmd_bw(word_text, eval_at, config, sink);
    if (*verify) {
      if (verify_args.n && *verify_args.n < 1) throw UsageError("--n must be >= 1");
      return cmd_verify(suite, verify_args, config, sink);
    }
    if (*transfer_cmd) return cmd_transfer(transfer_b, config, sink);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace kempner::cli
