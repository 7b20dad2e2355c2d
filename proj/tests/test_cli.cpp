#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace kempner::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Parse, Specs) {
  EXPECT_EQ(parse_spec("s2")->to_string(), "sb:2");
  EXPECT_EQ(parse_spec("sb:10")->to_string(), "sb:10");
  EXPECT_EQ(parse_spec("word:0110")->to_string(), "word:0110");
  EXPECT_FALSE(parse_spec("sb:1"));
  EXPECT_FALSE(parse_spec("sb:"));
  EXPECT_FALSE(parse_spec("word:012"));
  EXPECT_FALSE(parse_spec("word:"));
  EXPECT_FALSE(parse_spec("s3"));
}

TEST(Parse, KRange) {
  EXPECT_EQ(parse_k_range("2..8"), (std::pair<unsigned, unsigned>{2, 8}));
  EXPECT_EQ(parse_k_range("4"), (std::pair<unsigned, unsigned>{4, 4}));
  EXPECT_FALSE(parse_k_range("a..2"));
  EXPECT_FALSE(parse_k_range("2.."));
}

TEST(Limits, JsonKeys) {
  const auto r = invoke({"limits", "word:11", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["spec"], "word:11");
  EXPECT_EQ(j["limit_lo"].get<std::string>().substr(0, 12), "2.7725887222");
}

TEST(Limits, MalformedSpecIsUsageError) {
  EXPECT_EQ(invoke({"limits", "bogus"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"limits", "s2", "--precision", "8"}).code, 2);
  EXPECT_EQ(invoke({"limits", "s2", "--format", "xml"}).code, 2);
}

TEST(Converge, RowsAndKeyOrder) {
  const auto r = invoke({"converge", "s2", "--k", "2..4", "--n", "1000", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::ordered_json::parse(r.out);
  ASSERT_EQ(j.size(), 3u);
  std::vector<std::string> keys;
  for (const auto& [key, value] : j[0].items()) {
    keys.push_back(key);
    EXPECT_TRUE(value.is_string()) << key;
  }
  EXPECT_EQ(keys, (std::vector<std::string>{"spec", "k", "N", "value_lo", "value_hi", "tail_bound", "limit_lo",
                                            "limit_hi", "gap_lo", "gap_hi"}));
  EXPECT_EQ(j[0]["k"], "2");
  EXPECT_EQ(j[2]["k"], "4");
}

TEST(Converge, EmptyRange) {
  const auto r = invoke({"converge", "s2", "--k", "5..2", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::ordered_json::parse(r.out).size(), 0u);
}

TEST(Converge, CsvHeader) {
  const auto r = invoke({"converge", "word:11", "--k", "0..1", "--n", "500", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "spec,k,N,value_lo,value_hi,tail_bound,limit_lo,limit_hi,gap_lo,gap_hi");
}

TEST(Converge, EngineErrorIsFailure) {
  const auto r = invoke({"converge", "sb:3", "--k", "40", "--n", "1000"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("too small"), std::string::npos);
}

// s2 and word:1 are different routes to the same numbers.
TEST(Converge, DigitSumAndWordOneAgree) {
  const auto a = nlohmann::ordered_json::parse(
      invoke({"converge", "s2", "--k", "3", "--n", "20000", "--format", "json", "--precision", "64"}).out);
  const auto b = nlohmann::ordered_json::parse(
      invoke({"converge", "word:1", "--k", "3", "--n", "20000", "--format", "json", "--precision", "64"}).out);
  EXPECT_EQ(a[0]["value_lo"].get<std::string>().substr(0, 6), b[0]["value_lo"].get<std::string>().substr(0, 6));
  EXPECT_EQ(a[0]["limit_lo"], b[0]["limit_lo"]);
}

TEST(Converge, ThreadsDoNotChangeBytes) {
  const std::vector<std::string> base{"converge", "word:11", "--k", "0..3", "--n", "100000", "--format", "json"};
  auto with = [&](const char* t) {
    auto args = base;
    args.insert(args.end(), {"--threads", t});
    return invoke(args).out;
  };
  const auto one = with("1");
  EXPECT_EQ(one, with("2"));
  EXPECT_EQ(one, with("5"));
}

TEST(Partial, ExactFraction) {
  const auto r = invoke({"partial", "s2", "--k", "2", "--n", "10", "--exact", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["exact"], "41/45");
  EXPECT_EQ(j["terms"], "5");
}

TEST(Bw, Reports) {
  const auto r = invoke({"bw", "11", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["term_count"], "4");
  EXPECT_EQ(j["offset_sum"], "-1/4");
  EXPECT_EQ(j["remainder_constant"], "25/8");

  const auto one = nlohmann::ordered_json::parse(invoke({"bw", "1", "--eval", "1", "--format", "json"}).out);
  EXPECT_EQ(one["rational_function"], "((2n+1))/((2n+2))");
  EXPECT_EQ(one["eval_lo"].get<std::string>().substr(0, 12), "-2.876820724");
  EXPECT_EQ(invoke({"bw", "102"}).code, 2);
}

TEST(Verify, SplitHandCase) {
  const auto r = invoke({"verify", "split", "--b", "2", "--k", "2", "--j", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["checks"][0]["lhs"], "179/180");
  EXPECT_EQ(j["checks"][0]["rhs"], "179/180");
}

TEST(Verify, VsumAndQw) {
  const auto v = nlohmann::ordered_json::parse(invoke({"verify", "vsum", "--b", "3", "--n", "1", "--format", "json"}).out);
  EXPECT_EQ(v["checks"][0]["lhs"], "-13/60");
  EXPECT_EQ(invoke({"verify", "qw", "--maxlen", "8"}).code, 0);
  EXPECT_EQ(invoke({"verify", "transfer"}).code, 0);
  EXPECT_EQ(invoke({"verify", "partition", "--b", "2", "--j", "6"}).code, 0);
  EXPECT_EQ(invoke({"verify", "nonsense"}).code, 2);
}

TEST(Transfer, Reports) {
  const auto r = invoke({"transfer", "--b", "4", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["polynomial"], "3X^2 + 2X + 1");
  EXPECT_EQ(j["max_modulus_lo"].get<std::string>().substr(0, 12), "5.7735026918");
  EXPECT_TRUE(j["below_one"].get<bool>());
  EXPECT_EQ(invoke({"transfer", "--b", "10"}).code, 0);
  EXPECT_EQ(invoke({"transfer", "--b", "2"}).code, 0);
}

TEST(Output, WritesFile) {
  const std::string path = ::testing::TempDir() + "kempner_cli_out.json";
  const auto r = invoke({"limits", "s2", "--format", "json", "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_NE(text.str().find("\"spec\": \"sb:2\""), std::string::npos);
  std::remove(path.c_str());
}
