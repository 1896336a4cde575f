#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "wob/records.hpp"

using namespace wob;

namespace {

std::set<std::pair<std::int64_t, std::int64_t>> pairs_of(const std::vector<TableEntry>& t) {
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& e : t) out.emplace(e.q, e.g);
  return out;
}

}  // namespace

TEST(RecordsCsv, ParsesAllColumnForms) {
  const auto rows = parse_records(
      "# comment\n"
      "q,g,best_upper,best_lower,source\n"
      "53,47,634\n"
      "9,12,60,58\n"
      "\n"
      "11,8,55,50,somewhere\r\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].best_upper, 634);
  EXPECT_FALSE(rows[0].best_lower);
  EXPECT_EQ(*rows[1].best_lower, 58);
  EXPECT_EQ(*rows[2].source, "somewhere");
}

TEST(RecordsCsv, ShortHeader) {
  EXPECT_EQ(parse_records("q,g,best_upper\n5,3,10\n").size(), 1u);
}

TEST(RecordsCsv, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_records(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("q,g,upper\n"), 1u);
  EXPECT_EQ(line_of("q,g,best_upper\n5,3,x\n"), 2u);
  EXPECT_EQ(line_of("# c\nq,g,best_upper\n5,3,10\n6,3,10\n"), 4u);       // not a prime power
  EXPECT_EQ(line_of("q,g,best_upper,best_lower\n5,3,10,11\n"), 2u);     // lower > upper
  EXPECT_EQ(line_of("q,g,best_upper\n5,-1,10\n"), 2u);
  EXPECT_EQ(line_of("q,g,best_upper\n5,1\n"), 2u);
  EXPECT_THROW(parse_records(""), ParseError);
}

TEST(Table1, ContainsKnownRows) {
  const auto t = table1();
  const auto pairs = pairs_of(t);
  EXPECT_TRUE(pairs.count({11, 8}));
  for (int g : {47, 48, 49, 50}) EXPECT_TRUE(pairs.count({53, g})) << g;
  EXPECT_TRUE(pairs.count({81, 50}));
  for (const auto& e : t) {
    EXPECT_TRUE(e.improved);
    EXPECT_EQ(e.ihara_serre_n + 1, e.ihara_n);
    EXPECT_GE(Integer(e.g), g2_threshold(e.q).rounded);
    EXPECT_LE(Integer(e.g), g3_threshold(e.q).exact.ceil());
  }
  EXPECT_TRUE(std::is_sorted(t.begin(), t.end(), [](const TableEntry& a, const TableEntry& b) {
    return std::pair(a.q, a.g) < std::pair(b.q, b.g);
  }));
}

TEST(Table1, GenusWindowEdge) {
  // g3(11) = 23.45; the scan runs up to its ceiling
  EXPECT_EQ(table_genus_window(11), (std::pair<std::int64_t, std::int64_t>{4, 24}));
}

TEST(Table1, Deterministic) {
  const auto a = table1(60, 40, true);
  const auto b = table1(60, 40, true);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].q, b[i].q);
    EXPECT_EQ(a[i].g, b[i].g);
    EXPECT_EQ(a[i].ihara_serre_n, b[i].ihara_serre_n);
  }
}

TEST(Table1, ImprovedMatchesDefinition) {
  for (const auto& e : table1(50, 50, true)) EXPECT_EQ(e.improved, e.ihara_serre_n < e.ihara_n);
}

TEST(Compare, StatusesAndWarnings) {
  auto t = table1();
  const auto records = parse_records(
      "q,g,best_upper,best_lower\n"
      "53,47,634\n"   // ours is 633
      "9,12,60\n"     // ours is 62
      "11,8,55\n"     // ours is 55
      "53,48,700,650\n");  // lower bound above our 643: a bug signal
  const auto warnings = annotate_records(t, records);
  auto status = [&](std::int64_t q, std::int64_t g) {
    return std::find_if(t.begin(), t.end(), [&](const TableEntry& e) { return e.q == q && e.g == g; })->record_status;
  };
  EXPECT_EQ(status(53, 47), RecordStatus::NewRecord);
  EXPECT_EQ(status(9, 12), RecordStatus::WorseThanRecord);
  EXPECT_EQ(status(11, 8), RecordStatus::MeetsRecord);
  EXPECT_EQ(status(53, 49), RecordStatus::NoRecordData);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].g, 48);
}

TEST(PrimePowers, UpTo100) {
  const auto qs = prime_powers_up_to(100);
  EXPECT_EQ(qs.size(), 35u);
  for (auto q : {16, 25, 27, 32, 49, 64, 81}) EXPECT_TRUE(std::count(qs.begin(), qs.end(), q));
}
