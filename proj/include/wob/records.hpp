#pragma once

// Ihara vs Ihara-Serre tables and comparison against a local records CSV.
//
// CSV format (UTF-8, comma separated, '#' starts a comment line):
//
//   q,g,best_upper[,best_lower[,source]]

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "wob/classical.hpp"
#include "wob/errors.hpp"
#include "wob/qext.hpp"
#include "wob/refine2.hpp"

namespace wob {

struct RecordRow {
  std::int64_t q = 0;
  std::int64_t g = 0;
  std::int64_t best_upper = 0;
  std::optional<std::int64_t> best_lower;
  std::optional<std::string> source;
};

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::int64_t parse_field(const std::string& s, std::string_view name, std::size_t line) {
  try {
    const Integer v = parse_integer(s);
    if (v > Integer(INT64_MAX) || v < Integer(INT64_MIN)) throw ParseError("out of range");
    return static_cast<std::int64_t>(v);
  } catch (const ParseError&) {
    throw ParseError("field " + std::string(name) + " is not an integer: '" + s + "'", line);
  }
}

}  // namespace detail

/// Parses a records CSV; throws ParseError naming the offending line.
inline std::vector<RecordRow> parse_records(std::istream& in) {
  std::vector<RecordRow> rows;
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (line_no == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) raw.erase(0, 3);
    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fields = detail::split_csv_line(line);
    if (!have_header) {
      static const std::vector<std::string> expected{"q", "g", "best_upper", "best_lower", "source"};
      if (fields.size() < 3 || fields.size() > 5 || !std::equal(fields.begin(), fields.end(), expected.begin()))
        throw ParseError("expected header q,g,best_upper[,best_lower[,source]]", line_no);
      have_header = true;
      continue;
    }
    if (fields.size() < 3 || fields.size() > 5)
      throw ParseError("expected 3 to 5 fields, got " + std::to_string(fields.size()), line_no);
    RecordRow r;
    r.q = detail::parse_field(fields[0], "q", line_no);
    r.g = detail::parse_field(fields[1], "g", line_no);
    r.best_upper = detail::parse_field(fields[2], "best_upper", line_no);
    if (fields.size() >= 4 && !fields[3].empty()) r.best_lower = detail::parse_field(fields[3], "best_lower", line_no);
    if (fields.size() == 5 && !fields[4].empty()) r.source = fields[4];
    if (!is_prime_power(r.q)) throw ParseError("q = " + fields[0] + " is not a prime power", line_no);
    if (r.g < 0) throw ParseError("g must be >= 0", line_no);
    if (r.best_lower && *r.best_lower > r.best_upper) throw ParseError("best_lower exceeds best_upper", line_no);
    rows.push_back(std::move(r));
  }
  if (!have_header) throw ParseError("missing header line", line_no);
  return rows;
}

inline std::vector<RecordRow> parse_records(const std::string& text) {
  std::istringstream in(text);
  return parse_records(in);
}

enum class RecordStatus { NewRecord, MeetsRecord, WorseThanRecord, NoRecordData };

inline std::string_view record_status_tag(RecordStatus s) {
  switch (s) {
    case RecordStatus::NewRecord: return "new-record";
    case RecordStatus::MeetsRecord: return "meets-record";
    case RecordStatus::WorseThanRecord: return "worse-than-record";
    case RecordStatus::NoRecordData: return "no-record-data";
  }
  return "unknown";
}

struct TableEntry {
  std::int64_t q = 0;
  std::int64_t g = 0;
  Integer ihara_n;
  Integer ihara_serre_n;
  bool improved = false;  // ihara_serre_n < ihara_n
  RecordStatus record_status = RecordStatus::NoRecordData;
};

inline std::vector<std::int64_t> prime_powers_up_to(std::int64_t qmax) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q <= qmax; ++q)
    if (is_prime_power(q)) out.push_back(q);
  return out;
}

inline TableEntry table_entry(const CurveParams& p) {
  TableEntry e;
  e.q = p.q;
  e.g = p.g;
  e.ihara_n = n1_upper_from(p, ihara_t(p));
  e.ihara_serre_n = n1_upper_from(p, Quad(ihara_serre_t(p)));
  e.improved = e.ihara_serre_n < e.ihara_n;
  return e;
}

/// Genus window [ceil g2, ceil g3] scanned for a given q.
inline std::pair<std::int64_t, std::int64_t> table_genus_window(std::int64_t q) {
  const Integer lo = g2_threshold(q).rounded;
  const Integer hi = g3_threshold(q).exact.ceil();
  return {static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)};
}

/**
 * Pairs (q, g) with q <= qmax a prime power and g <= gmax in the genus window
 * where Ihara-Serre beats Ihara on N1 (every pair when all is set).
 *
 * One task per q; results are concatenated in q order, so the output does not
 * depend on scheduling.
 */
inline std::vector<TableEntry> table1(std::int64_t qmax = 100, std::int64_t gmax = 50, bool all = false) {
  const auto qs = prime_powers_up_to(qmax);
  auto row = [gmax, all](std::int64_t q) {
    std::vector<TableEntry> out;
    const auto [lo, hi] = table_genus_window(q);
    for (std::int64_t g = std::max<std::int64_t>(lo, 1); g <= std::min(gmax, hi); ++g) {
      TableEntry e = table_entry(CurveParams::make(q, g));
      if (all || e.improved) out.push_back(std::move(e));
    }
    return out;
  };
  std::vector<std::future<std::vector<TableEntry>>> jobs;
  jobs.reserve(qs.size());
  for (const auto q : qs) jobs.push_back(std::async(std::launch::async, row, q));
  std::vector<TableEntry> out;
  for (auto& j : jobs) {
    auto part = j.get();
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

struct CompareWarning {
  std::int64_t q = 0;
  std::int64_t g = 0;
  std::string message;
};

/// Sets record_status from the best known upper bound on N1; collects
/// warnings where our bound falls below a known lower bound.
inline std::vector<CompareWarning> annotate_records(std::vector<TableEntry>& entries,
                                                    const std::vector<RecordRow>& records) {
  std::map<std::pair<std::int64_t, std::int64_t>, const RecordRow*> index;
  for (const auto& r : records) index[{r.q, r.g}] = &r;
  std::vector<CompareWarning> warnings;
  for (auto& e : entries) {
    const auto it = index.find({e.q, e.g});
    if (it == index.end()) {
      e.record_status = RecordStatus::NoRecordData;
      continue;
    }
    const RecordRow& r = *it->second;
    const Integer upper(r.best_upper);
    if (e.ihara_serre_n < upper) {
      e.record_status = RecordStatus::NewRecord;
    } else if (e.ihara_serre_n == upper) {
      e.record_status = RecordStatus::MeetsRecord;
    } else {
      e.record_status = RecordStatus::WorseThanRecord;
    }
    if (r.best_lower && e.ihara_serre_n < Integer(*r.best_lower))
      warnings.push_back({e.q, e.g,
                          "bound " + e.ihara_serre_n.str() + " is below the known lower bound " +
                              std::to_string(*r.best_lower) + " (a curve with that many points exists)"});
  }
  return warnings;
}

}  // namespace wob
