#include "peertrust/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>

#include <fmt/format.h>

namespace peertrust {

namespace {

constexpr std::string_view kTableHeader = "node,weight,opinion,positive,negative,total";
constexpr std::string_view kReportsHeader = "reporter,subject,opinion,weight";
constexpr std::string_view kMatrixHeader =
    "trustor,trustee,personal,community,trust,basis,conflict,confidence,share";

// Half a unit in the fourth decimal, plus slack for the binary representation.
constexpr double kPrintedTolerance = 0.5e-4 + 1e-12;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

const std::string& checked_id(const NodeId& id) {
  if (id.str().find_first_of(",\r\n") != std::string::npos) {
    throw DomainError("node id '" + id.str() + "' cannot be written to CSV");
  }
  return id.str();
}

// Reads data lines after checking the header, handing each to `row` with
// its 1-based line number.
template <typename F>
void for_each_row(std::istream& is, std::string_view header, std::size_t columns, F&& row) {
  std::string line;
  std::size_t lineno = 0;
  bool seen_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (!seen_header) {
      if (line != header) {
        throw CsvError(lineno, "expected header '" + std::string(header) + "'");
      }
      seen_header = true;
      continue;
    }
    auto fields = split(line);
    if (fields.size() != columns) {
      throw CsvError(lineno, "expected " + std::to_string(columns) + " fields, got " +
                                 std::to_string(fields.size()));
    }
    row(lineno, fields);
  }
  if (is.bad()) {
    throw CsvError(lineno, "read error");
  }
  if (!seen_header) {
    throw CsvError(lineno, "missing header '" + std::string(header) + "'");
  }
}

double parse_double(std::size_t lineno, std::string_view text, const char* what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw CsvError(lineno, std::string(what) + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

std::uint64_t parse_count(std::size_t lineno, std::string_view text, const char* what) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw CsvError(lineno, std::string(what) + ": '" + std::string(text) +
                               "' is not a nonnegative integer");
  }
  return value;
}

bool parse_flag(std::size_t lineno, std::string_view text, const char* what) {
  if (text == "1") {
    return true;
  }
  if (text == "0") {
    return false;
  }
  throw CsvError(lineno, std::string(what) + ": expected 0 or 1");
}

NodeId parse_id(std::size_t lineno, std::string_view text, const char* what) {
  if (text.empty()) {
    throw CsvError(lineno, std::string(what) + " is empty");
  }
  return NodeId{std::string(text)};
}

}  // namespace

std::string format_fixed4(double value) {
  auto s = fmt::format("{:.4f}", value);
  if (s == "-0.0000") {
    s.erase(0, 1);
  }
  return s;
}

void write_table_csv(std::ostream& os, const OpinionTable& table) {
  os << kTableHeader << '\n';
  for (const auto& [peer, e] : table.entries()) {
    os << checked_id(peer) << ',' << format_fixed4(e.weight) << ',' << format_fixed4(e.opinion)
       << ',' << e.positive << ',' << e.negative << ',' << e.total << '\n';
  }
}

std::vector<TableRow> read_table_csv(std::istream& is) {
  std::vector<TableRow> rows;
  for_each_row(is, kTableHeader, 6, [&](std::size_t lineno, const auto& f) {
    const double weight = parse_double(lineno, f[1], "weight");
    const double opinion = parse_double(lineno, f[2], "opinion");
    OpinionEntry entry;
    try {
      entry = OpinionEntry::from_counts(parse_count(lineno, f[3], "positive"),
                                        parse_count(lineno, f[4], "negative"),
                                        parse_count(lineno, f[5], "total"));
    } catch (const DomainError& e) {
      throw CsvError(lineno, e.what());
    }
    if (std::abs(entry.opinion - opinion) > kPrintedTolerance) {
      throw CsvError(lineno, "opinion column disagrees with the counters");
    }
    if (std::abs(entry.weight - weight) > kPrintedTolerance) {
      throw CsvError(lineno, "weight column disagrees with the counters");
    }
    rows.push_back(TableRow{parse_id(lineno, f[0], "node"), entry});
  });
  return rows;
}

void write_reports_csv(std::ostream& os, const std::vector<OpinionReport>& reports) {
  os << kReportsHeader << '\n';
  for (const auto& r : reports) {
    os << checked_id(r.reporter) << ',' << checked_id(r.subject) << ','
       << fmt::format("{}", r.opinion) << ',' << fmt::format("{}", r.reporter_weight) << '\n';
  }
}

std::vector<OpinionReport> read_reports_csv(std::istream& is) {
  std::vector<OpinionReport> reports;
  for_each_row(is, kReportsHeader, 4, [&](std::size_t lineno, const auto& f) {
    OpinionReport r{parse_id(lineno, f[0], "reporter"), parse_id(lineno, f[1], "subject"),
                    parse_double(lineno, f[2], "opinion"), parse_double(lineno, f[3], "weight")};
    try {
      r.validate();
    } catch (const DomainError& e) {
      throw CsvError(lineno, e.what());
    }
    reports.push_back(std::move(r));
  });
  return reports;
}

void write_trust_matrix_csv(std::ostream& os, const sim::TrustMatrix& matrix) {
  os << kMatrixHeader << '\n';
  for (const auto& m : matrix) {
    os << checked_id(m.trustor) << ',' << checked_id(m.trustee) << ','
       << format_fixed4(m.trust.personal) << ','
       << (m.trust.community ? format_fixed4(*m.trust.community) : std::string{}) << ','
       << format_fixed4(m.trust.trust) << ',' << to_token(m.trust.basis) << ','
       << (m.trust.conflict ? 1 : 0) << ',' << format_fixed4(m.confidence.confidence) << ','
       << (m.confidence.share ? 1 : 0) << '\n';
  }
}

sim::TrustMatrix read_trust_matrix_csv(std::istream& is) {
  sim::TrustMatrix matrix;
  for_each_row(is, kMatrixHeader, 9, [&](std::size_t lineno, const auto& f) {
    sim::MatrixEntry m{parse_id(lineno, f[0], "trustor"), parse_id(lineno, f[1], "trustee"), {}, {}};
    m.trust.personal = parse_double(lineno, f[2], "personal");
    if (!f[3].empty()) {
      m.trust.community = parse_double(lineno, f[3], "community");
    }
    m.trust.trust = parse_double(lineno, f[4], "trust");
    if (f[5] == to_token(TrustBasis::PersonalOnly)) {
      m.trust.basis = TrustBasis::PersonalOnly;
    } else if (f[5] == to_token(TrustBasis::Combined)) {
      m.trust.basis = TrustBasis::Combined;
    } else {
      throw CsvError(lineno, "basis: expected personal_only or combined");
    }
    m.trust.conflict = parse_flag(lineno, f[6], "conflict");
    m.confidence.trust = m.trust.trust;
    m.confidence.confidence = parse_double(lineno, f[7], "confidence");
    m.confidence.share = parse_flag(lineno, f[8], "share");
    matrix.push_back(std::move(m));
  });
  return matrix;
}

}  // namespace peertrust
