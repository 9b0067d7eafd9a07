#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "peertrust/opinion_ledger.hpp"
#include "peertrust/sim/trace.hpp"
#include "peertrust/trust.hpp"

namespace peertrust {

/// Fixed four decimals; negative zero prints as "0.0000".
std::string format_fixed4(double value);

/// Thrown for unreadable or malformed CSV input. `line` is 1-based.
class CsvError : public Error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Opinion table snapshot: header `node,weight,opinion,positive,negative,total`,
// one row per known peer, owner excluded.

struct TableRow {
  NodeId node;
  OpinionEntry entry;
};

void write_table_csv(std::ostream& os, const OpinionTable& table);

/// Counters are authoritative; the weight and opinion columns must agree
/// with them to the printed precision or the row is rejected.
std::vector<TableRow> read_table_csv(std::istream& is);

// Opinion reports: header `reporter,subject,opinion,weight`.

void write_reports_csv(std::ostream& os, const std::vector<OpinionReport>& reports);
std::vector<OpinionReport> read_reports_csv(std::istream& is);

// Trust matrix: header
// `trustor,trustee,personal,community,trust,basis,conflict,confidence,share`.
// An absent community opinion is an empty field; booleans are 0/1.

void write_trust_matrix_csv(std::ostream& os, const sim::TrustMatrix& matrix);

/// Reads a matrix written by write_trust_matrix_csv. Control, threshold and
/// the unprinted digits are not recoverable; rewriting the result is
/// nevertheless byte-identical to the input.
sim::TrustMatrix read_trust_matrix_csv(std::istream& is);

}  // namespace peertrust
