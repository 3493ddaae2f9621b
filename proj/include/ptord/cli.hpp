#pragma once

// Command-line front end: argument handling, CSV batch input and JSON output.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptord/engine.hpp"
#include "ptord/errors.hpp"

namespace ptord::cli {

using Json = nlohmann::ordered_json;

/// Exit status: 0 ok, 2 invalid input, 3 defect-table miss, 4 resource limit,
/// 1 internal consistency.
int exit_code(ErrorKind kind) noexcept;

struct QueryRecord {
  std::string label;
  CurveModel model;
  Integer ell;
  Integer p;
  std::optional<unsigned> defect;
  std::optional<bool> assume_minimal;
};

/// Integer fits in int64 -> JSON number, otherwise a decimal string.
Json integer_json(const Integer& x);

/// The result document; violations is null unless verification ran.
Json result_json(const DegreeResult& result, const std::string& label, bool explain,
                 const std::vector<std::string>* violations);

Json error_json(const std::string& label, ErrorKind kind, const std::string& message);

/// "a1,a2,a3,a4,a6" -> model.
CurveModel parse_a_invariants(const std::string& text);
/// "c4,c6" -> y^2 = x^3 - 27 c4 x - 54 c6.
CurveModel parse_c_invariants(const std::string& text);

/// One parsed CSV data row, or the reason it could not be parsed.
struct BatchRow {
  int line = 0;
  std::optional<QueryRecord> query;
  std::string label;
  std::string error;
};

/// Header: label,a1,a2,a3,a4,a6,ell,p followed optionally by defect and/or
/// assume_minimal. A malformed header throws InvalidInput; malformed rows are
/// returned with their error. Blank lines are skipped.
std::vector<BatchRow> parse_batch(std::istream& in);

/// Per-row sampler seed derived from the batch seed.
std::uint64_t row_seed(std::uint64_t seed, std::size_t index) noexcept;

/// Evaluates rows (in parallel with `jobs` threads) and returns one JSON line
/// per row in input order. worst_exit is 0 iff every row succeeded,
/// otherwise the exit status of the first failing row.
std::vector<std::string> run_batch(const std::vector<BatchRow>& rows, std::uint64_t seed, int jobs,
                                   const DefectTable* table, bool verify, int& worst_exit);

/// Entry point used by the ptord executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptord::cli
