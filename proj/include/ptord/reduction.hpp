#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ptord/curve_model.hpp"

namespace ptord {

enum class ReductionKind {
  Good,
  Multiplicative,
  AdditivePotentiallyMultiplicative,
  AdditivePotentiallyGood,
};

enum class DefectSource { Formula, BundledTable, UserOverride };

const char* to_string(ReductionKind kind) noexcept;
const char* to_string(DefectSource source) noexcept;

struct ReductionInfo {
  ReductionKind kind = ReductionKind::Good;
  std::optional<unsigned> e;       // additive potentially good only
  std::optional<bool> split;       // multiplicative only: -c6 a square in Q_l
  std::optional<DefectSource> defect_source;
};

/// Reduction class of a minimal model; e is left empty.
ReductionInfo classify_reduction(const LocalMinimalData& data);

/// Values the semistability defect can take at ell.
const std::vector<unsigned>& admissible_defects(const Integer& ell);

/// One coordinate of a table row: exact value, lower bound, or wildcard.
struct ValuationPattern {
  enum class Kind { Exact, AtLeast, Any };
  Kind kind = Kind::Any;
  std::int64_t k = 0;

  bool matches(const Valuation& v) const;
  bool overlaps(const ValuationPattern& other) const;
  std::string str() const;
};

struct DefectRow {
  unsigned ell = 0;
  ValuationPattern vc4, vc6, vD;
  unsigned e = 0;
  std::string comment;
  int line = 0;
};

/// Triple-pattern -> e table for ell in {2, 3}.
///
/// Grammar (one item per line, '#' starts a comment):
///   version 1
///   <ell> <pattern> <pattern> <pattern> <e>
/// pattern := k | >=k | *
class DefectTable {
 public:
  static DefectTable parse(std::istream& in, const std::string& source_name);
  static DefectTable parse_string(const std::string& text, const std::string& source_name);
  static DefectTable load_file(const std::string& path);

  /// The table compiled into the library.
  static const DefectTable& bundled();

  std::optional<unsigned> lookup(const Integer& ell, const Valuation& vc4, const Valuation& vc6,
                                 const Valuation& vD) const;

  const std::vector<DefectRow>& rows() const { return rows_; }
  int version() const { return version_; }

 private:
  std::vector<DefectRow> rows_;
  int version_ = 0;
};

struct DefectResult {
  unsigned e = 0;
  DefectSource source = DefectSource::Formula;
};

/// e for additive potentially good reduction. ell >= 5: 12 / gcd(v(Delta), 12).
/// ell in {2, 3}: table lookup, DefectTableMiss when absent. An override wins
/// but must be admissible at ell and satisfy 12 | e v(Delta).
DefectResult semistability_defect(const LocalMinimalData& data,
                                  std::optional<unsigned> override_e = std::nullopt,
                                  const DefectTable& table = DefectTable::bundled());

/// Reduction info with e filled in when the reduction is additive potentially good.
ReductionInfo classify_with_defect(const LocalMinimalData& data,
                                   std::optional<unsigned> override_e = std::nullopt,
                                   const DefectTable& table = DefectTable::bundled());

}  // namespace ptord
