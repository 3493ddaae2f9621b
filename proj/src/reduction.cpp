#include "ptord/reduction.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ptord/errors.hpp"
#include "ptord/modular.hpp"

namespace ptord {

namespace {

const char kBundledTable[] =
#include "defect_table.inc"
    ;

[[noreturn]] void table_error(const std::string& source, int line, const std::string& msg) {
  throw_input(source + ":" + std::to_string(line) + ": " + msg);
}

std::optional<std::int64_t> parse_small(const std::string& s) {
  if (s.empty() || s.size() > 6) return std::nullopt;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  return std::stoll(s);
}

ValuationPattern parse_pattern(const std::string& tok, const std::string& source, int line) {
  if (tok == "*") return {ValuationPattern::Kind::Any, 0};
  if (tok.rfind(">=", 0) == 0) {
    const auto k = parse_small(tok.substr(2));
    if (!k) table_error(source, line, "bad pattern '" + tok + "'");
    return {ValuationPattern::Kind::AtLeast, *k};
  }
  const auto k = parse_small(tok);
  if (!k) table_error(source, line, "bad pattern '" + tok + "'");
  return {ValuationPattern::Kind::Exact, *k};
}

}  // namespace

const char* to_string(ReductionKind kind) noexcept {
  switch (kind) {
    case ReductionKind::Good: return "good";
    case ReductionKind::Multiplicative: return "multiplicative";
    case ReductionKind::AdditivePotentiallyMultiplicative: return "additive-potentially-multiplicative";
    case ReductionKind::AdditivePotentiallyGood: return "additive-potentially-good";
  }
  return "unknown";
}

const char* to_string(DefectSource source) noexcept {
  switch (source) {
    case DefectSource::Formula: return "formula";
    case DefectSource::BundledTable: return "table";
    case DefectSource::UserOverride: return "override";
  }
  return "unknown";
}

ReductionInfo classify_reduction(const LocalMinimalData& data) {
  ReductionInfo info;
  if (data.vD.value() == 0) {
    info.kind = ReductionKind::Good;
  } else if (data.vc4.is_finite() && data.vc4.value() == 0) {
    info.kind = ReductionKind::Multiplicative;
    const Integer& c6 = data.invariants.c6;
    info.split = data.ell == 2 ? mod(c6, 8) == 7 : legendre(-c6, data.ell) == 1;
  } else if (data.vj.is_finite() && data.vj.value() < 0) {
    info.kind = ReductionKind::AdditivePotentiallyMultiplicative;
  } else {
    info.kind = ReductionKind::AdditivePotentiallyGood;
  }
  return info;
}

const std::vector<unsigned>& admissible_defects(const Integer& ell) {
  static const std::vector<unsigned> at2{2, 3, 4, 6, 8, 24};
  static const std::vector<unsigned> at3{2, 3, 4, 6, 12};
  static const std::vector<unsigned> large{2, 3, 4, 6};
  if (ell == 2) return at2;
  if (ell == 3) return at3;
  return large;
}

bool ValuationPattern::matches(const Valuation& v) const {
  switch (kind) {
    case Kind::Any: return true;
    case Kind::AtLeast: return v.at_least(k);
    case Kind::Exact: return v.is_finite() && v.value() == k;
  }
  return false;
}

bool ValuationPattern::overlaps(const ValuationPattern& other) const {
  if (kind == Kind::Any || other.kind == Kind::Any) return true;
  if (kind == Kind::AtLeast && other.kind == Kind::AtLeast) return true;
  if (kind == Kind::Exact && other.kind == Kind::Exact) return k == other.k;
  const ValuationPattern& exact = kind == Kind::Exact ? *this : other;
  const ValuationPattern& bound = kind == Kind::Exact ? other : *this;
  return exact.k >= bound.k;
}

std::string ValuationPattern::str() const {
  switch (kind) {
    case Kind::Any: return "*";
    case Kind::AtLeast: return ">=" + std::to_string(k);
    case Kind::Exact: return std::to_string(k);
  }
  return "?";
}

DefectTable DefectTable::parse(std::istream& in, const std::string& source) {
  DefectTable table;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string comment;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      comment = raw.substr(hash + 1);
      raw.erase(hash);
    }
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "version") {
      if (tok.size() != 2 || tok[1] != "1") table_error(source, line, "unsupported version line");
      if (table.version_ != 0) table_error(source, line, "duplicate version line");
      table.version_ = 1;
      continue;
    }
    if (table.version_ == 0) table_error(source, line, "rows before the version line");
    if (tok.size() != 5) table_error(source, line, "expected 'ell vc4 vc6 vD e'");

    DefectRow row;
    row.line = line;
    row.comment = comment;
    const auto ell = parse_small(tok[0]);
    if (!ell || (*ell != 2 && *ell != 3)) table_error(source, line, "ell must be 2 or 3");
    row.ell = static_cast<unsigned>(*ell);
    row.vc4 = parse_pattern(tok[1], source, line);
    row.vc6 = parse_pattern(tok[2], source, line);
    row.vD = parse_pattern(tok[3], source, line);
    const auto e = parse_small(tok[4]);
    const auto& allowed = admissible_defects(Integer(row.ell));
    if (!e || std::find(allowed.begin(), allowed.end(), *e) == allowed.end()) {
      table_error(source, line, "e = " + tok[4] + " is not admissible at ell = " + tok[0]);
    }
    row.e = static_cast<unsigned>(*e);
    if (row.vD.kind == ValuationPattern::Kind::Exact && (row.e * row.vD.k) % 12 != 0) {
      table_error(source, line, "12 does not divide e * v(Delta)");
    }
    for (const DefectRow& prev : table.rows_) {
      if (prev.ell == row.ell && prev.e != row.e && prev.vc4.overlaps(row.vc4) &&
          prev.vc6.overlaps(row.vc6) && prev.vD.overlaps(row.vD)) {
        table_error(source, line, "overlaps line " + std::to_string(prev.line) + " with a different e");
      }
    }
    table.rows_.push_back(std::move(row));
  }
  if (table.version_ == 0) table_error(source, line, "missing 'version 1' line");
  return table;
}

DefectTable DefectTable::parse_string(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse(in, source);
}

DefectTable DefectTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_input("cannot open defect table '" + path + "'");
  return parse(in, path);
}

const DefectTable& DefectTable::bundled() {
  static const DefectTable table = parse_string(kBundledTable, "<bundled defect table>");
  return table;
}

std::optional<unsigned> DefectTable::lookup(const Integer& ell, const Valuation& vc4,
                                            const Valuation& vc6, const Valuation& vD) const {
  for (const DefectRow& row : rows_) {
    if (ell == row.ell && row.vc4.matches(vc4) && row.vc6.matches(vc6) && row.vD.matches(vD)) {
      return row.e;
    }
  }
  return std::nullopt;
}

DefectResult semistability_defect(const LocalMinimalData& data, std::optional<unsigned> override_e,
                                  const DefectTable& table) {
  const std::int64_t vD = data.vD.value();
  if (override_e) {
    const auto& allowed = admissible_defects(data.ell);
    if (std::find(allowed.begin(), allowed.end(), *override_e) == allowed.end()) {
      throw_input("defect override e = " + std::to_string(*override_e) +
                  " is not admissible at ell = " + data.ell.get_str());
    }
    if ((*override_e * vD) % 12 != 0) {
      throw_input("defect override e = " + std::to_string(*override_e) +
                  " is incompatible with v(Delta) = " + std::to_string(vD) +
                  " (12 must divide e * v(Delta))");
    }
    return {*override_e, DefectSource::UserOverride};
  }
  if (data.ell >= 5) {
    return {static_cast<unsigned>(12 / std::gcd<std::int64_t>(vD, 12)), DefectSource::Formula};
  }
  if (const auto e = table.lookup(data.ell, data.vc4, data.vc6, data.vD)) {
    return {*e, DefectSource::BundledTable};
  }
  throw Error(ErrorKind::DefectTableMiss,
              "defect table has no row for ell = " + data.ell.get_str() + ", (v(c4), v(c6), v(Delta)) = (" +
                  data.vc4.str() + ", " + data.vc6.str() + ", " + data.vD.str() +
                  "); supply --defect E to proceed");
}

ReductionInfo classify_with_defect(const LocalMinimalData& data, std::optional<unsigned> override_e,
                                   const DefectTable& table) {
  ReductionInfo info = classify_reduction(data);
  if (info.kind == ReductionKind::AdditivePotentiallyGood) {
    const DefectResult d = semistability_defect(data, override_e, table);
    info.e = d.e;
    info.defect_source = d.source;
  }
  return info;
}

}  // namespace ptord
