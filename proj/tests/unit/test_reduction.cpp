#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "ptord/errors.hpp"
#include "ptord/frobenius.hpp"
#include "ptord/reduction.hpp"

using namespace ptord;
using testutil::short_model;

TEST_CASE("reduction kinds of the worked curve") {
  const auto w = testutil::worked_curve();
  CHECK(classify_reduction(minimal_model_at(w, 7)).kind == ReductionKind::Good);
  const auto at5 = classify_reduction(minimal_model_at(w, 5));
  CHECK(at5.kind == ReductionKind::Multiplicative);
  CHECK(at5.split.value());
  CHECK(classify_reduction(minimal_model_at(w, 2)).kind == ReductionKind::AdditivePotentiallyGood);
  CHECK(classify_reduction(minimal_model_at(quadratic_twist(w, 5), 5)).kind ==
        ReductionKind::AdditivePotentiallyMultiplicative);
}

TEST_CASE("defect from the valuation of Delta for l >= 5") {
  CHECK(semistability_defect(minimal_model_at(short_model(-25, 0), 5)).e == 2);
  CHECK(semistability_defect(minimal_model_at(short_model(0, 25), 5)).e == 3);
  CHECK(semistability_defect(minimal_model_at(short_model(-5, 0), 5)).e == 4);
  CHECK(semistability_defect(minimal_model_at(short_model(0, 5), 5)).e == 6);
  CHECK(semistability_defect(minimal_model_at(short_model(0, 5), 5)).source == DefectSource::Formula);
}

TEST_CASE("bundled defect table lookups") {
  const auto& t = DefectTable::bundled();
  CHECK(t.version() == 1);
  CHECK(t.lookup(2, Valuation(8), Valuation(10), Valuation(14)).value() == 24);
  CHECK(t.lookup(3, Valuation(4), Valuation(6), Valuation(10)).value() == 6);
  CHECK(t.lookup(3, Valuation(2), Valuation(3), Valuation(6)).value() == 2);
  CHECK(t.lookup(3, Valuation(3), Valuation(9), Valuation(6)).value() == 2);
  CHECK(t.lookup(3, Valuation(3), Valuation::infinity(), Valuation(6)).value() == 2);
  CHECK(t.lookup(2, Valuation(7), Valuation(6), Valuation(6)).value() == 2);
  CHECK(t.lookup(2, Valuation(4), Valuation(6), Valuation(12)).value() == 2);
  CHECK_FALSE(t.lookup(3, Valuation(5), Valuation(7), Valuation(9)).has_value());
  const auto at2 = semistability_defect(minimal_model_at(testutil::worked_curve(), 2));
  CHECK(at2.e == 24);
  CHECK(at2.source == DefectSource::BundledTable);
}

TEST_CASE("defect table grammar") {
  const auto t = DefectTable::parse_string("# header\nversion 1\n3 >=2 * 6 2  # trailing\n2 * * 1 24\n", "inline");
  REQUIRE(t.rows().size() == 2);
  CHECK(t.rows()[0].vc4.kind == ValuationPattern::Kind::AtLeast);
  CHECK(t.rows()[0].vc6.kind == ValuationPattern::Kind::Any);
  CHECK(t.rows()[1].line == 4);
  CHECK(t.lookup(3, Valuation(9), Valuation(1), Valuation(6)).value() == 2);

  CHECK_THROWS_AS(DefectTable::parse_string("3 2 3 6 2\n", "x"), Error);
  CHECK_THROWS_AS(DefectTable::parse_string("version 1\nversion 1\n", "x"), Error);
  CHECK_THROWS_AS(DefectTable::parse_string("version 2\n", "x"), Error);
  CHECK_THROWS_AS(DefectTable::parse_string("version 1\n5 2 3 6 2\n", "x"), Error);
  CHECK_THROWS_AS(DefectTable::parse_string("version 1\n3 2 3 6 5\n", "x"), Error);
  CHECK_THROWS_AS(DefectTable::parse_string("version 1\n3 2 3 7 2\n", "x"), Error);
  CHECK_THROWS_AS(DefectTable::parse_string("version 1\n3 2 3 6\n", "x"), Error);
  CHECK_THROWS_AS(DefectTable::parse_string("version 1\n3 x 3 6 2\n", "x"), Error);
  CHECK_THROWS_AS(DefectTable::parse_string("version 1\n3 >=2 3 6 2\n3 2 * 6 6\n", "x"), Error);
  CHECK_NOTHROW(DefectTable::parse_string("version 1\n3 >=2 3 6 2\n3 2 * 6 2\n", "x"));
  CHECK_THROWS_AS(DefectTable::load_file("/nonexistent/table.txt"), Error);
}

TEST_CASE("table miss and override") {
  const auto empty = DefectTable::parse_string("version 1\n", "empty");
  const auto data = minimal_model_at(testutil::worked_curve(), 2);
  try {
    semistability_defect(data, std::nullopt, empty);
    FAIL("expected a miss");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DefectTableMiss);
    CHECK(std::string(e.what()).find("--defect") != std::string::npos);
  }
  const auto o = semistability_defect(data, 24u, empty);
  CHECK(o.e == 24);
  CHECK(o.source == DefectSource::UserOverride);
  CHECK_THROWS_AS(semistability_defect(data, 5u, empty), Error);
  CHECK_THROWS_AS(semistability_defect(data, 8u, empty), Error);
}

TEST_CASE("twisting by sqrt(l) shifts v(Delta) by 6 mod 12 for l >= 5") {
  for (long ell : {5L, 7L, 11L}) {
    for (long a4 = -8; a4 <= 8; ++a4) {
      for (long a6 = -8; a6 <= 8; ++a6) {
        const auto m = short_model(a4 * ell * ell, a6 * ell * ell * ell);
        if (!testutil::nonsingular(m)) continue;
        const auto base = minimal_model_at(m, ell);
        const auto tw = minimal_model_at(quadratic_twist(m, ell), ell);
        CHECK((base.vD.value() + 6) % 12 == tw.vD.value() % 12);
        if (classify_with_defect(base).e == 2u) CHECK(tw.vD == Valuation(0));
      }
    }
  }
}

TEST_CASE("e = 2 at l = 2, 3 twists to good reduction") {
  int seen2 = 0, seen3 = 0;
  for (long a4 = -40; a4 <= 40; ++a4) {
    for (long a6 = -40; a6 <= 40; ++a6) {
      const auto m = short_model(a4, a6);
      if (!testutil::nonsingular(m)) continue;
      for (long ell : {2L, 3L}) {
        const auto data = minimal_model_at(m, ell);
        const auto info = classify_reduction(data);
        if (info.kind != ReductionKind::AdditivePotentiallyGood) continue;
        const auto e = DefectTable::bundled().lookup(ell, data.vc4, data.vc6, data.vD);
        if (e != 2u) continue;
        const auto g = good_twist_at_small_ell(data);
        CHECK(g.twisted.vD == Valuation(0));
        CHECK(g.twisted.invariants.j == data.invariants.j);
        (ell == 2 ? seen2 : seen3)++;
      }
    }
  }
  CHECK(seen2 > 0);
  CHECK(seen3 > 0);
}

TEST_CASE("twist parameter -1 for the (4, 6, 12) triple at l = 2") {
  int seen = 0;
  for (long a4 = -40; a4 <= 40; ++a4) {
    for (long a6 = -40; a6 <= 40; ++a6) {
      const auto m = short_model(a4, a6);
      if (!testutil::nonsingular(m)) continue;
      const auto d = minimal_model_at(m, 2);
      if (d.vc4 == Valuation(4) && d.vc6 == Valuation(6) && d.vD == Valuation(12)) {
        CHECK(good_twist_at_small_ell(d).u == -1);
        ++seen;
      }
    }
  }
  CHECK(seen > 0);
}
