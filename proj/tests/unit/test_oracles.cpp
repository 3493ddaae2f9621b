#include <doctest.h>

#include "helpers.hpp"
#include "ptord/errors.hpp"
#include "ptord/oracles.hpp"

using namespace ptord;

TEST_CASE("matrix orders") {
  CHECK(matrix_order(MatrixModP::identity(5)) == 1);
  CHECK(matrix_order(MatrixModP{5, {2, 0, 0, 1}}) == 4);
  CHECK(matrix_order(MatrixModP{3, {0, 2, 1, 1}}) == 6);
  CHECK_THROWS_AS(matrix_order(MatrixModP{5, {1, 1, 1, 1}}), Error);
}

TEST_CASE("companion orders") {
  CHECK(companion_frobenius_order(-2, 7, 5) == 4);
  CHECK(companion_frobenius_order(-2, 7, 3) == 6);
  for (std::uint64_t p : {3, 5, 7}) {
    for (long ell : {11L, 13L}) {
      CHECK(companion_frobenius_order(0, ell, p) == 2 * cyclotomic_orders(ell, p).delta);
    }
  }
}

TEST_CASE("exhaustive p-th powers") {
  CHECK(exhaustive_pth_power(1, 11, 5));
  CHECK_FALSE(exhaustive_pth_power(3, 11, 5));
  for (long u = 1; u < 13; ++u) CHECK(exhaustive_pth_power(u, 13, 5));
}

TEST_CASE("group structures") {
  const auto g = exhaustive_group_structure({5, 0, 0, 0, 0, 1});
  CHECK(g.order == 6);
  CHECK(g.m == 1);
  const auto w = exhaustive_group_structure({7, 0, 0, 0, 2, 4}, 2);
  CHECK(w.order == 60);
  CHECK_FALSE(w.full_torsion(3));
  const auto h = exhaustive_group_structure({5, 0, 0, 0, 4, 0});
  CHECK(h.order == 8);
  CHECK(h.m == 2);
}

TEST_CASE("r / delta trichotomy") {
  CHECK(order_pair_trichotomy(5, 10));
  CHECK(order_pair_trichotomy(4, 4));
  CHECK(order_pair_trichotomy(2, 1));
  CHECK_FALSE(order_pair_trichotomy(3, 3));
  CHECK_FALSE(order_pair_trichotomy(4, 2));
}

TEST_CASE("consistency checks on the worked example") {
  for (long ell : {2L, 3L, 5L, 7L}) {
    for (long p : {3L, 5L, 7L, 11L}) {
      if (ell == p) continue;
      auto r = compute_degree(testutil::worked_curve(), ell, p);
      CHECK(check_consistency(r).empty());
      r.d += 1;
      CHECK_FALSE(check_consistency(r).empty());
    }
  }
}
