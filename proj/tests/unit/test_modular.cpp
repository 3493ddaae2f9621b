#include <doctest.h>

#include "ptord/errors.hpp"
#include "ptord/modular.hpp"

using namespace ptord;

TEST_CASE("legendre symbols") {
  CHECK(legendre(-Integer(1024) * 729, 5) == 1);
  CHECK(legendre(0, 7) == 0);
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(3, 7) == -1);
  CHECK_THROWS_AS(legendre(3, 2), Error);
}

TEST_CASE("multiplicative orders") {
  CHECK(mult_order_mod(1, 5) == 1);
  CHECK(mult_order_mod(2, 5) == 4);
  for (std::uint64_t p : {3, 5, 7, 11, 13}) CHECK(mult_order_mod(p - 1, p) == 2);
  const Fp2Field f(5);
  CHECK(f.order(f.from_fp(2)) == 4);
}

TEST_CASE("F_{p^2} arithmetic") {
  for (std::uint64_t p : {3, 5, 7, 11, 101}) {
    const Fp2Field f(p);
    const Fp2Element t{0, 1};
    CHECK(f.mul(t, t) == f.from_fp(f.g()));
    CHECK(f.mul(t, f.inv(t)) == f.one());
    CHECK(f.pow(t, p * p - 1) == f.one());
    CHECK((p * p - 1) % f.order(t) == 0);
  }
}

TEST_CASE("Frobenius polynomial roots for a = -2, l = 7") {
  const auto c5 = char_poly_roots(-2, 7, 5);
  CHECK_FALSE(c5.repeated_root);
  CHECK(c5.n == 4);
  const bool roots12 = (c5.alpha == Fp2Element{1, 0} && c5.beta == Fp2Element{2, 0}) ||
                       (c5.alpha == Fp2Element{2, 0} && c5.beta == Fp2Element{1, 0});
  CHECK(roots12);

  const auto c3 = char_poly_roots(-2, 7, 3);
  CHECK(c3.repeated_root);
  CHECK(c3.alpha == Fp2Element{2, 0});
  CHECK(c3.n == 2);

  const auto c11 = char_poly_roots(-2, 7, 11);
  CHECK(c11.n == 10);
  // x^2 + 2x + 7 = (x + 8)(x + 5) mod 11
  const bool roots36 = (c11.alpha == Fp2Element{3, 0} && c11.beta == Fp2Element{6, 0}) ||
                       (c11.alpha == Fp2Element{6, 0} && c11.beta == Fp2Element{3, 0});
  CHECK(roots36);
}

TEST_CASE("root orders agree with the powers of l") {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    for (long a = -4; a <= 4; ++a) {
      for (long ell : {2L, 5L, 7L, 17L}) {
        if (static_cast<std::uint64_t>(ell) == p || a * a > 4 * ell) continue;
        const auto cp = char_poly_roots(a, ell, p);
        const Fp2Field f(p);
        CHECK(f.mul(cp.alpha, cp.beta) == f.from_int(ell));
        CHECK(f.add(cp.alpha, cp.beta) == f.from_int(a));
        CHECK(f.pow(cp.alpha, cp.n) == f.one());
      }
    }
  }
}

TEST_CASE("cyclotomic orders") {
  CHECK(cyclotomic_orders(2, 7).r == 3);
  const auto c = cyclotomic_orders(3, 11);
  CHECK(c.r == 5);
  CHECK(c.delta == 10);
  CHECK(cyclotomic_orders(23, 11).r == 1);
}

TEST_CASE("p-th powers in Q_l") {
  CHECK(is_pth_power_Ql(1, 11, 5));
  CHECK(is_pth_power_Ql(Rational(pow(Integer(7), 5)), 7, 5));
  CHECK_FALSE(is_pth_power_Ql(3, 11, 5));
  CHECK_FALSE(is_pth_power_Ql(Rational(7), 7, 5));
  CHECK(is_pth_power_Ql(Rational(10), 11, 5));
  CHECK(is_pth_power_Ql(Rational(3), 7, 5));
}

TEST_CASE("primitive roots of unity") {
  const Fp2Field f5(5);
  const auto z4 = primitive_root_of_unity(f5, 4);
  CHECK(f5.order(z4) == 4);
  const Fp2Field f7(7);
  CHECK(f7.order(primitive_root_of_unity(f7, 3)) == 3);
  CHECK(f7.order(primitive_root_of_unity(f7, 8)) == 8);
  CHECK_THROWS_AS(primitive_root_of_unity(f7, 7), Error);
}

TEST_CASE("prime pair validation") {
  CHECK_NOTHROW(check_prime_pair(2, 3));
  CHECK_THROWS_WITH(check_prime_pair(7, 7), doctest::Contains("p must differ from ell"));
  CHECK_THROWS_AS(check_prime_pair(4, 3), Error);
  CHECK_THROWS_AS(check_prime_pair(5, 2), Error);
  CHECK_THROWS_AS(check_prime_pair(5, 9), Error);
}
