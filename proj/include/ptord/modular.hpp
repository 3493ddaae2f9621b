#pragma once

// Finite-field kernels over F_p and F_{p^2} for word-size odd primes p.

#include <cstdint>
#include <string>
#include <vector>

#include "ptord/arith.hpp"

namespace ptord {

/// Primes handled by the F_p / F_{p^2} kernels satisfy p < 2^32, so that
/// #F_{p^2}^* = p^2 - 1 and every multiplicative order fit in 64 bits.
inline constexpr std::uint64_t kFieldPrimeCeiling = std::uint64_t{1} << 32;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse of a modulo a prime m; a must be nonzero mod m.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
};

/// Trial-division factorization, primes ascending. n >= 1.
std::vector<PrimePower> factorize(std::uint64_t n);

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// Legendre symbol (a / ell) for an odd prime ell. ell = 2 is rejected:
/// the mod-8 test on c6 replaces it there.
int legendre(const Integer& a, const Integer& ell);

/// Square root of a quadratic residue mod an odd prime (Tonelli-Shanks).
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p);

/// Order of a nonzero residue x in F_p^*.
std::uint64_t mult_order_mod(std::uint64_t x, std::uint64_t p);

/// c0 + c1 t with t^2 = g.
struct Fp2Element {
  std::uint64_t c0 = 0;
  std::uint64_t c1 = 0;

  friend bool operator==(const Fp2Element&, const Fp2Element&) = default;
};

/// F_{p^2} = F_p[t] / (t^2 - g), g the smallest quadratic non-residue mod p.
class Fp2Field {
 public:
  /// p odd prime below kFieldPrimeCeiling; otherwise InvalidInput / ResourceLimit.
  explicit Fp2Field(std::uint64_t p);

  std::uint64_t p() const { return p_; }
  std::uint64_t g() const { return g_; }

  Fp2Element zero() const { return {0, 0}; }
  Fp2Element one() const { return {1, 0}; }
  Fp2Element from_int(const Integer& x) const { return {mod_u64(x, p_), 0}; }
  Fp2Element from_fp(std::uint64_t x) const { return {x % p_, 0}; }

  Fp2Element add(const Fp2Element& x, const Fp2Element& y) const;
  Fp2Element sub(const Fp2Element& x, const Fp2Element& y) const;
  Fp2Element neg(const Fp2Element& x) const;
  Fp2Element mul(const Fp2Element& x, const Fp2Element& y) const;
  Fp2Element pow(Fp2Element x, std::uint64_t e) const;
  Fp2Element inv(const Fp2Element& x) const;

  bool is_zero(const Fp2Element& x) const { return x.c0 == 0 && x.c1 == 0; }
  bool in_base_field(const Fp2Element& x) const { return x.c1 == 0; }

  /// Multiplicative order; x = 0 is rejected.
  std::uint64_t order(const Fp2Element& x) const;

  std::string str(const Fp2Element& x) const;

 private:
  std::uint64_t p_;
  std::uint64_t g_;
  std::vector<PrimePower> base_order_factors_;  // p - 1
  std::vector<PrimePower> full_order_factors_;  // p^2 - 1
};

/// Roots of X^2 - a X + ell mod p and the lcm n of their orders.
struct CharPolyData {
  Integer a;
  Integer ell;
  std::uint64_t p = 0;
  Integer delta_a;  // a^2 - 4 ell
  Fp2Element alpha;
  Fp2Element beta;
  std::uint64_t n = 0;
  bool repeated_root = false;
};

/// Requires p >= 3 prime, p != ell. Checks ell^n = 1 mod p on the way out.
CharPolyData char_poly_roots(const Integer& a, const Integer& ell, std::uint64_t p);

/// Same, reusing an existing field for p.
CharPolyData char_poly_roots(const Fp2Field& field, const Integer& a, const Integer& ell);

/// r = order of ell mod p, delta = order of -ell mod p.
struct CyclotomicData {
  Integer ell;
  std::uint64_t p = 0;
  std::uint64_t r = 0;
  std::uint64_t delta = 0;
};

CyclotomicData cyclotomic_orders(const Integer& ell, std::uint64_t p);

/// Whether x is a p-th power in Q_ell (valuation test, plus the residue test
/// (x / ell^v)^((ell-1)/p) = 1 mod ell when ell = 1 mod p).
bool is_pth_power_Ql(const Rational& x, const Integer& ell, std::uint64_t p);

/// An element of exact order e in F_{p^2}^*; p | e is rejected.
Fp2Element primitive_root_of_unity(const Fp2Field& field, unsigned e);

/// Validates the (ell, p) pair every degree query needs: both prime, p >= 3,
/// p != ell, p below the field ceiling.
void check_prime_pair(const Integer& ell, const Integer& p);

}  // namespace ptord
