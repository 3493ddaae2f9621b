#include "ptord/modular.hpp"

#include <numeric>

#include "ptord/errors.hpp"

namespace ptord {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  __extension__ using wide = unsigned __int128;
  return static_cast<std::uint64_t>(static_cast<wide>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  if (a % m == 0) throw_internal("inverse of zero mod " + std::to_string(m));
  return pow_mod(a, m - 2, m);
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  std::vector<PrimePower> out;
  if (n == 0) throw_internal("factorize(0)");
  for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q != 0) continue;
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.push_back({q, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

int legendre(const Integer& a, const Integer& ell) {
  if (ell == 2) throw_input("Legendre symbol needs an odd prime; use the c6 mod 8 test at ell = 2");
  return mpz_legendre(mod(a, ell).get_mpz_t(), ell.get_mpz_t());
}

std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (pow_mod(a, (p - 1) / 2, p) != 1) throw_internal("sqrt_mod of a non-residue");
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s;
  std::uint64_t c = pow_mod(z, q, p);
  std::uint64_t t = pow_mod(a, q, p);
  std::uint64_t r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

namespace {

template <class PowFn>
std::uint64_t order_from_factors(std::uint64_t group_order, const std::vector<PrimePower>& factors,
                                 PowFn is_identity_at) {
  std::uint64_t ord = group_order;
  for (const PrimePower& f : factors) {
    for (unsigned i = 0; i < f.exponent; ++i) {
      if (ord % f.prime != 0) break;
      if (!is_identity_at(ord / f.prime)) break;
      ord /= f.prime;
    }
  }
  return ord;
}

std::vector<PrimePower> merge_factors(std::vector<PrimePower> a, const std::vector<PrimePower>& b) {
  for (const PrimePower& f : b) {
    bool merged = false;
    for (PrimePower& g : a) {
      if (g.prime == f.prime) {
        g.exponent += f.exponent;
        merged = true;
      }
    }
    if (!merged) a.push_back(f);
  }
  return a;
}

}  // namespace

std::uint64_t mult_order_mod(std::uint64_t x, std::uint64_t p) {
  x %= p;
  if (x == 0) throw_input("multiplicative order of zero is undefined");
  return order_from_factors(p - 1, factorize(p - 1),
                            [&](std::uint64_t k) { return pow_mod(x, k, p) == 1; });
}

Fp2Field::Fp2Field(std::uint64_t p) : p_(p) {
  if (p < 3 || p % 2 == 0) throw_input("F_{p^2} needs an odd prime p, got " + std::to_string(p));
  if (p >= kFieldPrimeCeiling) {
    throw_resource("p = " + std::to_string(p) + " exceeds the field ceiling 2^32");
  }
  g_ = 2;
  while (pow_mod(g_, (p - 1) / 2, p) != p - 1) ++g_;
  base_order_factors_ = factorize(p - 1);
  full_order_factors_ = merge_factors(base_order_factors_, factorize(p + 1));
}

Fp2Element Fp2Field::add(const Fp2Element& x, const Fp2Element& y) const {
  return {(x.c0 + y.c0) % p_, (x.c1 + y.c1) % p_};
}

Fp2Element Fp2Field::sub(const Fp2Element& x, const Fp2Element& y) const {
  return {(x.c0 + p_ - y.c0) % p_, (x.c1 + p_ - y.c1) % p_};
}

Fp2Element Fp2Field::neg(const Fp2Element& x) const { return sub(zero(), x); }

Fp2Element Fp2Field::mul(const Fp2Element& x, const Fp2Element& y) const {
  const std::uint64_t c0 =
      (mul_mod(x.c0, y.c0, p_) + mul_mod(mul_mod(x.c1, y.c1, p_), g_, p_)) % p_;
  const std::uint64_t c1 = (mul_mod(x.c0, y.c1, p_) + mul_mod(x.c1, y.c0, p_)) % p_;
  return {c0, c1};
}

Fp2Element Fp2Field::pow(Fp2Element x, std::uint64_t e) const {
  Fp2Element r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

Fp2Element Fp2Field::inv(const Fp2Element& x) const {
  if (is_zero(x)) throw_input("inverse of zero in F_{p^2}");
  // (c0 + c1 t)^{-1} = (c0 - c1 t) / (c0^2 - g c1^2)
  const std::uint64_t norm =
      (mul_mod(x.c0, x.c0, p_) + p_ - mul_mod(g_, mul_mod(x.c1, x.c1, p_), p_)) % p_;
  const std::uint64_t ni = inv_mod(norm, p_);
  return {mul_mod(x.c0, ni, p_), mul_mod((p_ - x.c1) % p_, ni, p_)};
}

std::uint64_t Fp2Field::order(const Fp2Element& x) const {
  if (is_zero(x)) throw_input("multiplicative order of zero is undefined");
  if (in_base_field(x)) {
    return order_from_factors(p_ - 1, base_order_factors_,
                              [&](std::uint64_t k) { return pow(x, k) == one(); });
  }
  return order_from_factors(p_ * p_ - 1, full_order_factors_,
                            [&](std::uint64_t k) { return pow(x, k) == one(); });
}

std::string Fp2Field::str(const Fp2Element& x) const {
  if (x.c1 == 0) return std::to_string(x.c0);
  std::string s = x.c0 == 0 ? std::string() : std::to_string(x.c0) + "+";
  return s + (x.c1 == 1 ? std::string() : std::to_string(x.c1) + "*") + "t";
}

CharPolyData char_poly_roots(const Integer& a, const Integer& ell, std::uint64_t p) {
  return char_poly_roots(Fp2Field(p), a, ell);
}

CharPolyData char_poly_roots(const Fp2Field& field, const Integer& a, const Integer& ell) {
  const std::uint64_t p = field.p();
  if (mod_u64(ell, p) == 0) throw_input("p must differ from ell");
  CharPolyData cp;
  cp.a = a;
  cp.ell = ell;
  cp.p = p;
  cp.delta_a = a * a - 4 * ell;
  const std::uint64_t half = inv_mod(2, p);
  const std::uint64_t a_half = mul_mod(mod_u64(a, p), half, p);
  const std::uint64_t disc = mod_u64(cp.delta_a, p);
  if (disc == 0) {
    cp.repeated_root = true;
    cp.alpha = cp.beta = Fp2Element{a_half, 0};
  } else if (pow_mod(disc, (p - 1) / 2, p) == 1) {
    const std::uint64_t s = mul_mod(sqrt_mod(disc, p), half, p);
    cp.alpha = {(a_half + s) % p, 0};
    cp.beta = {(a_half + p - s) % p, 0};
  } else {
    // disc / g is a residue; (s t)^2 = s^2 g = disc.
    const std::uint64_t s = mul_mod(sqrt_mod(mul_mod(disc, inv_mod(field.g(), p), p), p), half, p);
    cp.alpha = {a_half, s};
    cp.beta = {a_half, (p - s) % p};
  }
  cp.n = lcm_u64(field.order(cp.alpha), field.order(cp.beta));
  if (pow_mod(mod_u64(ell, p), cp.n, p) != 1) {
    throw_internal("ell^n != 1 mod p for the Frobenius roots");
  }
  return cp;
}

CyclotomicData cyclotomic_orders(const Integer& ell, std::uint64_t p) {
  const std::uint64_t l = mod_u64(ell, p);
  if (l == 0) throw_input("p must differ from ell");
  CyclotomicData c;
  c.ell = ell;
  c.p = p;
  c.r = mult_order_mod(l, p);
  c.delta = mult_order_mod(p - l, p);
  return c;
}

bool is_pth_power_Ql(const Rational& x, const Integer& ell, std::uint64_t p) {
  if (x == 0) throw_input("p-th power test of zero");
  const Valuation v = valuation(x, ell);
  if (v.value() % static_cast<std::int64_t>(p) != 0) return false;
  if (mod_u64(ell - 1, p) != 0) return true;
  // ell = 1 mod p: the Teichmueller part must be a p-th power.
  const Integer num(x.get_num());
  const Integer den(x.get_den());
  const Integer unit = mod(unit_part(num, ell), ell);
  const Integer den_unit = mod(unit_part(den, ell), ell);
  Integer den_inv;
  mpz_invert(den_inv.get_mpz_t(), den_unit.get_mpz_t(), ell.get_mpz_t());
  const Integer u = mod(unit * den_inv, ell);
  Integer e = (ell - 1) / Integer(static_cast<unsigned long>(p));
  Integer r;
  mpz_powm(r.get_mpz_t(), u.get_mpz_t(), e.get_mpz_t(), ell.get_mpz_t());
  return r == 1;
}

Fp2Element primitive_root_of_unity(const Fp2Field& field, unsigned e) {
  const std::uint64_t p = field.p();
  if (e == 0) throw_input("root of unity order must be positive");
  if (e % p == 0) throw_input("no primitive " + std::to_string(e) + "-th root of unity in characteristic " +
                              std::to_string(p));
  const std::uint64_t group = p * p - 1;
  if (group % e != 0) throw_input("e does not divide p^2 - 1");
  for (std::uint64_t c1 = 0; c1 < p; ++c1) {
    for (std::uint64_t c0 = 0; c0 < p; ++c0) {
      const Fp2Element x{c0, c1};
      if (field.is_zero(x)) continue;
      const Fp2Element y = field.pow(x, group / e);
      if (field.order(y) == e) return y;
    }
  }
  throw_internal("no primitive root of unity found");
}

void check_prime_pair(const Integer& ell, const Integer& p) {
  if (!is_prime(ell)) throw_input("ell must be prime, got " + ell.get_str());
  if (!is_prime(p)) throw_input("p must be prime, got " + p.get_str());
  if (p == ell) throw_input("p must differ from ell");
  if (p < 3) throw_input("p must be an odd prime >= 3");
  if (p >= Integer(static_cast<unsigned long>(kFieldPrimeCeiling))) {
    throw_resource("p = " + p.get_str() + " exceeds the field ceiling 2^32");
  }
}

}  // namespace ptord
