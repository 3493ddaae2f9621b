#include "ptord/oracles.hpp"

#include "ptord/errors.hpp"
#include "ptord/modular.hpp"
#include "ptord/point_count.hpp"

namespace ptord {

namespace {

constexpr std::uint64_t kGroupCeiling = 10'000;
constexpr std::uint64_t kPthPowerCeiling = 10'000'000;
constexpr std::uint64_t kCompanionCeiling = 1'000;

}  // namespace

MatrixModP MatrixModP::operator*(const MatrixModP& o) const {
  if (p != o.p) throw_input("matrix moduli differ");
  auto dot = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return (mul_mod(a, b, p) + mul_mod(c, d, p)) % p;
  };
  return {p,
          {dot(m[0], o.m[0], m[1], o.m[2]), dot(m[0], o.m[1], m[1], o.m[3]), dot(m[2], o.m[0], m[3], o.m[2]),
           dot(m[2], o.m[1], m[3], o.m[3])}};
}

std::uint64_t MatrixModP::det() const { return (mul_mod(m[0], m[3], p) + p - mul_mod(m[1], m[2], p)) % p; }

std::uint64_t matrix_order(const MatrixModP& m) {
  if (m.det() == 0) throw_input("matrix is singular mod " + std::to_string(m.p));
  if (m.p > kCompanionCeiling) throw_resource("matrix order by iteration needs p <= 1000");
  const std::uint64_t bound = m.p * (m.p - 1) * (m.p - 1) * (m.p + 1);
  const MatrixModP one = MatrixModP::identity(m.p);
  MatrixModP power = m;
  for (std::uint64_t k = 1; k <= bound; ++k) {
    if (power == one) return k;
    power = power * m;
  }
  throw_internal("matrix order exceeds #GL_2(F_p)");
}

std::uint64_t companion_frobenius_order(const Integer& a, const Integer& ell, std::uint64_t p) {
  if (mod_u64(ell, p) == 0) throw_input("p must differ from ell");
  const std::uint64_t l = mod_u64(ell, p);
  return matrix_order({p, {0, (p - l) % p, 1, mod_u64(a, p)}});
}

bool exhaustive_pth_power(const Integer& u, const Integer& ell, std::uint64_t p) {
  if (ell > Integer(static_cast<unsigned long>(kPthPowerCeiling))) {
    throw_resource("exhaustive p-th power search above l = 10^7");
  }
  const std::uint64_t l = ell.get_ui();
  const std::uint64_t target = mod_u64(u, l);
  if (target == 0) throw_input("exhaustive p-th power test needs a unit");
  for (std::uint64_t x = 1; x < l; ++x) {
    if (pow_mod(x, p, l) == target) return true;
  }
  return false;
}

GroupStructure exhaustive_group_structure(const ResidualCurve& curve, unsigned k) {
  if (curve.singular()) throw_input("group structure of a singular curve");
  const Integer q = pow(Integer(static_cast<unsigned long>(curve.ell)), k);
  if (q > Integer(static_cast<unsigned long>(kGroupCeiling))) {
    throw_resource("exhaustive group structure above q = 10^4");
  }
  const SmallField field(curve.ell, k);
  const SmallCurve c = SmallCurve::lift(field, curve);
  const auto points = enumerate_points(c);
  GroupStructure g;
  g.order = points.size();
  const auto factors = factorize(g.order);
  g.exponent = 1;
  for (const auto& P : points) {
    if (!c.on_curve(P)) throw_internal("enumerated point is off the curve");
    std::uint64_t ord = g.order;
    for (const PrimePower& f : factors) {
      for (unsigned i = 0; i < f.exponent && ord % f.prime == 0; ++i) {
        if (!c.mul(P, ord / f.prime).infinity) break;
        ord /= f.prime;
      }
    }
    g.exponent = lcm_u64(g.exponent, ord);
  }
  if (g.order % g.exponent != 0) throw_internal("exponent does not divide the group order");
  g.m = g.order / g.exponent;
  if (g.exponent % g.m != 0) throw_internal("group is not of the form Z/m x Z/mk");
  return g;
}

bool order_pair_trichotomy(std::uint64_t r, std::uint64_t delta) {
  if (r % 2 == 1) return delta == 2 * r;
  if (delta % 2 == 0) return delta == r;
  return 2 * delta == r;
}

std::vector<std::string> check_consistency(const DegreeResult& res) {
  std::vector<std::string> bad;
  const Integer& d = res.d;
  const std::uint64_t p = res.p;
  const Intermediates& im = res.intermediates;
  const auto divides = [](const Integer& a, const Integer& b) {
    return a != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
  };
  const Integer pz(static_cast<unsigned long>(p));
  if (d < 1) bad.push_back("d >= 1");
  if (!divides(Integer(static_cast<unsigned long>(im.r)), d)) bad.push_back("r | d");
  if (res.reduction.e && !divides(Integer(*res.reduction.e), d)) bad.push_back("e | d");
  if (!divides(d, pz * (pz - 1) * (pz - 1) * (pz + 1))) bad.push_back("d | p(p-1)^2(p+1)");
  if (res.reduction.kind == ReductionKind::AdditivePotentiallyMultiplicative && !divides(2, d)) {
    bad.push_back("2 | d for potentially multiplicative reduction");
  }
  if (!order_pair_trichotomy(im.r, im.delta)) bad.push_back("r/delta trichotomy");
  const bool good = res.reduction.kind == ReductionKind::Good && im.a;
  if (good && *im.a == 0 && d != 2 * Integer(static_cast<unsigned long>(im.delta))) {
    bad.push_back("a = 0 implies d = 2 delta");
  }
  if (good && p <= kCompanionCeiling) {
    const std::uint64_t companion = companion_frobenius_order(*im.a, res.ell, p);
    if (!im.repeated_root.value_or(false)) {
      if (d != companion) bad.push_back("d equals the companion-matrix order");
    } else if (im.b_divisible && !*im.b_divisible && d != companion) {
      bad.push_back("d equals the companion-matrix order when p does not divide b");
    }
  }
  if (im.n && res.reduction.kind == ReductionKind::Good && !divides(Integer(static_cast<unsigned long>(*im.n)), d)) {
    bad.push_back("n | d");
  }
  return bad;
}

}  // namespace ptord
