#include "ptord/frobenius.hpp"

#include <random>

#include "ptord/errors.hpp"
#include "ptord/field_curve.hpp"
#include "ptord/finite_field.hpp"
#include "ptord/modular.hpp"
#include "ptord/point_count.hpp"

namespace ptord {

namespace {

constexpr unsigned kSampleBudget = 96;
constexpr std::uint64_t kExhaustiveCeiling = 10'000;

const Integer& require_ell_below_ceiling(const Integer& ell) {
  if (ell >= Integer(static_cast<unsigned long>(kFieldPrimeCeiling))) {
    throw_resource("l = " + ell.get_str() + " exceeds the field ceiling 2^32");
  }
  return ell;
}

// Exhaustive answer through SmallField enumeration.
TorsionSearch exhaustive_full_torsion(const ResidualCurve& curve, std::uint64_t p, unsigned n) {
  const SmallField field(curve.ell, n);
  const SmallCurve c = SmallCurve::lift(field, curve);
  std::uint64_t killed = 0;
  for (const auto& P : enumerate_points(c)) {
    if (c.mul(P, p).infinity) ++killed;
  }
  TorsionSearch out;
  out.full = killed == p * p;
  out.certificate = "enumeration: " + std::to_string(killed) + " points killed by p";
  return out;
}

}  // namespace

FrobeniusData frobenius_data(const ResidualCurve& curve) {
  if (curve.singular()) throw_input("Frobenius data of a singular curve: " + curve.str());
  FrobeniusData fd;
  fd.curve = curve;
  fd.ell = Integer(static_cast<unsigned long>(curve.ell));
  fd.N = Integer(static_cast<unsigned long>(count_points(curve)));
  fd.a = fd.ell + 1 - fd.N;
  fd.delta_a = fd.a * fd.a - 4 * fd.ell;
  if (fd.delta_a >= 0) throw_internal("Weil bound violated: a = " + fd.a.get_str() + " over F_" + fd.ell.get_str());
  fd.ordinary = mod(fd.a, fd.ell) != 0;
  return fd;
}

Integer trace_power(const Integer& a, const Integer& ell, unsigned k) {
  if (k == 0) return 2;
  Integer prev = 2;
  Integer cur = a;
  for (unsigned i = 1; i < k; ++i) {
    Integer next = a * cur - ell * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Integer points_over_extension(const Integer& a, const Integer& ell, unsigned k) {
  return pow(ell, k) + 1 - trace_power(a, ell, k);
}

ResidualCurve residual_rescaled_curve(const LocalMinimalData& data, unsigned e) {
  if (data.ell < 5) throw_input("residual rescaled curve needs l >= 5");
  if (e != 2 && e != 3 && e != 4 && e != 6) throw_input("residual rescaled curve needs e in {2,3,4,6}");
  const std::int64_t vD = data.vD.value();
  if ((static_cast<std::int64_t>(e) * vD) % 12 != 0) {
    throw_internal("e = " + std::to_string(e) + " does not clear v(Delta) = " + std::to_string(vD));
  }
  require_ell_below_ceiling(data.ell);
  const std::uint64_t l = data.ell.get_ui();
  ResidualCurve out;
  out.ell = l;
  // c4 / u^4 has valuation v(c4) - v(Delta)/3, c6 / u^6 has v(c6) - v(Delta)/2.
  auto residue = [&](const Valuation& v, const std::optional<Integer>& unit, std::int64_t num, std::int64_t den,
                     std::uint64_t divisor) -> std::uint64_t {
    if (!v.is_finite() || v.value() * den > num) return 0;
    if (v.value() * den < num) throw_internal("negative valuation in the rescaled model (not potentially good)");
    const std::uint64_t u = mod_u64(*unit, l);
    return mul_mod((l - u) % l, inv_mod(divisor % l, l), l);
  };
  out.a4 = residue(data.vc4, data.u_c4, vD, 3, 48);
  out.a6 = residue(data.vc6, data.u_c6, vD, 2, 864);
  if (out.singular()) throw_internal("rescaled residual curve is singular: " + out.str());
  return out;
}

GoodTwist good_twist_at_small_ell(const LocalMinimalData& data) {
  GoodTwist g;
  if (data.ell != 2) {
    g.u = data.ell;
  } else {
    const auto is = [](const Valuation& v, std::int64_t k) { return v.is_finite() && v.value() == k; };
    if (!data.u_c6) throw_internal("c6 = 0 in a twist class at l = 2");
    const bool one_mod_4 = mod(*data.u_c6, 4) == 1;
    if (data.vc4.at_least(6) && is(data.vc6, 6) && is(data.vD, 6)) {
      g.u = one_mod_4 ? 2 : -2;
    } else if ((is(data.vc4, 4) && is(data.vc6, 6) && is(data.vD, 12)) ||
               (data.vc4.at_least(8) && is(data.vc6, 9) && is(data.vD, 12))) {
      g.u = -1;
    } else if (is(data.vc4, 6) && is(data.vc6, 9) && is(data.vD, 18)) {
      g.u = one_mod_4 ? -2 : 2;
    } else {
      throw_internal("(v(c4), v(c6), v(Delta)) = (" + data.vc4.str() + ", " + data.vc6.str() + ", " +
                     data.vD.str() + ") is not an e = 2 class at l = 2");
    }
  }
  g.twisted = minimal_model_at(quadratic_twist(data.minimal_model, g.u), data.ell, data.residue_exponent);
  if (g.twisted.vD.value() != 0) {
    throw_internal("twist by " + g.u.get_str() + " did not reach good reduction (v(Delta) = " +
                   g.twisted.vD.str() + ")");
  }
  return g;
}

TorsionSearch full_p_torsion_rational(const ResidualCurve& curve, const Integer& a, std::uint64_t p,
                                      unsigned n, std::uint64_t seed) {
  if (curve.singular()) throw_input("p-torsion search on a singular curve");
  if (n == 0) throw_input("extension degree must be positive");
  const Integer ell(static_cast<unsigned long>(curve.ell));
  const Integer pz(static_cast<unsigned long>(p));
  const Integer q = pow(ell, n);
  TorsionSearch out;
  if (mod(q - 1, pz) != 0) {
    out.certificate = "p does not divide q - 1";
    return out;
  }
  const Integer N = q + 1 - trace_power(a, ell, n);
  const Valuation vN = valuation(N, pz);
  const std::int64_t k = vN.value();
  if (k < 2) {
    out.certificate = "p^2 does not divide #E(F_q) = " + N.get_str();
    return out;
  }
  if (curve.ell == 2) {
    if (q <= kExhaustiveCeiling) return exhaustive_full_torsion(curve, p, n);
    throw_resource("full p-torsion sampling in characteristic 2 above q = 10^4");
  }

  const ExtensionField F(curve.ell, n);
  using Curve = FieldCurve<ExtensionField>;
  const Curve E = Curve::lift(F, curve);
  const Integer cofactor = N / pow(pz, static_cast<unsigned long>(k));
  std::mt19937_64 rng(seed);
  const auto two_inv = F.inv(F.from_uint(2));
  const auto four = F.from_uint(4);

  auto exponent_of = [&](Curve::Point P) {
    std::int64_t i = 0;
    while (!P.infinity) {
      P = E.mul(P, pz);
      ++i;
    }
    return i;
  };

  Curve::Point G = E.identity();
  std::int64_t b = 0;
  while (out.samples < kSampleBudget) {
    const auto x = F.random(rng);
    const auto lin = E.linear(x);
    const auto disc = F.add(F.mul(lin, lin), F.mul(four, E.rhs(x)));
    if (!F.is_square(disc)) continue;
    ++out.samples;
    const auto y = F.mul(F.sub(F.sqrt(disc), lin), two_inv);
    const Curve::Point P = E.affine(x, y);
    if (!E.on_curve(P)) throw_internal("sampled point is not on the curve");
    Curve::Point Q = E.mul(P, cofactor);
    std::int64_t i = exponent_of(Q);
    if (i == k) {
      out.certificate = "point of order p^" + std::to_string(k) + " = #Sylow_p: cyclic";
      return out;
    }
    while (!Q.infinity) {
      if (i > b) {
        std::swap(G, Q);
        std::swap(b, i);
        continue;
      }
      const Curve::Point R = E.mul(Q, pow(pz, static_cast<unsigned long>(i - 1)));
      const Curve::Point L = E.mul(G, pow(pz, static_cast<unsigned long>(b - 1)));
      std::uint64_t c = 0;
      Curve::Point multiple = L;
      for (std::uint64_t j = 1; j < p; ++j, multiple = E.add(multiple, L)) {
        if (E.eq(multiple, R)) {
          c = j;
          break;
        }
      }
      if (c == 0) {
        out.full = true;
        out.certificate = "two independent points of order p";
        return out;
      }
      const Integer shift = Integer(static_cast<unsigned long>(c)) * pow(pz, static_cast<unsigned long>(b - i));
      Q = E.add(Q, E.neg(E.mul(G, shift)));
      i = exponent_of(Q);
    }
  }
  if (q <= kExhaustiveCeiling) return exhaustive_full_torsion(curve, p, n);
  throw_resource("p-torsion sampling budget of " + std::to_string(kSampleBudget) +
                 " points exhausted over F_" + ell.get_str() + "^" + std::to_string(n));
}

bool b_index_divisible(const FrobeniusData& fd, std::uint64_t p, std::uint64_t n, std::uint64_t seed) {
  const Integer pz(static_cast<unsigned long>(p));
  if (mod(fd.delta_a, pz) != 0) throw_input("b-index test needs a repeated Frobenius root mod p");
  if (!fd.ordinary) {
    throw_internal("repeated Frobenius root mod p on a supersingular curve (a = " + fd.a.get_str() + ")");
  }
  // b^2 divides Delta_a.
  if (mod(fd.delta_a, pz * pz) != 0) return false;
  if (n > ExtensionField::kMaxDegree) {
    throw_resource("b-index test needs F_{l^" + std::to_string(n) + "}, above the degree ceiling");
  }
  return full_p_torsion_rational(fd.curve, fd.a, p, static_cast<unsigned>(n), seed).full;
}

}  // namespace ptord
