#include "ptord/curve_model.hpp"

#include <sstream>

#include "ptord/errors.hpp"

namespace ptord {

namespace {

std::string signed_term(const Integer& c, const char* mono) {
  if (c == 0) return {};
  std::ostringstream os;
  os << (c < 0 ? " - " : " + ");
  Integer a = abs(c);
  if (a != 1 || *mono == '\0') os << a.get_str();
  os << mono;
  return os.str();
}

}  // namespace

CurveModel CurveModel::from_c_invariants(const Integer& c4, const Integer& c6) {
  CurveModel m;
  m.a4 = -27 * c4;
  m.a6 = -54 * c6;
  return m;
}

std::string CurveModel::str() const {
  std::string lhs = "y^2" + signed_term(a1, "xy") + signed_term(a3, "y");
  std::string rhs = "x^3" + signed_term(a2, "x^2") + signed_term(a4, "x") + signed_term(a6, "");
  return lhs + " = " + rhs;
}

StandardInvariants standard_invariants(const CurveModel& m) {
  StandardInvariants inv;
  inv.b2 = m.a1 * m.a1 + 4 * m.a2;
  inv.b4 = 2 * m.a4 + m.a1 * m.a3;
  inv.b6 = m.a3 * m.a3 + 4 * m.a6;
  inv.b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 + m.a2 * m.a3 * m.a3 -
           m.a4 * m.a4;
  inv.c4 = inv.b2 * inv.b2 - 24 * inv.b4;
  inv.c6 = -inv.b2 * inv.b2 * inv.b2 + 36 * inv.b2 * inv.b4 - 216 * inv.b6;
  inv.discriminant = -inv.b2 * inv.b2 * inv.b8 - 8 * inv.b4 * inv.b4 * inv.b4 -
                     27 * inv.b6 * inv.b6 + 9 * inv.b2 * inv.b4 * inv.b6;
  if (inv.discriminant == 0) throw_input("singular model (discriminant is zero): " + m.str());
  inv.j = Rational(inv.c4 * inv.c4 * inv.c4, inv.discriminant);
  inv.j.canonicalize();
  return inv;
}

CurveModel translate(const CurveModel& m, const Integer& r, const Integer& s, const Integer& t) {
  CurveModel out;
  out.a1 = m.a1 + 2 * s;
  out.a2 = m.a2 - s * m.a1 + 3 * r - s * s;
  out.a3 = m.a3 + r * m.a1 + 2 * t;
  out.a4 = m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 + 3 * r * r - 2 * s * t;
  out.a6 = m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t - r * t * m.a1;
  return out;
}

CurveModel scale_up(const CurveModel& m, const Integer& u) {
  const Integer u2 = u * u;
  const Integer u3 = u2 * u;
  return CurveModel{m.a1 * u, m.a2 * u2, m.a3 * u3, m.a4 * u2 * u2, m.a6 * u3 * u3};
}

CurveModel scale_down(const CurveModel& m, const Integer& u) {
  auto exact = [&](const Integer& a, unsigned long k) {
    Integer d = pow(u, k);
    if (!mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t())) {
      throw_internal("scale_down: coefficient not divisible by u^" + std::to_string(k));
    }
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return q;
  };
  return CurveModel{exact(m.a1, 1), exact(m.a2, 2), exact(m.a3, 3), exact(m.a4, 4), exact(m.a6, 6)};
}

CurveModel quadratic_twist(const CurveModel& m, const Integer& u_raw) {
  const Integer u = squarefree_part(u_raw);
  standard_invariants(m);  // rejects singular input
  if (u == 1) return m;
  const bool even_cross_terms = mpz_even_p(m.a1.get_mpz_t()) && mpz_even_p(m.a3.get_mpz_t());
  if (even_cross_terms) {
    const CurveModel c = translate(m, 0, Integer(-m.a1 / 2), Integer(-m.a3 / 2));
    return CurveModel{0, c.a2 * u, 0, c.a4 * u * u, c.a6 * u * u * u};
  }
  const StandardInvariants inv = standard_invariants(m);
  return CurveModel{0, inv.b2 * u, 0, 8 * inv.b4 * u * u, 16 * inv.b6 * u * u * u};
}

std::string KodairaType::str() const {
  switch (family) {
    case Family::I: return "I" + std::to_string(n);
    case Family::II: return "II";
    case Family::III: return "III";
    case Family::IV: return "IV";
    case Family::IStar: return "I" + std::to_string(n) + "*";
    case Family::IIStar: return "II*";
    case Family::IIIStar: return "III*";
    case Family::IVStar: return "IV*";
  }
  return "?";
}

namespace {

bool divides(const Integer& d, const Integer& x) {
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

Integer exact_div(const Integer& x, const Integer& d) {
  if (!divides(d, x)) throw_internal("Tate's algorithm: expected divisibility by " + d.get_str());
  Integer q;
  mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return q;
}

Integer inverse_mod(const Integer& x, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), mod(x, m).get_mpz_t(), m.get_mpz_t()) == 0) {
    throw_internal("no inverse modulo " + m.get_str());
  }
  return r;
}

// Double root of Y^2 + b Y + c mod p when the discriminant vanishes mod p.
Integer quadratic_double_root(const Integer& b, const Integer& c, const Integer& p) {
  if (p == 2) return mod(c, p);  // b even: Y^2 = c over F_2
  return mod(-b * inverse_mod(2, p), p);
}

// Classification of the cubic T^3 + b T^2 + c T + d mod p.
enum class CubicRoots { Distinct, DoubleRoot, TripleRoot };

struct CubicInfo {
  CubicRoots kind;
  Integer root;  // the repeated root when kind != Distinct
};

CubicInfo classify_cubic(const Integer& b, const Integer& c, const Integer& d, const Integer& p) {
  const Integer disc = b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
  if (!divides(p, disc)) return {CubicRoots::Distinct, 0};
  if (p <= 3) {
    // Brute force: the repeated root lies in F_p.
    for (Integer x = 0; x < p; ++x) {
      const Integer val = ((x + b) * x + c) * x + d;
      const Integer der = (3 * x + 2 * b) * x + c;
      if (!divides(p, val) || !divides(p, der)) continue;
      const Integer second = 3 * x + b;  // P''/2
      return {divides(p, second) ? CubicRoots::TripleRoot : CubicRoots::DoubleRoot, x};
    }
    throw_internal("cubic with vanishing discriminant has no repeated root in F_" + p.get_str());
  }
  const Integer h = b * b - 3 * c;
  if (divides(p, h)) return {CubicRoots::TripleRoot, mod(-b * inverse_mod(3, p), p)};
  return {CubicRoots::DoubleRoot, mod((9 * d - b * c) * inverse_mod(2 * h, p), p)};
}

// Singular point of the reduction mod p of a model with additive reduction.
std::pair<Integer, Integer> singular_point(const CurveModel& m, const StandardInvariants& inv,
                                           const Integer& p) {
  if (p <= 3) {
    for (Integer x = 0; x < p; ++x) {
      for (Integer y = 0; y < p; ++y) {
        const Integer f = y * y + m.a1 * x * y + m.a3 * y - x * x * x - m.a2 * x * x - m.a4 * x - m.a6;
        const Integer fx = m.a1 * y - 3 * x * x - 2 * m.a2 * x - m.a4;
        const Integer fy = 2 * y + m.a1 * x + m.a3;
        if (divides(p, f) && divides(p, fx) && divides(p, fy)) return {x, y};
      }
    }
    throw_internal("no singular point found on a reduction with v(Delta) > 0");
  }
  const Integer x0 = mod(-inv.b2 * inverse_mod(12, p), p);
  const Integer y0 = mod(-(m.a1 * x0 + m.a3) * inverse_mod(2, p), p);
  return {x0, y0};
}

}  // namespace

TateResult tate_algorithm(const CurveModel& input, const Integer& p) {
  if (!is_prime(p)) throw_input("Tate's algorithm needs a prime, got " + p.get_str());
  using F = KodairaType::Family;
  CurveModel m = input;
  int scalings = 0;
  const Integer p2 = p * p;
  const Integer p3 = p2 * p;
  const Integer p4 = p3 * p;

  for (;;) {
    StandardInvariants inv = standard_invariants(m);
    const Valuation vD = valuation(inv.discriminant, p);
    if (vD.value() == 0) return {m, {F::I, 0}, scalings};
    if (!divides(p, inv.c4)) return {m, {F::I, static_cast<int>(vD.value())}, scalings};

    // Additive: move the cusp to (0, 0).
    const auto [x0, y0] = singular_point(m, inv, p);
    m = translate(m, x0, 0, y0);
    inv = standard_invariants(m);
    if (!divides(p, m.a3) || !divides(p, m.a4) || !divides(p, m.a6)) {
      throw_internal("singular point translation failed");
    }
    if (!divides(p2, m.a6)) return {m, {F::II, 0}, scalings};
    if (!divides(p3, inv.b8)) return {m, {F::III, 0}, scalings};
    if (!divides(p3, inv.b6)) return {m, {F::IV, 0}, scalings};

    // p | a1, a2; p^2 | a3, a4; p^3 | a6.
    Integer s, t;
    if (p == 2) {
      s = mod(m.a2, 2);
      t = 2 * mod(exact_div(m.a6, 4), 2);
    } else {
      const Integer half = inverse_mod(2, p2);
      s = mod(-m.a1 * half, p);
      t = mod(-m.a3 * half, p2);
    }
    m = translate(m, 0, s, t);
    if (!divides(p, m.a1) || !divides(p, m.a2) || !divides(p2, m.a3) || !divides(p2, m.a4) ||
        !divides(p3, m.a6)) {
      throw_internal("Tate step 6 normalisation failed");
    }

    const CubicInfo cubic =
        classify_cubic(exact_div(m.a2, p), exact_div(m.a4, p2), exact_div(m.a6, p3), p);
    if (cubic.kind == CubicRoots::Distinct) return {m, {F::IStar, 0}, scalings};

    if (cubic.kind == CubicRoots::DoubleRoot) {
      m = translate(m, p * cubic.root, 0, 0);
      // Subprocedure for I_n*: alternate between the y- and x-quadratics.
      for (int n = 1;; ++n) {
        if (n % 2 == 1) {
          const unsigned long k = static_cast<unsigned long>((n + 3) / 2);
          const Integer pk = pow(p, k);
          const Integer qb = exact_div(m.a3, pk);
          const Integer qc = -exact_div(m.a6, pk * pk);
          if (!divides(p, qb * qb - 4 * qc)) return {m, {F::IStar, n}, scalings};
          m = translate(m, 0, 0, pk * quadratic_double_root(qb, qc, p));
        } else {
          const unsigned long k = static_cast<unsigned long>((n + 2) / 2);
          const Integer pk = pow(p, k);
          const Integer qa = exact_div(m.a2, p);
          const Integer qb = exact_div(m.a4, pk * p);
          const Integer qc = exact_div(m.a6, pk * pk * p);
          if (!divides(p, qb * qb - 4 * qa * qc)) return {m, {F::IStar, n}, scalings};
          Integer root;
          if (p == 2) {
            root = mod(qc, 2);  // qa odd, qb even: X^2 = qc over F_2
          } else {
            root = mod(-qb * inverse_mod(2 * qa, p), p);
          }
          m = translate(m, pk * root, 0, 0);
        }
      }
    }

    // Triple root.
    m = translate(m, p * cubic.root, 0, 0);
    {
      const Integer qb = exact_div(m.a3, p2);
      const Integer qc = -exact_div(m.a6, p4);
      if (!divides(p, qb * qb - 4 * qc)) return {m, {F::IVStar, 0}, scalings};
      m = translate(m, 0, 0, p2 * quadratic_double_root(qb, qc, p));
    }
    if (!divides(p4, m.a4)) return {m, {F::IIIStar, 0}, scalings};
    if (!divides(p3 * p3, m.a6)) return {m, {F::IIStar, 0}, scalings};

    // Non-minimal: divide out u = p and start over.
    m = scale_down(m, p);
    ++scalings;
  }
}

LocalMinimalData minimal_model_at(const CurveModel& model, const Integer& ell,
                                  unsigned residue_exponent) {
  if (residue_exponent == 0) throw_input("residue exponent must be >= 1");
  const TateResult tate = tate_algorithm(model, ell);
  LocalMinimalData d;
  d.ell = ell;
  d.minimal_model = tate.minimal_model;
  d.invariants = standard_invariants(d.minimal_model);
  d.kodaira = tate.kodaira;
  d.scalings = tate.scalings;
  d.vc4 = valuation(d.invariants.c4, ell);
  d.vc6 = valuation(d.invariants.c6, ell);
  d.vD = valuation(d.invariants.discriminant, ell);
  d.residue_exponent = residue_exponent;
  d.residue_modulus = pow(ell, residue_exponent);
  if (d.invariants.c4 != 0) d.u_c4 = mod(unit_part(d.invariants.c4, ell), d.residue_modulus);
  if (d.invariants.c6 != 0) d.u_c6 = mod(unit_part(d.invariants.c6, ell), d.residue_modulus);
  d.u_delta = mod(unit_part(d.invariants.discriminant, ell), d.residue_modulus);
  if (d.invariants.c4 == 0) {
    d.vj = Valuation::infinity();
  } else {
    d.vj = Valuation(3 * d.vc4.value() - d.vD.value());
    const Integer jt = mod(*d.u_c4 * *d.u_c4 * *d.u_c4 * inverse_mod(d.u_delta, ell), ell);
    d.jt_mod_ell = jt.get_ui();
  }
  return d;
}

std::uint64_t ResidualCurve::discriminant() const {
  const Integer p(static_cast<unsigned long>(ell));
  const CurveModel m{Integer(static_cast<unsigned long>(a1)), Integer(static_cast<unsigned long>(a2)),
                     Integer(static_cast<unsigned long>(a3)), Integer(static_cast<unsigned long>(a4)),
                     Integer(static_cast<unsigned long>(a6))};
  const Integer b2 = m.a1 * m.a1 + 4 * m.a2;
  const Integer b4 = 2 * m.a4 + m.a1 * m.a3;
  const Integer b6 = m.a3 * m.a3 + 4 * m.a6;
  const Integer b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 +
                     m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
  const Integer disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  return mod_u64(disc, ell);
}

std::string ResidualCurve::str() const {
  const CurveModel m{Integer(static_cast<unsigned long>(a1)), Integer(static_cast<unsigned long>(a2)),
                     Integer(static_cast<unsigned long>(a3)), Integer(static_cast<unsigned long>(a4)),
                     Integer(static_cast<unsigned long>(a6))};
  return m.str() + " over F_" + std::to_string(ell);
}

ResidualCurve reduce(const CurveModel& model, const Integer& ell) {
  if (ell < 2 || ell >= Integer("4294967296")) {
    throw_resource("reduction mod " + ell.get_str() + " needs 2 <= ell < 2^32");
  }
  const std::uint64_t l = ell.get_ui();
  return ResidualCurve{l, mod_u64(model.a1, l), mod_u64(model.a2, l), mod_u64(model.a3, l),
                       mod_u64(model.a4, l), mod_u64(model.a6, l)};
}

ResidualCurve reduce_mod(const LocalMinimalData& data) {
  return reduce(data.minimal_model, data.ell);
}

}  // namespace ptord
