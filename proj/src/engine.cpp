#include "ptord/engine.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ptord/errors.hpp"

namespace ptord {

namespace {

Integer z(std::uint64_t x) { return Integer(static_cast<unsigned long>(x)); }

// Frobenius roots with the predicates the potentially good cases test.
class RootView {
 public:
  RootView(const CharPolyData& cp, bool swap)
      : field_(cp.p), alpha_(swap ? cp.beta : cp.alpha), beta_(swap ? cp.alpha : cp.beta), n_(cp.n) {}

  const Fp2Field& field() const { return field_; }
  std::uint64_t n() const { return n_; }

  // alpha^(n/2) = -1 with n even.
  bool alpha_half_is_minus_one() const {
    return n_ % 2 == 0 && field_.pow(alpha_, n_ / 2) == minus_one();
  }

  // alpha^(n/2) = beta^(n/2) = -1 with n even.
  bool both_half_minus_one() const {
    return alpha_half_is_minus_one() && field_.pow(beta_, n_ / 2) == minus_one();
  }

  // m | n and {alpha^(n/m), beta^(n/m)} = {w, w^-1}.
  bool pair_is(std::uint64_t m, const Fp2Element& w) const {
    if (n_ % m != 0) return false;
    const Fp2Element x = field_.pow(alpha_, n_ / m);
    const Fp2Element y = field_.pow(beta_, n_ / m);
    const Fp2Element wi = field_.inv(w);
    return (x == w && y == wi) || (x == wi && y == w);
  }

 private:
  Fp2Element minus_one() const { return {field_.p() - 1, 0}; }

  Fp2Field field_;
  Fp2Element alpha_, beta_;
  std::uint64_t n_;
};

Fp2Element zeta(const Fp2Field& F, unsigned e, unsigned k) {
  if (std::gcd(e, k) != 1) {
    throw_input("zeta exponent " + std::to_string(k) + " is not prime to e = " + std::to_string(e));
  }
  return F.pow(primitive_root_of_unity(F, e), k);
}

BranchValue by_r_parity(unsigned e, const CyclotomicData& cyc, const std::string& label) {
  const Integer er = z(e) * z(cyc.r);
  return {cyc.r % 2 == 0 ? er : Integer(2 * er), label};
}

// The common shape of the e = 2 cases (twist with good reduction).
BranchValue twist_case(const PotGoodInputs& in, const RootView& roots, const std::string& thm) {
  const CharPolyData& cp = *in.cp;
  const Integer n = z(cp.n);
  if (!cp.repeated_root) {
    return {roots.both_half_minus_one() ? n : Integer(2 * n), thm + ".1"};
  }
  if (!in.b_div) throw_internal("repeated root without the b-index flag");
  const Integer np = n * z(cp.p);
  if (roots.alpha_half_is_minus_one()) return {*in.b_div ? n : np, thm + ".2.1"};
  return {*in.b_div ? Integer(2 * n) : Integer(2 * np), thm + ".2.2"};
}

// Constant-valued second parts at l = 3 and l = 2, checked against the general shape.
BranchValue forced_case(const PotGoodInputs& in, const RootView& roots, const std::string& thm,
                        std::uint64_t expected_p, unsigned long value) {
  const CharPolyData& cp = *in.cp;
  if (cp.p != expected_p) {
    throw_internal("repeated Frobenius root mod p = " + std::to_string(cp.p) + " where only p = " +
                   std::to_string(expected_p) + " is possible");
  }
  const BranchValue general = twist_case(in, roots, "check");
  if (general.d != value) {
    throw_internal("constant " + std::to_string(value) + " disagrees with the general value " +
                   general.d.get_str());
  }
  return {Integer(value), thm + ".2"};
}

std::string fp2_str(const Fp2Field& F, const Fp2Element& x) { return F.str(x); }

}  // namespace

BranchValue degree_good(const CharPolyData& cp, std::optional<bool> b_div) {
  const Integer n = z(cp.n);
  if (!cp.repeated_root) return {n, "T1.1"};
  if (!b_div) throw_internal("repeated root without the b-index flag");
  return {*b_div ? n : Integer(n * z(cp.p)), "T1.2"};
}

BranchValue degree_multiplicative(bool split, bool pth_power_j, const CyclotomicData& cyc) {
  const Integer p = z(cyc.p);
  const Integer r = z(cyc.r);
  const bool one_mod_p = mod_u64(cyc.ell, cyc.p) == 1;
  if (split) {
    if (!one_mod_p) return {pth_power_j ? r : Integer(p * r), "T2.1.1"};
    return {pth_power_j ? Integer(1) : p, "T2.1.2"};
  }
  if (cyc.r % 2 == 0) return {pth_power_j ? r : Integer(p * r), "T2.2.1"};
  if (!one_mod_p) return {pth_power_j ? Integer(2 * r) : Integer(2 * p * r), "T2.2.2.1"};
  return {pth_power_j ? Integer(2) : Integer(2 * p), "T2.2.2.2"};
}

BranchValue degree_pot_mult(bool pth_power_j, const CyclotomicData& cyc) {
  const Integer p = z(cyc.p);
  const Integer r = z(cyc.r);
  if (mod_u64(cyc.ell, cyc.p) != 1) return {pth_power_j ? Integer(2 * r) : Integer(2 * p * r), "T3.1"};
  return {pth_power_j ? Integer(2) : Integer(2 * p), "T3.2"};
}

bool pot_good_needs_roots(const Integer& ell, unsigned e, std::uint64_t p) {
  if (e == 2) return true;
  if (ell < 5) return false;
  const std::uint64_t l_mod_12 = mod_u64(ell, 12);
  if (e == 3) return l_mod_12 % 3 == 1;
  if (e == 4) return l_mod_12 % 4 == 1;
  if (e == 6) return l_mod_12 % 3 == 1 && p != 3;
  return false;
}

BranchValue degree_additive_potgood(const PotGoodInputs& in) {
  const unsigned e = in.e;
  const Integer& ell = in.cyc.ell;
  const std::uint64_t p = in.cyc.p;
  const auto& allowed = admissible_defects(ell);
  if (std::find(allowed.begin(), allowed.end(), e) == allowed.end()) {
    throw_input("e = " + std::to_string(e) + " is not admissible at l = " + ell.get_str());
  }
  if (pot_good_needs_roots(ell, e, p) && !in.cp) throw_internal("Frobenius roots required but absent");

  if (ell == 3 || ell == 2) {
    const std::string small = ell == 3 ? "T9" : "T11";
    const std::string large = ell == 3 ? "T10" : "T12";
    if (e == 2) {
      const RootView roots(*in.cp, in.swap_roots);
      if (!in.cp->repeated_root) return twist_case(in, roots, small);
      return ell == 3 ? forced_case(in, roots, small, 11, 110) : forced_case(in, roots, small, 7, 42);
    }
    if (e == 3) return {Integer(6 * z(in.cyc.delta)), large + ".1"};
    return by_r_parity(e, in.cyc, large + ".2");
  }

  const std::uint64_t l_mod_12 = mod_u64(ell, 12);
  if (e == 2) return twist_case(in, RootView(*in.cp, in.swap_roots), "T4");
  if (e == 3 && l_mod_12 % 3 == 2) return {Integer(6 * z(in.cyc.delta)), "T8.1"};
  if ((e == 4 && l_mod_12 % 4 == 3) || (e == 6 && l_mod_12 % 3 == 2)) return by_r_parity(e, in.cyc, "T8.2");
  if (e == 6 && p == 3) return {Integer(6), "T7.2"};

  const RootView roots(*in.cp, in.swap_roots);
  const Integer n = z(roots.n());
  const bool repeated = in.cp->repeated_root;
  if (e == 3) {
    if (p == 3) return {Integer(3 * n), "T5.2"};
    if (repeated) return {Integer(3 * n), "T5.1.2"};
    const Fp2Element z3 = zeta(roots.field(), 3, in.zeta_exponent);
    return {roots.pair_is(3, z3) ? n : Integer(3 * n), "T5.1.1"};
  }
  if (e == 4) {
    if (repeated) return {roots.alpha_half_is_minus_one() ? Integer(2 * n) : Integer(4 * n), "T6.2"};
    const Fp2Element z4 = zeta(roots.field(), 4, in.zeta_exponent);
    if (roots.pair_is(4, z4)) return {n, "T6.1"};
    if (roots.n() % 2 == 1 || !roots.both_half_minus_one()) return {Integer(4 * n), "T6.1"};
    return {Integer(2 * n), "T6.1"};
  }
  // e = 6, l = 1 mod 3, p != 3
  if (repeated) return {roots.alpha_half_is_minus_one() ? Integer(3 * n) : Integer(6 * n), "T7.1.2"};
  const Fp2Element z6 = zeta(roots.field(), 6, in.zeta_exponent);
  if (roots.pair_is(6, z6)) return {n, "T7.1.1.1"};
  if (roots.pair_is(3, roots.field().mul(z6, z6))) return {Integer(2 * n), "T7.1.1.2"};
  if (roots.both_half_minus_one()) return {Integer(3 * n), "T7.1.1.2"};
  return {Integer(6 * n), "T7.1.1.2"};
}

namespace {

void record_roots(DegreeResult& res, const FrobeniusData& fd, const CharPolyData& cp) {
  const Fp2Field F(cp.p);
  Intermediates& im = res.intermediates;
  im.a = fd.a;
  im.delta_a = fd.delta_a;
  im.repeated_root = cp.repeated_root;
  im.alpha = fp2_str(F, cp.alpha);
  im.beta = fp2_str(F, cp.beta);
  im.n = cp.n;
  std::ostringstream os;
  os << "curve " << fd.curve.str() << ": #E = " << fd.N << ", a = " << fd.a << ", a^2 - 4l = " << fd.delta_a
     << "; roots mod " << cp.p << ": " << *im.alpha << ", " << *im.beta << "; n = " << cp.n
     << (cp.repeated_root ? " (repeated root)" : "");
  res.explain.push_back(os.str());
}

std::optional<bool> b_flag_if_repeated(DegreeResult& res, const FrobeniusData& fd, const CharPolyData& cp,
                                       std::uint64_t seed) {
  if (!cp.repeated_root) return std::nullopt;
  const bool b = b_index_divisible(fd, cp.p, cp.n, seed);
  res.intermediates.b_divisible = b;
  res.explain.push_back(std::string("p | b (index of Z[Frobenius] in End): ") + (b ? "yes" : "no"));
  return b;
}

}  // namespace

DegreeResult compute_degree(const CurveModel& model, const Integer& ell, const Integer& p_in,
                            const EngineOptions& options) {
  check_prime_pair(ell, p_in);
  const std::uint64_t p = p_in.get_ui();
  standard_invariants(model);

  DegreeResult res;
  res.ell = ell;
  res.p = p;
  res.local = minimal_model_at(model, ell);
  const LocalMinimalData& data = res.local;
  if (options.assume_minimal && data.scalings > 0) {
    throw_input("model is not minimal at l = " + ell.get_str() + " (Tate removed " +
                std::to_string(data.scalings) + " scaling(s))");
  }
  {
    std::ostringstream os;
    os << "minimal model at " << ell << ": " << data.minimal_model.str() << "; (v(c4), v(c6), v(Delta)) = ("
       << data.vc4 << ", " << data.vc6 << ", " << data.vD << "), Kodaira " << data.kodaira.str();
    res.explain.push_back(os.str());
  }

  const DefectTable& table = options.table ? *options.table : DefectTable::bundled();
  res.reduction = classify_with_defect(data, options.defect, table);
  const ReductionInfo& info = res.reduction;
  {
    std::ostringstream os;
    os << "reduction: " << to_string(info.kind);
    if (info.split) os << ", -c6 " << (*info.split ? "is" : "is not") << " a square";
    if (info.e) os << ", e = " << *info.e << " (" << to_string(*info.defect_source) << ")";
    if (options.defect && !info.e) os << "; defect override ignored";
    res.explain.push_back(os.str());
  }

  const CyclotomicData cyc = cyclotomic_orders(ell, p);
  Intermediates& im = res.intermediates;
  im.r = cyc.r;
  im.delta = cyc.delta;
  im.vj = data.vj;
  res.explain.push_back("r = " + std::to_string(cyc.r) + ", delta = " + std::to_string(cyc.delta) +
                        ", v(j) = " + data.vj.str());

  BranchValue bv;
  switch (info.kind) {
    case ReductionKind::Good: {
      const FrobeniusData fd = frobenius_data(reduce_mod(data));
      const CharPolyData cp = char_poly_roots(fd.a, ell, p);
      record_roots(res, fd, cp);
      bv = degree_good(cp, b_flag_if_repeated(res, fd, cp, options.seed));
      if (fd.a == 0 && bv.d != 2 * z(cyc.delta)) {
        throw_internal("supersingular good reduction with d = " + bv.d.get_str() + " != 2 delta");
      }
      break;
    }
    case ReductionKind::Multiplicative:
    case ReductionKind::AdditivePotentiallyMultiplicative: {
      const bool pth = is_pth_power_Ql(data.invariants.j, ell, p);
      im.pth_power_j = pth;
      res.explain.push_back(std::string("j is ") + (pth ? "" : "not ") + "a p-th power in Q_l");
      bv = info.kind == ReductionKind::Multiplicative ? degree_multiplicative(*info.split, pth, cyc)
                                                        : degree_pot_mult(pth, cyc);
      break;
    }
    case ReductionKind::AdditivePotentiallyGood: {
      PotGoodInputs in;
      in.e = *info.e;
      in.cyc = cyc;
      in.swap_roots = options.swap_roots;
      in.zeta_exponent = options.zeta_exponent;
      if (pot_good_needs_roots(ell, in.e, p)) {
        ResidualCurve aux;
        if (ell >= 5) {
          aux = residual_rescaled_curve(data, in.e);
          if (in.e == 2) im.twist_u = ell;
        } else {
          const GoodTwist tw = good_twist_at_small_ell(data);
          im.twist_u = tw.u;
          aux = reduce_mod(tw.twisted);
        }
        im.auxiliary_curve = aux.str();
        const FrobeniusData fd = frobenius_data(aux);
        const CharPolyData cp = char_poly_roots(fd.a, ell, p);
        record_roots(res, fd, cp);
        in.cp = cp;
        // only the quadratic-twist cases read p | b
        if (in.e == 2) in.b_div = b_flag_if_repeated(res, fd, cp, options.seed);
      }
      bv = degree_additive_potgood(in);
      break;
    }
  }
  res.d = bv.d;
  res.branch = bv.branch;
  res.explain.push_back("case " + bv.branch + ": d = " + bv.d.get_str());
  return res;
}

Integer discriminant_exponent(const Integer& d, const Integer& e, const Integer& D) {
  if (d <= 0) throw_input("d must be positive");
  if (e <= 0) throw_input("e must be positive");
  if (D < 0) throw_input("the different exponent D must be non-negative");
  const Integer dD = d * D;
  if (!mpz_divisible_p(dD.get_mpz_t(), e.get_mpz_t())) {
    throw_input("e = " + e.get_str() + " does not divide d * D = " + dD.get_str());
  }
  return dD / e;
}

std::uint64_t ramification_index(const DegreeResult& res) {
  const ReductionInfo& info = res.reduction;
  switch (info.kind) {
    case ReductionKind::Good: return 1;
    case ReductionKind::AdditivePotentiallyGood: return *info.e;
    case ReductionKind::Multiplicative:
    case ReductionKind::AdditivePotentiallyMultiplicative: break;
  }
  // Q_l(E_p) = Q_l(sqrt(-c6), mu_p, j^(1/p)): mu_p is unramified, j^(1/p)
  // contributes p exactly when p does not divide v(j).
  const LocalMinimalData& data = res.local;
  std::uint64_t index = data.vj.value() % static_cast<std::int64_t>(res.p) == 0 ? 1 : res.p;
  const Integer minus_c6 = -data.invariants.c6;
  const Valuation v = valuation(minus_c6, res.ell);
  const bool ramified_sqrt =
      v.value() % 2 != 0 || (res.ell == 2 && mod(unit_part(minus_c6, res.ell), 4) != 1);
  if (ramified_sqrt) index *= 2;
  return index;
}

}  // namespace ptord
