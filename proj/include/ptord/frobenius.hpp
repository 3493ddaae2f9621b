#pragma once

#include <cstdint>
#include <string>

#include "ptord/curve_model.hpp"

namespace ptord {

/// Frobenius trace data of a nonsingular curve over F_l.
struct FrobeniusData {
  ResidualCurve curve;
  Integer ell;
  Integer N;        // #E(F_l)
  Integer a;        // l + 1 - N
  Integer delta_a;  // a^2 - 4l, negative
  bool ordinary = false;
};

/// Counts points and checks the Weil bound. Singular curves are rejected.
FrobeniusData frobenius_data(const ResidualCurve& curve);

/// a_{l^k} from a_1 = a, a_0 = 2, a_{i+1} = a a_i - l a_{i-1}.
Integer trace_power(const Integer& a, const Integer& ell, unsigned k);

/// #E(F_{l^k}) = l^k + 1 - a_{l^k}.
Integer points_over_extension(const Integer& a, const Integer& ell, unsigned k);

/// y^2 = x^3 + A x + B over F_l: the good reduction reached after the totally
/// ramified base change of degree e, for l >= 5 and e in {2, 3, 4, 6}.
ResidualCurve residual_rescaled_curve(const LocalMinimalData& data, unsigned e);

struct GoodTwist {
  Integer u;                 // twist parameter
  LocalMinimalData twisted;  // re-minimalized, v(Delta) = 0
};

/// Quadratic twist with good reduction of a curve with e = 2: u = l for odd l,
/// the c6-dependent choice among {-2, -1, 2} at l = 2.
GoodTwist good_twist_at_small_ell(const LocalMinimalData& data);

/// Outcome of the full p-torsion search over F_{l^n}.
struct TorsionSearch {
  bool full = false;       // E[p] is contained in E(F_{l^n})
  std::string certificate;  // what settled the question
  unsigned samples = 0;
};

/// Whether every p-torsion point of the curve is defined over F_{l^n}, where
/// a is its trace over F_l. Randomized with a certificate either way (an
/// element of order #Sylow_p, or two independent points of order p);
/// exhaustive fallback when l^n <= 10^4 and the sampling budget runs out.
TorsionSearch full_p_torsion_rational(const ResidualCurve& curve, const Integer& a, std::uint64_t p,
                                      unsigned n, std::uint64_t seed);

/// p | [End : Z[pi]] for an ordinary curve whose Frobenius polynomial has a
/// repeated root mod p of order n.
bool b_index_divisible(const FrobeniusData& fd, std::uint64_t p, std::uint64_t n, std::uint64_t seed);

}  // namespace ptord
