#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ptord/arith.hpp"

namespace ptord {

/// Integral long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct CurveModel {
  Integer a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

  /// y^2 = x^3 - 27 c4 x - 54 c6; its invariants are (6^4 c4, 6^6 c6, 6^12 Delta).
  static CurveModel from_c_invariants(const Integer& c4, const Integer& c6);

  friend bool operator==(const CurveModel&, const CurveModel&) = default;

  std::string str() const;
};

struct StandardInvariants {
  Integer b2, b4, b6, b8;
  Integer c4, c6;
  Integer discriminant;
  Rational j;  // c4^3 / discriminant, canonicalized
};

/// Classical b/c invariants. Throws InvalidInput on a singular model.
StandardInvariants standard_invariants(const CurveModel& model);

/// x = x' + r, y = y' + s x' + t (u = 1). Preserves c4, c6, Delta.
CurveModel translate(const CurveModel& model, const Integer& r, const Integer& s,
                     const Integer& t);

/// a_i -> a_i * u^i. Invariants scale by (u^4, u^6, u^12).
CurveModel scale_up(const CurveModel& model, const Integer& u);

/// a_i -> a_i / u^i; every division must be exact.
CurveModel scale_down(const CurveModel& model, const Integer& u);

/// Quadratic twist by sqrt(u), u taken squarefree (square factors stripped).
///
/// When a1 and a3 are even the square is completed in place and the result has
/// invariants exactly (u^2 c4, u^3 c6, u^6 Delta). Otherwise the twist is built
/// on the 2-rescaled model y^2 = x^3 + b2 x^2 + 8 b4 x + 16 b6 and carries an
/// extra factor (2^4, 2^6, 2^12). Twisting by 1 returns the model unchanged.
CurveModel quadratic_twist(const CurveModel& model, const Integer& u);

/// Reduction type as produced by Tate's algorithm.
struct KodairaType {
  enum class Family { I, II, III, IV, IStar, IIStar, IIIStar, IVStar };
  Family family = Family::I;
  int n = 0;  // subscript for I_n and I_n*

  std::string str() const;
  friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

struct TateResult {
  CurveModel minimal_model;
  KodairaType kodaira;
  int scalings = 0;  // number of u = l rescalings removed
};

/// Tate's algorithm at the prime ell: returns an ell-minimal integral model
/// and the Kodaira type of its special fibre.
TateResult tate_algorithm(const CurveModel& model, const Integer& ell);

/// Per-prime minimal-model invariants.
struct LocalMinimalData {
  Integer ell;
  CurveModel minimal_model;
  StandardInvariants invariants;  // of minimal_model
  KodairaType kodaira;
  int scalings = 0;

  Valuation vc4, vc6, vD;

  unsigned residue_exponent = 3;
  Integer residue_modulus;      // ell^residue_exponent
  std::optional<Integer> u_c4;  // c4 / ell^v(c4) mod residue_modulus; absent when c4 = 0
  std::optional<Integer> u_c6;
  Integer u_delta;

  Valuation vj;  // 3 v(c4) - v(Delta); infinite when j = 0
  std::optional<std::uint64_t> jt_mod_ell;  // (j / ell^v(j)) mod ell; absent when j = 0
};

/// Minimalize at ell (Tate) and populate valuations and unit residues.
/// residue_exponent >= 1; 3 is enough for every mod-8 / mod-4 test at ell = 2.
LocalMinimalData minimal_model_at(const CurveModel& model, const Integer& ell,
                                  unsigned residue_exponent = 3);

/// A Weierstrass model over F_ell with residues in [0, ell).
struct ResidualCurve {
  std::uint64_t ell = 0;
  std::uint64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

  /// Discriminant of the model mod ell.
  std::uint64_t discriminant() const;
  bool singular() const { return discriminant() == 0; }

  friend bool operator==(const ResidualCurve&, const ResidualCurve&) = default;
  std::string str() const;
};

/// Coefficients of an integral model mod ell (ell < 2^32).
ResidualCurve reduce(const CurveModel& model, const Integer& ell);

/// Reduction of the minimal model; singular() is true exactly when v(Delta) > 0.
ResidualCurve reduce_mod(const LocalMinimalData& data);

}  // namespace ptord
