#pragma once

// Brute-force recomputations used to cross-check the engine.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ptord/curve_model.hpp"
#include "ptord/engine.hpp"

namespace ptord {

/// 2x2 matrix over F_p, row-major.
struct MatrixModP {
  std::uint64_t p = 0;
  std::array<std::uint64_t, 4> m{};

  static MatrixModP identity(std::uint64_t p) { return {p, {1, 0, 0, 1}}; }
  MatrixModP operator*(const MatrixModP& other) const;
  std::uint64_t det() const;
  friend bool operator==(const MatrixModP&, const MatrixModP&) = default;
};

/// Order by repeated multiplication; singular matrices are rejected.
std::uint64_t matrix_order(const MatrixModP& m);

/// Order of the companion matrix of X^2 - a X + l mod p.
std::uint64_t companion_frobenius_order(const Integer& a, const Integer& ell, std::uint64_t p);

/// Whether x^p = u mod l has a solution, by trying every x.
bool exhaustive_pth_power(const Integer& u, const Integer& ell, std::uint64_t p);

/// E(F_q) = Z/m x Z/(m k) from the orders of all points.
struct GroupStructure {
  std::uint64_t order = 0;     // #E(F_q)
  std::uint64_t exponent = 0;  // m k
  std::uint64_t m = 0;

  /// E[p] is contained in E(F_q).
  bool full_torsion(std::uint64_t p) const { return m % p == 0; }
};

/// Enumerates E(F_{l^k}) for q = l^k <= 10^4.
GroupStructure exhaustive_group_structure(const ResidualCurve& curve, unsigned k = 1);

/// r odd => delta = 2r; r, delta even => delta = r; r even, delta odd => delta = r/2.
bool order_pair_trichotomy(std::uint64_t r, std::uint64_t delta);

/// Divisibility and coherence checks on an engine result; empty when all hold.
std::vector<std::string> check_consistency(const DegreeResult& result);

}  // namespace ptord
