#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptord/curve_model.hpp"
#include "ptord/frobenius.hpp"
#include "ptord/modular.hpp"
#include "ptord/reduction.hpp"

namespace ptord {

inline constexpr std::uint64_t kDefaultSeed = 20240101;

struct EngineOptions {
  std::optional<unsigned> defect;          // semistability defect override
  std::uint64_t seed = kDefaultSeed;       // p-torsion sampler
  const DefectTable* table = nullptr;      // bundled table when null
  bool assume_minimal = false;             // reject inputs that are not l-minimal
  bool swap_roots = false;                 // evaluate predicates with alpha and beta exchanged
  unsigned zeta_exponent = 1;              // use zeta_e^k, gcd(k, e) = 1
};

/// Whatever the governing case consulted; unset fields were not needed.
struct Intermediates {
  std::optional<Integer> a;        // Frobenius trace of the curve whose roots are used
  std::optional<Integer> delta_a;
  std::optional<bool> repeated_root;
  std::optional<std::string> alpha, beta;
  std::optional<std::uint64_t> n;
  std::uint64_t r = 0;
  std::uint64_t delta = 0;
  Valuation vj;
  std::optional<bool> pth_power_j;
  std::optional<bool> b_divisible;
  std::optional<Integer> twist_u;
  std::optional<std::string> auxiliary_curve;
};

struct DegreeResult {
  Integer ell;
  std::uint64_t p = 0;
  Integer d;
  std::string branch;
  ReductionInfo reduction;
  LocalMinimalData local;
  Intermediates intermediates;
  std::vector<std::string> explain;
};

struct BranchValue {
  Integer d;
  std::string branch;
};

/// Good reduction. b_div must be supplied exactly when the root is repeated.
BranchValue degree_good(const CharPolyData& cp, std::optional<bool> b_div);

/// Multiplicative reduction; pth_power_j is the p-th power test on j.
BranchValue degree_multiplicative(bool split, bool pth_power_j, const CyclotomicData& cyc);

/// Additive potentially multiplicative reduction.
BranchValue degree_pot_mult(bool pth_power_j, const CyclotomicData& cyc);

/// Auxiliary inputs to the potentially good cases.
struct PotGoodInputs {
  unsigned e = 0;
  CyclotomicData cyc;
  std::optional<CharPolyData> cp;  // of the auxiliary good curve, when consulted
  std::optional<bool> b_div;       // of the auxiliary curve, repeated root only
  bool swap_roots = false;
  unsigned zeta_exponent = 1;
};

/// True when the case for (l, e) reads the Frobenius roots of an auxiliary curve.
bool pot_good_needs_roots(const Integer& ell, unsigned e, std::uint64_t p);

/// Additive potentially good reduction.
BranchValue degree_additive_potgood(const PotGoodInputs& in);

/// Minimalize, classify, dispatch.
DegreeResult compute_degree(const CurveModel& model, const Integer& ell, const Integer& p,
                            const EngineOptions& options = {});

/// d D / e; InvalidInput unless e | d D.
Integer discriminant_exponent(const Integer& d, const Integer& e, const Integer& D);

/// Ramification index of Q_l(E_p) / Q_l for a computed result.
std::uint64_t ramification_index(const DegreeResult& result);

}  // namespace ptord
