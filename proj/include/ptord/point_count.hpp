#pragma once

#include <cstdint>
#include <vector>

#include "ptord/curve_model.hpp"
#include "ptord/field_curve.hpp"
#include "ptord/finite_field.hpp"

namespace ptord {

using SmallCurve = FieldCurve<SmallField>;

/// Reference count: tests every (x, y) in F_q^2 against the long equation.
std::uint64_t count_points_reference(const SmallCurve& curve);

/// Per-x count: quadratic character for odd q, trace test for even q.
std::uint64_t count_points_serial(const SmallCurve& curve);

/// Same kernel as count_points_serial with the x loop split across OpenMP threads.
std::uint64_t count_points_parallel(const SmallCurve& curve);

/// #E(F_{l^k}) for a nonsingular curve over F_l, including the point at
/// infinity. ResourceLimit above SmallField::kSmallFieldCeiling.
std::uint64_t count_points(const ResidualCurve& curve, unsigned k = 1);

/// Every point of the curve, the identity first.
std::vector<SmallCurve::Point> enumerate_points(const SmallCurve& curve);

}  // namespace ptord
