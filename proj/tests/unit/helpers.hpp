#pragma once

#include "ptord/curve_model.hpp"

namespace testutil {

inline ptord::CurveModel model(long a1, long a2, long a3, long a4, long a6) {
  return ptord::CurveModel{a1, a2, a3, a4, a6};
}

inline ptord::CurveModel short_model(long a4, long a6) { return model(0, 0, 0, a4, a6); }

// y^2 = x^3 - 432x - 864
inline ptord::CurveModel worked_curve() { return short_model(-432, -864); }

inline bool nonsingular(const ptord::CurveModel& m) {
  const ptord::Integer b2 = m.a1 * m.a1 + 4 * m.a2;
  const ptord::Integer b4 = 2 * m.a4 + m.a1 * m.a3;
  const ptord::Integer b6 = m.a3 * m.a3 + 4 * m.a6;
  const ptord::Integer b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 + m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
  const ptord::Integer disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  return disc != 0;
}

}  // namespace testutil
