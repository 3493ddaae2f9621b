#include "ptord/point_count.hpp"

#include "ptord/errors.hpp"

namespace ptord {

namespace {

constexpr std::uint64_t kParallelThreshold = 1u << 15;

// Number of y with (x, y) on the curve.
unsigned points_above(const SmallCurve& c, SmallField::Element x) {
  const SmallField& F = c.field();
  const SmallField::Element b = c.linear(x);
  const SmallField::Element rhs = c.rhs(x);
  if (F.characteristic() != 2) {
    // (2y + b)^2 = b^2 + 4 rhs
    const SmallField::Element four = F.from_uint(4);
    return static_cast<unsigned>(1 + F.chi(F.add(F.mul(b, b), F.mul(four, rhs))));
  }
  if (b == 0) return 1;
  const SmallField::Element t = F.mul(rhs, F.inv(F.mul(b, b)));
  return F.trace2(t) == 0 ? 2 : 0;
}

void require_nonsingular(const ResidualCurve& curve) {
  if (curve.singular()) throw_input("point count of a singular curve: " + curve.str());
}

}  // namespace

std::uint64_t count_points_reference(const SmallCurve& c) {
  const SmallField& F = c.field();
  std::uint64_t n = 1;
  for (std::uint64_t i = 0; i < F.size(); ++i) {
    for (std::uint64_t j = 0; j < F.size(); ++j) {
      if (c.on_curve(c.affine(F.element(i), F.element(j)))) ++n;
    }
  }
  return n;
}

std::uint64_t count_points_serial(const SmallCurve& c) {
  const SmallField& F = c.field();
  std::uint64_t n = 1;
  for (std::uint64_t i = 0; i < F.size(); ++i) n += points_above(c, F.element(i));
  return n;
}

std::uint64_t count_points_parallel(const SmallCurve& c) {
  const SmallField& F = c.field();
  const auto q = static_cast<std::int64_t>(F.size());
  std::uint64_t n = 1;
#pragma omp parallel for reduction(+ : n) schedule(static)
  for (std::int64_t i = 0; i < q; ++i) n += points_above(c, F.element(static_cast<std::uint64_t>(i)));
  return n;
}

std::uint64_t count_points(const ResidualCurve& curve, unsigned k) {
  require_nonsingular(curve);
  const SmallField field(curve.ell, k);
  const SmallCurve c = SmallCurve::lift(field, curve);
  return field.size() >= kParallelThreshold ? count_points_parallel(c) : count_points_serial(c);
}

std::vector<SmallCurve::Point> enumerate_points(const SmallCurve& c) {
  const SmallField& F = c.field();
  std::vector<SmallCurve::Point> out{c.identity()};
  for (std::uint64_t i = 0; i < F.size(); ++i) {
    const SmallField::Element x = F.element(i);
    const SmallField::Element b = c.linear(x);
    const SmallField::Element rhs = c.rhs(x);
    if (F.characteristic() != 2) {
      const SmallField::Element d = F.add(F.mul(b, b), F.mul(F.from_uint(4), rhs));
      if (F.chi(d) < 0) continue;
      // y = (s - b) / 2 for each square root s of d
      const SmallField::Element s = F.sqrt(d);
      const SmallField::Element half = F.inv(F.from_uint(2));
      out.push_back(c.affine(x, F.mul(F.sub(s, b), half)));
      if (s != 0) out.push_back(c.affine(x, F.mul(F.sub(F.neg(s), b), half)));
    } else if (b == 0) {
      out.push_back(c.affine(x, F.sqrt(rhs)));
    } else {
      const SmallField::Element t = F.mul(rhs, F.inv(F.mul(b, b)));
      if (F.trace2(t) != 0) continue;
      const SmallField::Element z = F.artin_schreier_root(t);
      out.push_back(c.affine(x, F.mul(b, z)));
      out.push_back(c.affine(x, F.mul(b, F.add(z, 1))));
    }
  }
  return out;
}

}  // namespace ptord
