#pragma once

// Long-Weierstrass curves over a field type with the SmallField /
// ExtensionField interface, affine coordinates, valid in every characteristic.

#include <cstdint>

#include "ptord/arith.hpp"
#include "ptord/curve_model.hpp"

namespace ptord {

template <class Field>
class FieldCurve {
 public:
  using Element = typename Field::Element;

  struct Point {
    Element x{};
    Element y{};
    bool infinity = true;
  };

  FieldCurve(const Field& field, Element a1, Element a2, Element a3, Element a4, Element a6)
      : field_(&field), a1_(a1), a2_(a2), a3_(a3), a4_(a4), a6_(a6) {}

  /// Coefficients of a curve over the prime field, embedded in the extension.
  static FieldCurve lift(const Field& field, const ResidualCurve& c) {
    return FieldCurve(field, field.from_uint(c.a1), field.from_uint(c.a2), field.from_uint(c.a3),
                      field.from_uint(c.a4), field.from_uint(c.a6));
  }

  const Field& field() const { return *field_; }
  const Element& a1() const { return a1_; }
  const Element& a2() const { return a2_; }
  const Element& a3() const { return a3_; }
  const Element& a4() const { return a4_; }
  const Element& a6() const { return a6_; }

  Point identity() const { return Point{field_->zero(), field_->zero(), true}; }
  Point affine(Element x, Element y) const { return Point{std::move(x), std::move(y), false}; }

  /// x^3 + a2 x^2 + a4 x + a6.
  Element rhs(const Element& x) const {
    const Field& F = *field_;
    return F.add(F.mul(F.add(F.mul(F.add(x, a2_), x), a4_), x), a6_);
  }

  /// a1 x + a3.
  Element linear(const Element& x) const { return field_->add(field_->mul(a1_, x), a3_); }

  bool on_curve(const Point& P) const {
    if (P.infinity) return true;
    const Field& F = *field_;
    const Element lhs = F.mul(F.add(P.y, linear(P.x)), P.y);
    return F.eq(lhs, rhs(P.x));
  }

  bool eq(const Point& P, const Point& Q) const {
    if (P.infinity || Q.infinity) return P.infinity == Q.infinity;
    return field_->eq(P.x, Q.x) && field_->eq(P.y, Q.y);
  }

  Point neg(const Point& P) const {
    if (P.infinity) return P;
    const Field& F = *field_;
    return affine(P.x, F.sub(F.neg(P.y), linear(P.x)));
  }

  Point add(const Point& P, const Point& Q) const {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const Field& F = *field_;
    Element lambda;
    if (F.eq(P.x, Q.x)) {
      const Element denom = F.add(F.add(P.y, Q.y), linear(Q.x));
      if (F.is_zero(denom)) return identity();
      // tangent slope: (3x^2 + 2 a2 x + a4 - a1 y) / (2y + a1 x + a3)
      const Element x2 = F.mul(P.x, P.x);
      Element num = F.add(F.add(x2, x2), x2);
      const Element a2x = F.mul(a2_, P.x);
      num = F.add(F.add(num, F.add(a2x, a2x)), a4_);
      num = F.sub(num, F.mul(a1_, P.y));
      const Element den = F.add(F.add(P.y, P.y), linear(P.x));
      lambda = F.mul(num, F.inv(den));
    } else {
      lambda = F.mul(F.sub(Q.y, P.y), F.inv(F.sub(Q.x, P.x)));
    }
    const Element nu = F.sub(P.y, F.mul(lambda, P.x));
    const Element x3 =
        F.sub(F.sub(F.sub(F.add(F.mul(lambda, lambda), F.mul(a1_, lambda)), a2_), P.x), Q.x);
    const Element y3 = F.sub(F.sub(F.neg(F.mul(F.add(lambda, a1_), x3)), nu), a3_);
    return affine(x3, y3);
  }

  Point mul(const Point& P, const Integer& k) const {
    if (k < 0) return mul(neg(P), Integer(-k));
    Point R = identity();
    if (k == 0 || P.infinity) return R;
    for (long i = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; i >= 0; --i) {
      R = add(R, R);
      if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) R = add(R, P);
    }
    return R;
  }

  Point mul(const Point& P, std::uint64_t k) const {
    return mul(P, Integer(static_cast<unsigned long>(k)));
  }

 private:
  const Field* field_;
  Element a1_, a2_, a3_, a4_, a6_;
};

}  // namespace ptord
