#pragma once

// Fields F_{l^k}: a table-driven SmallField for enumeration (q <= 10^6) and a
// polynomial-basis ExtensionField for large q (sampling, scalar arithmetic).

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ptord/arith.hpp"

namespace ptord {

/// Dense polynomials over F_l, coefficients low degree first, l < 2^32.
using Poly = std::vector<std::uint64_t>;

namespace poly {

void trim(Poly& f);
int degree(const Poly& f);  // -1 for the zero polynomial
Poly add(const Poly& f, const Poly& g, std::uint64_t ell);
Poly sub(const Poly& f, const Poly& g, std::uint64_t ell);
Poly mul(const Poly& f, const Poly& g, std::uint64_t ell);
/// Remainder of f modulo a nonzero g.
Poly rem(const Poly& f, const Poly& g, std::uint64_t ell);
Poly mulmod(const Poly& f, const Poly& g, const Poly& m, std::uint64_t ell);
Poly powmod(const Poly& f, const Integer& e, const Poly& m, std::uint64_t ell);
/// Monic gcd.
Poly gcd(Poly f, Poly g, std::uint64_t ell);
/// Rabin's test for a monic f of degree >= 1.
bool is_irreducible(const Poly& f, std::uint64_t ell);
/// First monic irreducible of degree n in lexicographic coefficient order.
Poly find_irreducible(std::uint64_t ell, unsigned n);
/// First monic irreducible of degree n whose root x generates F_{l^n}^*.
Poly find_primitive(std::uint64_t ell, unsigned n);

}  // namespace poly

/// F_q with q = l^k <= kSmallFieldCeiling, elements encoded as integers in
/// [0, q) through their base-l coefficient digits. Multiplication and, for
/// odd l with k > 1, addition go through exp/log/Zech tables.
class SmallField {
 public:
  using Element = std::uint32_t;
  static constexpr std::uint64_t kSmallFieldCeiling = 1'000'000;

  SmallField(std::uint64_t ell, unsigned k);

  std::uint64_t characteristic() const { return ell_; }
  unsigned degree() const { return k_; }
  std::uint64_t size() const { return q_; }
  const Poly& modulus() const { return modulus_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_uint(std::uint64_t x) const { return static_cast<Element>(x % ell_); }
  /// The element with index i in [0, q); index order is the encoding order.
  Element element(std::uint64_t i) const { return static_cast<Element>(i); }

  Element add(Element a, Element b) const;
  Element neg(Element a) const;
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t e) const;
  bool is_zero(Element a) const { return a == 0; }
  bool eq(Element a, Element b) const { return a == b; }

  /// Quadratic character for odd q: 0, 1 or -1.
  int chi(Element a) const;
  /// Square root of a square (odd q) or of anything (q even).
  Element sqrt(Element a) const;
  /// Absolute trace to F_2 (q even only).
  unsigned trace2(Element a) const;
  /// A root z of z^2 + z = c when trace2(c) = 0 (q even only).
  Element artin_schreier_root(Element c) const;

  std::string str(Element a) const;

 private:
  Element add_digits(Element a, Element b) const;

  std::uint64_t ell_;
  unsigned k_;
  std::uint64_t q_;
  Poly modulus_;
  std::vector<Element> exp_;           // 2(q-1) entries
  std::vector<std::uint32_t> log_;     // log_[0] unused
  std::vector<std::int64_t> zech_;     // log(1 + g^i), -1 when 1 + g^i = 0
  std::vector<Element> neg_;
  std::uint32_t trace_mask_ = 0;       // q even
  std::vector<Element> as_root_;       // q even
};

/// F_{l^n} = F_l[x]/(f) with f irreducible, l < 2^32. Elements are coefficient
/// vectors of length n.
class ExtensionField {
 public:
  using Element = Poly;
  static constexpr unsigned kMaxDegree = 64;
  static constexpr unsigned kMaxBits = 2048;

  ExtensionField(std::uint64_t ell, unsigned n);

  std::uint64_t characteristic() const { return ell_; }
  unsigned degree() const { return n_; }
  const Integer& size() const { return q_; }
  const Poly& modulus() const { return modulus_; }

  Element zero() const { return Element(n_, 0); }
  Element one() const;
  Element from_uint(std::uint64_t x) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  Element pow(const Element& a, const Integer& e) const;
  bool is_zero(const Element& a) const;
  bool eq(const Element& a, const Element& b) const { return a == b; }

  template <class Rng>
  Element random(Rng& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(0, ell_ - 1);
    Element a(n_);
    for (auto& c : a) c = dist(rng);
    return a;
  }

  /// Euler criterion; odd characteristic only.
  bool is_square(const Element& a) const;
  /// Tonelli-Shanks square root of a square; odd characteristic only.
  Element sqrt(const Element& a) const;

  std::string str(const Element& a) const;

 private:
  Element pad(Poly f) const;

  std::uint64_t ell_;
  unsigned n_;
  Integer q_;
  Poly modulus_;
  Element nonresidue_;  // odd characteristic
};

}  // namespace ptord
