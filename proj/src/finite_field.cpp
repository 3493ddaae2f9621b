#include "ptord/finite_field.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "ptord/errors.hpp"
#include "ptord/modular.hpp"

namespace ptord {

namespace poly {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) {
  for (std::size_t i = f.size(); i > 0; --i) {
    if (f[i - 1] != 0) return static_cast<int>(i - 1);
  }
  return -1;
}

Poly add(const Poly& f, const Poly& g, std::uint64_t ell) {
  Poly h(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const std::uint64_t a = i < f.size() ? f[i] : 0;
    const std::uint64_t b = i < g.size() ? g[i] : 0;
    h[i] = (a + b) % ell;
  }
  trim(h);
  return h;
}

Poly sub(const Poly& f, const Poly& g, std::uint64_t ell) {
  Poly h(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const std::uint64_t a = i < f.size() ? f[i] : 0;
    const std::uint64_t b = i < g.size() ? g[i] : 0;
    h[i] = (a + ell - b) % ell;
  }
  trim(h);
  return h;
}

Poly mul(const Poly& f, const Poly& g, std::uint64_t ell) {
  const int df = degree(f);
  const int dg = degree(g);
  if (df < 0 || dg < 0) return {};
  Poly h(static_cast<std::size_t>(df + dg + 1), 0);
  for (int i = 0; i <= df; ++i) {
    if (f[i] == 0) continue;
    for (int j = 0; j <= dg; ++j) h[i + j] = (h[i + j] + f[i] * g[j] % ell) % ell;
  }
  trim(h);
  return h;
}

namespace {

// Quotient and remainder of f by nonzero g.
std::pair<Poly, Poly> divmod(Poly f, const Poly& g, std::uint64_t ell) {
  const int dg = degree(g);
  if (dg < 0) throw_internal("polynomial division by zero");
  trim(f);
  const std::uint64_t lead_inv = inv_mod(g[dg], ell);
  Poly q(f.size() > static_cast<std::size_t>(dg) ? f.size() - dg : 1, 0);
  for (int i = degree(f); i >= dg; i = degree(f)) {
    const std::uint64_t c = f[i] * lead_inv % ell;
    q[i - dg] = c;
    for (int j = 0; j <= dg; ++j) {
      f[i - dg + j] = (f[i - dg + j] + ell - c * g[j] % ell) % ell;
    }
    trim(f);
    if (f.empty()) break;
  }
  trim(q);
  return {q, f};
}

}  // namespace

Poly rem(const Poly& f, const Poly& g, std::uint64_t ell) { return divmod(f, g, ell).second; }

Poly mulmod(const Poly& f, const Poly& g, const Poly& m, std::uint64_t ell) {
  return rem(mul(f, g, ell), m, ell);
}

Poly powmod(const Poly& f, const Integer& e, const Poly& m, std::uint64_t ell) {
  if (e < 0) throw_internal("negative polynomial exponent");
  Poly result = rem(Poly{1}, m, ell);
  const Poly base = rem(f, m, ell);
  for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
    result = mulmod(result, result, m, ell);
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) result = mulmod(result, base, m, ell);
  }
  return result;
}

Poly gcd(Poly f, Poly g, std::uint64_t ell) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    Poly r = rem(f, g, ell);
    f = std::move(g);
    g = std::move(r);
  }
  if (f.empty()) return f;
  const std::uint64_t inv = inv_mod(f.back(), ell);
  for (auto& c : f) c = c * inv % ell;
  return f;
}

bool is_irreducible(const Poly& f, std::uint64_t ell) {
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const Integer l(static_cast<unsigned long>(ell));
  const Poly x{0, 1};
  std::vector<Poly> frob{rem(x, f, ell)};  // frob[i] = x^(l^i) mod f
  for (int i = 1; i <= n; ++i) frob.push_back(powmod(frob.back(), l, f, ell));
  if (sub(frob[n], frob[0], ell) != Poly{}) return false;
  for (const PrimePower& pp : factorize(static_cast<std::uint64_t>(n))) {
    const Poly h = sub(frob[n / pp.prime], frob[0], ell);
    if (degree(gcd(f, h, ell)) != 0) return false;
  }
  return true;
}

namespace {

// Monic polynomials of degree n in lexicographic order of their lower coefficients.
template <class Accept>
Poly scan_monic(std::uint64_t ell, unsigned n, Accept accept) {
  Poly f(n + 1, 0);
  f[n] = 1;
  for (;;) {
    if (accept(f)) return f;
    unsigned i = 0;
    while (i < n && ++f[i] == ell) f[i++] = 0;
    if (i == n) throw_internal("no polynomial of degree " + std::to_string(n) + " found");
  }
}

}  // namespace

Poly find_irreducible(std::uint64_t ell, unsigned n) {
  if (n == 0) throw_input("extension degree must be positive");
  return scan_monic(ell, n, [&](const Poly& f) { return is_irreducible(f, ell); });
}

Poly find_primitive(std::uint64_t ell, unsigned n) {
  if (n == 0) throw_input("extension degree must be positive");
  const Integer q = pow(Integer(static_cast<unsigned long>(ell)), n);
  if (q > Integer("18446744073709551615")) throw_resource("primitive search needs q < 2^64");
  const std::uint64_t qm1 = q.get_ui() - 1;
  const auto factors = factorize(qm1);
  return scan_monic(ell, n, [&](const Poly& f) {
    if (f[0] == 0 || !is_irreducible(f, ell)) return false;
    for (const PrimePower& pp : factors) {
      const Integer e(static_cast<unsigned long>(qm1 / pp.prime));
      if (powmod(Poly{0, 1}, e, f, ell) == Poly{1}) return false;
    }
    return true;
  });
}

}  // namespace poly

namespace {

std::string poly_str(const Poly& f) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (f[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || f[i] != 1) os << f[i];
    if (i >= 1) os << (f[i] != 1 ? "*x" : "x");
    if (i >= 2) os << '^' << i;
  }
  return first ? "0" : os.str();
}

void check_characteristic(std::uint64_t ell) {
  if (ell < 2 || ell >= kFieldPrimeCeiling || !is_prime(Integer(static_cast<unsigned long>(ell)))) {
    throw_input("field characteristic must be a prime below 2^32, got " + std::to_string(ell));
  }
}

}  // namespace

SmallField::SmallField(std::uint64_t ell, unsigned k) : ell_(ell), k_(k) {
  check_characteristic(ell);
  if (k == 0) throw_input("extension degree must be positive");
  const Integer q = ptord::pow(Integer(static_cast<unsigned long>(ell)), k);
  if (q > Integer(static_cast<unsigned long>(kSmallFieldCeiling))) {
    throw_resource("F_" + q.get_str() + " exceeds the enumeration ceiling " +
                   std::to_string(kSmallFieldCeiling));
  }
  q_ = q.get_ui();
  modulus_ = poly::find_primitive(ell, k);

  const std::uint64_t order = q_ - 1;
  exp_.assign(2 * order, 0);
  log_.assign(q_, 0);
  std::vector<std::uint64_t> cur(k, 0);
  cur[0] = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    std::uint64_t code = 0;
    for (unsigned j = k; j > 0; --j) code = code * ell + cur[j - 1];
    exp_[i] = exp_[i + order] = static_cast<Element>(code);
    log_[code] = static_cast<std::uint32_t>(i);
    // cur <- cur * x mod modulus
    const std::uint64_t top = cur[k - 1];
    for (unsigned j = k - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    for (unsigned j = 0; j < k; ++j) cur[j] = (cur[j] + (ell - modulus_[j]) * top) % ell;
  }

  neg_.assign(q_, 0);
  for (std::uint64_t a = 0; a < q_; ++a) {
    std::uint64_t code = 0;
    std::uint64_t rest = a;
    std::uint64_t place = 1;
    for (unsigned j = 0; j < k; ++j, place *= ell) {
      code += ((ell - rest % ell) % ell) * place;
      rest /= ell;
    }
    neg_[a] = static_cast<Element>(code);
  }

  if (k > 1 && ell != 2) {
    zech_.assign(order, -1);
    for (std::uint64_t i = 0; i < order; ++i) {
      const std::uint64_t e = exp_[i];
      const std::uint64_t low = e % ell;
      const std::uint64_t shifted = e - low + (low + 1) % ell;
      zech_[i] = shifted == 0 ? -1 : static_cast<std::int64_t>(log_[shifted]);
    }
  }

  if (ell == 2) {
    for (unsigned i = 0; i < k; ++i) {
      const Element xi = static_cast<Element>(1u << i);
      Element t = 0;
      Element power = xi;
      for (unsigned j = 0; j < k; ++j) {
        t ^= power;
        power = mul(power, power);
      }
      if (t > 1) throw_internal("trace left F_2");
      trace_mask_ |= t << i;
    }
    as_root_.assign(q_, static_cast<Element>(q_));
    for (std::uint64_t z = 0; z < q_; ++z) {
      const Element c = static_cast<Element>(mul(static_cast<Element>(z), static_cast<Element>(z)) ^ z);
      as_root_[c] = static_cast<Element>(z);
    }
  }
}

SmallField::Element SmallField::add_digits(Element a, Element b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint64_t order = q_ - 1;
  const std::uint64_t d = (log_[b] + order - log_[a]) % order;
  const std::int64_t z = zech_[d];
  if (z < 0) return 0;
  return exp_[log_[a] + static_cast<std::uint64_t>(z)];
}

SmallField::Element SmallField::add(Element a, Element b) const {
  if (k_ == 1) return static_cast<Element>((static_cast<std::uint64_t>(a) + b) % ell_);
  if (ell_ == 2) return a ^ b;
  return add_digits(a, b);
}

SmallField::Element SmallField::neg(Element a) const { return neg_[a]; }

SmallField::Element SmallField::inv(Element a) const {
  if (a == 0) throw_input("inverse of zero in F_" + std::to_string(q_));
  const std::uint64_t order = q_ - 1;
  return exp_[(order - log_[a]) % order];
}

SmallField::Element SmallField::pow(Element a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = q_ - 1;
  return exp_[static_cast<std::uint64_t>(mul_mod(log_[a], e % order, order))];
}

int SmallField::chi(Element a) const {
  if (ell_ == 2) throw_internal("quadratic character in characteristic 2");
  if (a == 0) return 0;
  return log_[a] % 2 == 0 ? 1 : -1;
}

SmallField::Element SmallField::sqrt(Element a) const {
  if (a == 0) return 0;
  const std::uint64_t order = q_ - 1;
  if (ell_ == 2) return exp_[static_cast<std::uint64_t>(log_[a]) * (q_ / 2) % order];
  if (log_[a] % 2 != 0) throw_internal("square root of a non-square");
  return exp_[log_[a] / 2];
}

unsigned SmallField::trace2(Element a) const {
  if (ell_ != 2) throw_internal("trace to F_2 in odd characteristic");
  return static_cast<unsigned>(std::popcount(a & trace_mask_) & 1);
}

SmallField::Element SmallField::artin_schreier_root(Element c) const {
  if (ell_ != 2) throw_internal("Artin-Schreier root in odd characteristic");
  const Element z = as_root_[c];
  if (z == q_) throw_internal("z^2 + z = c has no root (trace 1)");
  return z;
}

std::string SmallField::str(Element a) const {
  Poly f(k_, 0);
  std::uint64_t rest = a;
  for (unsigned j = 0; j < k_; ++j) {
    f[j] = rest % ell_;
    rest /= ell_;
  }
  return poly_str(f);
}

ExtensionField::ExtensionField(std::uint64_t ell, unsigned n) : ell_(ell), n_(n) {
  check_characteristic(ell);
  if (n == 0) throw_input("extension degree must be positive");
  if (n > kMaxDegree) {
    throw_resource("extension degree " + std::to_string(n) + " exceeds the ceiling " +
                   std::to_string(kMaxDegree));
  }
  q_ = ptord::pow(Integer(static_cast<unsigned long>(ell)), n);
  if (mpz_sizeinbase(q_.get_mpz_t(), 2) > kMaxBits) {
    throw_resource("F_{" + std::to_string(ell) + "^" + std::to_string(n) + "} exceeds " +
                   std::to_string(kMaxBits) + " bits");
  }
  modulus_ = poly::find_irreducible(ell, n);
  if (ell != 2) {
    // Deterministic non-residue. For even n every constant is a square, so
    // scan c, then x + c, x^2 + c, ... (about half of each family qualifies).
    bool found = false;
    for (unsigned k = 0; k < n && !found; ++k) {
      for (std::uint64_t c = 0; c < std::min<std::uint64_t>(ell, 4096) && !found; ++c) {
        Element cand = zero();
        cand[0] = c;
        if (k > 0) cand[k] = 1;
        if (!is_zero(cand) && !is_square(cand)) {
          nonresidue_ = cand;
          found = true;
        }
      }
    }
    if (!found) throw_internal("no quadratic non-residue found");
  }
}

ExtensionField::Element ExtensionField::pad(Poly f) const {
  f.resize(n_, 0);
  return f;
}

ExtensionField::Element ExtensionField::one() const {
  Element a = zero();
  a[0] = 1;
  return a;
}

ExtensionField::Element ExtensionField::from_uint(std::uint64_t x) const {
  Element a = zero();
  a[0] = x % ell_;
  return a;
}

ExtensionField::Element ExtensionField::add(const Element& a, const Element& b) const {
  Element c(n_);
  for (unsigned i = 0; i < n_; ++i) c[i] = (a[i] + b[i]) % ell_;
  return c;
}

ExtensionField::Element ExtensionField::sub(const Element& a, const Element& b) const {
  Element c(n_);
  for (unsigned i = 0; i < n_; ++i) c[i] = (a[i] + ell_ - b[i]) % ell_;
  return c;
}

ExtensionField::Element ExtensionField::neg(const Element& a) const { return sub(zero(), a); }

ExtensionField::Element ExtensionField::mul(const Element& a, const Element& b) const {
  return pad(poly::mulmod(a, b, modulus_, ell_));
}

ExtensionField::Element ExtensionField::inv(const Element& a) const {
  if (is_zero(a)) throw_input("inverse of zero in F_" + q_.get_str());
  // Extended Euclid: s1 * a = r1 (mod modulus) throughout.
  Poly r0 = modulus_;
  Poly r1 = a;
  poly::trim(r1);
  Poly s0{};
  Poly s1{1};
  while (poly::degree(r1) > 0) {
    Poly q;
    Poly r = r0;
    {
      const int dg = poly::degree(r1);
      const std::uint64_t lead_inv = inv_mod(r1[dg], ell_);
      q.assign(r.size(), 0);
      for (int i = poly::degree(r); i >= dg; i = poly::degree(r)) {
        const std::uint64_t c = r[i] * lead_inv % ell_;
        q[i - dg] = c;
        for (int j = 0; j <= dg; ++j) r[i - dg + j] = (r[i - dg + j] + ell_ - c * r1[j] % ell_) % ell_;
        poly::trim(r);
        if (r.empty()) break;
      }
      poly::trim(q);
    }
    Poly s = poly::sub(s0, poly::mul(q, s1, ell_), ell_);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  const std::uint64_t c = inv_mod(r1[0], ell_);
  for (auto& x : s1) x = x * c % ell_;
  return pad(poly::rem(s1, modulus_, ell_));
}

ExtensionField::Element ExtensionField::pow(const Element& a, const Integer& e) const {
  return pad(poly::powmod(a, e, modulus_, ell_));
}

bool ExtensionField::is_zero(const Element& a) const {
  for (auto c : a) {
    if (c != 0) return false;
  }
  return true;
}

bool ExtensionField::is_square(const Element& a) const {
  if (ell_ == 2) return true;
  if (is_zero(a)) return true;
  return eq(pow(a, (q_ - 1) / 2), one());
}

ExtensionField::Element ExtensionField::sqrt(const Element& a) const {
  if (ell_ == 2) throw_internal("ExtensionField::sqrt in characteristic 2");
  if (is_zero(a)) return zero();
  if (!is_square(a)) throw_internal("square root of a non-square");
  Integer t = q_ - 1;
  unsigned s = 0;
  while (mpz_even_p(t.get_mpz_t())) {
    t /= 2;
    ++s;
  }
  Element z = pow(nonresidue_, t);
  Element x = pow(a, (t + 1) / 2);
  Element b = pow(a, t);
  unsigned m = s;
  const Element unit = one();
  while (!eq(b, unit)) {
    unsigned i = 0;
    Element bb = b;
    while (!eq(bb, unit)) {
      bb = mul(bb, bb);
      ++i;
    }
    Element w = z;
    for (unsigned j = 0; j + 1 < m - i; ++j) w = mul(w, w);
    z = mul(w, w);
    x = mul(x, w);
    b = mul(b, z);
    m = i;
  }
  return x;
}

std::string ExtensionField::str(const Element& a) const { return poly_str(a); }

}  // namespace ptord
