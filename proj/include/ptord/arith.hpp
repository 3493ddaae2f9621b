#pragma once

// Exact integer/rational helpers shared by every module. Integers are GMP
// mpz_class values; valuations carry an explicit infinite marker for zero.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace ptord {

using Integer = mpz_class;
using Rational = mpq_class;

/// l-adic valuation of an exact number. Zero has valuation +infinity, which
/// compares greater than every finite value.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(std::int64_t v) : value_(v), infinite_(false) {}

  static constexpr Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws if infinite.
  std::int64_t value() const;

  /// True iff this valuation is >= k (infinity is >= everything).
  constexpr bool at_least(std::int64_t k) const { return infinite_ || value_ >= k; }

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;

  std::string str() const;

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

/// v_l(x) for an integer; infinity for x = 0.
Valuation valuation(const Integer& x, const Integer& ell);

/// v_l(x) for a rational; infinity for x = 0.
Valuation valuation(const Rational& x, const Integer& ell);

/// x / l^{v_l(x)} for nonzero x.
Integer unit_part(const Integer& x, const Integer& ell);

/// Non-negative residue of x modulo m (m > 0).
Integer mod(const Integer& x, const Integer& m);

/// Residue of x mod m as a machine word; m must fit in uint64.
std::uint64_t mod_u64(const Integer& x, std::uint64_t m);

/// Integer power base^exp for small exponents.
Integer pow(const Integer& base, unsigned long exp);

/// Probabilistic primality (GMP, 30 rounds; deterministic below 2^64 in practice).
bool is_prime(const Integer& n);

/// Parse a decimal integer (optional sign); nullopt on malformed text.
std::optional<Integer> parse_integer(const std::string& text);

/// Greatest squarefree divisor up to sign: strips every square factor from u.
/// Uses trial division; |u| must be small enough to factor (< 10^12).
Integer squarefree_part(const Integer& u);

}  // namespace ptord
