#include "ptord/arith.hpp"

#include <cctype>
#include <sstream>

#include "ptord/errors.hpp"

namespace ptord {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::DefectTableMiss: return "defect-table-miss";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::InternalConsistency: return "internal-consistency";
  }
  return "unknown";
}

std::int64_t Valuation::value() const {
  if (infinite_) throw_internal("finite value requested from an infinite valuation");
  return value_;
}

std::string Valuation::str() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

Valuation valuation(const Integer& x, const Integer& ell) {
  if (x == 0) return Valuation::infinity();
  if (ell < 2) throw_input("valuation base must be a prime >= 2");
  Integer rest = abs(x);
  std::int64_t v = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), ell.get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), ell.get_mpz_t());
    ++v;
  }
  return Valuation(v);
}

Valuation valuation(const Rational& x, const Integer& ell) {
  if (x == 0) return Valuation::infinity();
  const Integer num(x.get_num());
  const Integer den(x.get_den());
  return Valuation(valuation(num, ell).value() - valuation(den, ell).value());
}

Integer unit_part(const Integer& x, const Integer& ell) {
  if (x == 0) throw_input("unit part of zero is undefined");
  Integer rest = x;
  while (mpz_divisible_p(rest.get_mpz_t(), ell.get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), ell.get_mpz_t());
  }
  return rest;
}

Integer mod(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::uint64_t mod_u64(const Integer& x, std::uint64_t m) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_fdiv_ui(x.get_mpz_t(), m);
}

Integer pow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::optional<Integer> parse_integer(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (begin == end) return std::nullopt;
  std::string body = text.substr(begin, end - begin);
  std::size_t digits = (body[0] == '-' || body[0] == '+') ? 1 : 0;
  if (digits == body.size()) return std::nullopt;
  for (std::size_t i = digits; i < body.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(body[i]))) return std::nullopt;
  }
  if (body[0] == '+') body.erase(0, 1);
  Integer out;
  if (out.set_str(body, 10) != 0) return std::nullopt;
  return out;
}

Integer squarefree_part(const Integer& u) {
  if (u == 0) throw_input("twist parameter must be nonzero");
  if (abs(u) >= Integer("1000000000000")) throw_input("twist parameter too large to factor");
  Integer rest = abs(u);
  Integer out = 1;
  for (Integer q = 2; q * q <= rest; ++q) {
    int e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) {
      mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t());
      ++e;
    }
    if (e % 2 == 1) out *= q;
  }
  out *= rest;
  return u < 0 ? Integer(-out) : out;
}

}  // namespace ptord
