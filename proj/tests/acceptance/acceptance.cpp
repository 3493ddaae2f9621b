// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ptord/cli.hpp"
#include "ptord/engine.hpp"
#include "ptord/errors.hpp"
#include "ptord/finite_field.hpp"
#include "ptord/oracles.hpp"
#include "ptord/point_count.hpp"

#ifndef PTORD_DATA_DIR
#define PTORD_DATA_DIR "data"
#endif

using namespace ptord;

namespace {

struct Outcome {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 20) failures.push_back(what);
    if (!ok) ++failed;
  }
  std::size_t failed = 0;
};

CurveModel worked_curve() { return CurveModel{0, 0, 0, -432, -864}; }

std::vector<std::uint64_t> primes_below(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k < n; ++k) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= k; ++d) prime = prime && k % d != 0;
    if (prime) out.push_back(k);
  }
  return out;
}

std::string str(const Integer& x) { return x.get_str(); }

int run_cli(std::vector<std::string> args, std::string& out) {
  args.insert(args.begin(), "ptord");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str() + e.str();
  return code;
}

// 1
Outcome worked_example() {
  Outcome o;
  const std::map<std::pair<long, long>, long> want{
      {{2, 3}, 48}, {{2, 5}, 96}, {{2, 7}, 144}, {{2, 11}, 240}, {{3, 5}, 24}, {{3, 7}, 36}, {{3, 11}, 60},
      {{5, 3}, 6},  {{5, 7}, 42}, {{5, 11}, 55}, {{7, 3}, 6},    {{7, 5}, 4},    {{7, 11}, 10}};
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& [key, d] : want) {
    const auto r = compute_degree(worked_curve(), key.first, key.second);
    o.expect(r.d == d, "l=" + std::to_string(key.first) + " p=" + std::to_string(key.second) + ": got " +
                           str(r.d) + ", want " + std::to_string(d));
    if (key == std::pair{3L, 11L}) {
      o.expect(r.branch == "T10.2" && r.reduction.e == 6u && r.intermediates.r == 5,
               "(3, 11) should use the e = 6 formula 2er with r = 5");
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.expect(secs < 5.0, "runtime " + std::to_string(secs) + " s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "13 values in %.3f s", secs);
  o.detail = buf;
  return o;
}

// 2
Outcome discriminants() {
  Outcome o;
  std::string out;
  o.expect(discriminant_exponent(48, 24, 50) == 100, "library (48, 24, 50)");
  o.expect(discriminant_exponent(24, 6, 9) == 36, "library (24, 6, 9)");
  o.expect(run_cli({"discriminant", "--d", "48", "--e", "24", "--different", "50", "--ell", "2"}, out) == 0 &&
               out == "(2)^100\n",
           "numeric form l = 2: " + out);
  o.expect(run_cli({"discriminant", "--d", "24", "--e", "6", "--different", "9", "--ell", "3"}, out) == 0 &&
               out == "(3)^36\n",
           "numeric form l = 3: " + out);
  o.expect(run_cli({"discriminant", "--a-invariants", "0,0,0,-432,-864", "--p", "3", "--different", "50", "--ell",
                    "2"},
                   out) == 0 &&
               out == "(2)^100\n",
           "curve form l = 2: " + out);
  o.expect(run_cli({"discriminant", "--a-invariants", "0,0,0,-432,-864", "--p", "5", "--different", "9", "--ell",
                    "3"},
                   out) == 0 &&
               out == "(3)^36\n",
           "curve form l = 3: " + out);
  o.detail = "numeric and curve forms";
  return o;
}

// 3
Outcome intermediates() {
  Outcome o;
  const auto r3 = compute_degree(worked_curve(), 7, 3);
  o.expect(r3.intermediates.a == Integer(-2), "a at l = 7");
  o.expect(r3.intermediates.n == 2u && r3.intermediates.repeated_root == true, "n = 2, double root at p = 3");
  o.expect(compute_degree(worked_curve(), 7, 5).intermediates.n == 4u, "n = 4 at p = 5");
  o.expect(compute_degree(worked_curve(), 7, 11).intermediates.n == 10u, "n = 10 at p = 11");
  const auto c3 = char_poly_roots(-2, 7, 3);
  o.expect(c3.alpha == Fp2Element{2, 0}, "double root 2 mod 3");
  const auto c5 = char_poly_roots(-2, 7, 5);
  o.expect((c5.alpha.c0 == 1 && c5.beta.c0 == 2) || (c5.alpha.c0 == 2 && c5.beta.c0 == 1), "roots {1, 2} mod 5");
  const auto& table = DefectTable::bundled();
  o.expect(table.lookup(2, Valuation(8), Valuation(10), Valuation(14)) == 24u, "(8,10,14) at l = 2");
  o.expect(table.lookup(3, Valuation(4), Valuation(6), Valuation(10)) == 6u, "(4,6,10) at l = 3");
  o.detail = "a, n, roots, defect lookups";
  return o;
}

// 4a
Outcome pth_power_suite() {
  Outcome o;
  std::size_t cases = 0;
  for (auto ell : primes_below(100)) {
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
      if (p == ell) continue;
      for (std::uint64_t u = 1; u < ell; ++u) {
        const bool fast = is_pth_power_Ql(Rational(Integer(u)), Integer(ell), p);
        const bool slow = exhaustive_pth_power(Integer(u), Integer(ell), p);
        o.expect(fast == slow, "u=" + std::to_string(u) + " l=" + std::to_string(ell) + " p=" + std::to_string(p));
        ++cases;
      }
    }
  }
  o.detail = std::to_string(cases) + " units";
  return o;
}

// 4b
Outcome good_degree_suite() {
  Outcome o;
  std::size_t distinct = 0, repeated = 0;
  for (std::uint64_t ell : {5, 7, 11, 13}) {
    for (std::uint64_t A = 0; A < ell; ++A) {
      for (std::uint64_t B = 0; B < ell; ++B) {
        const ResidualCurve rc{ell, 0, 0, 0, A, B};
        if (rc.singular()) continue;
        const auto fd = frobenius_data(rc);
        for (std::uint64_t p : {3, 5, 7, 11}) {
          if (p == ell) continue;
          const auto cp = char_poly_roots(fd.a, fd.ell, p);
          const auto companion = companion_frobenius_order(fd.a, fd.ell, p);
          if (!cp.repeated_root) {
            o.expect(degree_good(cp, std::nullopt).d == companion,
                     rc.str() + " p=" + std::to_string(p) + ": formula vs companion");
            ++distinct;
          } else {
            // A repeated root gives n when Frobenius is scalar mod p, n p otherwise.
            const auto d = degree_good(cp, b_index_divisible(fd, p, cp.n, 1)).d;
            o.expect(d == cp.n || d == cp.n * p, rc.str() + ": repeated root degree");
            ++repeated;
          }
        }
      }
    }
  }
  o.detail = std::to_string(distinct) + " distinct-root cases exact, " + std::to_string(repeated) + " repeated";
  return o;
}

// 4c
Outcome b_index_suite() {
  Outcome o;
  std::size_t cases = 0, divisible = 0;
  auto check = [&](const ResidualCurve& rc) {
    if (rc.singular()) return;
    const auto fd = frobenius_data(rc);
    if (!fd.ordinary) return;
    for (auto p : primes_below(30)) {
      if (p == 2 || p == rc.ell) continue;
      const auto cp = char_poly_roots(fd.a, fd.ell, p);
      if (!cp.repeated_root) continue;
      double q = 1;
      for (std::uint64_t i = 0; i < cp.n; ++i) q *= static_cast<double>(rc.ell);
      if (q > 1e4) continue;
      const bool fast = b_index_divisible(fd, p, cp.n, 99);
      const bool slow = exhaustive_group_structure(rc, static_cast<unsigned>(cp.n)).full_torsion(p);
      o.expect(fast == slow, rc.str() + " p=" + std::to_string(p) + " n=" + std::to_string(cp.n));
      ++cases;
      divisible += slow ? 1 : 0;
    }
  };
  for (std::uint64_t ell : {2, 3}) {
    for (std::uint64_t a1 = 0; a1 < ell; ++a1)
      for (std::uint64_t a2 = 0; a2 < ell; ++a2)
        for (std::uint64_t a3 = 0; a3 < ell; ++a3)
          for (std::uint64_t a4 = 0; a4 < ell; ++a4)
            for (std::uint64_t a6 = 0; a6 < ell; ++a6) check({ell, a1, a2, a3, a4, a6});
  }
  for (auto ell : primes_below(32)) {
    if (ell < 5) continue;
    for (std::uint64_t A = 0; A < ell; ++A)
      for (std::uint64_t B = 0; B < ell; ++B) check({ell, 0, 0, 0, A, B});
  }
  o.expect(divisible > 0, "no instance with p | b was exercised");
  o.detail = std::to_string(cases) + " repeated-root instances, " + std::to_string(divisible) + " with p | b";
  return o;
}

// 4d
Outcome trace_suite() {
  Outcome o;
  std::size_t cases = 0;
  for (auto ell : primes_below(10000)) {
    std::vector<ResidualCurve> curves;
    if (ell < 5) {
      for (std::uint64_t a1 = 0; a1 < ell; ++a1)
        for (std::uint64_t a2 = 0; a2 < ell; ++a2)
          for (std::uint64_t a3 = 0; a3 < ell; ++a3)
            for (std::uint64_t a4 = 0; a4 < ell; ++a4)
              for (std::uint64_t a6 = 0; a6 < ell; ++a6) curves.push_back({ell, a1, a2, a3, a4, a6});
    } else if (ell < 50) {
      for (std::uint64_t A = 0; A < ell; ++A)
        for (std::uint64_t B = 0; B < ell; ++B) curves.push_back({ell, 0, 0, 0, A, B});
    } else {
      // every field, a fixed sample of curves per field
      std::mt19937_64 rng(ell);
      std::uniform_int_distribution<std::uint64_t> coeff(0, ell - 1);
      for (int i = 0; i < 12; ++i) curves.push_back({ell, 0, 0, 0, coeff(rng), coeff(rng)});
    }
    std::uint64_t q = ell;
    for (unsigned k = 1; q <= 10000; ++k, q *= ell) {
      const SmallField F(ell, k);
      for (const auto& rc : curves) {
        if (rc.singular()) continue;
        const Integer a = Integer(ell + 1) - count_points(rc, 1);
        const auto n = count_points_serial(SmallCurve::lift(F, rc));
        o.expect(Integer(static_cast<unsigned long>(n)) == points_over_extension(a, ell, k),
                 rc.str() + " k=" + std::to_string(k));
        ++cases;
      }
    }
  }
  o.detail = std::to_string(cases) + " (curve, k) pairs";
  return o;
}

// 5
Outcome invariant_suite() {
  Outcome o;
  const auto small_primes = primes_below(200);
  for (auto ell : small_primes) {
    for (auto p : small_primes) {
      if (p < 3 || p == ell) continue;
      const auto c = cyclotomic_orders(ell, p);
      o.expect(order_pair_trichotomy(c.r, c.delta), "trichotomy l=" + std::to_string(ell) + " p=" + std::to_string(p));
    }
  }

  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<long> small(-40, 40);
  std::uniform_int_distribution<int> bit(0, 1), sh4(0, 3), sh6(0, 5);
  std::uniform_int_distribution<std::size_t> pick(0, small_primes.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_small(0, 5);
  std::map<std::string, int> kinds;
  std::set<std::string> branches;
  std::size_t valid = 0, skipped = 0, attempts = 0;
  while (valid < 1200 && attempts < 20000) {
    ++attempts;
    const Integer ell(static_cast<unsigned long>(bit(rng) ? small_primes[pick_small(rng)] : small_primes[pick(rng)]));
    auto p = small_primes[pick(rng)];
    if (p < 3 || ell == p) continue;
    CurveModel m;
    switch (sh4(rng)) {
      case 0:
        m = CurveModel{bit(rng), small(rng) % 3, bit(rng), small(rng), small(rng)};
        break;
      case 1:
        m = CurveModel{0, 0, 0, small(rng) * pow(ell, sh4(rng)), small(rng) * pow(ell, sh6(rng))};
        break;
      default: {
        // y^2 + xy = x^3 + l^k t is multiplicative at l; its twist by l is not
        Integer t = small(rng) * ell + 1 + sh4(rng);
        if (t == 0) t = 1;
        m = CurveModel{1, 0, 0, 0, t * pow(ell, 1 + sh6(rng))};
        if (bit(rng)) m = quadratic_twist(m, ell);
        break;
      }
    }
    DegreeResult base;
    try {
      base = compute_degree(m, ell, p);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InternalConsistency) o.expect(false, m.str() + ": " + e.what());
      ++skipped;
      continue;
    }
    ++valid;
    ++kinds[to_string(base.reduction.kind)];
    branches.insert(base.branch);
    const std::string tag = m.str() + " l=" + str(ell) + " p=" + std::to_string(p);
    const auto violations = check_consistency(base);
    o.expect(violations.empty(), tag + ": " + (violations.empty() ? "" : violations.front()));
    o.expect(base.d % base.intermediates.r == 0, tag + ": r | d");
    if (base.reduction.e) o.expect(base.d % *base.reduction.e == 0, tag + ": e | d");
    const Integer P(static_cast<unsigned long>(p));
    o.expect((P * (P - 1) * (P - 1) * (P + 1)) % base.d == 0, tag + ": d | p(p-1)^2(p+1)");
    if (base.intermediates.a == Integer(0) && base.intermediates.n) {
      o.expect(*base.intermediates.n == 2 * base.intermediates.delta, tag + ": a = 0 but n != 2 delta");
    }

    EngineOptions swapped;
    swapped.swap_roots = true;
    const auto s = compute_degree(m, ell, p, swapped);
    o.expect(s.d == base.d && s.branch == base.branch, tag + ": root swap changed the result");
    if (base.reduction.e) {
      const unsigned e = *base.reduction.e;
      for (unsigned k = 2; k < e; ++k) {
        if (std::gcd(k, e) != 1) continue;
        EngineOptions z;
        z.zeta_exponent = k;
        const auto r = compute_degree(m, ell, p, z);
        o.expect(r.d == base.d, tag + ": zeta^" + std::to_string(k) + " changed d");
      }
    }
    const auto scaled = translate(scale_up(m, ell * (1 + bit(rng) * (ell - 1))), small(rng), small(rng), small(rng));
    const auto t = compute_degree(scaled, ell, p);
    o.expect(t.d == base.d && t.branch == base.branch, tag + ": rescaled input changed the result");
  }
  o.expect(valid >= 1000, "only " + std::to_string(valid) + " valid queries");
  std::ostringstream d;
  d << valid << " queries (" << skipped << " skipped:";
  for (const auto& [k, v] : kinds) d << " " << k << "=" << v;
  d << "), " << branches.size() << " branches";
  o.detail = d.str();
  return o;
}

// 6
Outcome derived_pins() {
  Outcome o;
  const auto a = compute_degree(CurveModel{0, 0, 0, 0, 25}, 5, 7);
  o.expect(a.d == 18 && a.branch == "T8.1", "y^2 = x^3 + 25 at (5, 7): " + str(a.d) + " " + a.branch);
  const auto b = compute_degree(CurveModel{0, 0, 0, -25, 0}, 5, 3);
  o.expect(b.d == 8 && b.branch == "T4.1", "y^2 = x^3 - 25x at (5, 3): " + str(b.d) + " " + b.branch);
  o.detail = "18 (T8.1), 8 (T4.1)";
  return o;
}

// 7
Outcome determinism() {
  Outcome o;
  const std::string input = std::string(PTORD_DATA_DIR) + "/worked_example.csv";
  std::string first, second, third;
  o.expect(run_cli({"batch", "--input", input, "--seed", "7"}, first) == 0, "first batch run failed: " + first);
  o.expect(run_cli({"batch", "--input", input, "--seed", "7"}, second) == 0, "second batch run failed");
  o.expect(run_cli({"batch", "--input", input, "--seed", "7", "--jobs", "4"}, third) == 0, "parallel run failed");
  o.expect(first == second, "outputs differ between runs");
  o.expect(first == third, "outputs differ between --jobs 1 and --jobs 4");
  o.expect(std::count(first.begin(), first.end(), '\n') == 13, "expected 13 lines");
  o.detail = std::to_string(first.size()) + " bytes, identical across runs and job counts";
  return o;
}

}  // namespace

int main() {
  struct Entry {
    std::string name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> criteria{
      {"1 worked example", worked_example},
      {"2 discriminant exponents", discriminants},
      {"3 intermediate pins", intermediates},
      {"4a p-th power test vs exhaustive", pth_power_suite},
      {"4b good-reduction degree vs companion matrix", good_degree_suite},
      {"4c p | b test vs group structure", b_index_suite},
      {"4d trace recurrence vs point counts", trace_suite},
      {"5 randomized invariants", invariant_suite},
      {"6 derived end-to-end pins", derived_pins},
      {"7 batch determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.failed == 0;
    failed += ok ? 0 : 1;
    std::printf("criterion %-46s %s  [%.2f s] %s\n", c.name.c_str(), ok ? "PASS" : "FAIL", secs, o.detail.c_str());
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
