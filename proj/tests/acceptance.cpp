// Acceptance criteria runner: one PASS/FAIL line per criterion.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "siegelcong.hpp"

using namespace siegelcong;

namespace {

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<bool(std::ostream&)> body;
};

bool pass(const CongruenceReport& r, std::ostream& log) {
  if (r.status != Verdict::Pass) {
    log << check_name(r.check) << " " << r.params.dump() << " -> " << verdict_name(r.status) << " ("
        << r.violation_count << " violations)";
    return false;
  }
  return true;
}

// Weighted count of reduced forms of discriminant -n, all contents.
Rational reduced_form_count(std::int64_t n) {
  Rational h(0);
  for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if ((b * b + n) % (4 * a) != 0) continue;
      const std::int64_t c = (b * b + n) / (4 * a);
      if (c < a || (a == c && b < 0)) continue;
      if (a == b && b == c) h += make_rational(1, 3);
      else if (b == 0 && a == c) h += make_rational(1, 2);
      else h += 1;
    }
  }
  return h;
}

bool criterion1(std::ostream& log) {
  bool ok = pass(run_check(CheckId::RingIdentity, {{"trace_bound", 6}, {"t_bound", 50}}), log);
  const auto e4 = eis2(4, 6);
  ok = ok && multiply(e4, e4).at(BinaryHalfIntegral{1, 1, 1}) == eis2_coefficient(8, {1, 1, 1});
  return ok;
}

bool criterion2(std::ostream& log) { return pass(run_check(CheckId::PhiConsistency, {{"t_bound", 50}}), log); }

bool criterion3(std::ostream& log) {
  bool ok = pass(run_check(CheckId::HurwitzOracle, {{"bound", 500}}), log);
  for (std::int64_t n = 1; n <= 500; ++n) {
    if (n % 4 != 0 && n % 4 != 3) continue;
    if (cohen_h(1, n) != reduced_form_count(n)) {
      log << "H(" << n << ") mismatch ";
      ok = false;
    }
  }
  return ok;
}

bool criterion4(std::ostream& log) {
  bool ok = true;
  for (const std::int64_t p : {11, 19, 23}) {
    const auto r = run_check(CheckId::M1, {{"prime", p}, {"det2_bound", 4000}, {"t_bound", 100000}});
    ok = pass(r, log) && ok;
    const auto trace = bernoulli_certificate(CertificateClaim::M1Deg3, {p, 0, 100});
    const auto* total = trace.factor("odd factor(3,(p+1)/2)");
    if (trace.verdict != Verdict::Pass || total == nullptr || !total->valuation.at_least(1)) {
      log << "M1_DEG3 p=" << p << " ";
      ok = false;
    }
  }
  const auto spot = eis2_coefficient(6, {1, 1, 1});
  if (spot != 44352 || residue_mod_p(spot, 11) != 0) {
    log << "a(E6,(1,1,1)) = " << to_string(spot) << " ";
    ok = false;
  }
  return ok;
}

bool criterion5(std::ostream& log) {
  bool ok = true;
  for (const std::int64_t p : {7, 11, 13}) {
    const auto r = run_check(CheckId::M2, {{"prime", p}, {"det2_bound", 4000}, {"d0_bound", 100}});
    ok = pass(r, log) && ok;
    if (!r.certificate) {
      ok = false;
      continue;
    }
    const auto& cert = *r.certificate;
    std::size_t claims = 0;
    for (const auto& t : cert["traces"]) {
      const auto claim = t["claim"].get<std::string>();
      if ((claim == "M2_DEG5" || claim == "M2_DEG4_SQUARE" || claim == "M2_DEG4_NONSQUARE") && t["verdict"] == "PASS") {
        ++claims;
      }
    }
    if (claims != 3 || cert["carlitz_cross_checks"].get<std::int64_t>() == 0 || !cert["carlitz_failures"].empty()) {
      log << "M2 p=" << p << " certificates/Carlitz ";
      ok = false;
    }
  }
  const auto spot = eis2_coefficient(8, {1, 1, 1});
  if (spot != 26880 || residue_mod_p(spot, 7) != 0) {
    log << "a(E8,(1,1,1)) = " << to_string(spot) << " ";
    ok = false;
  }
  return ok;
}

bool criterion6(std::ostream& log) {
  bool ok = true;
  for (const auto& [n, p] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 7}, {2, 11}, {4, 13}, {6, 19}}) {
    ok = pass(run_check(CheckId::M3, {{"degree", n}, {"prime", p}}), log) && ok;
  }
  const auto r = run_check(CheckId::M3, {{"degree", 4}, {"prime", 11}});
  if (r.status != Verdict::Inapplicable) {
    log << "M3 (4,11) -> " << verdict_name(r.status);
    ok = false;
  }
  return ok;
}

bool criterion7(std::ostream& log) {
  bool ok = pass(run_check(CheckId::Wilton, {{"t_bound", 100000}}), log);
  ok = pass(run_check(CheckId::Mod691, {{"t_bound", 100000}}), log) && ok;
  const auto d = delta_expansion(5);
  if (d.at(2) != -24 || d.at(5) != 4830) {
    log << "tau spot values ";
    ok = false;
  }
  return ok;
}

bool criterion8(std::ostream& log) {
  RunContext ctx;
  ctx.jobs = std::max(1U, std::thread::hardware_concurrency());
  const auto r = run_check(CheckId::Leech23, {{"t_bound", 10000}, {"enum_bound", 3}}, ctx);
  bool ok = pass(r, log);
  if (!r.certificate || !r.certificate->contains("enumerated_counts_by_norm")) return false;
  const auto& counts = (*r.certificate)["enumerated_counts_by_norm"];
  const std::vector<std::pair<std::string, std::string>> expected{
      {"0", "1/1"}, {"2", "0/1"}, {"4", "196560/1"}, {"6", "16773120/1"}};
  for (const auto& [norm, value] : expected) {
    if (!counts.contains(norm) || counts[norm] != value) {
      log << "norm " << norm << " count " << (counts.contains(norm) ? counts[norm].dump() : "missing") << " ";
      ok = false;
    }
  }
  return ok;
}

bool criterion9(std::ostream& log) {
  bool ok = true;
  for (const std::int64_t p : {11, 19, 23}) {
    ok = pass(run_check(CheckId::Padic, {{"prime", p}, {"t_bound", 300}, {"det2_bound", 200}}), log) && ok;
  }
  const auto e = eis1(12, 2);
  const auto g = genus_theta1(23, 2);
  const bool spots = residue_at(e, 1, 23) == 16 && residue_at(g, 1, 23) == 16 && residue_at(e, 2, 23) == 9 &&
                     residue_at(g, 2, 23) == 9;
  if (!spots) log << "p=23 spot residues ";
  return ok && spots;
}

bool criterion10(std::ostream& log) {
  bool ok = true;
  for (std::int64_t m = 2; m <= 100; m += 2) {
    const auto v = von_staudt_clausen(m);
    Rational s = bernoulli(m);
    Integer denom(1);
    for (const auto q : v.primes) {
      s += make_rational(1, q);
      denom *= Integer(static_cast<long>(q));
    }
    if (!is_integer(s) || bernoulli(m).get_den() != denom) {
      log << "VSC m=" << m << " ";
      ok = false;
    }
  }
  for (std::int64_t p = 3; p <= 50; ++p) {
    if (!is_prime(p)) continue;
    for (std::int64_t m1 = 2; m1 <= 60; m1 += 2) {
      if (m1 % (p - 1) == 0) continue;
      for (std::int64_t m2 = m1 + (p - 1); m2 <= 60; m2 += p - 1) {
        if (m2 % 2 == 0 && !kummer_check(m1, m2, p)) {
          log << "Kummer " << m1 << "," << m2 << " mod " << p << " ";
          ok = false;
        }
      }
    }
  }
  for (std::int64_t p = 5; p <= 23; ++p) {
    if (is_prime(p) && !p_valuation(bernoulli(2 * p), p).at_least(1)) {
      log << "Adams p=" << p << " ";
      ok = false;
    }
  }
  ok = pass(run_check(CheckId::ClassnumCongruence, {{"prime_bound", 200}}), log) && ok;
  if (is_regular_prime(37) || is_regular_prime(691) || !is_regular_prime(31)) {
    log << "irregularity detection ";
    ok = false;
  }
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "ring identity (E4^(2))^2 = E8^(2), trace <= 6; E4^2 = E8, t <= 50", 60, criterion1},
      {2, "Phi(E_k^(2)) = E_k^(1), k in 4..14, t <= 50", 60, criterion2},
      {3, "cohen_h(1,N) = Hurwitz class number, N <= 500", 60, criterion3},
      {4, "M1 for p in {11,19,23}: theta kernel, sigma sweep, M1_DEG3", 300, criterion4},
      {5, "M2 for p in {7,11,13}: chi_T(p)=1 sweep, certificates, Carlitz", 300, criterion5},
      {6, "M3 certificates and (4,11) INAPPLICABLE", 10, criterion6},
      {7, "Wilton mod 23 and Delta = G12 mod 691, t <= 10^5", 120, criterion7},
      {8, "Leech counts 1, 0, 196560, 16773120; identity; mod 23 sweep", 600, criterion8},
      {9, "E_{(p+1)/2} = genus theta mod p, degrees 1 and 2", 300, criterion9},
      {10, "Bernoulli suite: VSC, Kummer, Adams, class numbers, irregular primes", 60, criterion10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::ostringstream log;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.body(log);
    } catch (const std::exception& e) {
      log << "exception: " << e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) {
      log << "runtime " << seconds << " s exceeds " << c.limit_seconds << " s";
      ok = false;
    }
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": " << c.title << " ("
              << std::fixed << std::setprecision(1) << seconds << " s)";
    if (!log.str().empty()) std::cout << "  " << log.str();
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
