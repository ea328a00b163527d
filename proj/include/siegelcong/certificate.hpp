#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "siegelcong/bernoulli.hpp"
#include "siegelcong/characters.hpp"
#include "siegelcong/eisenstein.hpp"
#include "siegelcong/quadforms.hpp"
#include "siegelcong/rational.hpp"

namespace siegelcong {

/// Divisibility claims in degrees >= 3, established from the exact p-orders
/// of the Bernoulli factors in the Eisenstein coefficient formula.
enum class CertificateClaim {
  M1Deg3,           // E_{(p+1)/2}^(3) mod p singular
  M2Deg5,           // E_{p+1}^(5) mod p singular
  M2Deg4Square,     // B_{p-1}/B_{2(p-1)} == 1 mod p
  M2Deg4Nonsquare,  // B_{p-1,chi}/B_{2(p-1)} == 0 mod p for nontrivial chi
  M2Deg3Theta,      // beta_p(3, p+1) = 0, so E_{p+1}^(3) is itself in the theta kernel
  M3,               // p^{-alpha} E_k^(n+1) mod p singular
};

inline std::string claim_name(CertificateClaim claim) {
  switch (claim) {
    case CertificateClaim::M1Deg3: return "M1_DEG3";
    case CertificateClaim::M2Deg5: return "M2_DEG5";
    case CertificateClaim::M2Deg4Square: return "M2_DEG4_SQUARE";
    case CertificateClaim::M2Deg4Nonsquare: return "M2_DEG4_NONSQUARE";
    case CertificateClaim::M2Deg3Theta: return "M2_DEG3_THETA";
    case CertificateClaim::M3: return "M3";
  }
  return "UNKNOWN";
}

enum class Verdict { Pass, Fail, Inapplicable };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inapplicable: return "INAPPLICABLE";
  }
  return "UNKNOWN";
}

struct CertificateParams {
  std::int64_t prime = 0;
  std::int64_t degree = 0;     // M3 only: the even n
  std::int64_t d0_bound = 100; // M2_DEG4_NONSQUARE only
};

struct CertificateFactor {
  std::string expression;
  Rational value;
  PValuation valuation;
};

struct Statement {
  std::string text;
  bool holds = false;
};

struct CertificateTrace {
  CertificateClaim claim{};
  CertificateParams params;
  std::vector<Statement> hypotheses;
  std::vector<CertificateFactor> factors;
  std::vector<Statement> checks;
  Verdict verdict = Verdict::Fail;

  const CertificateFactor* factor(const std::string& expression) const {
    for (const auto& f : factors) {
      if (f.expression == expression) return &f;
    }
    return nullptr;
  }
};

namespace detail {

class TraceBuilder {
 public:
  TraceBuilder(CertificateClaim claim, CertificateParams params) {
    trace_.claim = claim;
    trace_.params = params;
  }

  bool hypothesis(std::string text, bool holds) {
    trace_.hypotheses.push_back({std::move(text), holds});
    return holds;
  }

  CertificateFactor factor(std::string expression, const Rational& value) {
    trace_.factors.push_back({std::move(expression), value, p_valuation(value, trace_.params.prime)});
    return trace_.factors.back();
  }

  void check(std::string text, bool holds) { trace_.checks.push_back({std::move(text), holds}); }

  CertificateTrace finish() {
    bool hyps = true;
    for (const auto& h : trace_.hypotheses) hyps = hyps && h.holds;
    if (!hyps) {
      trace_.verdict = Verdict::Inapplicable;
      return trace_;
    }
    bool ok = !trace_.checks.empty();
    for (const auto& c : trace_.checks) ok = ok && c.holds;
    trace_.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return trace_;
  }

  bool hypotheses_hold() const {
    for (const auto& h : trace_.hypotheses) {
      if (!h.holds) return false;
    }
    return true;
  }

 private:
  CertificateTrace trace_;
};

inline bool valuation_equals(const PValuation& v, std::int64_t expected) {
  return !v.is_infinite() && v.value() == expected;
}

inline Rational ratio(std::int64_t num, const Rational& den) { return Rational(static_cast<long>(num)) / den; }

inline CertificateTrace certify_m1_deg3(const CertificateParams& params) {
  const auto p = params.prime;
  TraceBuilder tb(CertificateClaim::M1Deg3, params);
  const bool prime = tb.hypothesis("p is prime", is_prime(p));
  tb.hypothesis("p > 7", p > 7);
  tb.hypothesis("p == 3 mod 4", mod_floor(p, 4) == 3);
  if (!prime || !tb.hypotheses_hold()) return tb.finish();

  const std::int64_t k = (p + 1) / 2;
  const auto f1 = tb.factor("(p+1)/B_{(p+1)/2}", ratio(p + 1, bernoulli(k)));
  const auto f2 = tb.factor("(p-1)/B_{p-1}", ratio(p - 1, bernoulli(p - 1)));
  const auto total = tb.factor("odd factor(3,(p+1)/2)", bocherer_factor(3, k).value);

  const auto bk = p_valuation(bernoulli(k), p);
  tb.check("ord_p(B_{(p+1)/2}) = 0", valuation_equals(bk, 0));
  const auto h = static_cast<std::int64_t>(class_list(-p).class_number());
  tb.check("B_{(p+1)/2} == -h(-p)/2 mod p with h(-p) = " + std::to_string(h),
           valuation_equals(bk, 0) && residue_mod_p(bernoulli(k), p) == residue_mod_p(make_rational(-h, 2), p));
  const auto vsc = von_staudt_clausen(p - 1);
  tb.check("p divides the denominator of B_{p-1} (von Staudt-Clausen)",
           std::find(vsc.primes.begin(), vsc.primes.end(), p) != vsc.primes.end());
  tb.check("ord_p((p+1)/B_{(p+1)/2}) = 0", valuation_equals(f1.valuation, 0));
  tb.check("ord_p((p-1)/B_{p-1}) = 1", valuation_equals(f2.valuation, 1));
  tb.check("total valuation >= 1", total.valuation.at_least(1));
  return tb.finish();
}

inline CertificateTrace certify_m2_deg5(const CertificateParams& params) {
  const auto p = params.prime;
  TraceBuilder tb(CertificateClaim::M2Deg5, params);
  const bool prime = tb.hypothesis("p is prime", is_prime(p));
  tb.hypothesis("p > 5", p > 5);
  if (!prime || !tb.hypotheses_hold()) return tb.finish();

  const auto f1 = tb.factor("(p+1)/B_{p+1}", ratio(p + 1, bernoulli(p + 1)));
  const auto f2 = tb.factor("p/B_{2p}", ratio(p, bernoulli(2 * p)));
  const auto f3 = tb.factor("(p-1)/B_{2(p-1)}", ratio(p - 1, bernoulli(2 * (p - 1))));
  const auto total = tb.factor("odd factor(5,p+1)", bocherer_factor(5, p + 1).value);

  const Rational kummer_lhs = bernoulli(p + 1) / Rational(static_cast<long>(p + 1));
  tb.check("B_{p+1}/(p+1) == B_2/2 = 1/12 mod p (Kummer)",
           residue_mod_p(kummer_lhs, p) == residue_mod_p(make_rational(1, 12), p));
  tb.check("B_{2p} == 0 mod p (Adams)", p_valuation(bernoulli(2 * p), p).at_least(1));
  tb.check("B_{2p}/(2p) == B_{p+1}/(p+1) mod p (Kummer)",
           residue_mod_p(bernoulli(2 * p) / Rational(static_cast<long>(2 * p)), p) == residue_mod_p(kummer_lhs, p));
  tb.check("ord_p((p+1)/B_{p+1}) = 0", valuation_equals(f1.valuation, 0));
  tb.check("ord_p(p/B_{2p}) = 0", valuation_equals(f2.valuation, 0));
  tb.check("ord_p((p-1)/B_{2(p-1)}) = 1", valuation_equals(f3.valuation, 1));
  tb.check("total valuation >= 1", total.valuation.at_least(1));
  return tb.finish();
}

inline CertificateTrace certify_m2_deg4_square(const CertificateParams& params) {
  const auto p = params.prime;
  TraceBuilder tb(CertificateClaim::M2Deg4Square, params);
  const bool prime = tb.hypothesis("p is prime", is_prime(p));
  tb.hypothesis("p > 5", p > 5);
  if (!prime || !tb.hypotheses_hold()) return tb.finish();

  const auto f1 = tb.factor("(p+1)/B_{p+1}", ratio(p + 1, bernoulli(p + 1)));
  const auto f2 = tb.factor("p/B_{2p}", ratio(p, bernoulli(2 * p)));
  const auto f3 = tb.factor("B_{p-1}/B_{2(p-1)}", bernoulli(p - 1) / bernoulli(2 * (p - 1)));
  tb.check("(p+1)/B_{p+1} * p/B_{2p} is p-integral", f1.valuation.at_least(0) && f2.valuation.at_least(0));
  tb.check("B_{p-1}/B_{2(p-1)} == 1 mod p",
           f3.valuation.at_least(0) && residue_mod_p(f3.value, p) == 1);
  return tb.finish();
}

inline CertificateTrace certify_m2_deg4_nonsquare(const CertificateParams& params) {
  const auto p = params.prime;
  TraceBuilder tb(CertificateClaim::M2Deg4Nonsquare, params);
  const bool prime = tb.hypothesis("p is prime", is_prime(p));
  tb.hypothesis("p > 5", p > 5);
  tb.hypothesis("d0 bound >= 1", params.d0_bound >= 1);
  if (!prime || !tb.hypotheses_hold()) return tb.finish();

  const Rational b2 = bernoulli(2 * (p - 1));
  std::int64_t count = 0;
  bool all = true;
  for (std::int64_t d = -params.d0_bound; d <= params.d0_bound; ++d) {
    if (!is_fundamental_discriminant(d)) continue;
    const QuadCharacter chi(d);
    const auto gv = gen_bernoulli_valuation(p - 1, chi, p);
    const auto f = tb.factor("B_{p-1,chi_" + std::to_string(d) + "}/B_{2(p-1)}", gen_bernoulli(p - 1, chi) / b2);
    all = all && f.valuation.at_least(1) && gv.valuation.at_least(0) && !gv.predicted_denominator_possible;
    ++count;
  }
  tb.check("ord_p(B_{p-1,chi}/B_{2(p-1)}) >= 1 for all " + std::to_string(count) +
               " fundamental discriminants with |d0| <= " + std::to_string(params.d0_bound),
           all && count > 0);
  return tb.finish();
}

inline CertificateTrace certify_m2_deg3_theta(const CertificateParams& params) {
  const auto p = params.prime;
  TraceBuilder tb(CertificateClaim::M2Deg3Theta, params);
  const bool prime = tb.hypothesis("p is prime", is_prime(p));
  tb.hypothesis("p > 5", p > 5);
  constexpr std::int64_t n = 3;
  tb.hypothesis("n = 3 == 3 mod 8 and p > n", n % 8 == 3 && p > n);
  tb.hypothesis("k = (n+2p-1)/2 = p+1", (n + 2 * p - 1) / 2 == p + 1);
  if (!prime || !tb.hypotheses_hold()) return tb.finish();
  const auto beta = tb.factor("odd factor(3,p+1)", bocherer_factor(3, p + 1).value);
  tb.check("beta_p(3,p+1) = 0", valuation_equals(beta.valuation, 0));
  tb.check("ord_p((p+1)/B_{p+1}) + ord_p(p/B_{2p}) = 0",
           valuation_equals(p_valuation(ratio(p + 1, bernoulli(p + 1)) * ratio(p, bernoulli(2 * p)), p), 0));
  return tb.finish();
}

inline CertificateTrace certify_m3(const CertificateParams& params) {
  const auto p = params.prime;
  const auto n = params.degree;
  TraceBuilder tb(CertificateClaim::M3, params);
  tb.hypothesis("n even and positive", n > 0 && n % 2 == 0);
  const bool prime = tb.hypothesis("p is prime", is_prime(p));
  tb.hypothesis("p > n+3", p > n + 3);
  const std::int64_t sign = (n / 2) % 2 == 0 ? 1 : 3;
  tb.hypothesis("p == (-1)^{n/2} mod 4", prime && mod_floor(p, 4) == sign);
  if (!tb.hypotheses_hold()) return tb.finish();

  const std::int64_t k = (n + p - 1) / 2;
  const auto even = tb.factor("even factor(n,k)", bocherer_factor(n, k).value);
  const auto odd = tb.factor("odd factor(n+1,k)", bocherer_factor(n + 1, k).value);
  const auto vsc = tb.factor("(p-1)/B_{p-1}", ratio(p - 1, bernoulli(p - 1)));
  tb.check("k = (n+p-1)/2 = " + std::to_string(k) + " is even", k % 2 == 0);
  tb.check("alpha_p(n,k) finite", !even.valuation.is_infinite());
  tb.check("ord_p((p-1)/B_{p-1}) = 1", valuation_equals(vsc.valuation, 1));
  tb.check("ord_p(odd factor(n+1,k)) - alpha_p(n,k) = 1",
           !even.valuation.is_infinite() && !odd.valuation.is_infinite() &&
               odd.valuation.value() - even.valuation.value() == 1);
  return tb.finish();
}

}  // namespace detail

inline CertificateTrace bernoulli_certificate(CertificateClaim claim, const CertificateParams& params) {
  switch (claim) {
    case CertificateClaim::M1Deg3: return detail::certify_m1_deg3(params);
    case CertificateClaim::M2Deg5: return detail::certify_m2_deg5(params);
    case CertificateClaim::M2Deg4Square: return detail::certify_m2_deg4_square(params);
    case CertificateClaim::M2Deg4Nonsquare: return detail::certify_m2_deg4_nonsquare(params);
    case CertificateClaim::M2Deg3Theta: return detail::certify_m2_deg3_theta(params);
    case CertificateClaim::M3: return detail::certify_m3(params);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown certificate claim");
}

inline nlohmann::ordered_json to_json(const CertificateTrace& trace) {
  nlohmann::ordered_json j;
  j["claim"] = claim_name(trace.claim);
  nlohmann::ordered_json params;
  params["prime"] = trace.params.prime;
  if (trace.claim == CertificateClaim::M3) params["degree"] = trace.params.degree;
  if (trace.claim == CertificateClaim::M2Deg4Nonsquare) params["d0_bound"] = trace.params.d0_bound;
  j["params"] = params;
  auto statements = [](const std::vector<Statement>& list) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : list) arr.push_back({{"statement", s.text}, {"holds", s.holds}});
    return arr;
  };
  j["hypotheses"] = statements(trace.hypotheses);
  auto factors = nlohmann::ordered_json::array();
  for (const auto& f : trace.factors) {
    nlohmann::ordered_json fj;
    fj["expression"] = f.expression;
    fj["value"] = to_string(f.value);
    if (f.valuation.is_infinite()) {
      fj["valuation"] = "INFINITY";
    } else {
      fj["valuation"] = f.valuation.value();
    }
    factors.push_back(fj);
  }
  j["factors"] = factors;
  j["checks"] = statements(trace.checks);
  j["verdict"] = verdict_name(trace.verdict);
  return j;
}

}  // namespace siegelcong
