#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "siegelcong/bernoulli.hpp"
#include "siegelcong/certificate.hpp"
#include "siegelcong/characters.hpp"
#include "siegelcong/eisenstein.hpp"
#include "siegelcong/lattices.hpp"
#include "siegelcong/qexp.hpp"
#include "siegelcong/quadforms.hpp"
#include "siegelcong/rational.hpp"

namespace siegelcong {

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr int kCacheFormatVersion = 1;

enum class CheckId {
  M1,
  M2,
  M3,
  Wilton,
  Mod691,
  Leech23,
  Padic,
  RingIdentity,
  PhiConsistency,
  HurwitzOracle,
  ClassnumCongruence,
};

inline const std::vector<std::pair<CheckId, std::string>>& check_registry() {
  static const std::vector<std::pair<CheckId, std::string>> registry{
      {CheckId::M1, "M1"},
      {CheckId::M2, "M2"},
      {CheckId::M3, "M3"},
      {CheckId::Wilton, "WILTON"},
      {CheckId::Mod691, "MOD691"},
      {CheckId::Leech23, "LEECH23"},
      {CheckId::Padic, "PADIC"},
      {CheckId::RingIdentity, "RING_IDENTITY"},
      {CheckId::PhiConsistency, "PHI_CONSISTENCY"},
      {CheckId::HurwitzOracle, "HURWITZ_ORACLE"},
      {CheckId::ClassnumCongruence, "CLASSNUM_CONGRUENCE"},
  };
  return registry;
}

inline std::string check_name(CheckId id) {
  for (const auto& [k, name] : check_registry()) {
    if (k == id) return name;
  }
  return "UNKNOWN";
}

inline CheckId parse_check_id(const std::string& text) {
  for (const auto& [k, name] : check_registry()) {
    if (name == text) return k;
  }
  throw Error(ErrorCode::UnknownCheck, "unknown check id '" + text + "'");
}

using Params = nlohmann::ordered_json;

inline Params default_params(CheckId id) {
  switch (id) {
    case CheckId::M1: return {{"prime", 23}, {"det2_bound", 4000}, {"t_bound", 100000}};
    case CheckId::M2: return {{"prime", 7}, {"det2_bound", 4000}, {"d0_bound", 100}};
    case CheckId::M3: return {{"degree", 2}, {"prime", 7}};
    case CheckId::Wilton: return {{"t_bound", 100000}};
    case CheckId::Mod691: return {{"t_bound", 100000}};
    case CheckId::Leech23: return {{"t_bound", 10000}, {"enum_bound", 3}};
    case CheckId::Padic: return {{"prime", 23}, {"t_bound", 300}, {"det2_bound", 200}};
    case CheckId::RingIdentity: return {{"trace_bound", 6}, {"t_bound", 50}};
    case CheckId::PhiConsistency: return {{"t_bound", 50}};
    case CheckId::HurwitzOracle: return {{"bound", 500}};
    case CheckId::ClassnumCongruence: return {{"prime_bound", 200}};
  }
  return Params::object();
}

/// Defaults overridden by `overrides`; unknown keys and non-integer values are rejected.
inline Params merge_params(CheckId id, const Params& overrides, const std::string& where = "params") {
  Params out = default_params(id);
  if (overrides.is_null()) return out;
  require(overrides.is_object(), ErrorCode::ConfigError, where + ": expected an object");
  for (const auto& [key, value] : overrides.items()) {
    require(out.contains(key), ErrorCode::ConfigError,
            where + "." + key + ": not a parameter of " + check_name(id));
    require(value.is_number_integer(), ErrorCode::ConfigError, where + "." + key + ": expected an integer");
    require(value.get<std::int64_t>() >= 0 || key == "prime", ErrorCode::ConfigError,
            where + "." + key + ": must be nonnegative");
    out[key] = value.get<std::int64_t>();
  }
  return out;
}

struct CongruenceReport {
  CheckId check{};
  Params params;
  Verdict status = Verdict::Fail;
  std::vector<std::string> violations;  // capped
  std::uint64_t violation_count = 0;
  std::optional<nlohmann::ordered_json> certificate;
  std::int64_t elapsed_ms = 0;
  std::string artifact_version = kArtifactVersion;
};

// ---------------------------------------------------------------------------
// expansion cache

/// File cache keyed by (kind, degree, weight, bound); unreadable or stale
/// entries are recomputed and rewritten.
class ExpansionCache {
 public:
  ExpansionCache() = default;
  explicit ExpansionCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

  bool enabled() const { return dir_.has_value(); }

  static std::string key(const std::string& kind, int degree, std::int64_t weight, const std::string& region,
                         std::int64_t bound) {
    return kind + "-d" + std::to_string(degree) + "-k" + std::to_string(weight) + "-" + region + "-" +
           std::to_string(bound);
  }

  std::optional<FourierExpansion> load(const std::string& key) const {
    if (!dir_) return std::nullopt;
    const auto path = *dir_ / (key + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
      const auto j = nlohmann::ordered_json::parse(in);
      if (j.at("format_version").get<int>() != kCacheFormatVersion || j.at("key").get<std::string>() != key) {
        return std::nullopt;
      }
      return expansion_from_json(j.at("expansion"));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void store(const std::string& key, const FourierExpansion& f) const {
    if (!dir_) return;
    std::error_code ec;
    std::filesystem::create_directories(*dir_, ec);
    nlohmann::ordered_json j;
    j["format_version"] = kCacheFormatVersion;
    j["key"] = key;
    j["expansion"] = to_json(f);
    const auto path = *dir_ / (key + ".json");
    const auto tmp = *dir_ / (key + ".json.tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())));
    {
      std::ofstream out(tmp);
      if (!out) return;
      out << j.dump();
    }
    std::filesystem::rename(tmp, path, ec);
  }

  FourierExpansion get(const std::string& key, const std::function<FourierExpansion()>& compute) const {
    if (auto hit = load(key)) return std::move(*hit);
    auto value = compute();
    store(key, value);
    return value;
  }

 private:
  std::optional<std::filesystem::path> dir_;
};

struct RunContext {
  unsigned jobs = 1;
  ExpansionCache cache;
  std::size_t violation_cap = 100;
};

namespace detail {

struct Outcome {
  bool applicable = true;
  std::vector<std::string> violations;
  std::vector<CertificateTrace> traces;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  bool extra_ok = true;
};

inline std::int64_t param(const Params& p, const char* key) { return p.at(key).get<std::int64_t>(); }

inline void append(std::vector<std::string>& out, const std::vector<Index>& indices, const std::string& prefix = {}) {
  for (const auto& i : indices) out.push_back(prefix + index_to_string(i));
}

inline FourierExpansion cached_eis1(const RunContext& ctx, std::int64_t k, std::int64_t t_max) {
  return ctx.cache.get(ExpansionCache::key("eis", 1, k, "t", t_max), [&] { return eis1(k, t_max); });
}

inline FourierExpansion cached_eis2(const RunContext& ctx, std::int64_t k, Truncation tr) {
  return ctx.cache.get(ExpansionCache::key("eis", 2, k, region_name(tr.region), tr.bound), [&] { return eis2(k, tr); });
}

inline FourierExpansion cached_delta(const RunContext& ctx, std::int64_t t_max) {
  return ctx.cache.get(ExpansionCache::key("delta", 1, 12, "t", t_max), [&] { return delta_expansion(t_max); });
}

inline Outcome check_m1(const Params& params, const RunContext& ctx) {
  Outcome out;
  const auto p = param(params, "prime");
  CertificateParams cp;
  cp.prime = p;
  out.traces.push_back(bernoulli_certificate(CertificateClaim::M1Deg3, cp));
  if (out.traces.back().verdict == Verdict::Inapplicable) {
    out.applicable = false;
    return out;
  }
  const std::int64_t k = (p + 1) / 2;
  // (1-II)
  const auto e2 = cached_eis2(ctx, k, Truncation::by_det2(param(params, "det2_bound")));
  append(out.violations, kernel_report(e2, p, KernelMode::ThetaKernel));
  // (1-III)
  const auto t_bound = param(params, "t_bound");
  const auto e1 = cached_eis1(ctx, k, t_bound);
  for (std::int64_t t = 1; t <= t_bound; ++t) {
    if (kronecker(-p, t) == -1 && residue_at(e1, t, p) != 0) out.violations.push_back(std::to_string(t));
  }
  return out;
}

inline Outcome check_m2(const Params& params, const RunContext& ctx) {
  Outcome out;
  const auto p = param(params, "prime");
  CertificateParams cp;
  cp.prime = p;
  cp.d0_bound = param(params, "d0_bound");
  for (const auto claim : {CertificateClaim::M2Deg5, CertificateClaim::M2Deg4Square, CertificateClaim::M2Deg4Nonsquare,
                           CertificateClaim::M2Deg3Theta}) {
    out.traces.push_back(bernoulli_certificate(claim, cp));
  }
  if (out.traces.front().verdict == Verdict::Inapplicable) {
    out.applicable = false;
    return out;
  }
  // (2-III)
  const auto e2 = cached_eis2(ctx, p + 1, Truncation::by_det2(param(params, "det2_bound")));
  for (const auto& t : e2.region_keys()) {
    if (!t.is_positive_definite() || kronecker(-t.det2(), p) != 1) continue;
    if (residue_at(e2, t, p) != 0) out.violations.push_back(t.to_string());
  }
  // Carlitz congruence cross-check
  auto rows = nlohmann::ordered_json::array();
  std::int64_t checked = 0;
  for (std::int64_t d = -cp.d0_bound; d <= cp.d0_bound; ++d) {
    if (d == 1 || !is_fundamental_discriminant(d) || d % p == 0) continue;
    const auto cc = carlitz_congruence_check(QuadCharacter(d), p);
    ++checked;
    if (!cc.equal) {
      out.extra_ok = false;
      rows.push_back({{"d0", d}, {"lhs", cc.lhs}, {"rhs", cc.rhs}});
    }
  }
  out.extra["carlitz_cross_checks"] = checked;
  out.extra["carlitz_failures"] = rows;
  return out;
}

inline Outcome check_m3(const Params& params, const RunContext&) {
  Outcome out;
  CertificateParams cp;
  cp.prime = param(params, "prime");
  cp.degree = param(params, "degree");
  out.traces.push_back(bernoulli_certificate(CertificateClaim::M3, cp));
  out.applicable = out.traces.back().verdict != Verdict::Inapplicable;
  return out;
}

inline Outcome check_wilton(const Params& params, const RunContext& ctx) {
  Outcome out;
  const auto t_bound = param(params, "t_bound");
  const auto delta = cached_delta(ctx, t_bound);
  for (std::int64_t t = 1; t <= t_bound; ++t) {
    if (kronecker(-23, t) == -1 && residue_at(delta, t, 23) != 0) out.violations.push_back(std::to_string(t));
  }
  return out;
}

inline Outcome check_mod691(const Params& params, const RunContext& ctx) {
  Outcome out;
  const auto t_bound = param(params, "t_bound");
  append(out.violations, congruence_violations(cached_delta(ctx, t_bound), g12_expansion(t_bound), 691));
  return out;
}

inline Outcome check_leech23(const Params& params, const RunContext& ctx) {
  Outcome out;
  try {
    const auto result = leech_theta_identity_check(param(params, "t_bound"), param(params, "enum_bound"), ctx.jobs);
    auto counts = nlohmann::ordered_json::object();
    for (std::int64_t t = 0; t <= result.enumerated.bound(); ++t) {
      counts[std::to_string(2 * t)] = to_string(result.enumerated.at(t));
    }
    out.extra["enumerated_counts_by_norm"] = counts;
    append(out.violations, result.violations);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IdentityMismatch) throw;
    out.extra_ok = false;
    out.extra["identity_mismatch"] = e.what();
  }
  return out;
}

inline Outcome check_padic(const Params& params, const RunContext& ctx) {
  Outcome out;
  const auto p = param(params, "prime");
  if (!is_prime(p) || mod_floor(p, 4) != 3 || p <= 3) {
    out.applicable = false;
    out.extra["hypothesis"] = "p prime, p == 3 mod 4, p > 3";
    return out;
  }
  const std::int64_t k = (p + 1) / 2;
  const auto t_bound = param(params, "t_bound");
  append(out.violations, congruence_violations(cached_eis1(ctx, k, t_bound), genus_theta1(p, t_bound), p));
  const auto tr = Truncation::by_det2(param(params, "det2_bound"));
  append(out.violations, congruence_violations(cached_eis2(ctx, k, tr), genus_theta2(p, tr), p));
  return out;
}

inline std::vector<std::string> exact_differences(const FourierExpansion& f, const FourierExpansion& g) {
  std::vector<std::string> out;
  for (const auto& index : f.indices()) {
    if (!g.contains(index) || f.at(index) != g.at(index)) out.push_back(index_to_string(index));
  }
  return out;
}

inline Outcome check_ring_identity(const Params& params, const RunContext& ctx) {
  Outcome out;
  const auto tr = Truncation::by_trace(param(params, "trace_bound"));
  const auto e4 = cached_eis2(ctx, 4, tr);
  for (auto& v : exact_differences(multiply(e4, e4), cached_eis2(ctx, 8, tr))) out.violations.push_back(v);
  const auto t_bound = param(params, "t_bound");
  const auto f4 = cached_eis1(ctx, 4, t_bound);
  for (auto& v : exact_differences(multiply(f4, f4), cached_eis1(ctx, 8, t_bound))) out.violations.push_back(v);
  return out;
}

inline Outcome check_phi_consistency(const Params& params, const RunContext& ctx) {
  Outcome out;
  const auto t_bound = param(params, "t_bound");
  for (const std::int64_t k : {4, 6, 8, 10, 12, 14}) {
    const auto phi = phi_op(cached_eis2(ctx, k, Truncation::by_trace(t_bound)));
    for (auto& v : exact_differences(phi, cached_eis1(ctx, k, t_bound))) {
      out.violations.push_back("k=" + std::to_string(k) + ":" + v);
    }
  }
  return out;
}

/// H(N) = sum over reduced forms of discriminant -N (all contents) of 2/aut_order.
inline Rational hurwitz_class_number(std::int64_t n) {
  const auto forms = class_list(-n, FormSelection::All);
  Rational h(0);
  for (const auto w : forms.aut_orders) h += make_rational(2, w);
  return h;
}

inline Outcome check_hurwitz(const Params& params, const RunContext&) {
  Outcome out;
  for (std::int64_t n = 1; n <= param(params, "bound"); ++n) {
    if (mod_floor(n, 4) != 0 && mod_floor(n, 4) != 3) continue;
    if (cohen_h(1, n) != hurwitz_class_number(n)) out.violations.push_back(std::to_string(n));
  }
  return out;
}

inline Outcome check_classnum(const Params& params, const RunContext&) {
  Outcome out;
  for (std::int64_t p = 11; p < param(params, "prime_bound"); ++p) {
    if (!is_prime(p) || mod_floor(p, 4) != 3) continue;
    const auto h = static_cast<std::int64_t>(class_list(-p).class_number());
    if (residue_mod_p(bernoulli((p + 1) / 2), p) != residue_mod_p(make_rational(-h, 2), p)) {
      out.violations.push_back(std::to_string(p));
    }
  }
  return out;
}

inline Outcome dispatch(CheckId id, const Params& params, const RunContext& ctx) {
  switch (id) {
    case CheckId::M1: return check_m1(params, ctx);
    case CheckId::M2: return check_m2(params, ctx);
    case CheckId::M3: return check_m3(params, ctx);
    case CheckId::Wilton: return check_wilton(params, ctx);
    case CheckId::Mod691: return check_mod691(params, ctx);
    case CheckId::Leech23: return check_leech23(params, ctx);
    case CheckId::Padic: return check_padic(params, ctx);
    case CheckId::RingIdentity: return check_ring_identity(params, ctx);
    case CheckId::PhiConsistency: return check_phi_consistency(params, ctx);
    case CheckId::HurwitzOracle: return check_hurwitz(params, ctx);
    case CheckId::ClassnumCongruence: return check_classnum(params, ctx);
  }
  throw Error(ErrorCode::UnknownCheck, "unknown check");
}

}  // namespace detail

/// Builds a report from raw violations and certificate traces.
inline CongruenceReport make_report(CheckId id, Params params, bool applicable, std::vector<std::string> violations,
                                    const std::vector<CertificateTrace>& traces,
                                    nlohmann::ordered_json extra = nlohmann::ordered_json::object(),
                                    bool extra_ok = true, std::size_t cap = 100) {
  CongruenceReport r;
  r.check = id;
  r.params = std::move(params);
  r.violation_count = violations.size();
  if (violations.size() > cap) violations.resize(cap);
  r.violations = std::move(violations);
  bool certificates_ok = true;
  if (!traces.empty() || !extra.empty()) {
    nlohmann::ordered_json cert = nlohmann::ordered_json::object();
    if (!traces.empty()) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& t : traces) {
        arr.push_back(to_json(t));
        if (applicable) certificates_ok = certificates_ok && t.verdict == Verdict::Pass;
      }
      cert["traces"] = arr;
    }
    for (const auto& [key, value] : extra.items()) cert[key] = value;
    r.certificate = cert;
  }
  if (!applicable) {
    r.status = Verdict::Inapplicable;
  } else {
    r.status = (r.violation_count == 0 && certificates_ok && extra_ok) ? Verdict::Pass : Verdict::Fail;
  }
  return r;
}

inline CongruenceReport run_check(CheckId id, const Params& overrides = Params::object(),
                                  const RunContext& ctx = RunContext{}) {
  const auto params = merge_params(id, overrides);
  const auto start = std::chrono::steady_clock::now();
  auto outcome = detail::dispatch(id, params, ctx);
  auto report = make_report(id, params, outcome.applicable, std::move(outcome.violations), outcome.traces,
                            std::move(outcome.extra), outcome.extra_ok, ctx.violation_cap);
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

// ---------------------------------------------------------------------------
// configuration

struct CheckSpec {
  CheckId id{};
  Params params = Params::object();
};

struct SuiteConfig {
  std::vector<CheckSpec> checks;
  unsigned jobs = 1;
  std::optional<std::string> cache_dir;
};

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline SuiteConfig parse_config(const std::string& text, const std::string& source = "config") {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto where = e.byte > 0 ? e.byte - 1 : 0;
    throw Error(ErrorCode::ConfigError, source + ": " + detail::line_column(text, where) + ": invalid JSON");
  }
  require(j.is_object(), ErrorCode::ConfigError, source + ": top level must be an object");
  for (const auto& [key, value] : j.items()) {
    require(key == "checks" || key == "jobs" || key == "cache_dir", ErrorCode::ConfigError,
            source + ": field '" + key + "': unknown field");
  }
  SuiteConfig config;
  if (j.contains("jobs")) {
    require(j["jobs"].is_number_integer() && j["jobs"].get<std::int64_t>() >= 1, ErrorCode::ConfigError,
            source + ": field 'jobs': expected a positive integer");
    config.jobs = j["jobs"].get<unsigned>();
  }
  if (j.contains("cache_dir") && !j["cache_dir"].is_null()) {
    require(j["cache_dir"].is_string(), ErrorCode::ConfigError, source + ": field 'cache_dir': expected a string");
    config.cache_dir = j["cache_dir"].get<std::string>();
  }
  require(j.contains("checks"), ErrorCode::ConfigError, source + ": field 'checks': missing");
  require(j["checks"].is_array(), ErrorCode::ConfigError, source + ": field 'checks': expected an array");
  for (std::size_t i = 0; i < j["checks"].size(); ++i) {
    const auto& c = j["checks"][i];
    const std::string where = source + ": checks[" + std::to_string(i) + "]";
    require(c.is_object(), ErrorCode::ConfigError, where + ": expected an object");
    for (const auto& [key, value] : c.items()) {
      require(key == "id" || key == "params", ErrorCode::ConfigError, where + "." + key + ": unknown field");
    }
    require(c.contains("id") && c["id"].is_string(), ErrorCode::ConfigError, where + ".id: expected a string");
    CheckSpec spec;
    try {
      spec.id = parse_check_id(c["id"].get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, where + ".id: " + e.what());
    }
    const Params overrides = c.contains("params") ? c["params"] : Params::object();
    merge_params(spec.id, overrides, where + ".params");
    spec.params = overrides;
    config.checks.push_back(std::move(spec));
  }
  return config;
}

inline SuiteConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::ConfigError, path.string() + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

/// The full acceptance suite at its default bounds.
inline SuiteConfig default_config() {
  SuiteConfig c;
  for (const std::int64_t p : {11, 19, 23}) c.checks.push_back({CheckId::M1, {{"prime", p}}});
  for (const std::int64_t p : {7, 11, 13}) c.checks.push_back({CheckId::M2, {{"prime", p}}});
  for (const auto& [n, p] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 7}, {2, 11}, {4, 13}, {6, 19}, {4, 11}}) {
    c.checks.push_back({CheckId::M3, {{"degree", n}, {"prime", p}}});
  }
  c.checks.push_back({CheckId::Wilton, Params::object()});
  c.checks.push_back({CheckId::Mod691, Params::object()});
  c.checks.push_back({CheckId::Leech23, Params::object()});
  for (const std::int64_t p : {11, 19, 23}) c.checks.push_back({CheckId::Padic, {{"prime", p}}});
  c.checks.push_back({CheckId::RingIdentity, Params::object()});
  c.checks.push_back({CheckId::PhiConsistency, Params::object()});
  c.checks.push_back({CheckId::HurwitzOracle, Params::object()});
  c.checks.push_back({CheckId::ClassnumCongruence, Params::object()});
  return c;
}

/// Runs the configured checks on a pool of `jobs` workers; reports keep config order.
inline std::vector<CongruenceReport> run_suite(const SuiteConfig& config, std::optional<unsigned> jobs_override = {},
                                               std::optional<std::string> cache_override = {}) {
  RunContext ctx;
  ctx.jobs = std::max(1U, jobs_override.value_or(config.jobs));
  const auto cache_dir = cache_override ? cache_override : config.cache_dir;
  if (cache_dir) ctx.cache = ExpansionCache(std::filesystem::path(*cache_dir));

  std::vector<CongruenceReport> reports(config.checks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < config.checks.size(); i = next++) {
      try {
        reports[i] = run_check(config.checks[i].id, config.checks[i].params, ctx);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned workers = std::min<unsigned>(ctx.jobs, static_cast<unsigned>(std::max<std::size_t>(1, config.checks.size())));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return reports;
}

inline int exit_code(const std::vector<CongruenceReport>& reports) {
  for (const auto& r : reports) {
    if (r.status == Verdict::Fail) return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// report emission

enum class ReportFormat { Text, Json, Csv };

inline ReportFormat parse_format(const std::string& text) {
  if (text == "text") return ReportFormat::Text;
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + text + "'");
}

inline nlohmann::ordered_json to_json(const CongruenceReport& r) {
  nlohmann::ordered_json j;
  j["check"] = check_name(r.check);
  j["params"] = r.params;
  j["status"] = verdict_name(r.status);
  j["violations"] = r.violations;
  j["violation_count"] = r.violation_count;
  j["certificate"] = r.certificate ? *r.certificate : nlohmann::ordered_json(nullptr);
  j["elapsed_ms"] = r.elapsed_ms;
  j["artifact_version"] = r.artifact_version;
  return j;
}

inline CongruenceReport report_from_json(const nlohmann::ordered_json& j) {
  CongruenceReport r;
  r.check = parse_check_id(j.at("check").get<std::string>());
  r.params = j.at("params");
  const auto status = j.at("status").get<std::string>();
  r.status = status == "PASS" ? Verdict::Pass : status == "INAPPLICABLE" ? Verdict::Inapplicable : Verdict::Fail;
  r.violations = j.at("violations").get<std::vector<std::string>>();
  r.violation_count = j.at("violation_count").get<std::uint64_t>();
  if (!j.at("certificate").is_null()) r.certificate = j.at("certificate");
  r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
  r.artifact_version = j.at("artifact_version").get<std::string>();
  return r;
}

namespace detail {

inline std::string params_inline(const Params& p, const char* sep) {
  std::string s;
  for (const auto& [key, value] : p.items()) {
    if (!s.empty()) s += sep;
    s += key + "=" + value.dump();
  }
  return s;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline void emit_text(const CongruenceReport& r, std::ostream& os) {
  os << check_name(r.check) << " [" << detail::params_inline(r.params, ", ") << "] " << verdict_name(r.status)
     << "  violations=" << r.violation_count << "  " << r.elapsed_ms << " ms\n";
  if (!r.violations.empty()) {
    os << "  violating indices:";
    for (const auto& v : r.violations) os << " (" << v << ")";
    if (r.violation_count > r.violations.size()) os << " ... " << r.violation_count - r.violations.size() << " more";
    os << "\n";
  }
  if (r.certificate && r.certificate->contains("traces")) {
    for (const auto& t : (*r.certificate)["traces"]) {
      os << "  certificate " << t["claim"].get<std::string>() << ": " << t["verdict"].get<std::string>() << "\n";
      for (const auto& h : t["hypotheses"]) {
        if (!h["holds"].get<bool>()) os << "    hypothesis fails: " << h["statement"].get<std::string>() << "\n";
      }
      for (const auto& f : t["factors"]) {
        os << "    ord_p(" << f["expression"].get<std::string>() << ") = "
           << (f["valuation"].is_string() ? f["valuation"].get<std::string>() : f["valuation"].dump()) << "   ["
           << f["value"].get<std::string>() << "]\n";
      }
      for (const auto& c : t["checks"]) {
        os << "    [" << (c["holds"].get<bool>() ? "ok" : "FAILED") << "] " << c["statement"].get<std::string>() << "\n";
      }
    }
  }
}

inline void emit_csv_header(std::ostream& os) { os << "check,params,status,violation_count,violation,elapsed_ms\n"; }

inline void emit_csv_rows(const CongruenceReport& r, std::ostream& os) {
  const auto prefix = check_name(r.check) + "," + detail::csv_quote(detail::params_inline(r.params, ";")) + "," +
                      verdict_name(r.status) + "," + std::to_string(r.violation_count) + ",";
  if (r.violations.empty()) {
    os << prefix << "," << r.elapsed_ms << "\n";
    return;
  }
  for (const auto& v : r.violations) os << prefix << detail::csv_quote(v) << "," << r.elapsed_ms << "\n";
}

inline void emit_report(const CongruenceReport& r, ReportFormat format, std::ostream& os) {
  switch (format) {
    case ReportFormat::Text: emit_text(r, os); break;
    case ReportFormat::Json: os << to_json(r).dump(2) << "\n"; break;
    case ReportFormat::Csv:
      emit_csv_header(os);
      emit_csv_rows(r, os);
      break;
  }
}

inline nlohmann::ordered_json suite_summary(const std::vector<CongruenceReport>& reports) {
  std::size_t pass = 0, fail = 0, inapplicable = 0;
  for (const auto& r : reports) {
    if (r.status == Verdict::Pass) ++pass;
    if (r.status == Verdict::Fail) ++fail;
    if (r.status == Verdict::Inapplicable) ++inapplicable;
  }
  return {{"total", reports.size()}, {"pass", pass}, {"fail", fail}, {"inapplicable", inapplicable}};
}

inline void emit_suite(const std::vector<CongruenceReport>& reports, ReportFormat format, std::ostream& os) {
  const auto summary = suite_summary(reports);
  switch (format) {
    case ReportFormat::Text:
      for (const auto& r : reports) emit_text(r, os);
      os << "summary: " << summary["total"] << " checks, " << summary["pass"] << " PASS, " << summary["fail"]
         << " FAIL, " << summary["inapplicable"] << " INAPPLICABLE\n";
      break;
    case ReportFormat::Json: {
      nlohmann::ordered_json j;
      auto arr = nlohmann::ordered_json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      j["reports"] = arr;
      j["summary"] = summary;
      os << j.dump(2) << "\n";
      break;
    }
    case ReportFormat::Csv:
      emit_csv_header(os);
      for (const auto& r : reports) emit_csv_rows(r, os);
      break;
  }
}

}  // namespace siegelcong
