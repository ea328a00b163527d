#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "siegelcong/verify.hpp"

using namespace siegelcong;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("siegelcong_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string dump_without_time(CongruenceReport r) {
  r.elapsed_ms = 0;
  return to_json(r).dump(2);
}

std::string error_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Registry, ClosedSet) {
  const std::vector<std::string> expected{"M1", "M2", "M3", "WILTON", "MOD691", "LEECH23", "PADIC",
                                          "RING_IDENTITY", "PHI_CONSISTENCY", "HURWITZ_ORACLE",
                                          "CLASSNUM_CONGRUENCE"};
  std::vector<std::string> names;
  for (const auto& [id, name] : check_registry()) {
    names.push_back(name);
    EXPECT_EQ(parse_check_id(name), id);
    EXPECT_EQ(check_name(id), name);
  }
  EXPECT_EQ(names, expected);
  try {
    parse_check_id("M4");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownCheck);
  }
}

TEST(Params, MergeAndValidate) {
  const auto p = merge_params(CheckId::M1, {{"prime", 11}});
  EXPECT_EQ(p["prime"], 11);
  EXPECT_EQ(p["det2_bound"], 4000);
  EXPECT_THROW(merge_params(CheckId::M1, {{"degree", 2}}), Error);
  EXPECT_THROW(merge_params(CheckId::M1, {{"prime", "11"}}), Error);
  EXPECT_THROW(merge_params(CheckId::M1, {{"t_bound", -1}}), Error);
  EXPECT_EQ(merge_params(CheckId::M1, {{"prime", -7}})["prime"], -7);
}

TEST(RunCheck, InapplicableOutsideHypotheses) {
  const auto r = run_check(CheckId::M1, {{"prime", 13}, {"det2_bound", 50}, {"t_bound", 50}});
  EXPECT_EQ(r.status, Verdict::Inapplicable);
  EXPECT_TRUE(r.violations.empty());
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_EQ((*r.certificate)["traces"][0]["verdict"], "INAPPLICABLE");
  EXPECT_EQ(run_check(CheckId::M3, {{"prime", 5}, {"degree", 2}}).status, Verdict::Inapplicable);
  EXPECT_EQ(run_check(CheckId::Padic, {{"prime", 13}}).status, Verdict::Inapplicable);
  EXPECT_EQ(run_check(CheckId::M2, {{"prime", 5}, {"det2_bound", 10}}).status, Verdict::Inapplicable);
}

TEST(RunCheck, SmallBoundsPass) {
  EXPECT_EQ(run_check(CheckId::M1, {{"prime", 11}, {"det2_bound", 300}, {"t_bound", 2000}}).status, Verdict::Pass);
  const auto m2 = run_check(CheckId::M2, {{"prime", 7}, {"det2_bound", 300}, {"d0_bound", 40}});
  EXPECT_EQ(m2.status, Verdict::Pass);
  ASSERT_TRUE(m2.certificate.has_value());
  EXPECT_EQ((*m2.certificate)["traces"].size(), 4u);
  EXPECT_GT((*m2.certificate)["carlitz_cross_checks"].size(), 0u);
  EXPECT_EQ(run_check(CheckId::M3, {{"prime", 7}, {"degree", 2}}).status, Verdict::Pass);
  EXPECT_EQ(run_check(CheckId::Wilton, {{"t_bound", 3000}}).status, Verdict::Pass);
  EXPECT_EQ(run_check(CheckId::Mod691, {{"t_bound", 3000}}).status, Verdict::Pass);
  EXPECT_EQ(run_check(CheckId::Padic, {{"prime", 23}, {"t_bound", 100}, {"det2_bound", 80}}).status, Verdict::Pass);
  EXPECT_EQ(run_check(CheckId::RingIdentity, {{"trace_bound", 4}, {"t_bound", 30}}).status, Verdict::Pass);
  EXPECT_EQ(run_check(CheckId::PhiConsistency, {{"t_bound", 20}}).status, Verdict::Pass);
  EXPECT_EQ(run_check(CheckId::HurwitzOracle, {{"bound", 200}}).status, Verdict::Pass);
  EXPECT_EQ(run_check(CheckId::ClassnumCongruence, {{"prime_bound", 100}}).status, Verdict::Pass);
}

TEST(RunCheck, Leech23SmallBounds) {
  const auto r = run_check(CheckId::Leech23, {{"t_bound", 500}, {"enum_bound", 2}});
  EXPECT_EQ(r.status, Verdict::Pass);
  const auto counts = (*r.certificate)["enumerated_counts_by_norm"];
  EXPECT_EQ(counts["0"], "1/1");
  EXPECT_EQ(counts["2"], "0/1");
  EXPECT_EQ(counts["4"], "196560/1");
}

TEST(Checks, HurwitzClassNumber) {
  EXPECT_EQ(detail::hurwitz_class_number(3), make_rational(1, 3));
  EXPECT_EQ(detail::hurwitz_class_number(4), make_rational(1, 2));
  EXPECT_EQ(detail::hurwitz_class_number(12), make_rational(4, 3));
  EXPECT_EQ(detail::hurwitz_class_number(23), 3);
}

TEST(Report, CorruptedCoefficientIsReported) {
  const auto dir = scratch_dir("corrupt");
  RunContext ctx;
  ctx.cache = ExpansionCache(dir);
  const auto key = ExpansionCache::key("eis", 2, 6, "det2", 100);
  auto e = eis2(6, Truncation::by_det2(100));
  e.set(BinaryHalfIntegral{2, 1, 3}, e.at(BinaryHalfIntegral{2, 1, 3}) + 1);
  ctx.cache.store(key, e);
  const auto r = run_check(CheckId::M1, {{"prime", 11}, {"det2_bound", 100}, {"t_bound", 100}}, ctx);
  EXPECT_EQ(r.status, Verdict::Fail);
  EXPECT_EQ(r.violation_count, 1u);
  EXPECT_EQ(r.violations, std::vector<std::string>{"2,1,3"});
  std::ostringstream text;
  emit_text(r, text);
  EXPECT_NE(text.str().find("(2,1,3)"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Report, ViolationCapKeepsCount) {
  std::vector<std::string> v;
  for (int i = 0; i < 150; ++i) v.push_back(std::to_string(i));
  const auto r = make_report(CheckId::Wilton, default_params(CheckId::Wilton), true, v, {}, {}, true, 100);
  EXPECT_EQ(r.violations.size(), 100u);
  EXPECT_EQ(r.violation_count, 150u);
  EXPECT_EQ(r.status, Verdict::Fail);
  EXPECT_FALSE(r.certificate.has_value());
}

TEST(Report, JsonSchema) {
  const auto r = run_check(CheckId::M3, {{"prime", 7}, {"degree", 2}});
  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"check", "params", "status", "violations", "violation_count",
                                            "certificate", "elapsed_ms", "artifact_version"}));
  EXPECT_EQ(j["check"], "M3");
  EXPECT_EQ(j["status"], "PASS");
  EXPECT_EQ(j["artifact_version"], kArtifactVersion);
  EXPECT_TRUE(j["violations"].is_array());
  EXPECT_TRUE(to_json(run_check(CheckId::Wilton, {{"t_bound", 10}}))["certificate"].is_null());
  const auto back = report_from_json(nlohmann::ordered_json::parse(to_json(r).dump()));
  EXPECT_EQ(to_json(back).dump(), j.dump());
}

TEST(Report, DeterministicModuloElapsed) {
  const Params p{{"prime", 7}, {"det2_bound", 200}, {"d0_bound", 30}};
  RunContext serial;
  RunContext parallel;
  parallel.jobs = 3;
  EXPECT_EQ(dump_without_time(run_check(CheckId::M2, p, serial)), dump_without_time(run_check(CheckId::M2, p, parallel)));
  SuiteConfig c;
  c.checks = {{CheckId::M3, {{"prime", 7}, {"degree", 2}}}, {CheckId::Wilton, {{"t_bound", 200}}},
              {CheckId::HurwitzOracle, {{"bound", 50}}}, {CheckId::M1, {{"prime", 13}}}};
  const auto a = run_suite(c, 1), b = run_suite(c, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].check, c.checks[i].id);
    EXPECT_EQ(dump_without_time(a[i]), dump_without_time(b[i]));
  }
}

TEST(Report, Csv) {
  const auto r = make_report(CheckId::M1, default_params(CheckId::M1), true, {"1,1,1", "2,1,3"}, {});
  std::ostringstream os;
  emit_report(r, ReportFormat::Csv, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "check,params,status,violation_count,violation,elapsed_ms");
  std::getline(in, line);
  EXPECT_EQ(line, "M1,prime=23;det2_bound=4000;t_bound=100000,FAIL,2,\"1,1,1\",0");
  std::getline(in, line);
  EXPECT_EQ(line, "M1,prime=23;det2_bound=4000;t_bound=100000,FAIL,2,\"2,1,3\",0");
  EXPECT_FALSE(std::getline(in, line));
}

TEST(Suite, ExitCodesAndSummary) {
  EXPECT_EQ(exit_code({}), 0);
  const auto pass = make_report(CheckId::Wilton, default_params(CheckId::Wilton), true, {}, {});
  const auto inap = make_report(CheckId::Wilton, default_params(CheckId::Wilton), false, {}, {});
  const auto fail = make_report(CheckId::Wilton, default_params(CheckId::Wilton), true, {"5"}, {});
  EXPECT_EQ(exit_code({pass, inap}), 0);
  EXPECT_EQ(exit_code({pass, fail, inap}), 1);
  const auto s = suite_summary({pass, fail, inap});
  EXPECT_EQ(s["total"], 3);
  EXPECT_EQ(s["fail"], 1);
  std::ostringstream os;
  emit_suite({pass, fail}, ReportFormat::Json, os);
  const auto j = nlohmann::ordered_json::parse(os.str());
  EXPECT_EQ(j["reports"].size(), 2u);
  EXPECT_EQ(j["summary"]["pass"], 1);
}

TEST(Config, Parses) {
  const auto c = parse_config(R"({"jobs": 2, "cache_dir": "/tmp/x", "checks": [
      {"id": "M1", "params": {"prime": 19}}, {"id": "WILTON"}]})");
  EXPECT_EQ(c.jobs, 2u);
  ASSERT_TRUE(c.cache_dir.has_value());
  ASSERT_EQ(c.checks.size(), 2u);
  EXPECT_EQ(c.checks[0].id, CheckId::M1);
  EXPECT_EQ(c.checks[0].params["prime"], 19);
  EXPECT_EQ(c.checks[1].id, CheckId::Wilton);
}

TEST(Config, EmptyCheckListRunsNothing) {
  const auto c = parse_config(R"({"checks": []})");
  EXPECT_TRUE(c.checks.empty());
  const auto reports = run_suite(c, 2);
  EXPECT_TRUE(reports.empty());
  EXPECT_EQ(exit_code(reports), 0);
}

TEST(Config, Diagnostics) {
  const auto bad_json = error_message([] { parse_config("{\n  \"checks\": [\n    {\"id\": \"M1\",}\n  ]\n}", "c.json"); });
  EXPECT_NE(bad_json.find("c.json: line 3"), std::string::npos) << bad_json;
  const auto unknown = error_message([] { parse_config(R"({"checks": [{"id": "WILTON"}, {"id": "M9"}]})"); });
  EXPECT_NE(unknown.find("checks[1].id"), std::string::npos) << unknown;
  const auto bad_param = error_message([] { parse_config(R"({"checks": [{"id": "M1", "params": {"prime": "x"}}]})"); });
  EXPECT_NE(bad_param.find("checks[0].params.prime"), std::string::npos) << bad_param;
  const auto foreign = error_message([] { parse_config(R"({"checks": [{"id": "M1", "params": {"bound": 3}}]})"); });
  EXPECT_NE(foreign.find("checks[0].params.bound"), std::string::npos) << foreign;
  EXPECT_NE(error_message([] { parse_config(R"({"check": []})"); }).find("'check'"), std::string::npos);
  EXPECT_NE(error_message([] { parse_config(R"({})"); }).find("'checks'"), std::string::npos);
  EXPECT_NE(error_message([] { parse_config(R"({"checks": [], "jobs": 0})"); }).find("'jobs'"), std::string::npos);
  try {
    load_config("/nonexistent/config.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
  }
}

TEST(Cache, StoresAndReloads) {
  const auto dir = scratch_dir("cache");
  const ExpansionCache cache(dir);
  const auto key = ExpansionCache::key("eis", 1, 12, "t", 40);
  EXPECT_EQ(key, "eis-d1-k12-t-40");
  int computed = 0;
  auto compute = [&] {
    ++computed;
    return eis1(12, 40);
  };
  const auto a = cache.get(key, compute);
  const auto b = cache.get(key, compute);
  EXPECT_EQ(computed, 1);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(fs::exists(dir / (key + ".json")));
  fs::remove_all(dir);
}

TEST(Cache, CorruptOrStaleEntriesAreRecomputed) {
  const auto dir = scratch_dir("stale");
  const ExpansionCache cache(dir);
  const auto key = ExpansionCache::key("eis", 1, 6, "t", 30);
  const auto path = dir / (key + ".json");
  int computed = 0;
  auto compute = [&] {
    ++computed;
    return eis1(6, 30);
  };
  { std::ofstream(path) << "{not json"; }
  EXPECT_EQ(cache.get(key, compute), eis1(6, 30));
  EXPECT_EQ(computed, 1);
  // stale format version
  auto j = nlohmann::ordered_json::parse(std::ifstream(path));
  j["format_version"] = kCacheFormatVersion + 1;
  { std::ofstream(path) << j.dump(); }
  EXPECT_EQ(cache.get(key, compute), eis1(6, 30));
  EXPECT_EQ(computed, 2);
  // truncated coefficient table
  j = nlohmann::ordered_json::parse(std::ifstream(path));
  j["expansion"]["coefficients"].erase("30");
  { std::ofstream(path) << j.dump(); }
  EXPECT_EQ(cache.get(key, compute), eis1(6, 30));
  EXPECT_EQ(computed, 3);
  // key mismatch
  j = nlohmann::ordered_json::parse(std::ifstream(path));
  j["key"] = "other";
  { std::ofstream(path) << j.dump(); }
  EXPECT_EQ(cache.get(key, compute), eis1(6, 30));
  EXPECT_EQ(computed, 4);
  EXPECT_FALSE(ExpansionCache().load(key).has_value());
  fs::remove_all(dir);
}
