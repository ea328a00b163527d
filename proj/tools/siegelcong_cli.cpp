// Command-line front end: bernoulli, eis, theta, verify.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "siegelcong.hpp"

namespace sc = siegelcong;

namespace {

constexpr int kUsageError = 2;

struct Globals {
  std::string format = "text";
  unsigned jobs = 1;
  std::string cache;
};

void print_bernoulli(std::int64_t upto, sc::ReportFormat format) {
  if (format == sc::ReportFormat::Json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (std::int64_t m = 0; m <= upto; ++m) j[std::to_string(m)] = sc::to_string(sc::bernoulli(m));
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (format == sc::ReportFormat::Csv) std::cout << "m,value\n";
  for (std::int64_t m = 0; m <= upto; ++m) {
    std::cout << m << (format == sc::ReportFormat::Csv ? "," : "  ") << sc::to_string(sc::bernoulli(m)) << "\n";
  }
}

void print_expansion(const sc::FourierExpansion& f, sc::ReportFormat format) {
  if (format == sc::ReportFormat::Json) {
    std::cout << sc::serialize(f) << "\n";
    return;
  }
  if (format == sc::ReportFormat::Csv) std::cout << "index,value\n";
  for (const auto& index : f.indices()) {
    const auto key = sc::index_to_string(index);
    if (format == sc::ReportFormat::Csv) {
      std::cout << (f.degree() == 2 ? "\"" + key + "\"" : key) << "," << sc::to_string(f.at(index)) << "\n";
    } else {
      std::cout << "(" << key << ")  " << sc::to_string(f.at(index)) << "\n";
    }
  }
}

void print_counts(const std::map<std::int64_t, std::uint64_t>& counts, sc::ReportFormat format) {
  if (format == sc::ReportFormat::Json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [norm, c] : counts) j[std::to_string(norm)] = c;
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (format == sc::ReportFormat::Csv) std::cout << "norm,count\n";
  for (const auto& [norm, c] : counts) {
    std::cout << norm << (format == sc::ReportFormat::Csv ? "," : "  ") << c << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Siegel Eisenstein series congruence verifier"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache", g.cache, "Expansion cache directory");

  auto* bern = app.add_subcommand("bernoulli", "Print B_0 .. B_M");
  bern->fallthrough();
  std::int64_t upto = 0;
  bern->add_option("--upto", upto, "Largest index")->required()->check(CLI::NonNegativeNumber);

  auto* eis = app.add_subcommand("eis", "Eisenstein series expansion");
  eis->fallthrough();
  int degree = 1;
  std::int64_t weight = 0, bound = 0;
  std::string region = "trace", out_file;
  eis->add_option("--degree", degree, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  eis->add_option("--weight", weight, "Even weight >= 4")->required();
  eis->add_option("--bound", bound, "t_max (degree 1) or truncation bound (degree 2)")->required()
      ->check(CLI::NonNegativeNumber);
  eis->add_option("--region", region, "Degree-2 truncation: trace or det2")->check(CLI::IsMember({"trace", "det2"}));
  eis->add_option("--out", out_file, "Write the JSON expansion to FILE");

  auto* theta = app.add_subcommand("theta", "Lattice vector counts by norm");
  theta->fallthrough();
  std::string lattice = "leech";
  std::int64_t max_norm = 0;
  theta->add_option("--lattice", lattice, "Lattice name")->required()->check(CLI::IsMember({"leech"}));
  theta->add_option("--max-norm", max_norm, "Largest even norm")->required()->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Run a named check, or 'all'");
  verify->fallthrough();
  std::string check_id, config_file;
  verify->add_option("check", check_id, "Check id or 'all'")->required();
  verify->add_option("--config", config_file, "Suite configuration (with 'all')");
  const std::vector<std::pair<std::string, std::string>> param_flags{
      {"--prime", "prime"},           {"--det2-bound", "det2_bound"}, {"--t-bound", "t_bound"},
      {"--trace-bound", "trace_bound"}, {"--degree", "degree"},       {"--enum-bound", "enum_bound"},
      {"--d0-bound", "d0_bound"},     {"--bound", "bound"},           {"--prime-bound", "prime_bound"},
  };
  std::map<std::string, std::int64_t> param_values;
  for (const auto& [flag, key] : param_flags) param_values[key] = 0;
  std::vector<std::pair<CLI::Option*, std::string>> param_opts;
  for (const auto& [flag, key] : param_flags) {
    param_opts.emplace_back(verify->add_option(flag, param_values[key], "Override parameter " + key), key);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    const auto format = sc::parse_format(g.format);
    if (bern->parsed()) {
      print_bernoulli(upto, format);
      return 0;
    }
    if (eis->parsed()) {
      sc::FourierExpansion f = degree == 1 ? sc::eis1(weight, bound)
                                           : sc::eis2(weight, region == "det2" ? sc::Truncation::by_det2(bound)
                                                                               : sc::Truncation::by_trace(bound));
      if (!out_file.empty()) {
        std::ofstream out(out_file);
        if (!out) {
          std::cerr << "cannot write " << out_file << "\n";
          return kUsageError;
        }
        out << sc::serialize(f) << "\n";
        return 0;
      }
      print_expansion(f, format);
      return 0;
    }
    if (theta->parsed()) {
      print_counts(sc::short_vector_counts(sc::leech_lattice(), max_norm, g.jobs), format);
      return 0;
    }
    if (verify->parsed()) {
      std::optional<std::string> cache;
      if (!g.cache.empty()) cache = g.cache;
      if (check_id == "all") {
        const auto config = config_file.empty() ? sc::default_config() : sc::load_config(config_file);
        std::optional<unsigned> jobs;
        if (app.get_option("--jobs")->count() > 0) jobs = g.jobs;
        const auto reports = sc::run_suite(config, jobs, cache);
        sc::emit_suite(reports, format, std::cout);
        return sc::exit_code(reports);
      }
      if (!config_file.empty()) {
        std::cerr << "--config is only valid with 'verify all'\n";
        return kUsageError;
      }
      const auto id = sc::parse_check_id(check_id);
      sc::Params overrides = sc::Params::object();
      const auto defaults = sc::default_params(id);
      for (const auto& [opt, key] : param_opts) {
        if (opt->count() == 0) continue;
        if (!defaults.contains(key)) {
          std::cerr << "check " << check_id << " has no parameter '" << key << "'\n";
          return kUsageError;
        }
        overrides[key] = param_values[key];
      }
      sc::RunContext ctx;
      ctx.jobs = g.jobs;
      if (cache) ctx.cache = sc::ExpansionCache(std::filesystem::path(*cache));
      const auto report = sc::run_check(id, overrides, ctx);
      sc::emit_report(report, format, std::cout);
      return sc::exit_code({report});
    }
  } catch (const sc::Error& e) {
    std::cerr << "error [" << sc::error_code_name(e.code()) << "]: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
