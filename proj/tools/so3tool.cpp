// so3tool: sampling, energies, bounds, variance experiments, sampler
// comparison and the identity suite from the command line.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "so3/so3.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr std::size_t kHardishCap = 100000;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path output_dir() {
  if (const char* dir = std::getenv("SO3_OUTPUT_DIR"); dir && *dir) return dir;
  return ".";
}

void write_text(const std::optional<std::string>& out, const std::string& text) {
  if (!out) {
    std::cout << text;
    return;
  }
  std::ofstream f(*out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + *out + " for writing");
  f << text;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct SampleArgs {
  std::string sampler;
  std::optional<std::size_t> n;
  std::optional<unsigned> L;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  unsigned threads = 1;
  bool allow_large = false;
};

int cmd_sample(const SampleArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  so3::PointSet ps;
  if (a.sampler == "dpp") {
    if (!a.L) throw usage_error("dpp requires --L");
    if (a.n) throw usage_error("dpp takes --L, not --n");
    if (*a.L > 3) throw usage_error("dpp sampling is limited to L <= 3");
    ps = so3::dpp_sample(so3::KernelSpec::from_degree(*a.L), a.seed);
  } else {
    if (a.L) throw usage_error("--L applies to the dpp sampler only");
    if (!a.n) throw usage_error(a.sampler + " requires --n");
    if (*a.n < 1) throw usage_error("--n must be >= 1");
    if (a.sampler == "hardish") {
      if (*a.n > kHardishCap && !a.allow_large) {
        throw usage_error("hardish is capped at n = 100000; pass --allow-large to override");
      }
      ps = so3::hardish_sample(*a.n, a.threads);
    } else if (a.sampler == "uniform") {
      ps = so3::uniform_sample(*a.n, a.seed, a.threads);
    } else if (a.sampler == "arvo") {
      ps = so3::arvo_sample(*a.n, a.seed, a.threads);
    } else {
      throw usage_error("unknown sampler '" + a.sampler + "'");
    }
  }
  const fs::path out =
      a.out ? fs::path(*a.out) : output_dir() / (a.sampler + "_" + std::to_string(ps.size()) + ".csv");
  so3::save(ps, out);
  std::printf("N=%zu elapsed_ms=%.3f out=%s\n", ps.size(), elapsed_ms(t0), out.string().c_str());
  return 0;
}

struct EnergyArgs {
  std::string in;
  std::vector<double> s;
  bool green = false;
  bool reorthonormalize = false;
  bool timing = false;
  std::optional<std::string> out;
  unsigned threads = 1;
};

int cmd_energy(const EnergyArgs& a) {
  if (a.s.empty() && !a.green) throw usage_error("nothing to compute: give --s and/or --green");
  for (double s : a.s) {
    if (!(s > 0.0 && s <= 3.0)) throw usage_error("--s values must lie in (0, 3]");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto ps = so3::load(a.in, a.reorthonormalize);
  auto report = so3::make_report(ps, a.s, a.green, a.threads);
  if (a.timing) report.runtime_ms = elapsed_ms(t0);
  write_text(a.out, so3::to_json(report).dump(2) + "\n");
  return 0;
}

struct BoundsArgs {
  std::optional<std::size_t> n;
  std::optional<unsigned> L;
  std::vector<double> s{1.0, 2.0};
  std::optional<std::string> out;
};

int cmd_bounds(const BoundsArgs& a) {
  if (a.n.has_value() == a.L.has_value()) throw usage_error("bounds needs exactly one of --n or --L");
  std::optional<so3::KernelSpec> spec;
  if (a.L) spec = so3::KernelSpec::from_degree(*a.L);
  const std::size_t n = a.n ? *a.n : static_cast<std::size_t>(spec->N);
  if (n < 1) throw usage_error("--n must be >= 1");
  const double nd = static_cast<double>(n);
  ordered_json j;
  j["N"] = n;
  j["L"] = a.L ? ordered_json(*a.L) : ordered_json(nullptr);
  j["riesz3_dpp_expectation"] = n >= 2 ? ordered_json(so3::riesz3_dpp_expectation(nd)) : ordered_json(nullptr);
  const auto g = so3::green_energy_bounds(nd);
  j["green_lower"] = g.lower;
  j["green_upper"] = g.upper;
  ordered_json cont = ordered_json::object(), sub = ordered_json::object();
  for (double s : a.s) {
    if (!(s > 0.0 && s <= 3.0)) throw usage_error("--s values must lie in (0, 3]");
    if (s < 3.0) cont[so3::s_key(s)] = so3::continuous_riesz(s) * nd * nd;
    if (s == 1.0 || s == 2.0) sub[so3::s_key(s)] = so3::riesz_subleading(static_cast<int>(s), nd);
  }
  j["continuous_riesz_n2"] = cont;
  j["riesz_subleading"] = sub;
  if (spec) {
    j["expected_green_energy"] = so3::expected_green_energy_integral(*spec);
    ordered_json er = ordered_json::object();
    for (double s : a.s) er[so3::s_key(s)] = so3::expected_riesz_energy(*spec, s);
    j["expected_riesz_energy"] = er;
  }
  write_text(a.out, j.dump(2) + "\n");
  return 0;
}

struct VarianceArgs {
  unsigned L = 1;
  double eps = so3::pi / 4.0;
  std::size_t runs = 2000;
  std::uint64_t seed = 0;
  std::uint64_t mc_pairs = 10000000;
  bool with_counts = false;
  std::optional<std::string> out;
  unsigned threads = 1;
};

int cmd_variance(const VarianceArgs& a) {
  so3::VarianceOptions opt;
  opt.mc_pairs = a.mc_pairs;
  opt.threads = a.threads;
  const auto ex = so3::variance_experiment(a.L, a.eps, a.runs, a.seed, opt);
  ordered_json j;
  j["L"] = ex.L;
  j["N"] = ex.N;
  j["eps"] = ex.eps;
  j["runs"] = ex.runs;
  j["seed"] = ex.seed;
  j["ball_measure"] = ex.ball_measure;
  j["mean"] = ex.mean;
  j["mean_standard_error"] = ex.mean_standard_error;
  j["expected_mean"] = ex.expected_mean;
  j["variance"] = ex.variance;
  j["variance_bootstrap_sd"] = ex.variance_bootstrap_sd;
  j["exact_variance"] = ex.exact_variance;
  j["exact_variance_standard_error"] = ex.exact_variance_standard_error;
  j["iid_variance"] = ex.iid_variance;
  j["scaled_variance"] = ex.scaled_variance ? ordered_json(*ex.scaled_variance) : ordered_json(nullptr);
  if (a.with_counts) j["counts"] = ex.counts;
  write_text(a.out, j.dump(2) + "\n");
  return 0;
}

struct CompareArgs {
  std::vector<std::string> samplers{"hardish", "dpp", "uniform"};
  std::vector<std::size_t> n_list;
  std::vector<unsigned> L_list;
  std::size_t seeds = 1;
  std::uint64_t seed = 0;
  std::optional<std::string> format;
  std::optional<std::string> out;
  unsigned threads = 1;
};

int cmd_compare(const CompareArgs& a) {
  std::vector<so3::CompareSeries> series;
  for (const auto& s : a.samplers) {
    so3::CompareSeries cs{s, {}};
    if (s == "dpp") {
      for (unsigned L : a.L_list) {
        if (L > 3) throw usage_error("dpp sampling is limited to L <= 3");
        cs.sizes.push_back(so3::KernelSpec::from_degree(L).N);
      }
      if (a.L_list.empty()) {
        for (auto n : a.n_list) {
          if (auto L = so3::degree_for_size(n); L && *L <= 3) cs.sizes.push_back(n);
        }
      }
      if (cs.sizes.empty()) {
        throw usage_error("dpp needs --L-list or --n-list values of the form binom(2L+3, 3), L <= 3");
      }
    } else if (s == "hardish" || s == "uniform" || s == "arvo") {
      if (a.n_list.empty()) throw usage_error(s + " needs --n-list");
      cs.sizes = a.n_list;
      if (s == "hardish") {
        for (auto n : cs.sizes) {
          if (n > kHardishCap) throw usage_error("hardish is capped at n = 100000");
        }
      }
    } else {
      throw usage_error("unknown sampler '" + s + "'");
    }
    series.push_back(std::move(cs));
  }
  for (const auto& s : series) {
    for (auto n : s.sizes) {
      if (n < 2) throw usage_error("compare needs n >= 2");
    }
  }
  if (a.seeds < 1) throw usage_error("--seeds must be >= 1");
  std::string format = a.format.value_or(
      a.out && fs::path(*a.out).extension() == ".json" ? "json" : "csv");
  if (format != "csv" && format != "json") throw usage_error("--format must be csv or json");

  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < a.seeds; ++i) seeds.push_back(a.seed + i);
  const auto rows = so3::run_compare(series, seeds, a.threads);
  std::ostringstream os;
  if (format == "csv") {
    so3::write_compare_csv(os, rows);
  } else {
    os << so3::compare_json(rows).dump(2) << '\n';
  }
  write_text(a.out, os.str());
  return 0;
}

int cmd_verify(const std::string& only) {
  const auto results = so3::run_checks(only);
  if (results.empty()) throw usage_error("no check matches '" + only + "'");
  so3::print_check_table(std::cout, results);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::printf("%zu checks, %zu failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point sets, energies and identities on SO(3)"};
  app.require_subcommand(1);

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Write a point set as CSV plus JSON metadata");
  sample->add_option("--sampler", sa.sampler, "uniform | arvo | hardish | dpp")
      ->required()
      ->check(CLI::IsMember({"uniform", "arvo", "hardish", "dpp"}));
  sample->add_option("--n", sa.n, "Number of points");
  sample->add_option("--L", sa.L, "Kernel degree (dpp)");
  sample->add_option("--seed", sa.seed, "Random seed")->capture_default_str();
  sample->add_option("--out", sa.out, "Output CSV path (default: $SO3_OUTPUT_DIR/<sampler>_<n>.csv)");
  sample->add_option("--threads", sa.threads, "Worker threads, 0 = all cores")->capture_default_str();
  sample->add_flag("--allow-large", sa.allow_large, "Lift the HArDiSh size cap of 100000");

  EnergyArgs ea;
  auto* energy = app.add_subcommand("energy", "Riesz and Green energies of a point file");
  energy->add_option("--in", ea.in, "Point set CSV")->required();
  energy->add_option("--s", ea.s, "Riesz exponents in (0, 3]")->delimiter(',');
  energy->add_flag("--green", ea.green, "Include the Green energy");
  energy->add_flag("--reorthonormalize", ea.reorthonormalize,
                   "Project rows onto SO(3) instead of rejecting them");
  energy->add_flag("--timing", ea.timing, "Record runtime_ms in the report");
  energy->add_option("--out", ea.out, "Report JSON path (default: stdout)");
  energy->add_option("--threads", ea.threads, "Worker threads, 0 = all cores")->capture_default_str();

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Theoretical energy curves at N");
  bounds->add_option("--n", ba.n, "Number of points");
  bounds->add_option("--L", ba.L, "Kernel degree, N = binom(2L+3, 3)");
  bounds->add_option("--s", ba.s, "Riesz exponents")->delimiter(',')->capture_default_str();
  bounds->add_option("--out", ba.out, "Output JSON path (default: stdout)");

  VarianceArgs va;
  auto* var = app.add_subcommand("variance", "Ball-count variance of the DPP");
  var->add_option("--L", va.L, "Kernel degree, 0..3")->required();
  var->add_option("--eps", va.eps, "Ball radius in (0, pi/2)")->required();
  var->add_option("--runs", va.runs, "Number of DPP samples")->capture_default_str();
  var->add_option("--seed", va.seed, "Random seed")->capture_default_str();
  var->add_option("--mc-pairs", va.mc_pairs, "Monte Carlo pairs for the exact variance")
      ->capture_default_str();
  var->add_flag("--counts", va.with_counts, "Include per-run counts");
  var->add_option("--out", va.out, "Output JSON path (default: stdout)");
  var->add_option("--threads", va.threads, "Worker threads, 0 = all cores")->capture_default_str();

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare", "Green energy of several samplers over a range of N");
  compare->add_option("--samplers", ca.samplers, "Comma-separated sampler list")
      ->delimiter(',')
      ->capture_default_str();
  compare->add_option("--n-list", ca.n_list, "Comma-separated point counts")->delimiter(',');
  compare->add_option("--L-list", ca.L_list, "Comma-separated kernel degrees for dpp")->delimiter(',');
  compare->add_option("--seeds", ca.seeds, "Seeds per random sampler and n")->capture_default_str();
  compare->add_option("--seed", ca.seed, "First seed")->capture_default_str();
  compare->add_option("--format", ca.format, "csv | json (default: from --out extension, else csv)");
  compare->add_option("--out", ca.out, "Output path (default: stdout)");
  compare->add_option("--threads", ca.threads, "Worker threads, 0 = all cores")->capture_default_str();

  std::string only;
  auto* verify = app.add_subcommand("verify", "Run the identity suite");
  verify->add_option("--only", only, "Restrict to a group or a name substring");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sample) return cmd_sample(sa);
    if (*energy) return cmd_energy(ea);
    if (*bounds) return cmd_bounds(ba);
    if (*var) return cmd_variance(va);
    if (*compare) return cmd_compare(ca);
    if (*verify) return cmd_verify(only);
  } catch (const usage_error& e) {
    std::fprintf(stderr, "so3tool: error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "so3tool: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
