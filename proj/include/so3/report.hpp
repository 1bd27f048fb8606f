#pragma once

// Energy reports and the long-format sampler comparison table.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "so3/energy.hpp"
#include "so3/point_set.hpp"
#include "so3/sampling.hpp"

namespace so3 {

struct EnergyReport {
  std::size_t n = 0;
  std::string sampler;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> L;
  std::vector<std::pair<double, EnergyResult>> riesz;
  std::optional<EnergyResult> green;
  std::optional<double> runtime_ms;
};

inline EnergyReport make_report(const PointSet& ps, const std::vector<double>& s_list,
                                bool with_green, unsigned threads = 1) {
  EnergyReport r;
  r.n = ps.size();
  r.sampler = ps.sampler;
  r.seed = ps.seed;
  r.L = ps.L;
  for (double s : s_list) r.riesz.emplace_back(s, riesz_energy(ps, s, threads));
  if (with_green) r.green = green_energy(ps, threads);
  return r;
}

inline std::string s_key(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", s);
  return buf;
}

namespace detail {

inline nlohmann::ordered_json energy_json(const EnergyResult& e) {
  if (e.finite()) return e.value;
  return nullptr;
}

}  // namespace detail

/// {n, sampler, seed, riesz: {s: value}, green, bounds: {...}, runtime_ms}.
/// Infinite energies are written as null with the coincident pair listed.
inline nlohmann::ordered_json to_json(const EnergyReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["n"] = r.n;
  j["sampler"] = r.sampler;
  j["seed"] = r.seed ? ordered_json(*r.seed) : ordered_json(nullptr);
  if (r.L) j["L"] = *r.L;
  ordered_json riesz = ordered_json::object();
  ordered_json coincident = ordered_json::object();
  for (const auto& [s, e] : r.riesz) {
    riesz[s_key(s)] = detail::energy_json(e);
    if (e.coincident) coincident["riesz_" + s_key(s)] = {e.coincident->first, e.coincident->second};
  }
  j["riesz"] = riesz;
  if (r.green) {
    j["green"] = detail::energy_json(*r.green);
    if (r.green->coincident) {
      coincident["green"] = {r.green->coincident->first, r.green->coincident->second};
    }
  } else {
    j["green"] = nullptr;
  }
  if (!coincident.empty()) j["coincident"] = coincident;

  const double n = static_cast<double>(r.n);
  ordered_json bounds;
  bounds["riesz3_dpp_expectation"] =
      r.n >= 2 ? ordered_json(riesz3_dpp_expectation(n)) : ordered_json(nullptr);
  const auto g = green_energy_bounds(std::max(n, 1.0));
  bounds["green_lower"] = g.lower;
  bounds["green_upper"] = g.upper;
  ordered_json cont = ordered_json::object();
  ordered_json sub = ordered_json::object();
  for (const auto& [s, e] : r.riesz) {
    if (s < 3.0) cont[s_key(s)] = continuous_riesz(s);
    if (s == 1.0 || s == 2.0) sub[s_key(s)] = riesz_subleading(static_cast<int>(s), n);
  }
  bounds["continuous_riesz"] = cont;
  bounds["riesz_subleading"] = sub;
  j["bounds"] = bounds;
  j["runtime_ms"] = r.runtime_ms ? ordered_json(*r.runtime_ms) : ordered_json(nullptr);
  return j;
}

/// One line of the comparison table. Bands are the leading Green energy
/// coefficients, i.e. the bounds on energy / N^{4/3}.
struct CompareRow {
  std::string sampler;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  double energy = 0.0;
  double energy_over_n43 = 0.0;
  double lower_band = 0.0;
  double upper_band = 0.0;
};

inline constexpr const char* kCompareHeader =
    "sampler,n,energy,energy_over_n43,lower_band,upper_band";

/// L with binom(2L + 3, 3) = n, if any.
inline std::optional<unsigned> degree_for_size(std::uint64_t n) {
  for (unsigned L = 0;; ++L) {
    const auto N = KernelSpec::from_degree(L).N;
    if (N == n) return L;
    if (N > n) return std::nullopt;
  }
}

inline PointSet sample_by_name(const std::string& sampler, std::size_t n, std::uint64_t seed,
                               unsigned threads) {
  if (sampler == "hardish") return hardish_sample(n, threads);
  if (sampler == "uniform") return uniform_sample(n, seed, threads);
  if (sampler == "arvo") return arvo_sample(n, seed, threads);
  if (sampler == "dpp") {
    const auto L = degree_for_size(n);
    if (!L) {
      throw std::invalid_argument("dpp needs n = binom(2L+3, 3); " + std::to_string(n) +
                                  " is not of that form");
    }
    if (*L > 3) throw std::invalid_argument("dpp sampling is limited to L <= 3");
    return dpp_sample(KernelSpec::from_degree(*L), seed);
  }
  throw std::invalid_argument("unknown sampler '" + sampler + "'");
}

inline CompareRow compare_row(const PointSet& ps) {
  CompareRow row;
  row.sampler = ps.sampler;
  row.n = ps.size();
  row.seed = ps.seed;
  const auto e = green_energy(ps);
  row.energy = e.value;
  row.energy_over_n43 = e.value / std::pow(static_cast<double>(ps.size()), 4.0 / 3.0);
  row.lower_band = green_lower_coefficient();
  row.upper_band = green_upper_coefficient();
  return row;
}

/// A sampler and the point counts to run it at.
struct CompareSeries {
  std::string sampler;
  std::vector<std::size_t> sizes;
};

/// Green energies for every series entry; random samplers get one row per
/// seed, HArDiSh one row per n. Rows are independent tasks and come back
/// in input order.
inline std::vector<CompareRow> run_compare(const std::vector<CompareSeries>& series,
                                           const std::vector<std::uint64_t>& seeds,
                                           unsigned threads = 1) {
  struct Task {
    std::string sampler;
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& s : series) {
    for (std::size_t n : s.sizes) {
      if (s.sampler == "hardish") {
        tasks.push_back({s.sampler, n, 0});
      } else {
        for (auto seed : seeds) tasks.push_back({s.sampler, n, seed});
      }
    }
  }
  std::vector<CompareRow> rows(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    rows[i] = compare_row(sample_by_name(tasks[i].sampler, tasks[i].n, tasks[i].seed, 1));
  });
  return rows;
}

inline void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows) {
  os << kCompareHeader << '\n';
  for (const auto& r : rows) {
    os << r.sampler << ',' << r.n << ',' << format_double(r.energy) << ','
       << format_double(r.energy_over_n43) << ',' << format_double(r.lower_band) << ','
       << format_double(r.upper_band) << '\n';
  }
}

inline nlohmann::ordered_json compare_json(const std::vector<CompareRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["sampler"] = r.sampler;
    j["n"] = r.n;
    j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
    j["energy"] = r.energy;
    j["energy_over_n43"] = r.energy_over_n43;
    j["lower_band"] = r.lower_band;
    j["upper_band"] = r.upper_band;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace so3
