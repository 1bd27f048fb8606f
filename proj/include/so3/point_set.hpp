#pragma once

// Point sets of rotations and their CSV / JSON file format.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "so3/rotation.hpp"

namespace so3 {

/// An ordered collection of rotations with the sampler that produced it.
struct PointSet {
  std::vector<Rotation> points;
  std::string sampler;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> L;

  std::size_t size() const { return points.size(); }
  const Rotation& operator[](std::size_t i) const { return points[i]; }
};

inline constexpr const char* kCsvHeader = "index,r11,r12,r13,r21,r22,r23,r31,r32,r33";

/// Round-trip safe rendering with 17 significant digits.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_csv(std::ostream& os, const PointSet& ps) {
  os << kCsvHeader << '\n';
  for (std::size_t i = 0; i < ps.size(); ++i) {
    os << i;
    for (double v : ps.points[i].entries()) os << ',' << format_double(v);
    os << '\n';
  }
}

inline nlohmann::ordered_json metadata_json(const PointSet& ps) {
  nlohmann::ordered_json j;
  j["sampler"] = ps.sampler;
  j["seed"] = ps.seed ? nlohmann::ordered_json(*ps.seed) : nlohmann::ordered_json(nullptr);
  j["N"] = ps.size();
  if (ps.L) j["L"] = *ps.L;
  return j;
}

/// Sidecar path for a CSV file: same stem, `.json` extension.
inline std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  return p.replace_extension(".json");
}

inline void save(const PointSet& ps, const std::filesystem::path& csv) {
  {
    std::ofstream out(csv, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + csv.string() + " for writing");
    write_csv(out, ps);
  }
  std::ofstream meta(sidecar_path(csv), std::ios::binary);
  if (!meta) throw std::runtime_error("cannot write metadata for " + csv.string());
  meta << metadata_json(ps).dump(2) << '\n';
}

/// Parses the CSV format. Rows that fail the rotation check are rejected
/// unless `reorthonormalize` is set, in which case they are replaced by the
/// nearest rotation.
inline PointSet read_csv(std::istream& is, bool reorthonormalize = false) {
  PointSet ps;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("point file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header: " + line);
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(fields, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size() || cell.empty()) {
        throw std::runtime_error("row " + std::to_string(row) + ": bad number '" + cell + "'");
      }
      values.push_back(v);
    }
    if (values.size() != 10) {
      throw std::runtime_error("row " + std::to_string(row) + ": expected 10 fields");
    }
    Rotation::Entries e;
    for (std::size_t k = 0; k < 9; ++k) e[k] = values[k + 1];
    if (auto r = Rotation::try_from_entries(e)) {
      ps.points.push_back(*r);
    } else if (reorthonormalize) {
      ps.points.push_back(Rotation::nearest(e));
    } else {
      throw invalid_rotation("row " + std::to_string(row) +
                             ": not a rotation (orthogonality error " +
                             std::to_string(Rotation::orthogonality_error(e)) + ")");
    }
    ++row;
  }
  return ps;
}

/// Loads a CSV file and, when present, its sidecar metadata.
inline PointSet load(const std::filesystem::path& csv, bool reorthonormalize = false) {
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + csv.string());
  PointSet ps = read_csv(in, reorthonormalize);
  std::ifstream meta(sidecar_path(csv));
  if (meta) {
    const auto j = nlohmann::json::parse(meta);
    ps.sampler = j.value("sampler", std::string{});
    if (j.contains("seed") && !j["seed"].is_null()) ps.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("L") && !j["L"].is_null()) ps.L = j["L"].get<unsigned>();
    if (j.contains("N") && j["N"].get<std::size_t>() != ps.size()) {
      throw std::runtime_error("metadata N does not match row count");
    }
  }
  return ps;
}

}  // namespace so3
