#pragma once

// CSV and run-manifest output shared by the CLI and the tests.

#include "cvnet/network.hpp"

#include <map>
#include <ostream>
#include <string>

namespace cvnet {

inline constexpr const char* kCurveCsvHeader = "t_prime,f_plus,f_minus";
inline constexpr int kCsvDigits = 17;

/// Header row plus one row per grid point, '.' decimals, LF line endings.
void write_curve_csv(std::ostream& out, const FidelityCurve& curve);

/// Everything needed to regenerate an output file. Parameters are kept as
/// the strings they were given in so the manifest is byte-stable.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string output_path;
};

std::string to_json(const RunManifest& manifest);

/// Writes `path` and `path + ".manifest.json"`. Throws std::runtime_error
/// if either file cannot be written.
void write_curve_files(const std::string& path, const FidelityCurve& curve, const RunManifest& manifest);

std::string tool_version();

}  // namespace cvnet
