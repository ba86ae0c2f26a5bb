#include "cvnet/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cvnet {

void write_curve_csv(std::ostream& out, const FidelityCurve& curve) {
  out << kCurveCsvHeader << '\n';
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << format_real(curve.grid[i], kCsvDigits) << ',' << format_real(curve.f_plus[i], kCsvDigits) << ','
        << format_real(curve.f_minus[i], kCsvDigits) << '\n';
  }
}

std::string to_json(const RunManifest& manifest) {
  nlohmann::json j;
  j["command"] = manifest.command;
  j["parameters"] = manifest.parameters;
  j["seed"] = manifest.seed;
  j["tool_version"] = manifest.tool_version;
  j["output"] = manifest.output_path;
  return j.dump(2) + "\n";
}

void write_curve_files(const std::string& path, const FidelityCurve& curve, const RunManifest& manifest) {
  std::ostringstream csv;
  write_curve_csv(csv, curve);
  const auto write = [](const std::string& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + file + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + file);
  };
  write(path, csv.str());
  write(path + ".manifest.json", to_json(manifest));
}

std::string tool_version() { return "0.1.0"; }

}  // namespace cvnet
