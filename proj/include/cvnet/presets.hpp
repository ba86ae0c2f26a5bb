#pragma once

// Named parameter sets: the figure curve families and the Monte Carlo
// verification cases.

#include "cvnet/network.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cvnet {

/// Coupling ratio used throughout the published curves.
Real reference_ratio();

struct CurveJob {
  std::string name;  // used as the CSV file stem
  DistillConfig config;
};

/// fig3: trace-out k = 0 and k = 2 at nbar = 0 and 1e3.
/// fig4: heterodyne k = 2 at nbar = 0, 1 and 1e7.
/// fig5: k = 0 by trace-out and by heterodyne at nbar = 0 and 1e5.
/// Throws std::invalid_argument for an unknown name.
std::vector<CurveJob> figure_preset(std::string_view name, const Real& r);
std::vector<std::string> figure_preset_names();

/// Default t' grid of each figure: fig3 resolves the telecloning interval,
/// fig4 the narrow quantum windows either side of 2 pi, fig5 the wide view.
std::vector<Real> figure_grid(std::string_view name);

struct McCase {
  std::string name;
  Channel channel;
  EprSign sign = EprSign::minus;
  Amplitude delta{};
  Amplitude input{};
};

/// vacuum, trace-k0-pi, het-k2-max, drift-optimal, drift-zero.
McCase mc_preset(std::string_view name);
std::vector<std::string> mc_preset_names();

}  // namespace cvnet
