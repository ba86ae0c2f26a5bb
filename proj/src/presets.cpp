#include "cvnet/presets.hpp"

#include <stdexcept>

namespace cvnet {

namespace {

DistillConfig make_config(std::size_t k, DistillMethod method, const Real& r, const Real& nbar) {
  DistillConfig config;
  config.discarded_mode = k;
  config.method = method;
  config.params = CouplingParams(r, nbar);
  return config;
}

std::string curve_name(std::size_t k, DistillMethod method, const char* nbar) {
  return "k" + std::to_string(k) + "_" + to_string(method) + "_nbar" + nbar;
}

// Drifted test channel: mode 2 heterodyned at a generic time, far enough
// from 2 pi that the drift and the fidelity are both of order one.
Channel drifted_channel() {
  return distill_heterodyne(Real(1), CouplingParams(Real(1.5), Real(0)), 2, Amplitude{Real(1.5), Real(-1)});
}

}  // namespace

Real reference_ratio() { return Real(1) + Real(25) / Real(100000000); }

std::vector<std::string> figure_preset_names() { return {"fig3", "fig4", "fig5"}; }

std::vector<CurveJob> figure_preset(std::string_view name, const Real& r) {
  std::vector<CurveJob> jobs;
  const auto add = [&](std::size_t k, DistillMethod method, const char* label, const Real& nbar) {
    jobs.push_back({curve_name(k, method, label), make_config(k, method, r, nbar)});
  };
  if (name == "fig3") {
    for (std::size_t k : {0u, 2u}) {
      add(k, DistillMethod::trace, "0", Real(0));
      add(k, DistillMethod::trace, "1e3", Real(1000));
    }
  } else if (name == "fig4") {
    add(2, DistillMethod::heterodyne, "0", Real(0));
    add(2, DistillMethod::heterodyne, "1", Real(1));
    add(2, DistillMethod::heterodyne, "1e7", Real(10000000));
  } else if (name == "fig5") {
    for (DistillMethod m : {DistillMethod::trace, DistillMethod::heterodyne}) {
      add(0, m, "0", Real(0));
      add(0, m, "1e5", Real(100000));
    }
  } else {
    throw std::invalid_argument("unknown figure preset '" + std::string(name) + "'");
  }
  return jobs;
}

std::vector<Real> figure_grid(std::string_view name) {
  const Real centre = two_pi();
  if (name == "fig3") return linear_grid(centre - Real(0.002), centre + Real(0.003), 2001);
  if (name == "fig4") return linear_grid(centre - Real(0.01), centre + Real(0.01), 2001);
  if (name == "fig5") return default_grid();
  throw std::invalid_argument("unknown figure preset '" + std::string(name) + "'");
}

std::vector<std::string> mc_preset_names() {
  return {"vacuum", "trace-k0-pi", "het-k2-max", "drift-optimal", "drift-zero"};
}

McCase mc_preset(std::string_view name) {
  if (name == "vacuum") {
    StandardForm vacuum{Real(0.5), Real(0.5), Real(0), Real(0)};
    return {std::string(name), Channel::from_standard_form(vacuum), EprSign::minus, {}, {}};
  }
  if (name == "trace-k0-pi") {
    Channel ch = distill_trace(pi(), CouplingParams(reference_ratio(), Real(0)), 0);
    return {std::string(name), std::move(ch), EprSign::minus, {}, {Real(1), Real(-2)}};
  }
  if (name == "het-k2-max") {
    DistillConfig config = make_config(2, DistillMethod::heterodyne, reference_ratio(), Real(0));
    config.alpha = Amplitude{Real(0.5), Real(-0.25)};
    const Extremum peak = maximize_fidelity(config, EprSign::plus, two_pi() - Real(0.01), two_pi(), 201);
    Channel ch = distill(peak.t_prime, config);
    const Amplitude delta = optimal_displacement(ch, EprSign::plus);
    return {std::string(name), std::move(ch), EprSign::plus, delta, {Real(0.3), Real(0.7)}};
  }
  if (name == "drift-optimal" || name == "drift-zero") {
    Channel ch = drifted_channel();
    const Amplitude delta = name == "drift-optimal" ? optimal_displacement(ch, EprSign::minus) : Amplitude{};
    return {std::string(name), std::move(ch), EprSign::minus, delta, {Real(-1), Real(0.5)}};
  }
  throw std::invalid_argument("unknown Monte Carlo preset '" + std::string(name) + "'");
}

}  // namespace cvnet
