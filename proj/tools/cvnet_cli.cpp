// cvnet: command-line front end for the teleportation network model.
//
// Exit codes: 0 ok, 1 I/O failure, 2 usage error, 3 self-test failure.

#include "cvnet/io.hpp"
#include "cvnet/mc_oracle.hpp"
#include "cvnet/network.hpp"
#include "cvnet/presets.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cvnet;

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSelfTest = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SelfTestFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::string kReferenceRatio = "1.00000025";

// Real-valued flags are kept as text so the manifest echoes them verbatim.
struct Options {
  std::string tprime = "0";
  std::string nbar = "0";
  std::string r = kReferenceRatio;
  std::size_t k = 0;
  std::string method = "trace";
  std::string sign = "minus";
  std::string alpha_re = "0";
  std::string alpha_im = "0";
  std::string grid;
  std::string out;
  std::uint64_t seed = 0;
  std::uint64_t samples = 100000;
  std::string preset;
};

Real real_arg(const char* flag, const std::string& text) {
  try {
    const Real value = parse_real(text);
    if (!is_finite(value)) throw std::invalid_argument("not finite");
    return value;
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": expected a number, got '" + text + "'");
  }
}

CouplingParams coupling(const Options& o) {
  try {
    return CouplingParams(real_arg("--r", o.r), real_arg("--nbar", o.nbar));
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

DistillMethod method_arg(const std::string& text) {
  if (text == "trace") return DistillMethod::trace;
  if (text == "het") return DistillMethod::heterodyne;
  throw UsageError("--method must be 'trace' or 'het'");
}

EprSign sign_arg(const std::string& text) {
  if (text == "plus") return EprSign::plus;
  if (text == "minus") return EprSign::minus;
  throw UsageError("--sign must be 'plus' or 'minus'");
}

std::vector<Real> grid_arg(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw UsageError("--grid must look like lo:hi:n");
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw UsageError("--grid: bad point count '" + parts[2] + "'");
  }
  const Real lo = real_arg("--grid", parts[0]);
  const Real hi = real_arg("--grid", parts[1]);
  if (n < 2 || !(lo < hi)) throw UsageError("--grid needs lo < hi and n >= 2");
  return linear_grid(lo, hi, n);
}

DistillConfig config_from(const Options& o) {
  if (o.k > 2) throw UsageError("--k must be 0, 1 or 2");
  DistillConfig config;
  config.discarded_mode = o.k;
  config.method = method_arg(o.method);
  config.alpha = {real_arg("--alpha-re", o.alpha_re), real_arg("--alpha-im", o.alpha_im)};
  config.params = coupling(o);
  return config;
}

// Negative zero prints as "0".
std::string fmt(const Real& x, int digits = 17) { return x == 0 ? "0" : format_real(x, digits); }

// ---------------------------------------------------------------------------

int cmd_evolve(const Options& o) {
  const Real t = real_arg("--tprime", o.tprime);
  const CmCoefficients q = coefficients(t, coupling(o));
  std::cout << "Q0,Q1,Q2,T0,T1,T2\n"
            << fmt(q.q0, 12) << ',' << fmt(q.q1, 12) << ',' << fmt(q.q2, 12) << ',' << fmt(q.t0, 12) << ','
            << fmt(q.t1, 12) << ',' << fmt(q.t2, 12) << '\n';
  return 0;
}

RunManifest curve_manifest(const Options& o, const std::string& out_path, const std::string& grid_text) {
  RunManifest m;
  m.command = "curve";
  m.parameters = {{"k", std::to_string(o.k)}, {"method", o.method}, {"nbar", o.nbar},   {"r", o.r},
                  {"alpha_re", o.alpha_re},   {"alpha_im", o.alpha_im}, {"grid", grid_text}};
  if (!o.preset.empty()) m.parameters["preset"] = o.preset;
  m.seed = o.seed;
  m.tool_version = tool_version();
  m.output_path = out_path;
  return m;
}

void write_curve(const std::string& path, const FidelityCurve& curve, const RunManifest& manifest) {
  try {
    write_curve_files(path, curve, manifest);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

std::string describe_grid(const std::vector<Real>& grid) {
  return fmt(grid.front()) + ":" + fmt(grid.back()) + ":" + std::to_string(grid.size());
}

int cmd_curve(const Options& o) {
  if (o.out.empty()) throw UsageError("curve: --out is required");
  if (o.preset.empty()) {
    const DistillConfig config = config_from(o);
    const std::vector<Real> grid = o.grid.empty() ? default_grid() : grid_arg(o.grid);
    const FidelityCurve curve = fidelity_curve(config, grid);
    write_curve(o.out, curve, curve_manifest(o, o.out, o.grid.empty() ? describe_grid(grid) : o.grid));
    std::cout << o.out << '\n';
    return 0;
  }

  std::vector<CurveJob> jobs;
  std::vector<Real> grid;
  try {
    jobs = figure_preset(o.preset, real_arg("--r", o.r));
    grid = o.grid.empty() ? figure_grid(o.preset) : grid_arg(o.grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  if (ec) throw IoError("cannot create directory " + o.out + ": " + ec.message());
  for (const CurveJob& job : jobs) {
    const FidelityCurve curve = fidelity_curve(job.config, grid);
    const std::string path = (std::filesystem::path(o.out) / (job.name + ".csv")).string();
    Options echoed = o;
    echoed.k = job.config.discarded_mode;
    echoed.method = to_string(job.config.method);
    echoed.nbar = fmt(job.config.params.nbar);
    write_curve(path, curve, curve_manifest(echoed, path, o.grid.empty() ? describe_grid(grid) : o.grid));
    std::cout << path << '\n';
  }
  return 0;
}

int cmd_milestones(const Options& o) {
  const CouplingParams params = coupling(o);
  const Milestones m = milestones(params);
  DistillConfig config;
  config.discarded_mode = 2;
  config.params = params;
  const Extremum peak = maximize_fidelity(config, EprSign::minus, two_pi(), two_pi() + m.varsigma, 401);
  std::cout << "f2_max = " << fmt(m.f2_max) << '\n'
            << "t_max = " << fmt(m.t_max) << '\n'
            << "varsigma = " << fmt(m.varsigma) << '\n'
            << "f0_at_pi = " << fmt(m.f0_at_pi) << '\n'
            << "boundary_value = " << fmt(m.boundary_value) << '\n'
            << "f2_max_numeric = " << fmt(peak.value) << '\n'
            << "t_max_numeric = " << fmt(peak.t_prime) << '\n';
  if (abs(peak.value - m.f2_max) > Real(1e-6) || abs(peak.t_prime - m.t_max) > Real(1e-4))
    throw SelfTestFailure("numerical maximum disagrees with the closed form");
  return 0;
}

int cmd_teleclone(const Options& o) {
  const CouplingParams params = coupling(o);
  const Milestones m = milestones(params);
  const auto interval = telecloning_interval(params);
  if (!interval) {
    std::cout << "interval = none\n";
    return 0;
  }
  const TelecloneFidelities f = teleclone(m.t_max, params);
  std::cout << "interval_lo = " << fmt(interval->lo) << '\n'
            << "interval_hi = " << fmt(interval->hi) << '\n'
            << "width = " << fmt(interval->hi - interval->lo) << '\n'
            << "t_max = " << fmt(m.t_max) << '\n'
            << "f_bob0_at_t_max = " << fmt(f.f_bob0) << '\n'
            << "f_charlie2_at_t_max = " << fmt(f.f_charlie2) << '\n';
  return 0;
}

int cmd_mc_verify(const Options& o) {
  if (o.samples < 2) throw UsageError("--samples must be at least 2");
  std::optional<McCase> mc;
  if (!o.preset.empty()) {
    try {
      mc = mc_preset(o.preset);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    const DistillConfig config = config_from(o);
    const EprSign sign = sign_arg(o.sign);
    Channel channel = distill(real_arg("--tprime", o.tprime), config);
    const Amplitude delta = optimal_displacement(channel, sign);
    mc = McCase{"custom", std::move(channel), sign, delta, {}};
  }

  McConfig cfg;
  cfg.n_samples = o.samples;
  cfg.seed = o.seed;
  cfg.input_amplitude = mc->input;
  const McEstimate est = run_protocol(mc->channel, mc->sign, mc->delta, cfg);
  const Real analytic = fidelity_general(Matrix2::Identity() / 2, mc->channel, mc->sign, mc->delta).fidelity;
  const Real diff = est.fidelity - analytic;
  const Real z = est.fidelity_se > 0 ? diff / est.fidelity_se : (diff == 0 ? Real(0) : Real(INFINITY));

  std::cout << "preset = " << mc->name << '\n'
            << "sign = " << to_string(mc->sign) << '\n'
            << "samples = " << est.n_samples << '\n'
            << "seed = " << o.seed << '\n'
            << "analytic = " << fmt(analytic) << '\n'
            << "estimate = " << fmt(est.fidelity) << '\n'
            << "std_error = " << fmt(est.fidelity_se) << '\n'
            << "z = " << fmt(z, 6) << '\n';
  if (!(abs(z) <= 5)) throw SelfTestFailure("Monte Carlo estimate is more than 5 standard errors off");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-mode optomechanical teleportation network"};
  app.require_subcommand(1);
  Options o;

  const auto physics = [&](CLI::App* sub) {
    sub->add_option("--nbar", o.nbar, "Mean thermal phonon number")->capture_default_str();
    sub->add_option("--r", o.r, "Coupling ratio omega0 / Omega_m (> 1)")->capture_default_str();
  };
  const auto channel = [&](CLI::App* sub) {
    physics(sub);
    sub->add_option("--k", o.k, "Discarded mode (0, 1 or 2)")->capture_default_str();
    sub->add_option("--method", o.method, "trace or het")->capture_default_str();
    sub->add_option("--alpha-re", o.alpha_re, "Heterodyne outcome, real part")->capture_default_str();
    sub->add_option("--alpha-im", o.alpha_im, "Heterodyne outcome, imaginary part")->capture_default_str();
  };

  CLI::App* evolve = app.add_subcommand("evolve", "Print Q0..Q2, T0..T2 at time t'");
  physics(evolve);
  evolve->add_option("--tprime", o.tprime, "Scaled time t'")->required();

  CLI::App* curve = app.add_subcommand("curve", "Write F+ and F- versus t' as CSV");
  channel(curve);
  curve->add_option("--grid", o.grid, "Time grid lo:hi:n");
  curve->add_option("--out", o.out, "CSV path, or output directory with --preset")->required();
  curve->add_option("--preset", o.preset, "fig3, fig4 or fig5");
  curve->add_option("--seed", o.seed, "Recorded in the manifest");

  CLI::App* ms = app.add_subcommand("milestones", "Closed-form milestones, checked numerically");
  physics(ms);

  CLI::App* tc = app.add_subcommand("teleclone", "Telecloning interval and receiver fidelities");
  physics(tc);

  CLI::App* mc = app.add_subcommand("mc-verify", "Monte Carlo check of the analytic fidelity");
  channel(mc);
  mc->add_option("--tprime", o.tprime, "Scaled time t' for a custom channel")->capture_default_str();
  mc->add_option("--sign", o.sign, "plus or minus (custom channel)")->capture_default_str();
  mc->add_option("--preset", o.preset, "vacuum, trace-k0-pi, het-k2-max, drift-optimal or drift-zero");
  mc->add_option("--samples", o.samples, "Number of samples")->capture_default_str();
  mc->add_option("--seed", o.seed, "RNG seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*evolve) return cmd_evolve(o);
    if (*curve) return cmd_curve(o);
    if (*ms) return cmd_milestones(o);
    if (*tc) return cmd_teleclone(o);
    if (*mc) return cmd_mc_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const SelfTestFailure& e) {
    std::cerr << "self-test failed: " << e.what() << '\n';
    return kExitSelfTest;
  } catch (const ConsistencyError& e) {
    std::cerr << "self-test failed: " << e.what() << '\n';
    return kExitSelfTest;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
