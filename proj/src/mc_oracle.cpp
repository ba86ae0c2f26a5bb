#include "cvnet/mc_oracle.hpp"

#include "cvnet/parallel.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace cvnet {

namespace {

// Sample counts beyond 2^53 can no longer be tallied exactly in the
// double-precision bookkeeping used by callers of the estimate.
constexpr std::uint64_t kMaxSamples = std::uint64_t{1} << 53;

using Matrix26 = Eigen::Matrix<Real, 2, 6>;
using Matrix6 = Eigen::Matrix<Real, 6, 6>;
using Vector6 = Eigen::Matrix<Real, 6, 1>;

struct ShardSums {
  Real f{0};
  Real f2{0};
  Vector2 m = Vector2::Zero();
  Matrix2 mm = Matrix2::Zero();
  std::uint64_t count = 0;
};

/// Square-root factor F with F F^T = cov; Cholesky first, eigendecomposition
/// when the covariance is too close to singular for it.
Matrix2 sampling_factor(const Matrix2& cov) {
  Eigen::LLT<Matrix2> llt(cov);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Matrix2> es(cov);
  Vector2 roots;
  for (int i = 0; i < 2; ++i) roots(i) = sqrt(std::max(Real(0), es.eigenvalues()(i)));
  return es.eigenvectors() * roots.asDiagonal();
}

}  // namespace

std::pair<double, double> box_muller(SplitMix64& rng) {
  const double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

McEstimate run_protocol(const Channel& channel, EprSign sign, const Amplitude& delta, const McConfig& cfg) {
  if (cfg.n_samples < 2) throw std::invalid_argument("run_protocol: need at least 2 samples");
  if (cfg.n_samples > kMaxSamples) throw std::overflow_error("run_protocol: too many samples for the accumulators");
  if (!is_finite(delta) || !is_finite(cfg.input_amplitude))
    throw std::invalid_argument("run_protocol: non-finite displacement or input amplitude");

  // Joint quadratures (X_in, P_in, X_i, P_i, X_j, P_j).
  const Matrix2 input_cm = Matrix2::Identity() / 2;
  const Vector2 input_mean = quadratures_of(cfg.input_amplitude);
  Matrix6 sigma = Matrix6::Zero();
  sigma.block<2, 2>(0, 0) = input_cm;
  sigma.block<4, 4>(2, 2) = channel.cm();
  Vector6 mu;
  mu << input_mean, channel.mean();

  // Beam splitter outputs x+- = (X_i +- X_in)/sqrt2, p+- = (P_i +- P_in)/sqrt2.
  // EPR+ reads (x+, p-); EPR- reads (x-, p+).
  const Real h = 1 / sqrt2();
  const Real in_x = sign == EprSign::plus ? h : -h;
  Matrix26 measure = Matrix26::Zero();
  measure(0, 0) = in_x;
  measure(0, 2) = h;
  measure(1, 1) = -in_x;
  measure(1, 3) = h;
  Matrix26 bob = Matrix26::Zero();
  bob(0, 4) = 1;
  bob(1, 5) = 1;

  const Matrix2 cov_mm = measure * sigma * measure.transpose();
  const Matrix2 cov_bm = bob * sigma * measure.transpose();
  const Matrix2 cov_bb = bob * sigma * bob.transpose();
  const Vector2 mean_m = measure * mu;
  const Vector2 mean_b = bob * mu;

  const Matrix2 gain = cov_bm * cov_mm.inverse();
  Matrix2 cond_cm = cov_bb - gain * cov_bm.transpose();
  cond_cm = (cond_cm + cond_cm.transpose()) / 2;
  const Matrix2 factor = sampling_factor(cov_mm);

  // Alice's result as the amplitude gamma' Bob adds to his mode:
  // EPR+: x+ - i p-,  EPR-: -x- + i p+.
  Matrix2 to_gamma = Matrix2::Identity();
  if (sign == EprSign::plus)
    to_gamma(1, 1) = -1;
  else
    to_gamma(0, 0) = -1;
  const Real root2 = sqrt2();
  const Vector2 shift = root2 * Vector2(delta.re, delta.im);

  // Overlap of the pure coherent input with each conditional Gaussian output.
  const Matrix2 overlap = input_cm + cond_cm;
  const Matrix2 overlap_inv = overlap.inverse();
  const Real overlap_norm = 1 / sqrt(overlap.determinant());

  const std::uint64_t n_shards = (cfg.n_samples + kShardSize - 1) / kShardSize;
  std::vector<ShardSums> shards(n_shards);
  parallel_for(n_shards, [&](std::size_t s) {
    SplitMix64 rng(cfg.seed ^ static_cast<std::uint64_t>(s));
    const std::uint64_t begin = s * kShardSize;
    const std::uint64_t end = std::min(cfg.n_samples, begin + kShardSize);
    ShardSums acc;
    for (std::uint64_t n = begin; n < end; ++n) {
      const auto [z1, z2] = box_muller(rng);
      const Vector2 noise = factor * Vector2(Real(z1), Real(z2));
      const Vector2 outcome = mean_m + noise;
      const Vector2 out_mean = mean_b + gain * noise + root2 * (to_gamma * outcome) + shift;
      const Vector2 diff = out_mean - input_mean;
      const Real f = overlap_norm * exp(-diff.dot(overlap_inv * diff) / 2);
      acc.f += f;
      acc.f2 += f * f;
      acc.m += out_mean;
      acc.mm += out_mean * out_mean.transpose();
      ++acc.count;
    }
    shards[s] = std::move(acc);
  });

  ShardSums total;
  for (const ShardSums& s : shards) {
    total.f += s.f;
    total.f2 += s.f2;
    total.m += s.m;
    total.mm += s.mm;
    total.count += s.count;
  }

  const Real n = Real(total.count);
  McEstimate out;
  out.n_samples = total.count;
  out.fidelity = total.f / n;
  const Real var_f = std::max(Real(0), (total.f2 - n * out.fidelity * out.fidelity) / (n - 1));
  out.fidelity_se = sqrt(var_f / n);
  out.output_mean = total.m / n;
  const Matrix2 sample_cov = (total.mm - n * out.output_mean * out.output_mean.transpose()) / (n - 1);
  for (int a = 0; a < 2; ++a) {
    out.output_mean_se(a) = sqrt(std::max(Real(0), sample_cov(a, a)) / n);
    for (int b = 0; b < 2; ++b) {
      const Real v = sample_cov(a, a) * sample_cov(b, b) + sample_cov(a, b) * sample_cov(a, b);
      out.output_cm_se(a, b) = sqrt(std::max(Real(0), v) / n);
    }
  }
  out.output_cm = cond_cm + sample_cov;
  return out;
}

}  // namespace cvnet
