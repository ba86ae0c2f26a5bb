#include "cvnet/dynamics.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <array>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace cvnet {
namespace {

using test::reference_r;
using test::to_d;

// ---------------------------------------------------------------------------
// Independent oracles, written directly from the Heisenberg equations in
// plain floating point.

template <typename T>
using M6 = std::array<std::array<T, 6>, 6>;

template <typename T>
M6<T> oracle_generator(T r) {
  const T root = std::sqrt((r - 1) * (r + 1));
  const T c = 1 / root, s = r / root;
  M6<T> g{};
  g[0][2] = c;
  g[0][4] = -s;
  g[1][3] = -c;
  g[1][5] = -s;
  g[2][0] = c;
  g[3][1] = -c;
  g[4][0] = s;
  g[5][1] = s;
  return g;
}

// dV/dt = G V + V G^T
template <typename T>
M6<T> lyapunov_rate(const M6<T>& g, const M6<T>& v) {
  M6<T> out{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      T acc = 0;
      for (int k = 0; k < 6; ++k) acc += g[i][k] * v[k][j] + v[i][k] * g[j][k];
      out[i][j] = acc;
    }
  return out;
}

template <typename T>
M6<T> rk4_covariance(T r, T nbar, T t_end, int steps) {
  const M6<T> g = oracle_generator(r);
  M6<T> v{};
  for (int i = 0; i < 6; ++i) v[i][i] = T(0.5);
  v[0][0] = v[1][1] = nbar + T(0.5);
  const T h = t_end / steps;
  auto axpy = [](const M6<T>& a, const M6<T>& b, T w) {
    M6<T> out;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) out[i][j] = a[i][j] + w * b[i][j];
    return out;
  };
  for (int n = 0; n < steps; ++n) {
    const M6<T> k1 = lyapunov_rate(g, v);
    const M6<T> k2 = lyapunov_rate(g, axpy(v, k1, h / 2));
    const M6<T> k3 = lyapunov_rate(g, axpy(v, k2, h / 2));
    const M6<T> k4 = lyapunov_rate(g, axpy(v, k3, h));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) v[i][j] += h / 6 * (k1[i][j] + 2 * k2[i][j] + 2 * k3[i][j] + k4[i][j]);
  }
  return v;
}

// Truncated Fock space of three modes, `dim` levels each, evolved under
// H = -i chi (a1 a0 - a1^+ a0^+) - i theta (a2 a0^+ - a2^+ a0).
class FockOracle {
 public:
  using C = std::complex<double>;

  FockOracle(int dim, double chi, double theta) : dim_(dim), chi_(chi), theta_(theta) {}

  std::size_t index(int n0, int n1, int n2) const {
    return static_cast<std::size_t>((n0 * dim_ + n1) * dim_ + n2);
  }
  std::size_t size() const { return static_cast<std::size_t>(dim_ * dim_ * dim_); }

  // Product of coherent states (truncated and renormalized).
  std::vector<C> coherent(const std::array<C, 3>& beta) const {
    std::vector<std::vector<C>> single(3, std::vector<C>(dim_));
    for (int m = 0; m < 3; ++m) {
      C amp = std::exp(-std::norm(beta[m]) / 2);
      for (int n = 0; n < dim_; ++n) {
        single[m][n] = amp;
        amp *= beta[m] / std::sqrt(double(n + 1));
      }
    }
    std::vector<C> psi(size());
    double norm = 0;
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        for (int c = 0; c < dim_; ++c) {
          psi[index(a, b, c)] = single[0][a] * single[1][b] * single[2][c];
          norm += std::norm(psi[index(a, b, c)]);
        }
    for (C& x : psi) x /= std::sqrt(norm);
    return psi;
  }

  // -i H psi
  std::vector<C> rate(const std::vector<C>& psi) const {
    std::vector<C> out(size());
    const C i(0, 1);
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        for (int c = 0; c < dim_; ++c) {
          const C x = psi[index(a, b, c)];
          if (x == C(0)) continue;
          // a1 a0 |a,b,c> = sqrt(a b) |a-1,b-1,c>
          if (a > 0 && b > 0) out[index(a - 1, b - 1, c)] += -i * (-i * chi_) * std::sqrt(double(a * b)) * x;
          // -a1^+ a0^+
          if (a + 1 < dim_ && b + 1 < dim_)
            out[index(a + 1, b + 1, c)] += -i * (i * chi_) * std::sqrt(double((a + 1) * (b + 1))) * x;
          // a2 a0^+
          if (c > 0 && a + 1 < dim_) out[index(a + 1, b, c - 1)] += -i * (-i * theta_) * std::sqrt(double(c * (a + 1))) * x;
          // -a2^+ a0
          if (a > 0 && c + 1 < dim_) out[index(a - 1, b, c + 1)] += -i * (i * theta_) * std::sqrt(double(a * (c + 1))) * x;
        }
    return out;
  }

  std::vector<C> evolve(std::vector<C> psi, double t, int steps) const {
    const double h = t / steps;
    auto add = [](const std::vector<C>& a, const std::vector<C>& b, double w) {
      std::vector<C> out(a.size());
      for (std::size_t n = 0; n < a.size(); ++n) out[n] = a[n] + w * b[n];
      return out;
    };
    for (int s = 0; s < steps; ++s) {
      const auto k1 = rate(psi);
      const auto k2 = rate(add(psi, k1, h / 2));
      const auto k3 = rate(add(psi, k2, h / 2));
      const auto k4 = rate(add(psi, k3, h));
      for (std::size_t n = 0; n < psi.size(); ++n) psi[n] += h / 6 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
    }
    return psi;
  }

  // Applies a_m to psi.
  std::vector<C> lower(const std::vector<C>& psi, int m) const {
    std::vector<C> out(size());
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        for (int c = 0; c < dim_; ++c) {
          std::array<int, 3> n{a, b, c};
          if (n[m] == 0) continue;
          const double f = std::sqrt(double(n[m]));
          --n[m];
          out[index(n[0], n[1], n[2])] += f * psi[index(a, b, c)];
        }
    return out;
  }

  static C inner(const std::vector<C>& x, const std::vector<C>& y) {
    C acc;
    for (std::size_t n = 0; n < x.size(); ++n) acc += std::conj(x[n]) * y[n];
    return acc;
  }

  // Quadrature means and symmetrized covariance from <a_m>, <a_m a_n>, <a_m^+ a_n>.
  void moments(const std::vector<C>& psi, std::array<double, 6>& mean, M6<double>& cm) const {
    std::array<std::vector<C>, 3> ap;
    for (int m = 0; m < 3; ++m) ap[m] = lower(psi, m);
    std::array<C, 3> a1;
    std::array<std::array<C, 3>, 3> aa, ada;
    for (int m = 0; m < 3; ++m) {
      a1[m] = inner(psi, ap[m]);
      for (int n = 0; n < 3; ++n) {
        aa[m][n] = inner(psi, lower(ap[n], m));  // <a_m a_n>
        ada[m][n] = inner(ap[m], ap[n]);         // <a_m^+ a_n>
      }
    }
    const double rt2 = std::sqrt(2.0);
    for (int m = 0; m < 3; ++m) {
      mean[2 * m] = rt2 * a1[m].real();
      mean[2 * m + 1] = rt2 * a1[m].imag();
    }
    // X = (a + a^+)/sqrt2, P = (a - a^+)/(i sqrt2).
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        const C amn = aa[m][n];
        const C admn = ada[m][n];
        const C delta = m == n ? 1.0 : 0.0;
        // Symmetrized second moments.
        const double xx = 0.5 * (2 * amn.real() + 2 * admn.real() + delta.real());
        const double pp = 0.5 * (-2 * amn.real() + 2 * admn.real() + delta.real());
        const double xp = amn.imag() + admn.imag();  // (1/2)<{X_m, P_n}> for m != n; m == n too
        cm[2 * m][2 * n] = xx - mean[2 * m] * mean[2 * n];
        cm[2 * m + 1][2 * n + 1] = pp - mean[2 * m + 1] * mean[2 * n + 1];
        cm[2 * m][2 * n + 1] = xp - mean[2 * m] * mean[2 * n + 1];
      }
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) cm[2 * m + 1][2 * n] = cm[2 * n][2 * m + 1];
  }

 private:
  int dim_;
  double chi_;
  double theta_;
};

// ---------------------------------------------------------------------------

TEST(Dynamics, GeneratorSatisfiesCubicIdentity) {
  for (const Real r : {Real(1.1), Real(2), reference_r()}) {
    const Matrix g = generator(r);
    const Matrix g3 = g * g * g + g;
    EXPECT_LT(to_d(g3.cwiseAbs().maxCoeff() / std::max(Real(1), Real(g.cwiseAbs().maxCoeff()))), 1e-40);
  }
}

TEST(Dynamics, RejectsInvalidParameters) {
  EXPECT_THROW(CouplingParams(Real(1), Real(0)), std::domain_error);
  EXPECT_THROW(CouplingParams(Real(0.5), Real(0)), std::domain_error);
  EXPECT_THROW(CouplingParams(Real(2), Real(-1)), std::domain_error);
  EXPECT_THROW(transfer_matrix(Real(INFINITY), Real(2)), std::domain_error);
  EXPECT_THROW(coupling_ratio(Real(1), Real(2)), std::domain_error);
  EXPECT_THROW(coupling_ratio(Real(2), Real(0)), std::domain_error);
}

TEST(Dynamics, CouplingRatioFromFrequencies) {
  EXPECT_NEAR(to_d(coupling_ratio(Real(3), Real(1))), std::sqrt(2.0), 1e-15);
}

TEST(Dynamics, InitialStateAtZeroTime) {
  const CmCoefficients q = coefficients(Real(0), CouplingParams(Real(1.5), Real(3)));
  EXPECT_EQ(to_d(q.q0), 3.5);
  EXPECT_EQ(to_d(q.q1), 0.5);
  EXPECT_EQ(to_d(q.q2), 0.5);
  EXPECT_EQ(to_d(q.t0), 0.0);
  EXPECT_EQ(to_d(q.t1), 0.0);
  EXPECT_EQ(to_d(q.t2), 0.0);
}

TEST(Dynamics, MatchesRk4CovarianceOdeModerateRatio) {
  const double r = 1.5, nbar = 2.0, t = M_PI / 2;
  const M6<double> oracle = rk4_covariance(r, nbar, t, 20000);
  const Matrix v = evolve(Real(t), CouplingParams(Real(r), Real(nbar))).cm();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) EXPECT_NEAR(to_d(v(i, j)), oracle[i][j], 1e-8) << i << "," << j;
}

TEST(Dynamics, MatchesRk4CovarianceOdeNearUnitRatio) {
  // Entries reach ~c^4 ~ 1e13 here; compare relative to the largest one.
  using L = long double;
  const L r = 1.0L + 2.5e-7L;
  const L t = 1.0L;
  const M6<L> oracle = rk4_covariance<L>(r, 0.0L, t, 200000);
  const Matrix v = evolve(Real(1), CouplingParams(reference_r(), Real(0))).cm();
  L scale = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) scale = std::max(scale, std::fabs(oracle[i][j]));
  ASSERT_GT(scale, 1e5L);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const L got = static_cast<L>(to_d(v(i, j)));
      EXPECT_LE(std::fabs(got - oracle[i][j]) / scale, 1e-7L) << i << "," << j;
    }
}

TEST(Dynamics, MatchesTruncatedFockEvolution) {
  // chi = 1, theta = sqrt2 gives r = sqrt2 and t' = t.
  const double t = 0.25;
  const FockOracle fock(10, 1.0, std::sqrt(2.0));
  const std::array<FockOracle::C, 3> beta{{{0.2, -0.1}, {0.15, 0.05}, {-0.1, 0.2}}};
  const auto psi = fock.evolve(fock.coherent(beta), t, 500);
  std::array<double, 6> mean{};
  M6<double> cm{};
  fock.moments(psi, mean, cm);

  Vector mean0(6);
  for (int m = 0; m < 3; ++m) {
    mean0(2 * m) = sqrt2() * Real(beta[m].real());
    mean0(2 * m + 1) = sqrt2() * Real(beta[m].imag());
  }
  const GaussianState initial(mean0, Matrix::Identity(6, 6) / 2);
  const GaussianState out = transfer_matrix(Real(t), sqrt2()).apply(initial);
  for (int i = 0; i < 6; ++i) {
    EXPECT_NEAR(to_d(out.mean()(i)), mean[i], 1e-6) << "mean " << i;
    for (int j = 0; j < 6; ++j) EXPECT_NEAR(to_d(out.cm()(i, j)), cm[i][j], 1e-6) << i << "," << j;
  }
}

TEST(Dynamics, TransferMatrixIsSymplectic) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> time(-20, 20), excess(1e-6, 3);
  const Matrix omega = SymplecticForm(3).matrix();
  for (int n = 0; n < 100; ++n) {
    const Real r = 1 + Real(excess(rng));
    const Matrix s = transfer_matrix(Real(time(rng)), r).matrix();
    const Matrix defect = s * omega * s.transpose() - omega;
    const Real scale = std::max(Real(1), Real(s.cwiseAbs().maxCoeff()));
    EXPECT_LT(to_d(defect.cwiseAbs().maxCoeff() / (scale * scale)), 1e-30);
  }
}

TEST(Dynamics, PeriodicWithPeriodTwoPi) {
  const CouplingParams params(reference_r(), Real(1000));
  for (const Real t : {Real(0.3), Real(2), pi()}) {
    const Matrix a = evolve(t, params).cm();
    const Matrix b = evolve(t + two_pi(), params).cm();
    const Matrix c = evolve(t + 3 * two_pi(), params).cm();
    const Real scale = a.cwiseAbs().maxCoeff();
    EXPECT_LT(to_d((a - b).cwiseAbs().maxCoeff() / scale), 1e-30);
    EXPECT_LT(to_d((a - c).cwiseAbs().maxCoeff() / scale), 1e-30);
  }
  const Matrix full = evolve(two_pi(), params).cm();
  EXPECT_LT(to_d((full - make_initial_state(Real(1000)).cm()).cwiseAbs().maxCoeff()), 1e-30);
}

TEST(Dynamics, EvolvedCovarianceHasThreeModePattern) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> time(0, 7), excess(1e-7, 2), occ(0, 100);
  for (int n = 0; n < 50; ++n) {
    const Real t(time(rng));
    const CouplingParams params(1 + Real(excess(rng)), Real(occ(rng)));
    const GaussianState s = evolve(t, params);
    const CmCoefficients q = coefficients(s);
    const Matrix rebuilt = assemble_cm(q);
    EXPECT_LT(to_d((rebuilt - s.cm()).cwiseAbs().maxCoeff()), 1e-20);
  }
}

TEST(Dynamics, SymplecticEigenvaluesPreserved) {
  for (const double nbar : {0.0, 1.0, 1e3}) {
    for (const Real t : {Real(0.5), pi(), Real(6)}) {
      std::vector<Real> nu = symplectic_eigenvalues(evolve(t, CouplingParams(reference_r(), Real(nbar))));
      std::sort(nu.begin(), nu.end());
      EXPECT_NEAR(to_d(nu[0]), 0.5, 1e-8);
      EXPECT_NEAR(to_d(nu[1]), 0.5, 1e-8);
      EXPECT_NEAR(to_d(nu[2]), nbar + 0.5, 1e-8);
    }
  }
}

TEST(Dynamics, PatternViolationIsReported) {
  Matrix v = Matrix::Identity(6, 6) / 2;
  v(0, 0) = v(1, 1) = v(2, 2) = v(3, 3) = 2;
  v(0, 3) = v(3, 0) = Real(0.1);  // breaks the pattern
  EXPECT_THROW(coefficients(GaussianState::zero_mean(v)), ConsistencyError);
}

}  // namespace
}  // namespace cvnet
