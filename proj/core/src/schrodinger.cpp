#include "lzs/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "lzs/errors.hpp"
#include "lzs/parallel.hpp"

namespace lzs {
namespace {

using Complex = std::complex<double>;

// Midpoint exponential integrator for real symmetric Hamiltonians. `fill`
// writes H(t) into a real matrix of the fixed dimension. Starts from
// `initial`, or from basis state 0 when it is empty.
template <int Dim, typename Fill>
Propagation evolve(Eigen::Index dim, double t0, std::size_t steps, double h, Fill&& fill,
                   const Eigen::VectorXcd& initial = {}) {
  using RealMatrix = Eigen::Matrix<double, Dim, Dim>;
  using RealVector = Eigen::Matrix<double, Dim, 1>;
  using ComplexVector = Eigen::Matrix<Complex, Dim, 1>;

  RealMatrix hamiltonian;
  hamiltonian.resize(dim, dim);
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(dim);
  ComplexVector psi;
  psi.setZero(dim);
  if (initial.size() == dim)
    psi = initial;
  else
    psi(0) = 1.0;
  ComplexVector rotated;
  rotated.resize(dim);

  Propagation result;
  result.steps = steps;
  result.dt = h;
  for (std::size_t step = 0; step < steps; ++step) {
    const double t_mid = t0 + (static_cast<double>(step) + 0.5) * h;
    fill(t_mid, hamiltonian);
    if constexpr (Dim == 2 || Dim == 3)
      solver.computeDirect(hamiltonian, Eigen::ComputeEigenvectors);
    else
      solver.compute(hamiltonian, Eigen::ComputeEigenvectors);
    const RealMatrix& vectors = solver.eigenvectors();
    const RealVector& values = solver.eigenvalues();
    rotated.noalias() = vectors.transpose().template cast<Complex>() * psi;
    for (Eigen::Index k = 0; k < dim; ++k) rotated(k) *= std::polar(1.0, -values(k) * h);
    psi.noalias() = vectors.template cast<Complex>() * rotated;

    const double drift = std::abs(psi.norm() - 1.0);
    result.max_norm_drift = std::max(result.max_norm_drift, drift);
    if (drift > kNormTolerance)
      throw NumericalError("norm drift " + std::to_string(drift) + " exceeds tolerance at step " +
                           std::to_string(step) + " (t = " + std::to_string(t_mid) + " ns)");
  }
  result.state = Eigen::VectorXcd(psi);
  return result;
}

std::size_t even_step_count(double duration, double dt) {
  auto steps = static_cast<std::size_t>(std::ceil(duration / dt - 1e-12));
  steps = std::max<std::size_t>(steps, 2);
  if (steps % 2 != 0) ++steps;
  return steps;
}

template <int Dim>
Propagation propagate_fixed(const SystemSpec& sys, const TrianglePulse& pulse, std::size_t steps, double h) {
  const auto dim = static_cast<Eigen::Index>(sys.size() + 1);
  return evolve<Dim>(dim, 0.0, steps, h, [&](double t, Eigen::Matrix<double, Dim, Dim>& m) {
    m.setZero();
    m(0, 0) = sys.slope() * drive_value(pulse, std::min(t, pulse.width()));
    for (std::size_t k = 1; k <= sys.size(); ++k) {
      const auto i = static_cast<Eigen::Index>(k);
      m(i, i) = sys.tls_at(k).epsilon;
      m(0, i) = sys.tls_at(k).delta;
      m(i, 0) = sys.tls_at(k).delta;
    }
  });
}

}  // namespace

HamiltonianFrame build_hamiltonian(const SystemSpec& sys, const TrianglePulse& pulse, double t) {
  const auto dim = static_cast<Eigen::Index>(sys.size() + 1);
  HamiltonianFrame frame{Eigen::MatrixXcd::Zero(dim, dim)};
  frame.matrix(0, 0) = sys.slope() * drive_value(pulse, t);
  for (std::size_t k = 1; k <= sys.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    frame.matrix(i, i) = sys.tls_at(k).epsilon;
    frame.matrix(0, i) = sys.tls_at(k).delta;
    frame.matrix(i, 0) = sys.tls_at(k).delta;
  }
  return frame;
}

double energy_scale(const SystemSpec& sys, const TrianglePulse& pulse) {
  double scale = std::max(sys.tls().back().epsilon, peak_energy(sys, pulse));
  for (const Tls& level : sys.tls()) scale = std::max(scale, level.delta);
  return scale;
}

double DtPolicy::step_for(const SystemSpec& sys, const TrianglePulse& pulse) const {
  if (kind == Kind::Fixed) return fixed_dt;
  return std::min(phase_per_step / energy_scale(sys, pulse), pulse.width() / min_steps);
}

Propagation propagate_detailed(const SystemSpec& sys, const TrianglePulse& pulse, double dt) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  if (dt * energy_scale(sys, pulse) > kMaxStepPhase)
    throw ConfigError("time step " + std::to_string(dt) + " ns too coarse: dt * energy scale = " +
                      std::to_string(dt * energy_scale(sys, pulse)) + " rad exceeds " +
                      std::to_string(kMaxStepPhase));
  const std::size_t steps = even_step_count(pulse.width(), dt);
  const double h = pulse.width() / static_cast<double>(steps);
  switch (sys.size()) {
    case 1: return propagate_fixed<2>(sys, pulse, steps, h);
    case 2: return propagate_fixed<3>(sys, pulse, steps, h);
    case 3: return propagate_fixed<4>(sys, pulse, steps, h);
    default: return propagate_fixed<Eigen::Dynamic>(sys, pulse, steps, h);
  }
}

double single_passage_check(double coupling, double sweep_rate, double window) {
  if (!(sweep_rate > 0.0)) throw DomainError("sweep rate must be positive");
  if (coupling < 0.0) throw DomainError("coupling must be non-negative");
  if (!(window > 0.0) || window < 20.0 * coupling)
    throw ConfigError("sweep window must be positive and at least 20 x coupling");
  if (coupling == 0.0) return 1.0;

  // Start and read out in the eigenstate that continues the starting diabatic
  // level. At finite detuning it differs from the bare level by O(coupling /
  // window), which would otherwise show up as a truncation ripple.
  auto continuing_state = [&](double detuning) {
    Eigen::Matrix2d m;
    m << detuning, coupling, coupling, 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
    Eigen::Index best;
    es.eigenvectors().row(0).cwiseAbs().maxCoeff(&best);
    return Eigen::Vector2cd(es.eigenvectors().col(best).cast<Complex>());
  };
  const double t_end = window / sweep_rate;
  const double dt = 0.02 / std::max(window, coupling);
  const std::size_t steps = even_step_count(2.0 * t_end, dt);
  const double h = 2.0 * t_end / static_cast<double>(steps);
  const Propagation run = evolve<2>(
      2, -t_end, steps, h, [&](double t, Eigen::Matrix2d& m) { m << sweep_rate * t, coupling, coupling, 0.0; },
      Eigen::VectorXcd(continuing_state(-window)));
  return std::norm(continuing_state(window).dot(run.state));
}

PatternGrid pattern_sweep_numeric(const SystemSpec& sys, const std::vector<double>& t_axis,
                                  const std::vector<double>& a_axis, const DtPolicy& policy,
                                  std::size_t workers) {
  require_monotone(t_axis, "t_axis");
  require_monotone(a_axis, "a_axis");
  PatternGrid grid;
  grid.t_axis = t_axis;
  grid.a_axis = a_axis;
  grid.values.resize(static_cast<Eigen::Index>(a_axis.size()), static_cast<Eigen::Index>(t_axis.size()));
  const std::size_t cols = t_axis.size();
  parallel_for(a_axis.size() * cols, workers, [&](std::size_t cell) {
    const std::size_t a = cell / cols;
    const std::size_t t = cell % cols;
    const TrianglePulse pulse(a_axis[a], t_axis[t]);
    const Eigen::VectorXcd psi = propagate(sys, pulse, policy.step_for(sys, pulse));
    grid.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) =
        std::clamp(std::norm(psi(0)), 0.0, 1.0);
  });
  return grid;
}

Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> turning_point_mask(const SystemSpec& sys,
                                                                      const PatternGrid& grid,
                                                                      double fraction) {
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask(grid.values.rows(), grid.values.cols());
  const double highest = sys.tls().back().epsilon;
  for (Eigen::Index a = 0; a < mask.rows(); ++a) {
    const bool keep = highest < fraction * sys.slope() * grid.a_axis[static_cast<std::size_t>(a)];
    mask.row(a).setConstant(keep);
  }
  return mask;
}

double masked_pearson(const PatternGrid& a, const PatternGrid& b,
                      const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& mask) {
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols() ||
      mask.rows() != a.values.rows() || mask.cols() != a.values.cols())
    throw DomainError("grids and mask must share one shape");
  double n = 0.0, sa = 0.0, sb = 0.0;
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    if (!mask.data()[i]) continue;
    n += 1.0;
    sa += a.values.data()[i];
    sb += b.values.data()[i];
  }
  if (n < 2.0) throw DomainError("mask selects fewer than two cells");
  const double ma = sa / n, mb = sb / n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    if (!mask.data()[i]) continue;
    const double da = a.values.data()[i] - ma;
    const double db = b.values.data()[i] - mb;
    cov += da * db;
    va += da * da;
    vb += db * db;
  }
  if (va == 0.0 || vb == 0.0) throw DomainError("correlation undefined for a constant pattern");
  return cov / std::sqrt(va * vb);
}

}  // namespace lzs
