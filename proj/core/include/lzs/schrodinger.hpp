#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "lzs/model.hpp"
#include "lzs/pattern.hpp"

namespace lzs {

/// Instantaneous Hamiltonian in the diabatic basis
/// (|1 g..g>, |0 e1 g..>, ..., |0 g.. eN>), rad/ns.
struct HamiltonianFrame {
  Eigen::MatrixXcd matrix;
};

HamiltonianFrame build_hamiltonian(const SystemSpec& sys, const TrianglePulse& pulse, double t);

/// Largest of eps_N, s*A and max delta; the step-size precondition is
/// dt * energy_scale <= kMaxStepPhase.
double energy_scale(const SystemSpec& sys, const TrianglePulse& pulse);

inline constexpr double kMaxStepPhase = 0.1;
inline constexpr double kNormTolerance = 1e-8;

/// How the numeric engine picks its step for a given cell.
struct DtPolicy {
  enum class Kind { Automatic, Fixed };
  Kind kind = Kind::Automatic;
  double phase_per_step = 0.02;    // automatic: dt <= phase_per_step / energy_scale
  double min_steps = 2000;         // automatic: dt <= T / min_steps
  double fixed_dt = 0.0;           // ns, for Kind::Fixed

  double step_for(const SystemSpec& sys, const TrianglePulse& pulse) const;

  friend bool operator==(const DtPolicy&, const DtPolicy&) = default;
};

struct Propagation {
  Eigen::VectorXcd state;
  std::size_t steps = 0;
  double dt = 0.0;              // actual step, T / steps
  double max_norm_drift = 0.0;  // max over steps of | ||psi|| - 1 |
};

/// Propagates |1 g..g> over one pulse with midpoint exponential steps,
/// exp(-i H(t_mid) h) from a Hermitian eigendecomposition. `dt` is an upper
/// bound: the pulse is cut into an even number of equal steps so the peak
/// falls on a step boundary. Throws ConfigError when dt violates the step
/// precondition and NumericalError when the norm drifts past kNormTolerance.
Propagation propagate_detailed(const SystemSpec& sys, const TrianglePulse& pulse, double dt);

inline Eigen::VectorXcd propagate(const SystemSpec& sys, const TrianglePulse& pulse, double dt) {
  return propagate_detailed(sys, pulse, dt).state;
}

/// Single two-level passage with detuning swept linearly from -window to
/// +window at `sweep_rate`; returns the population that stays on the starting
/// diabatic level, read in the eigenstate continuing that level at each edge.
/// Requires window >= 20 * coupling.
double single_passage_check(double coupling, double sweep_rate, double window);

PatternGrid pattern_sweep_numeric(const SystemSpec& sys, const std::vector<double>& t_axis,
                                  const std::vector<double>& a_axis, const DtPolicy& policy = {},
                                  std::size_t workers = 1);

/// Cells where every anticrossing lies below fraction * s * A, i.e. away from
/// the turning point where the asymptotic passage probability fails.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> turning_point_mask(const SystemSpec& sys,
                                                                      const PatternGrid& grid,
                                                                      double fraction = 0.9);

/// Pearson correlation of two same-shape grids over the masked cells.
/// Throws DomainError if fewer than two cells are selected or a side is constant.
double masked_pearson(const PatternGrid& a, const PatternGrid& b,
                      const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& mask);

}  // namespace lzs
