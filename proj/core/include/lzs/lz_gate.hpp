#pragma once

#include <Eigen/Core>

#include "lzs/model.hpp"

namespace lzs {

/// Parameters of one Landau-Zener passage, hbar = 1.
struct LzGateParams {
  double p_lz = 1.0;             // exp(-2 pi delta)
  double stokes_phase = 0.0;     // phi_S in [0, pi/4]
  double adiabatic_param = 0.0;  // delta = coupling^2 / sweep rate

  /// From coupling (half-gap) and sweep rate of the diabatic detuning.
  static LzGateParams from_sweep(double coupling, double sweep_rate);
};

/// exp(-2 pi coupling^2 / sweep_rate). Throws DomainError for sweep_rate <= 0
/// or a negative coupling.
double lz_probability(double coupling, double sweep_rate);

/// pi/4 + d (ln d - 1) + arg Gamma(1 - i d), continuous at d = 0.
double stokes_phase(double adiabatic_param);

/// The 2x2 passage unitary in the (upper, lower) adiabatic basis:
///   [ cos(theta/2) e^{-i phit}    i sin(theta/2)          ]
///   [ i sin(theta/2)              cos(theta/2) e^{+i phit} ]
/// with sin^2(theta/2) = P_LZ and phit = phi_S - pi/2.
Eigen::Matrix2cd lz_gate(const LzGateParams& params);

/// Sweep rate 2 s A / T seen at every anticrossing on either ramp.
double sweep_rate(const SystemSpec& sys, const TrianglePulse& pulse);

/// Gate parameters for anticrossing n (1-based) under this pulse.
LzGateParams gate_params(const SystemSpec& sys, const TrianglePulse& pulse, std::size_t n);

}  // namespace lzs
