#pragma once

#include <vector>

#include "lzs/model.hpp"

namespace lzs {

/// Integral over [t0, t1] of the instantaneous eigenvalue that continues each
/// diabatic state, basis order (qubit, TLS 1, ..., TLS N). The interval must
/// not contain a crossing or the pulse peak in its interior; the eigenvalue is
/// picked by the state's rank among the diabatic energies on the interval.
/// Integrated as diabatic closed form plus a graded Gauss-Legendre quadrature
/// of the level-repulsion shift.
std::vector<double> adiabatic_state_phases(const SystemSpec& sys, const TrianglePulse& pulse, double t0,
                                           double t1);

}  // namespace lzs
