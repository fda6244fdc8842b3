#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "lzs/lz_gate.hpp"
#include "lzs/model.hpp"
#include "lzs/pattern.hpp"

namespace lzs {

/// Energies integrated along the paths between passages.
enum class PhaseModel {
  Diabatic,   // bare levels, closed form
  Adiabatic,  // instantaneous eigenvalues, includes level repulsion
};

struct ImpulseOptions {
  /// Include the Stokes phase of each reflection.
  bool stokes = true;
  PhaseModel phase_model = PhaseModel::Adiabatic;

  friend bool operator==(const ImpulseOptions&, const ImpulseOptions&) = default;
};

/// One interference path: reflects at anticrossing `index` (1..N), or
/// transmits through everything when index == N + 1.
struct PathDescriptor {
  std::size_t index = 0;
  double amplitude = 0.0;  // A_out, in [0, 1]
  double phase = 0.0;      // contributes A^2 exp(-i phase) to the return amplitude
};

/// Transfer-matrix reference: the double passage as an ordered product of
/// embedded passage gates and diagonal phase propagators. Basis order is
/// (qubit excited, TLS 1, ..., TLS N); starts in the qubit state.
Eigen::VectorXcd cascade_evolve(const SystemSpec& sys, const TrianglePulse& pulse,
                                const ImpulseOptions& options = {});

/// Phase accumulated by each diabatic state over [t0, t1] under the chosen model.
std::vector<double> state_phases(const SystemSpec& sys, const TrianglePulse& pulse, double t0, double t1,
                                 PhaseModel model);

/// Path phases under the engine options, in the order of existing_paths().
/// Each path contributes A^2 exp(-i phase) to the return amplitude. With the
/// diabatic model this equals path_phases().
std::vector<double> engine_path_phases(const SystemSpec& sys, const TrianglePulse& pulse,
                                       const ImpulseOptions& options = {});

/// Output amplitudes for the reached anticrossings plus the transmitted path,
/// in the order of existing_paths().
std::vector<PathDescriptor> path_amplitudes(const SystemSpec& sys, const TrianglePulse& pulse,
                                            const ImpulseOptions& options = {});

/// Probability of finding the qubit excited after one pulse, summed pairwise
/// over interfering paths.
double return_probability(const SystemSpec& sys, const TrianglePulse& pulse,
                          const ImpulseOptions& options = {});

/// Explicit six-term expression for two TLSs, both anticrossings reached.
double two_tls_probability(const SystemSpec& sys, const TrianglePulse& pulse,
                           const ImpulseOptions& options = {});

PatternGrid pattern_sweep(const SystemSpec& sys, const std::vector<double>& t_axis,
                          const std::vector<double>& a_axis, const ImpulseOptions& options = {},
                          std::size_t workers = 1);

}  // namespace lzs
