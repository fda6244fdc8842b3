#include "lzs/impulse.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lzs/adiabatic.hpp"
#include "lzs/errors.hpp"
#include "lzs/parallel.hpp"

namespace lzs {
namespace {

using Complex = std::complex<double>;

// Apply the passage at anticrossing k to (qubit, TLS k) in the diabatic frame.
// Transmission keeps the diabatic state with amplitude t; falling onto the
// lower adiabatic branch (qubit -> TLS going up, TLS -> qubit going down)
// picks up -r exp(i phi_S), and the opposite reflection -conj of that.
void apply_passage(Eigen::VectorXcd& state, std::size_t k, const LzGateParams& params, bool stokes, bool up) {
  const double t = std::sqrt(params.p_lz);
  const double r = std::sqrt(1.0 - params.p_lz);
  const Complex onto_lower = -r * std::polar(1.0, stokes ? params.stokes_phase : 0.0);
  const Complex onto_upper = -std::conj(onto_lower);
  const auto i = static_cast<Eigen::Index>(k);
  const Complex q = state(0);
  const Complex d = state(i);
  if (up) {
    state(0) = t * q + onto_upper * d;
    state(i) = onto_lower * q + t * d;
  } else {
    state(0) = t * q + onto_lower * d;
    state(i) = onto_upper * q + t * d;
  }
}

void apply_free_evolution(Eigen::VectorXcd& state, const std::vector<double>& phases) {
  for (std::size_t k = 0; k < phases.size(); ++k)
    state(static_cast<Eigen::Index>(k)) *= std::polar(1.0, -phases[k]);
}

}  // namespace

std::vector<double> state_phases(const SystemSpec& sys, const TrianglePulse& pulse, double t0, double t1,
                                 PhaseModel model) {
  return model == PhaseModel::Adiabatic ? adiabatic_state_phases(sys, pulse, t0, t1)
                                        : diabatic_state_phases(sys, pulse, t0, t1);
}

Eigen::VectorXcd cascade_evolve(const SystemSpec& sys, const TrianglePulse& pulse,
                                const ImpulseOptions& options) {
  const std::size_t m = traversed_count(sys, pulse);
  const std::vector<double> times = event_times(sys, pulse);
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sys.size() + 1));
  state(0) = 1.0;

  // times = {0, up_1..up_m, T/2, down_m..down_1, T}
  for (std::size_t e = 1; e < times.size(); ++e) {
    apply_free_evolution(state, state_phases(sys, pulse, times[e - 1], times[e], options.phase_model));
    if (e == times.size() - 1 || e == m + 1) continue;  // pulse end or peak
    const bool up = e <= m;
    const std::size_t k = up ? e : 2 * m + 2 - e;
    apply_passage(state, k, gate_params(sys, pulse, k), options.stokes, up);
  }
  return state;
}

std::vector<double> engine_path_phases(const SystemSpec& sys, const TrianglePulse& pulse,
                                       const ImpulseOptions& options) {
  const std::size_t m = traversed_count(sys, pulse);
  const std::vector<double> times = event_times(sys, pulse);
  std::vector<double> phases(m + 1, 0.0);
  for (std::size_t e = 1; e < times.size(); ++e) {
    const auto segment = state_phases(sys, pulse, times[e - 1], times[e], options.phase_model);
    // Segment e = [times[e-1], times[e]] lies inside [up_i, down_i] iff i < e and i <= 2m + 2 - e.
    const std::size_t inside = std::min(e, 2 * m + 3 - e);
    for (std::size_t i = 1; i <= m; ++i) phases[i - 1] += i < inside ? segment[i] : segment[0];
    phases[m] += segment[0];
  }
  if (options.stokes) {
    for (std::size_t i = 1; i <= m; ++i) phases[i - 1] -= 2.0 * gate_params(sys, pulse, i).stokes_phase;
  }
  return phases;
}

std::vector<PathDescriptor> path_amplitudes(const SystemSpec& sys, const TrianglePulse& pulse,
                                            const ImpulseOptions& options) {
  const std::vector<std::size_t> paths = existing_paths(sys, pulse);
  const std::vector<double> phases = engine_path_phases(sys, pulse, options);
  std::vector<PathDescriptor> out;
  out.reserve(paths.size());
  double through = 1.0;  // product of transmission amplitudes so far
  for (std::size_t j = 0; j + 1 < paths.size(); ++j) {
    const double p = gate_params(sys, pulse, paths[j]).p_lz;
    out.push_back({paths[j], through * std::sqrt(1.0 - p), phases[j]});
    through *= std::sqrt(p);
  }
  out.push_back({paths.back(), through, phases.back()});
  return out;
}

double return_probability(const SystemSpec& sys, const TrianglePulse& pulse, const ImpulseOptions& options) {
  const auto paths = path_amplitudes(sys, pulse, options);
  double direct = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const double wi = paths[i].amplitude * paths[i].amplitude;
    direct += wi * wi;
    for (std::size_t j = 0; j < i; ++j) {
      const double wj = paths[j].amplitude * paths[j].amplitude;
      cross += wi * wj * std::cos(paths[i].phase - paths[j].phase);
    }
  }
  return std::clamp(direct + 2.0 * cross, 0.0, 1.0);
}

double two_tls_probability(const SystemSpec& sys, const TrianglePulse& pulse, const ImpulseOptions& options) {
  if (sys.size() != 2) throw DomainError("two-TLS expression needs exactly two TLSs");
  if (traversed_count(sys, pulse) != 2) throw DomainError("both anticrossings must be traversed");

  const double p1 = gate_params(sys, pulse, 1).p_lz;
  const double p2 = gate_params(sys, pulse, 2).p_lz;
  // cos^2(theta_k) = 1 - P_LZ,k (reflection), sin^2(theta_k) = P_LZ,k.
  const double c1 = 1.0 - p1, s1 = p1;
  const double c2 = 1.0 - p2, s2 = p2;
  const auto phases = engine_path_phases(sys, pulse, options);
  const double phi_one = phases[0] - phases[1];
  const double phi_two = phases[1] - phases[2];

  const double value = c1 * c1 + s1 * s1 * c2 * c2 + s1 * s1 * s2 * s2 +
                       2.0 * s1 * c2 * c1 * std::cos(phi_one) +
                       2.0 * s1 * s1 * s2 * c2 * std::cos(phi_two) +
                       2.0 * s1 * s2 * c1 * std::cos(phi_one + phi_two);
  return std::clamp(value, 0.0, 1.0);
}

PatternGrid pattern_sweep(const SystemSpec& sys, const std::vector<double>& t_axis,
                          const std::vector<double>& a_axis, const ImpulseOptions& options,
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
    grid.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) =
        return_probability(sys, TrianglePulse(a_axis[a], t_axis[t]), options);
  });
  return grid;
}

}  // namespace lzs
