#include "lzs/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lzs/errors.hpp"
#include "lzs/lz_gate.hpp"

namespace lzs {

SystemSpec::SystemSpec(std::vector<Tls> tls, double slope) : tls_(std::move(tls)), slope_(slope) {
  if (tls_.empty()) throw DomainError("system needs at least one TLS");
  if (!(std::isfinite(slope_) && slope_ > 0.0)) throw DomainError("slope must be positive and finite");
  double previous = 0.0;
  for (std::size_t i = 0; i < tls_.size(); ++i) {
    const Tls& level = tls_[i];
    if (!std::isfinite(level.epsilon) || !std::isfinite(level.delta))
      throw DomainError("TLS " + std::to_string(i + 1) + " has a non-finite parameter");
    if (level.delta < 0.0) throw DomainError("TLS " + std::to_string(i + 1) + " has negative coupling");
    if (!(level.epsilon > previous))
      throw DomainError("TLS energies must satisfy 0 < eps_1 < eps_2 < ... (violated at TLS " +
                        std::to_string(i + 1) + ")");
    previous = level.epsilon;
  }
}

const Tls& SystemSpec::tls_at(std::size_t n) const {
  if (n < 1 || n > tls_.size()) throw DomainError("anticrossing index out of range");
  return tls_[n - 1];
}

TrianglePulse::TrianglePulse(double amplitude, double width) : amplitude_(amplitude), width_(width) {
  if (!(std::isfinite(amplitude) && amplitude > 0.0)) throw DomainError("pulse amplitude must be positive");
  if (!(std::isfinite(width) && width > 0.0)) throw DomainError("pulse width must be positive");
}

double drive_value(const TrianglePulse& pulse, double t) {
  const double width = pulse.width();
  if (!(t >= 0.0 && t <= width)) throw DomainError("time outside [0, T_pulse]");
  const double x = t / width;
  return x <= 0.5 ? pulse.amplitude() * 2.0 * x : pulse.amplitude() * (2.0 - 2.0 * x);
}

bool is_traversed(const SystemSpec& sys, const TrianglePulse& pulse, std::size_t n) {
  const double peak = peak_energy(sys, pulse);
  return peak - sys.tls_at(n).epsilon > kTurningPointTolerance * peak;
}

std::size_t traversed_count(const SystemSpec& sys, const TrianglePulse& pulse) {
  std::size_t m = 0;
  while (m < sys.size() && is_traversed(sys, pulse, m + 1)) ++m;
  return m;
}

std::optional<CrossingTimes> crossing_times(const SystemSpec& sys, const TrianglePulse& pulse,
                                            std::size_t n) {
  if (!is_traversed(sys, pulse, n)) return std::nullopt;
  const double up = sys.tls_at(n).epsilon * pulse.width() / (2.0 * peak_energy(sys, pulse));
  return CrossingTimes{up, pulse.width() - up};
}

std::vector<std::size_t> existing_paths(const SystemSpec& sys, const TrianglePulse& pulse) {
  const std::size_t m = traversed_count(sys, pulse);
  std::vector<std::size_t> paths;
  paths.reserve(m + 1);
  for (std::size_t i = 1; i <= m; ++i) paths.push_back(i);
  paths.push_back(sys.size() + 1);
  return paths;
}

double path_energy(const SystemSpec& sys, const TrianglePulse& pulse, std::size_t path, double t) {
  const double qubit = sys.slope() * drive_value(pulse, t);
  if (path == sys.size() + 1) return qubit;
  if (path < 1 || path > sys.size()) throw DomainError("path index out of range");
  const auto times = crossing_times(sys, pulse, path);
  if (!times) throw DomainError("path " + std::to_string(path) + " does not exist for this pulse");
  return (t >= times->up && t <= times->down) ? sys.tls_at(path).epsilon : qubit;
}

namespace {

// Antiderivative of s * drive on [0, T], continuous across the peak.
double qubit_antiderivative(double peak, double width, double t) {
  const double half = 0.5 * width;
  if (t <= half) return peak * t * t / width;
  const double up_area = 0.25 * peak * width;
  const double u = t - half;
  return up_area + peak * (2.0 * u - (t * t - half * half) / width);
}

}  // namespace

double qubit_phase_integral(const SystemSpec& sys, const TrianglePulse& pulse, double t0, double t1) {
  const double width = pulse.width();
  if (!(t0 >= 0.0 && t1 <= width && t0 <= t1)) throw DomainError("integration window outside the pulse");
  const double peak = peak_energy(sys, pulse);
  return qubit_antiderivative(peak, width, t1) - qubit_antiderivative(peak, width, t0);
}

std::vector<double> event_times(const SystemSpec& sys, const TrianglePulse& pulse) {
  const std::size_t m = traversed_count(sys, pulse);
  std::vector<double> times;
  times.reserve(2 * m + 3);
  times.push_back(0.0);
  for (std::size_t k = 1; k <= m; ++k) times.push_back(crossing_times(sys, pulse, k)->up);
  times.push_back(0.5 * pulse.width());
  for (std::size_t k = m; k >= 1; --k) times.push_back(crossing_times(sys, pulse, k)->down);
  times.push_back(pulse.width());
  return times;
}

std::vector<double> diabatic_state_phases(const SystemSpec& sys, const TrianglePulse& pulse, double t0,
                                          double t1) {
  std::vector<double> phases(sys.size() + 1);
  phases[0] = qubit_phase_integral(sys, pulse, t0, t1);
  for (std::size_t k = 1; k <= sys.size(); ++k) phases[k] = sys.tls_at(k).epsilon * (t1 - t0);
  return phases;
}

double lens_area(const SystemSpec& sys, const TrianglePulse& pulse, std::size_t n) {
  if (!is_traversed(sys, pulse, n)) return 0.0;
  const double peak = peak_energy(sys, pulse);
  const double excess = peak - sys.tls_at(n).epsilon;
  return pulse.width() * excess * excess / (2.0 * peak);
}

std::vector<double> path_phases(const SystemSpec& sys, const TrianglePulse& pulse, bool stokes) {
  const double full = 0.5 * peak_energy(sys, pulse) * pulse.width();
  const std::size_t m = traversed_count(sys, pulse);
  std::vector<double> phases;
  phases.reserve(m + 1);
  for (std::size_t i = 1; i <= m; ++i) {
    double phase = full - lens_area(sys, pulse, i);
    // Two reflections onto the lower branch at i, each -r exp(i phi_S).
    if (stokes) phase -= 2.0 * gate_params(sys, pulse, i).stokes_phase;
    phases.push_back(phase);
  }
  phases.push_back(full);
  return phases;
}

}  // namespace lzs
