#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lzs/units.hpp"

namespace lzs {

/// One defect level: diabatic energy and coupling to the qubit, both in rad/ns.
/// The anticrossing it opens with the qubit line has full width 2*delta.
struct Tls {
  double epsilon = 0.0;
  double delta = 0.0;

  friend bool operator==(const Tls&, const Tls&) = default;
};

/// A qubit whose diabatic energy is slope * drive(t), coupled to an ordered
/// chain of TLS levels 0 < eps_1 < ... < eps_N.
class SystemSpec {
 public:
  SystemSpec(std::vector<Tls> tls, double slope);

  const std::vector<Tls>& tls() const noexcept { return tls_; }
  const Tls& tls_at(std::size_t n) const;  // 1-based, like anticrossing numbers
  double slope() const noexcept { return slope_; }
  std::size_t size() const noexcept { return tls_.size(); }

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;

 private:
  std::vector<Tls> tls_;
  double slope_;
};

/// Symmetric triangle drive: 0 at t = 0 and t = width, peak `amplitude` at width/2.
class TrianglePulse {
 public:
  TrianglePulse(double amplitude, double width);

  double amplitude() const noexcept { return amplitude_; }
  double width() const noexcept { return width_; }

 private:
  double amplitude_;
  double width_;
};

struct CrossingTimes {
  double up;    // qubit line passes eps_n going up
  double down;  // and coming back down
};

/// Relative tolerance below which an anticrossing sitting at the turning
/// point counts as not traversed.
inline constexpr double kTurningPointTolerance = 1e-9;

double drive_value(const TrianglePulse& pulse, double t);

/// Peak qubit detuning s * A.
inline double peak_energy(const SystemSpec& sys, const TrianglePulse& pulse) {
  return sys.slope() * pulse.amplitude();
}

bool is_traversed(const SystemSpec& sys, const TrianglePulse& pulse, std::size_t n);

/// Number of anticrossings reached by the pulse. Because the energies are
/// ordered these are always anticrossings 1..M.
std::size_t traversed_count(const SystemSpec& sys, const TrianglePulse& pulse);

/// Crossing times of anticrossing n (1-based); empty when it is not reached.
std::optional<CrossingTimes> crossing_times(const SystemSpec& sys, const TrianglePulse& pulse,
                                            std::size_t n);

/// Path numbers that exist for this pulse: 1..M for reflections at the reached
/// anticrossings, then N+1 for full transmission.
std::vector<std::size_t> existing_paths(const SystemSpec& sys, const TrianglePulse& pulse);

/// Diabatic energy followed by path i at time t.
double path_energy(const SystemSpec& sys, const TrianglePulse& pulse, std::size_t path, double t);

/// Integral of s * drive over [t0, t1] in closed form.
double qubit_phase_integral(const SystemSpec& sys, const TrianglePulse& pulse, double t0, double t1);

/// Accumulated diabatic phase of every existing path (order of existing_paths),
/// phi_i = integral of E_path_i over the whole pulse. With `stokes` set, the
/// per-traversal gate phases are folded in as well, so the amplitude picked up
/// by path i is proportional to exp(-i * phase_i).
std::vector<double> path_phases(const SystemSpec& sys, const TrianglePulse& pulse, bool stokes = false);

/// Breakpoints of the pulse: 0, the up-crossings, T/2, the down-crossings, T.
/// Between consecutive breakpoints no diabatic levels cross and the drive is linear.
std::vector<double> event_times(const SystemSpec& sys, const TrianglePulse& pulse);

/// Integral of each diabatic energy over [t0, t1], basis order
/// (qubit, TLS 1, ..., TLS N).
std::vector<double> diabatic_state_phases(const SystemSpec& sys, const TrianglePulse& pulse, double t0,
                                          double t1);

/// Area between the qubit line and eps_n over the crossing window,
/// T (sA - eps_n)^2 / (2 sA). Zero when the anticrossing is not reached.
double lens_area(const SystemSpec& sys, const TrianglePulse& pulse, std::size_t n);

}  // namespace lzs
