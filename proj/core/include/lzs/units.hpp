#pragma once

#include <numbers>

namespace lzs::units {

// Internal convention: hbar = 1, energies in rad/ns, times in ns.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Linear frequency in MHz to angular frequency in rad/ns.
constexpr double mhz_to_rad_per_ns(double mhz) { return kTwoPi * mhz * 1e-3; }

constexpr double rad_per_ns_to_mhz(double w) { return w / (kTwoPi * 1e-3); }

}  // namespace lzs::units
