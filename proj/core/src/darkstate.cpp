#include "lzs/darkstate.hpp"

#include <cmath>

#include "lzs/errors.hpp"
#include "lzs/pattern.hpp"

namespace lzs {

Eigen::Matrix3d build_hd(const DarkSystem& sys) {
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  h(0, 0) = sys.omega;
  h(0, 1) = h(1, 0) = 0.5 * sys.omega1;
  h(0, 2) = h(2, 0) = 0.5 * sys.omega2;
  return h;
}

Eigen::Vector3d dark_state(const DarkSystem& sys) {
  const double norm = std::hypot(sys.omega1, sys.omega2);
  if (!(norm > 0.0)) throw DomainError("dark state undefined when both couplings vanish");
  const double sign = sys.omega2 < 0.0 ? -1.0 : 1.0;
  return {0.0, sign * sys.omega2 / norm, -sign * sys.omega1 / norm};
}

DarkSpectrum spectrum_vs_detuning(double omega1, double omega2, const std::vector<double>& omega_axis) {
  require_monotone(omega_axis, "omega_axis");
  const double coupling_sq = omega1 * omega1 + omega2 * omega2;
  if (!(coupling_sq > 0.0)) throw DomainError("dark branch undefined when both couplings vanish");

  DarkSpectrum spectrum;
  spectrum.omega_axis = omega_axis;
  spectrum.eigenvalues.reserve(omega_axis.size());
  for (double w : omega_axis) {
    // Larger-magnitude root first, the other from the product -coupling_sq / 4.
    const double root = std::sqrt(w * w + coupling_sq);
    const double big = w >= 0.0 ? 0.5 * (w + root) : 0.5 * (w - root);
    const double small = -0.25 * coupling_sq / big;
    const double lower = std::min(big, small);
    const double upper = std::max(big, small);
    spectrum.eigenvalues.push_back({lower, 0.0, upper});
  }
  return spectrum;
}

}  // namespace lzs
