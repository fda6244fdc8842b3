#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace lzs {

/// Qubit coupled to two degenerate TLSs, in the basis
/// {|1 g1 g2>, |0 e1 g2>, |0 g1 e2>}. All quantities in rad/ns.
struct DarkSystem {
  double omega = 0.0;   // qubit-TLS detuning
  double omega1 = 0.0;  // coupling to TLS 1
  double omega2 = 0.0;  // coupling to TLS 2
};

/// [[w, W1/2, W2/2], [W1/2, 0, 0], [W2/2, 0, 0]]
Eigen::Matrix3d build_hd(const DarkSystem& sys);

/// (0, W2, -W1) / sqrt(W1^2 + W2^2), sign chosen so the |0 e1 g2> component
/// is non-negative. The first component is an exact zero.
/// Throws DomainError when both couplings vanish.
Eigen::Vector3d dark_state(const DarkSystem& sys);

/// Eigenvalues per detuning sample, ascending. The middle branch is the dark
/// one and is exactly zero; the bright pair solves l^2 - w l - (W1^2 + W2^2)/4 = 0.
struct DarkSpectrum {
  std::vector<double> omega_axis;
  std::vector<std::array<double, 3>> eigenvalues;
  std::size_t dark_branch = 1;
};

DarkSpectrum spectrum_vs_detuning(double omega1, double omega2, const std::vector<double>& omega_axis);

}  // namespace lzs
