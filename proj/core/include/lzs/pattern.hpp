#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace lzs {

/// Return probabilities over (amplitude, width): values(a, t) is P_1 for
/// drive amplitude a_axis[a] and pulse width t_axis[t].
struct PatternGrid {
  Eigen::MatrixXd values;
  std::vector<double> t_axis;  // ns
  std::vector<double> a_axis;  // drive units; s * a is in rad/ns

  /// Throws DomainError when axes are not strictly increasing, do not match
  /// the array shape, or an entry is outside [0, 1].
  void validate() const;
};

/// n samples evenly spaced over [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Throws DomainError unless the axis is strictly increasing with >= 2 samples.
void require_monotone(const std::vector<double>& axis, const char* name);

/// True when consecutive spacings agree to `rel_tol` of the mean spacing.
bool is_uniform(const std::vector<double>& axis, double rel_tol = 1e-6);

}  // namespace lzs
