#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "lzs/model.hpp"
#include "lzs/pattern.hpp"

namespace lzs {

/// X(k) = sum_j x(j) exp(-2 pi i j k / n) for k = 0..n-1 (unnormalized).
/// Throws DomainError for fewer than two samples.
std::vector<std::complex<double>> dft_series(std::span<const double> series);

struct FtOptions {
  bool hann = false;
};

/// DFT magnitudes along the width axis, one row per amplitude sample and one
/// column per non-negative frequency bin.
struct FtMap {
  Eigen::MatrixXd magnitudes;
  std::vector<double> k_axis;  // rad/ns, 2 pi m / (n dt)
  std::vector<double> a_axis;

  double bin_width() const { return k_axis.size() > 1 ? k_axis[1] - k_axis[0] : 0.0; }
};

/// Row-wise transform of a pattern after removing each row's mean (the
/// weighted mean when windowed), so the DC bin vanishes. Requires a uniform
/// t_axis.
FtMap ft_map(const PatternGrid& grid, const FtOptions& options = {});

/// Closed-form fringe frequencies and weights for two TLSs, one entry per
/// amplitude with s*A > eps_2 (other amplitudes are omitted).
struct ArcPrediction {
  std::vector<double> a_axis;
  std::vector<double> k1;        // eps_12 - (eps_1 + eps_2) eps_12 / (2 s A)
  std::vector<double> k2;        // (s A - eps_2)^2 / (2 s A)
  std::vector<double> k3;        // k1 + k2
  std::vector<double> k2_eps12;  // (s A - eps_12)^2 / (2 s A), equal to k2 when eps_1 = 0
  std::vector<double> b0, b1, b2, b3;
};

/// Weights use the passage probabilities at `reference_width` (ns), since
/// the sweep rate depends on the pulse width.
ArcPrediction predict_arcs(const SystemSpec& sys, const std::vector<double>& a_axis,
                           double reference_width);

struct RidgePoint {
  std::size_t row = 0;  // amplitude index in the map
  double amplitude = 0.0;
  double k = 0.0;  // rad/ns, parabolic sub-bin estimate
  double magnitude = 0.0;
};

/// Local maxima above threshold * (row max) for every amplitude row, sorted by
/// amplitude then k. Bin 0 is never reported.
std::vector<RidgePoint> extract_ridges(const FtMap& map, double threshold);

}  // namespace lzs
