#include "lzs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "lzs/errors.hpp"
#include "lzs/lz_gate.hpp"

namespace lzs {
namespace {

// FFTW planning is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j)
    w[j] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n - 1));
  return w;
}

}  // namespace

std::vector<std::complex<double>> dft_series(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 2) throw DomainError("DFT needs at least two samples");
  FftwBuffer in(n), out(n);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (std::size_t j = 0; j < n; ++j) {
    in.data[j][0] = series[j];
    in.data[j][1] = 0.0;
  }
  fftw_execute(plan);
  std::vector<std::complex<double>> result(n);
  for (std::size_t k = 0; k < n; ++k) result[k] = {out.data[k][0], out.data[k][1]};
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return result;
}

FtMap ft_map(const PatternGrid& grid, const FtOptions& options) {
  grid.validate();
  if (!is_uniform(grid.t_axis)) throw DomainError("t_axis must be uniformly spaced for the DFT");
  const std::size_t n = grid.t_axis.size();
  const std::size_t bins = n / 2 + 1;
  const double dt = (grid.t_axis.back() - grid.t_axis.front()) / static_cast<double>(n - 1);

  FtMap map;
  map.a_axis = grid.a_axis;
  map.k_axis.resize(bins);
  for (std::size_t m = 0; m < bins; ++m)
    map.k_axis[m] = 2.0 * std::numbers::pi * static_cast<double>(m) / (static_cast<double>(n) * dt);
  map.magnitudes.resize(grid.values.rows(), static_cast<Eigen::Index>(bins));

  const std::vector<double> window = options.hann ? hann_window(n) : std::vector<double>(n, 1.0);
  double window_sum = 0.0;
  for (double w : window) window_sum += w;

  std::vector<double> row(n);
  for (Eigen::Index a = 0; a < grid.values.rows(); ++a) {
    double weighted = 0.0;
    for (std::size_t j = 0; j < n; ++j) weighted += window[j] * grid.values(a, static_cast<Eigen::Index>(j));
    const double mean = weighted / window_sum;
    for (std::size_t j = 0; j < n; ++j)
      row[j] = window[j] * (grid.values(a, static_cast<Eigen::Index>(j)) - mean);
    const auto spectrum = dft_series(row);
    for (std::size_t m = 0; m < bins; ++m) map.magnitudes(a, static_cast<Eigen::Index>(m)) = std::abs(spectrum[m]);
  }
  return map;
}

ArcPrediction predict_arcs(const SystemSpec& sys, const std::vector<double>& a_axis, double reference_width) {
  if (sys.size() != 2) throw DomainError("arc prediction needs exactly two TLSs");
  if (!(reference_width > 0.0)) throw DomainError("reference width must be positive");
  const double e1 = sys.tls()[0].epsilon;
  const double e2 = sys.tls()[1].epsilon;
  const double e12 = e2 - e1;

  ArcPrediction arcs;
  for (double a : a_axis) {
    const TrianglePulse pulse(a, reference_width);
    if (traversed_count(sys, pulse) < 2) continue;
    const double peak = peak_energy(sys, pulse);
    const double k1 = e12 - (e1 + e2) * e12 / (2.0 * peak);
    const double k2 = (peak - e2) * (peak - e2) / (2.0 * peak);
    arcs.a_axis.push_back(a);
    arcs.k1.push_back(k1);
    arcs.k2.push_back(k2);
    arcs.k3.push_back(k1 + k2);
    arcs.k2_eps12.push_back((peak - e12) * (peak - e12) / (2.0 * peak));

    // sin^2(theta) = P_LZ, cos^2(theta) = 1 - P_LZ
    const double s1 = gate_params(sys, pulse, 1).p_lz, c1 = 1.0 - s1;
    const double s2 = gate_params(sys, pulse, 2).p_lz, c2 = 1.0 - s2;
    arcs.b0.push_back(c1 * c1 + s1 * s1 * c2 * c2 + s1 * s1 * s2 * s2);
    arcs.b1.push_back(2.0 * s1 * c2 * c1);
    arcs.b2.push_back(2.0 * s1 * s1 * s2 * c2);
    arcs.b3.push_back(2.0 * s1 * s2 * c1);
  }
  return arcs;
}

std::vector<RidgePoint> extract_ridges(const FtMap& map, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw DomainError("ridge threshold must lie in (0, 1)");
  const Eigen::Index bins = map.magnitudes.cols();
  const double bin = map.bin_width();
  std::vector<RidgePoint> ridges;
  for (Eigen::Index a = 0; a < map.magnitudes.rows(); ++a) {
    const auto row = map.magnitudes.row(a);
    const double top = row.tail(std::max<Eigen::Index>(bins - 1, 0)).maxCoeff();
    if (!(top > 0.0)) continue;
    for (Eigen::Index m = 1; m < bins; ++m) {
      const double y = row(m);
      const double left = row(m - 1);
      const double right = m + 1 < bins ? row(m + 1) : -1.0;
      if (!(y > left && y >= right && y >= threshold * top)) continue;
      double offset = 0.0;
      if (m + 1 < bins) {
        const double curvature = left - 2.0 * y + right;
        if (curvature < 0.0) offset = 0.5 * (left - right) / curvature;
      }
      ridges.push_back({static_cast<std::size_t>(a), map.a_axis[static_cast<std::size_t>(a)],
                        map.k_axis[static_cast<std::size_t>(m)] + offset * bin, y});
    }
  }
  std::sort(ridges.begin(), ridges.end(), [](const RidgePoint& x, const RidgePoint& y) {
    return x.amplitude != y.amplitude ? x.amplitude < y.amplitude : x.k < y.k;
  });
  return ridges;
}

}  // namespace lzs
