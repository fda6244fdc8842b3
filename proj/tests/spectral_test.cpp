#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lzs/errors.hpp"
#include "lzs/impulse.hpp"
#include "lzs/lz_gate.hpp"
#include "lzs/spectral.hpp"
#include "lzs/units.hpp"

namespace {

using lzs::SystemSpec;
using std::numbers::pi;

std::vector<std::complex<double>> brute_dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += x[j] * std::polar(1.0, -2 * pi * double(j * k % n) / double(n));
    out[k] = acc;
  }
  return out;
}

std::vector<double> random_series(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  return x;
}

TEST(Dft, Constant) {
  std::vector<double> x(16, 0.75);
  auto X = lzs::dft_series(x);
  EXPECT_NEAR(std::abs(X[0] - 12.0), 0.0, 1e-12);
  for (std::size_t k = 1; k < 16; ++k) EXPECT_LT(std::abs(X[k]), 1e-12);
}

TEST(Dft, SingleTone) {
  const std::size_t n = 40;
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = std::cos(2 * pi * 3 * double(j) / n);
  auto X = lzs::dft_series(x);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 3 || k == n - 3)
      EXPECT_NEAR(std::abs(X[k]), n / 2.0, 1e-10);
    else
      EXPECT_LT(std::abs(X[k]), 1e-10);
  }
}

TEST(Dft, MatchesBruteForce) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {2u, 7u, 32u, 100u}) {
    auto x = random_series(rng, n);
    auto fast = lzs::dft_series(x);
    auto slow = brute_dft(x);
    for (std::size_t k = 0; k < n; ++k) EXPECT_LT(std::abs(fast[k] - slow[k]), 1e-10);
  }
}

TEST(Dft, LinearityAndParseval) {
  std::mt19937_64 rng(2);
  auto x = random_series(rng, 64);
  auto y = random_series(rng, 64);
  const double a = 1.7, b = -0.4;
  std::vector<double> z(64);
  for (std::size_t j = 0; j < 64; ++j) z[j] = a * x[j] + b * y[j];
  auto X = lzs::dft_series(x), Y = lzs::dft_series(y), Z = lzs::dft_series(z);
  double energy = 0.0, spectral = 0.0;
  for (std::size_t k = 0; k < 64; ++k) {
    EXPECT_LT(std::abs(Z[k] - (a * X[k] + b * Y[k])), 1e-10);
    energy += x[k] * x[k];
    spectral += std::norm(X[k]);
  }
  EXPECT_NEAR(energy, spectral / 64, 1e-8 * energy);
}

TEST(Dft, RejectsShortInput) {
  EXPECT_THROW(lzs::dft_series(std::vector<double>{}), lzs::DomainError);
  EXPECT_THROW(lzs::dft_series(std::vector<double>{1.0}), lzs::DomainError);
}

lzs::PatternGrid tone_grid(double k, std::size_t rows) {
  auto t = lzs::linspace(0.0, 63.0, 64);
  lzs::PatternGrid g{Eigen::MatrixXd(rows, 64), t, lzs::linspace(1.0, 2.0, rows)};
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < 64; ++c) g.values(r, c) = 0.5 + 0.4 * std::cos(k * t[c]);
  return g;
}

TEST(FtMap, AxesAndDcRemoval) {
  auto g = tone_grid(2 * pi * 5 / 64.0, 3);
  auto map = lzs::ft_map(g);
  ASSERT_EQ(map.k_axis.size(), 33u);
  EXPECT_NEAR(map.bin_width(), 2 * pi / 64.0, 1e-14);
  EXPECT_EQ(map.magnitudes.rows(), 3);
  EXPECT_EQ(map.magnitudes.cols(), 33);
  EXPECT_TRUE((map.magnitudes.array() >= 0).all());
  for (int r = 0; r < 3; ++r) {
    EXPECT_LT(map.magnitudes(r, 0), 1e-10);
    Eigen::Index best;
    map.magnitudes.row(r).maxCoeff(&best);
    EXPECT_EQ(best, 5);
  }
  auto hann = lzs::ft_map(g, {true});
  EXPECT_LT(hann.magnitudes(0, 0), 1e-10);
}

TEST(FtMap, RejectsNonUniformAxis) {
  auto g = tone_grid(0.5, 2);
  g.t_axis[10] += 0.3;
  EXPECT_THROW(lzs::ft_map(g), lzs::DomainError);
}

TEST(ExtractRidges, SingleToneSubBin) {
  const double k = 2 * pi * 7.3 / 64.0;
  auto map = lzs::ft_map(tone_grid(k, 4), {true});
  auto ridges = lzs::extract_ridges(map, 0.3);
  ASSERT_EQ(ridges.size(), 4u);
  for (std::size_t i = 0; i < ridges.size(); ++i) {
    EXPECT_EQ(ridges[i].row, i);
    EXPECT_NEAR(ridges[i].k, k, 0.25 * map.bin_width());
  }
}

TEST(ExtractRidges, SortedAndThresholded) {
  auto t = lzs::linspace(0.0, 127.0, 128);
  lzs::PatternGrid g{Eigen::MatrixXd(2, 128), t, {1.0, 2.0}};
  for (std::size_t c = 0; c < 128; ++c) {
    g.values(0, c) = 0.5 + 0.3 * std::cos(2 * pi * 10 * c / 128.0) + 0.1 * std::cos(2 * pi * 30 * c / 128.0);
    g.values(1, c) = 0.5 + 0.02 * std::cos(2 * pi * 20 * c / 128.0) + 0.3 * std::cos(2 * pi * 40 * c / 128.0);
  }
  auto map = lzs::ft_map(g);
  auto all = lzs::extract_ridges(map, 0.2);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].row, 0u);
  EXPECT_LT(all[0].k, all[1].k);
  EXPECT_EQ(all[2].row, 1u);
  EXPECT_NEAR(all[2].k, 2 * pi * 40 / 128.0, 1e-9);
  EXPECT_EQ(lzs::extract_ridges(map, 0.5).size(), 2u);
}

TEST(PredictArcs, Formulas) {
  const double e1 = 0.4, e2 = 1.0;
  SystemSpec sys({{e1, 0.05}, {e2, 0.08}}, 1.0);
  auto arcs = lzs::predict_arcs(sys, {0.5, 1.0, 1.5, 3.0}, 40.0);
  ASSERT_EQ(arcs.a_axis.size(), 2u);
  EXPECT_DOUBLE_EQ(arcs.a_axis[0], 1.5);
  for (std::size_t i = 0; i < 2; ++i) {
    const double sa = arcs.a_axis[i], e12 = e2 - e1;
    EXPECT_NEAR(arcs.k1[i], e12 - (e1 + e2) * e12 / (2 * sa), 1e-15);
    EXPECT_NEAR(arcs.k2[i], (sa - e2) * (sa - e2) / (2 * sa), 1e-15);
    EXPECT_NEAR(arcs.k2_eps12[i], (sa - e12) * (sa - e12) / (2 * sa), 1e-15);
    EXPECT_DOUBLE_EQ(arcs.k3[i], arcs.k1[i] + arcs.k2[i]);
    const double p1 = lzs::gate_params(sys, lzs::TrianglePulse(sa, 40.0), 1).p_lz;
    const double p2 = lzs::gate_params(sys, lzs::TrianglePulse(sa, 40.0), 2).p_lz;
    EXPECT_NEAR(arcs.b1[i], 2 * p1 * (1 - p2) * (1 - p1), 1e-15);
    EXPECT_NEAR(arcs.b2[i], 2 * p1 * p1 * p2 * (1 - p2), 1e-15);
    EXPECT_NEAR(arcs.b3[i], 2 * p1 * p2 * (1 - p1), 1e-15);
    EXPECT_GE(arcs.b0[i], 0.0);
  }
}

TEST(PredictArcs, Limits) {
  // eps_1 -> 0 limit: the two k2 forms agree and k2 vanishes at the turning point.
  SystemSpec sys({{1e-12, 0.05}, {1.0, 0.05}}, 1.0);
  auto arcs = lzs::predict_arcs(sys, {1.0 + 1e-8, 2.0, 1e9}, 40.0);
  EXPECT_NEAR(arcs.k2[0], 0.0, 1e-12);
  EXPECT_NEAR(arcs.k2[1], arcs.k2_eps12[1], 1e-11);
  EXPECT_NEAR(arcs.k1[1], 1.0 - 1.0 / 4.0, 1e-11);
  EXPECT_NEAR(arcs.k1[2], 1.0, 1e-8);
  SystemSpec one({{0.5, 0.05}}, 1.0);
  EXPECT_THROW(lzs::predict_arcs(one, {1.0}, 40.0), lzs::DomainError);
}

TEST(ArcCoverage, BalancedTwoTlsPattern) {
  // Both passage probabilities in the middle of the range: every arc shows up.
  const double e1 = lzs::units::mhz_to_rad_per_ns(200), e2 = lzs::units::mhz_to_rad_per_ns(400);
  const double width_ref = 70.0;
  auto a_axis = lzs::linspace(lzs::units::mhz_to_rad_per_ns(600), lzs::units::mhz_to_rad_per_ns(1200), 25);
  // Pick couplings so that P_LZ = 0.5 at the centre of the grid.
  const double nu = 2 * a_axis[12] / width_ref;
  const double d = std::sqrt(std::log(2.0) * nu / (2 * pi));
  SystemSpec sys({{e1, d}, {e2, d}}, 1.0);
  auto t_axis = lzs::linspace(20.0, 120.0, 100);
  auto grid = lzs::pattern_sweep(sys, t_axis, a_axis, {false, lzs::PhaseModel::Diabatic});
  auto map = lzs::ft_map(grid, {true});
  auto ridges = lzs::extract_ridges(map, 0.1);
  auto arcs = lzs::predict_arcs(sys, a_axis, width_ref);
  const double bin = map.bin_width();
  std::size_t scored = 0, covered = 0;
  for (std::size_t i = 0; i < arcs.a_axis.size(); ++i) {
    if (arcs.a_axis[i] < 1.2 * e2) continue;
    const double p1 = lzs::gate_params(sys, lzs::TrianglePulse(arcs.a_axis[i], width_ref), 1).p_lz;
    if (p1 < 0.3 || p1 > 0.7) continue;
    for (double k : {arcs.k1[i], arcs.k2[i], arcs.k3[i]}) {
      ++scored;
      for (auto& r : ridges)
        if (r.amplitude == arcs.a_axis[i] && std::abs(r.k - k) <= bin) {
          ++covered;
          break;
        }
    }
  }
  ASSERT_GT(scored, 0u);
  EXPECT_GE(double(covered), 0.9 * double(scored));
}

}  // namespace
