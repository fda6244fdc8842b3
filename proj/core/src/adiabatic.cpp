#include "lzs/adiabatic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace lzs {
namespace {

// 10-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kNodes = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                          0.8650633666889845, 0.9739065285171717};
constexpr std::array<double, 5> kWeights = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                            0.1494513432247809, 0.0666713443086881};

// Panels per side halve toward each end of the interval until they are
// finer than a quarter of the shortest passage time coupling / sweep rate.
constexpr int kMaxGradingLevels = 24;
constexpr int kMinGradingLevels = 3;

int grading_levels(double half_width, double passage_time) {
  if (!(passage_time > 0.0)) return kMinGradingLevels;
  const double levels = std::ceil(std::log2(half_width / (0.25 * passage_time)));
  return static_cast<int>(std::clamp(levels, double(kMinGradingLevels), double(kMaxGradingLevels)));
}

template <int Dim>
class ShiftIntegrand {
 public:
  ShiftIntegrand(const SystemSpec& sys, const TrianglePulse& pulse, const std::vector<std::size_t>& rank)
      : sys_(sys), pulse_(pulse), rank_(rank), dim_(static_cast<Eigen::Index>(sys.size() + 1)) {
    h_.resize(dim_, dim_);
    h_.setZero();
    for (std::size_t k = 1; k <= sys.size(); ++k) {
      const auto i = static_cast<Eigen::Index>(k);
      h_(i, i) = sys.tls_at(k).epsilon;
      h_(0, i) = h_(i, 0) = sys.tls_at(k).delta;
    }
  }

  // Adds w * (E_adiabatic - E_diabatic) for every state into `acc`.
  void accumulate(double t, double w, std::vector<double>& acc) {
    const double qubit = sys_.slope() * drive_value(pulse_, std::clamp(t, 0.0, pulse_.width()));
    h_(0, 0) = qubit;
    if constexpr (Dim == 2 || Dim == 3)
      solver_.computeDirect(h_, Eigen::EigenvaluesOnly);
    else
      solver_.compute(h_, Eigen::EigenvaluesOnly);
    const auto& values = solver_.eigenvalues();
    acc[0] += w * (values(static_cast<Eigen::Index>(rank_[0])) - qubit);
    for (std::size_t k = 1; k < acc.size(); ++k)
      acc[k] += w * (values(static_cast<Eigen::Index>(rank_[k])) - sys_.tls_at(k).epsilon);
  }

 private:
  const SystemSpec& sys_;
  const TrianglePulse& pulse_;
  const std::vector<std::size_t>& rank_;
  Eigen::Index dim_;
  Eigen::Matrix<double, Dim, Dim> h_;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, Dim, Dim>> solver_;
};

template <typename Integrand>
void integrate_panel(Integrand& f, double a, double b, std::vector<double>& acc) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t j = 0; j < kNodes.size(); ++j) {
    f.accumulate(mid - half * kNodes[j], half * kWeights[j], acc);
    f.accumulate(mid + half * kNodes[j], half * kWeights[j], acc);
  }
}

template <int Dim>
std::vector<double> shift_integrals(const SystemSpec& sys, const TrianglePulse& pulse, double t0, double t1,
                                    const std::vector<std::size_t>& rank) {
  ShiftIntegrand<Dim> f(sys, pulse, rank);
  std::vector<double> acc(sys.size() + 1, 0.0);
  const double mid = 0.5 * (t0 + t1);
  double coupling = 0.0;  // smallest non-zero coupling
  for (const Tls& level : sys.tls())
    if (level.delta > 0.0 && (coupling == 0.0 || level.delta < coupling)) coupling = level.delta;
  const double rate = 2.0 * sys.slope() * pulse.amplitude() / pulse.width();
  const int levels = grading_levels(0.5 * (t1 - t0), coupling / rate);
  // [t0, mid] graded toward t0, [mid, t1] graded toward t1.
  double inner = mid;
  for (int level = 0; level < levels; ++level) {
    const double outer = t0 + 0.5 * (inner - t0);
    integrate_panel(f, outer, inner, acc);
    inner = outer;
  }
  integrate_panel(f, t0, inner, acc);
  inner = mid;
  for (int level = 0; level < levels; ++level) {
    const double outer = t1 - 0.5 * (t1 - inner);
    integrate_panel(f, inner, outer, acc);
    inner = outer;
  }
  integrate_panel(f, inner, t1, acc);
  return acc;
}

}  // namespace

std::vector<double> adiabatic_state_phases(const SystemSpec& sys, const TrianglePulse& pulse, double t0,
                                           double t1) {
  std::vector<double> phases = diabatic_state_phases(sys, pulse, t0, t1);
  if (!(t1 > t0)) return phases;

  // Rank of each diabatic level at the interval midpoint; ties go to the qubit last.
  const double qubit_mid = sys.slope() * drive_value(pulse, 0.5 * (t0 + t1));
  std::vector<double> energy(sys.size() + 1);
  energy[0] = qubit_mid;
  for (std::size_t k = 1; k <= sys.size(); ++k) energy[k] = sys.tls_at(k).epsilon;
  std::vector<std::size_t> order(energy.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return energy[a] < energy[b]; });
  std::vector<std::size_t> rank(energy.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  std::vector<double> shift;
  switch (sys.size()) {
    case 1: shift = shift_integrals<2>(sys, pulse, t0, t1, rank); break;
    case 2: shift = shift_integrals<3>(sys, pulse, t0, t1, rank); break;
    case 3: shift = shift_integrals<4>(sys, pulse, t0, t1, rank); break;
    default: shift = shift_integrals<Eigen::Dynamic>(sys, pulse, t0, t1, rank); break;
  }
  for (std::size_t k = 0; k < phases.size(); ++k) phases[k] += shift[k];
  return phases;
}

}  // namespace lzs
