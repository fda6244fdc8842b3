#include "lzs/special.hpp"

#include <cmath>
#include <numbers>

namespace lzs::special {

std::complex<double> log_gamma(std::complex<double> z) {
  // Shift right with the recurrence until Stirling's series converges, then
  // undo the shift. Each log(z + k) stays on the principal branch because
  // Re(z + k) > 0, and their sum is the continuous branch of log Gamma.
  constexpr double kShiftTo = 15.0;
  std::complex<double> shift_log{0.0, 0.0};
  while (z.real() < kShiftTo) {
    shift_log += std::log(z);
    z += 1.0;
  }
  // Bernoulli terms B_{2k} / (2k (2k - 1) z^{2k-1}).
  static constexpr double kCoeff[] = {
      1.0 / 12.0,          -1.0 / 360.0,          1.0 / 1260.0,       -1.0 / 1680.0,
      1.0 / 1188.0,        -691.0 / 360360.0,     1.0 / 156.0,        -3617.0 / 122400.0,
  };
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series{0.0, 0.0};
  std::complex<double> power = inv;
  for (double c : kCoeff) {
    series += c * power;
    power *= inv2;
  }
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (z - 0.5) * std::log(z) - z + half_log_two_pi + series - shift_log;
}

}  // namespace lzs::special
