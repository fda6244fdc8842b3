#pragma once

#include <complex>

namespace lzs::special {

/// Log-gamma on the continuous branch for Re(z) > 0 (no 2*pi jumps in the
/// imaginary part), so Im(log_gamma(1 - i x)) is a smooth function of x.
std::complex<double> log_gamma(std::complex<double> z);

}  // namespace lzs::special
