#include "lzs/lz_gate.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "lzs/errors.hpp"
#include "lzs/special.hpp"

namespace lzs {

double lz_probability(double coupling, double sweep_rate) {
  if (!(sweep_rate > 0.0)) throw DomainError("sweep rate must be positive");
  if (coupling < 0.0) throw DomainError("coupling must be non-negative");
  return std::exp(-2.0 * std::numbers::pi * coupling * coupling / sweep_rate);
}

double stokes_phase(double adiabatic_param) {
  if (!(adiabatic_param >= 0.0)) throw DomainError("adiabatic parameter must be non-negative");
  const double d = adiabatic_param;
  if (d == 0.0) return 0.25 * std::numbers::pi;
  const double arg_gamma = special::log_gamma({1.0, -d}).imag();
  return 0.25 * std::numbers::pi + d * (std::log(d) - 1.0) + arg_gamma;
}

LzGateParams LzGateParams::from_sweep(double coupling, double sweep_rate) {
  LzGateParams params;
  params.p_lz = lz_probability(coupling, sweep_rate);
  params.adiabatic_param = coupling * coupling / sweep_rate;
  params.stokes_phase = lzs::stokes_phase(params.adiabatic_param);
  return params;
}

Eigen::Matrix2cd lz_gate(const LzGateParams& params) {
  using namespace std::complex_literals;
  const double transmit = std::sqrt(params.p_lz);
  const double reflect = std::sqrt(1.0 - params.p_lz);
  const double phit = params.stokes_phase - 0.5 * std::numbers::pi;
  Eigen::Matrix2cd gate;
  gate << reflect * std::exp(-1i * phit), 1i * transmit,
          1i * transmit, reflect * std::exp(1i * phit);
  return gate;
}

double sweep_rate(const SystemSpec& sys, const TrianglePulse& pulse) {
  return 2.0 * peak_energy(sys, pulse) / pulse.width();
}

LzGateParams gate_params(const SystemSpec& sys, const TrianglePulse& pulse, std::size_t n) {
  return LzGateParams::from_sweep(sys.tls_at(n).delta, sweep_rate(sys, pulse));
}

}  // namespace lzs
