#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lzs/impulse.hpp"
#include "lzs/model.hpp"
#include "lzs/schrodinger.hpp"

namespace lzs::app {

enum class Engine { Analytic, Numeric, Both };

// Values as written in the file (MHz, ns). Kept so that a config can be
// echoed and re-read without rounding through unit conversions.
struct SystemInput {
  std::vector<double> epsilon_mhz{200.0, 400.0};
  std::vector<double> delta_mhz{10.0, 10.0};
  double slope = 1.0;

  friend bool operator==(const SystemInput&, const SystemInput&) = default;
};

struct GridInput {
  double t_min_ns = 1.0;
  double t_max_ns = 100.0;
  std::size_t t_samples = 200;
  double a_min_mhz = 0.0;  // drive amplitude, s * A expressed in MHz when s = 1
  double a_max_mhz = 0.0;
  std::size_t a_samples = 200;

  friend bool operator==(const GridInput&, const GridInput&) = default;
};

struct SpectralInput {
  bool enabled = true;
  bool hann = false;
  double threshold = 0.2;

  friend bool operator==(const SpectralInput&, const SpectralInput&) = default;
};

struct DarkInput {
  double omega1_mhz = 10.0;
  double omega2_mhz = 10.0;
  double omega_min_mhz = -50.0;
  double omega_max_mhz = 50.0;
  std::size_t samples = 100;

  friend bool operator==(const DarkInput&, const DarkInput&) = default;
};

struct LzCheckInput {
  std::vector<double> adiabatic_params{0.01, 0.05, 0.1, 0.3, 0.5, 1.0, 2.0};
  double sweep_rate = 1.0;      // rad/ns^2
  double window_factor = 40.0;  // window = factor * max(coupling, sqrt(rate))

  friend bool operator==(const LzCheckInput&, const LzCheckInput&) = default;
};

struct OutputInput {
  std::string dir = "out";
  bool image = false;
  std::size_t workers = 1;

  friend bool operator==(const OutputInput&, const OutputInput&) = default;
};

/// A validated run description. The *Input blocks hold the file values; the
/// members below them are derived in internal units (rad/ns, ns).
struct RunConfig {
  SystemInput system_input;
  GridInput grid;
  Engine engine = Engine::Analytic;
  ImpulseOptions impulse;
  DtPolicy dt;
  SpectralInput spectral;
  DarkInput dark;
  LzCheckInput lzcheck;
  std::string ft_input;
  OutputInput output;

  SystemSpec system{{{1.0, 0.0}}, 1.0};
  std::vector<double> t_axis;
  std::vector<double> a_axis;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses the line-oriented `[section]` / `key = value` format. Missing keys
/// take defaults; the grid amplitude range defaults to s A in
/// [0.5 eps_1, 3 eps_N]. Throws ConfigError naming the line on unknown keys,
/// malformed values and violated invariants.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

/// Canonical text of every effective setting; parse_config(to_text(c)) == c.
/// Without the output block the text depends only on what is computed, not
/// on where it goes or how many workers compute it.
std::string to_text(const RunConfig& config, bool with_output = true);

std::string_view engine_name(Engine engine);
std::string describe_dt(const DtPolicy& dt);

}  // namespace lzs::app
