#include "lzs/app/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include "lzs/darkstate.hpp"
#include "lzs/errors.hpp"
#include "lzs/impulse.hpp"
#include "lzs/schrodinger.hpp"
#include "lzs/spectral.hpp"
#include "lzs/units.hpp"
#include "lzs/version.hpp"

namespace lzs::app {
namespace {

namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
}

std::string energy(double rad_per_ns) {
  return format_value(rad_per_ns) + " rad/ns [" + format_value(units::rad_per_ns_to_mhz(rad_per_ns)) + " MHz]";
}

std::string phase_model_name(PhaseModel model) {
  return model == PhaseModel::Adiabatic ? "adiabatic" : "diabatic";
}

class Writer {
 public:
  Writer(const RunConfig& config, RunReport& report) : config_(config), report_(report) {
    ensure_dir(config.output.dir);
  }

  std::string path(const std::string& name) {
    std::string p = join(config_.output.dir, name);
    report_.files.push_back(p);
    return p;
  }

  void pattern(const PatternGrid& grid, const std::string& stem, Header header) {
    export_pattern(grid, path(stem + ".csv"), header);
    if (config_.output.image) write_graymap(grid.values, path(stem + ".pgm"));
  }

  void ft(const FtMap& map, const std::string& stem, const Header& header) {
    export_ftmap(map, path(stem + ".csv"), header);
    if (config_.output.image) write_graymap(map.magnitudes, path(stem + ".pgm"));
  }

  void ridges(const FtMap& map, const std::string& stem, Header header) {
    const auto points = extract_ridges(map, config_.spectral.threshold);
    std::ostringstream out;
    for (const auto& line : header) out << "# " << line << '\n';
    out << "row,a_rad_per_ns,a_mhz,k_rad_per_ns,magnitude\n";
    for (const auto& p : points)
      out << p.row << ',' << format_value(p.amplitude) << ',' << format_value(units::rad_per_ns_to_mhz(p.amplitude))
          << ',' << format_value(p.k) << ',' << format_value(p.magnitude) << '\n';
    write_text(path(stem + ".csv"), out.str());
    report_.messages.push_back(stem + ": " + std::to_string(points.size()) + " ridge points");
  }

 private:
  const RunConfig& config_;
  RunReport& report_;
};

Header with(Header header, std::initializer_list<std::string> extra) {
  header.insert(header.end(), extra.begin(), extra.end());
  return header;
}

void spectral_outputs(Writer& writer, const RunConfig& config, const PatternGrid& grid, const std::string& suffix,
                      const Header& header) {
  const FtMap map = ft_map(grid, {config.spectral.hann});
  const Header ft_header =
      with(header, {"transform: DFT along T per amplitude row, row mean removed, window " +
                        std::string(config.spectral.hann ? "hann" : "none"),
                    "columns: k_T = 2*pi*m/(n*dt) in rad/ns, bins 0..n/2; values: |DFT|"});
  writer.ft(map, "ft_" + suffix, ft_header);
  writer.ridges(map, "ridges_" + suffix,
                with(ft_header, {"ridge threshold: " + format_value(config.spectral.threshold) + " of row max"}));
}

void arcs_output(Writer& writer, const RunConfig& config, const Header& header) {
  if (config.system.size() != 2) return;
  const double reference = 0.5 * (config.t_axis.front() + config.t_axis.back());
  const ArcPrediction arcs = predict_arcs(config.system, config.a_axis, reference);
  if (arcs.a_axis.empty()) return;
  std::ostringstream out;
  for (const auto& line : with(header, {"arc frequencies in rad/ns; weights at reference width " +
                                            format_value(reference) + " ns"}))
    out << "# " << line << '\n';
  out << "a_rad_per_ns,a_mhz,k1,k2,k3,k2_eps12,b0,b1,b2,b3\n";
  for (std::size_t i = 0; i < arcs.a_axis.size(); ++i) {
    out << format_value(arcs.a_axis[i]) << ',' << format_value(units::rad_per_ns_to_mhz(arcs.a_axis[i]));
    for (double v : {arcs.k1[i], arcs.k2[i], arcs.k3[i], arcs.k2_eps12[i], arcs.b0[i], arcs.b1[i], arcs.b2[i],
                     arcs.b3[i]})
      out << ',' << format_value(v);
    out << '\n';
  }
  write_text(writer.path("arcs.csv"), out.str());
}

RunReport run_sweep(const RunConfig& config) {
  RunReport report;
  Writer writer(config, report);
  const Header base = provenance(config, "pattern sweep");
  const Header axes = {"rows: drive amplitude a (s*a in rad/ns, MHz column for reference); columns: pulse width T [ns]",
                       "values: P_1, probability of the initial state |1 g..g> after one pulse"};

  std::optional<PatternGrid> analytic, numeric;
  if (config.engine != Engine::Numeric) {
    analytic = pattern_sweep(config.system, config.t_axis, config.a_axis, config.impulse, config.output.workers);
    const Header h = with(base, {"engine: analytic"});
    writer.pattern(*analytic, "pattern_analytic", with(h, {axes[0], axes[1]}));
    if (config.spectral.enabled) spectral_outputs(writer, config, *analytic, "analytic", h);
  }
  if (config.engine != Engine::Analytic) {
    numeric = pattern_sweep_numeric(config.system, config.t_axis, config.a_axis, config.dt, config.output.workers);
    const Header h = with(base, {"engine: numeric"});
    writer.pattern(*numeric, "pattern_numeric", with(h, {axes[0], axes[1]}));
    if (config.spectral.enabled) spectral_outputs(writer, config, *numeric, "numeric", h);
  }
  arcs_output(writer, config, base);

  if (analytic && numeric) {
    const auto mask = turning_point_mask(config.system, *analytic, 0.9);
    std::ostringstream out;
    for (const auto& line : with(base, {"correlation of analytic and numeric patterns over cells with every "
                                        "anticrossing below 0.9*s*A"}))
      out << "# " << line << '\n';
    out << "cells_total = " << mask.size() << '\n' << "cells_masked_in = " << mask.count() << '\n';
    try {
      const double r = masked_pearson(*analytic, *numeric, mask);
      out << "pearson = " << format_value(r) << '\n';
      report.messages.push_back("pearson(analytic, numeric) = " + format_value(r));
    } catch (const DomainError& e) {
      out << "pearson = undefined (" << e.what() << ")\n";
      report.messages.push_back(std::string("pearson undefined: ") + e.what());
    }
    write_text(writer.path("correlation.txt"), out.str());
  }
  return report;
}

RunReport run_ft(const RunConfig& config) {
  if (config.ft_input.empty()) throw ConfigError("config: ft needs [ft] input = <pattern csv>");
  RunReport report;
  const PatternGrid grid = read_pattern(config.ft_input);
  Writer writer(config, report);
  spectral_outputs(writer, config, grid, "input", with(provenance(config, "fourier transform"),
                                                       {"source: " + config.ft_input}));
  return report;
}

RunReport run_darkstate(const RunConfig& config) {
  RunReport report;
  Writer writer(config, report);
  const DarkInput& d = config.dark;
  const double w1 = units::mhz_to_rad_per_ns(d.omega1_mhz), w2 = units::mhz_to_rad_per_ns(d.omega2_mhz);
  const auto axis = linspace(units::mhz_to_rad_per_ns(d.omega_min_mhz), units::mhz_to_rad_per_ns(d.omega_max_mhz),
                             d.samples);
  const DarkSpectrum spectrum = spectrum_vs_detuning(w1, w2, axis);
  double residual = 0.0;
  Eigen::Vector3d dark = Eigen::Vector3d::Zero();
  for (double w : axis) {
    dark = dark_state({w, w1, w2});
    residual = std::max(residual, (build_hd({w, w1, w2}) * dark).cwiseAbs().maxCoeff());
  }
  const Header header =
      with(provenance(config, "dark-state spectrum"),
           {"couplings: omega1 = " + energy(w1) + ", omega2 = " + energy(w2),
            "basis: |1 g1 g2>, |0 e1 g2>, |0 g1 e2>",
            "dark state: (" + format_value(dark(0)) + ", " + format_value(dark(1)) + ", " + format_value(dark(2)) + ")",
            "max |H_D * dark| over samples: " + format_value(residual),
            "dark branch: column e_dark (index " + std::to_string(spectrum.dark_branch) + "), identically zero",
            "eigenvalues in rad/ns, ascending"});
  std::ostringstream out;
  for (const auto& line : header) out << "# " << line << '\n';
  out << "omega_rad_per_ns,omega_mhz,e_lower,e_dark,e_upper\n";
  for (std::size_t i = 0; i < axis.size(); ++i) {
    const auto& e = spectrum.eigenvalues[i];
    out << format_value(axis[i]) << ',' << format_value(units::rad_per_ns_to_mhz(axis[i])) << ','
        << format_value(e[0]) << ',' << format_value(e[1]) << ',' << format_value(e[2]) << '\n';
  }
  write_text(writer.path("darkstate.csv"), out.str());
  report.messages.push_back("dark-state residual " + format_value(residual));
  return report;
}

RunReport run_lzcheck(const RunConfig& config) {
  RunReport report;
  Writer writer(config, report);
  const LzCheckInput& lz = config.lzcheck;
  std::ostringstream out;
  for (const auto& line : with(provenance(config, "single-passage check"),
                               {"sweep rate " + format_value(lz.sweep_rate) + " rad/ns^2; window = " +
                                    format_value(lz.window_factor) + " * max(coupling, sqrt(rate))",
                                "pass: relative error <= 0.02, or absolute <= 1e-3 when delta >= 1.5"}))
    out << "# " << line << '\n';
  out << "adiabatic_param,coupling_rad_per_ns,window_rad_per_ns,numeric,asymptotic,abs_error,rel_error,pass\n";
  std::size_t passed = 0;
  for (double delta : lz.adiabatic_params) {
    const double coupling = std::sqrt(delta * lz.sweep_rate);
    const double window = lz.window_factor * std::max(coupling, std::sqrt(lz.sweep_rate));
    const double numeric = single_passage_check(coupling, lz.sweep_rate, window);
    const double expected = lz_probability(coupling, lz.sweep_rate);
    const double abs_error = std::abs(numeric - expected);
    const double rel_error = abs_error / expected;
    const bool ok = rel_error <= 0.02 || (delta >= 1.5 && abs_error <= 1e-3);
    passed += ok;
    out << format_value(delta) << ',' << format_value(coupling) << ',' << format_value(window) << ','
        << format_value(numeric) << ',' << format_value(expected) << ',' << format_value(abs_error) << ','
        << format_value(rel_error) << ',' << (ok ? "yes" : "no") << '\n';
  }
  write_text(writer.path("lzcheck.csv"), out.str());
  report.messages.push_back("lzcheck: " + std::to_string(passed) + "/" + std::to_string(lz.adiabatic_params.size()) +
                            " within tolerance");
  return report;
}

}  // namespace

Header provenance(const RunConfig& config, const std::string& kind) {
  Header h;
  h.push_back("lzs " + std::string(kVersion) + " " + kind);
  h.push_back("units: hbar = 1; energies in rad/ns, 1 MHz = 2*pi*1e-3 rad/ns; times in ns");
  h.push_back("stokes: " + std::string(config.impulse.stokes ? "on" : "off"));
  h.push_back("phase_model: " + phase_model_name(config.impulse.phase_model));
  h.push_back("dt_policy: " + describe_dt(config.dt));
  h.push_back("slope s: " + format_value(config.system.slope()));
  for (std::size_t n = 1; n <= config.system.size(); ++n) {
    const Tls& level = config.system.tls_at(n);
    h.push_back("tls " + std::to_string(n) + ": epsilon = " + energy(level.epsilon) + ", delta = " + energy(level.delta));
  }
  h.push_back("t_axis: " + format_value(config.t_axis.front()) + " .. " + format_value(config.t_axis.back()) +
              " ns, " + std::to_string(config.t_axis.size()) + " samples");
  h.push_back("a_axis: s*a " + energy(config.system.slope() * config.a_axis.front()) + " .. " +
              energy(config.system.slope() * config.a_axis.back()) + ", " + std::to_string(config.a_axis.size()) +
              " samples");
  std::istringstream echo(to_text(config, false));
  for (std::string line; std::getline(echo, line);)
    if (!line.empty()) h.push_back("config: " + line);
  return h;
}

RunReport run(Command command, const RunConfig& config) {
  switch (command) {
    case Command::Sweep: return run_sweep(config);
    case Command::Ft: return run_ft(config);
    case Command::Darkstate: return run_darkstate(config);
    case Command::Lzcheck: return run_lzcheck(config);
  }
  throw ConfigError("unknown command");
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error) || dynamic_cast<const DomainError*>(&error)) return 1;
  if (dynamic_cast<const NumericalError*>(&error)) return 2;
  if (dynamic_cast<const IoError*>(&error) || dynamic_cast<const std::filesystem::filesystem_error*>(&error)) return 3;
  return 2;
}

}  // namespace lzs::app
