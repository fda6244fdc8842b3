#include "lzs/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "lzs/errors.hpp"
#include "lzs/pattern.hpp"
#include "lzs/units.hpp"

namespace lzs::app {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  if (line == 0) throw ConfigError("config: " + message);
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double parse_number(std::string_view text, std::size_t line) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value))
    fail(line, "malformed number '" + std::string(text) + "'");
  return value;
}

std::size_t parse_count(std::string_view text, std::size_t line) {
  const double value = parse_number(text, line);
  if (value < 0 || value != std::floor(value) || value > 1e9)
    fail(line, "expected a non-negative integer, got '" + std::string(trim(text)) + "'");
  return static_cast<std::size_t>(value);
}

std::vector<double> parse_list(std::string_view text, std::size_t line) {
  std::vector<double> values;
  while (true) {
    const auto comma = text.find(',');
    values.push_back(parse_number(text.substr(0, comma), line));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

bool parse_flag(std::string_view text, std::size_t line) {
  text = trim(text);
  if (text == "on" || text == "true" || text == "yes" || text == "1") return true;
  if (text == "off" || text == "false" || text == "no" || text == "0") return false;
  fail(line, "expected on/off, got '" + std::string(text) + "'");
}

std::string format_number(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_number(values[i]);
  }
  return out;
}

using Handler = std::function<void(std::string_view, std::size_t)>;

struct Parser {
  RunConfig config;
  std::map<std::string, std::size_t> seen;  // "section.key" -> line
  std::map<std::string, std::map<std::string, Handler, std::less<>>, std::less<>> table;

  std::size_t line_of(const std::string& key) const {
    auto it = seen.find(key);
    return it == seen.end() ? 0 : it->second;
  }

  Parser() {
    RunConfig& c = config;
    table["system"] = {
        {"epsilon_mhz", [&c](auto v, auto l) { c.system_input.epsilon_mhz = parse_list(v, l); }},
        {"delta_mhz", [&c](auto v, auto l) { c.system_input.delta_mhz = parse_list(v, l); }},
        {"slope", [&c](auto v, auto l) { c.system_input.slope = parse_number(v, l); }},
    };
    table["grid"] = {
        {"t_min_ns", [&c](auto v, auto l) { c.grid.t_min_ns = parse_number(v, l); }},
        {"t_max_ns", [&c](auto v, auto l) { c.grid.t_max_ns = parse_number(v, l); }},
        {"t_samples", [&c](auto v, auto l) { c.grid.t_samples = parse_count(v, l); }},
        {"a_min_mhz", [&c](auto v, auto l) { c.grid.a_min_mhz = parse_number(v, l); }},
        {"a_max_mhz", [&c](auto v, auto l) { c.grid.a_max_mhz = parse_number(v, l); }},
        {"a_samples", [&c](auto v, auto l) { c.grid.a_samples = parse_count(v, l); }},
    };
    table["engine"] = {
        {"mode",
         [&c](auto v, auto l) {
           v = trim(v);
           if (v == "analytic")
             c.engine = Engine::Analytic;
           else if (v == "numeric")
             c.engine = Engine::Numeric;
           else if (v == "both")
             c.engine = Engine::Both;
           else
             fail(l, "engine mode must be analytic, numeric or both, got '" + std::string(v) + "'");
         }},
        {"stokes", [&c](auto v, auto l) { c.impulse.stokes = parse_flag(v, l); }},
        {"phase_model",
         [&c](auto v, auto l) {
           v = trim(v);
           if (v == "adiabatic")
             c.impulse.phase_model = PhaseModel::Adiabatic;
           else if (v == "diabatic")
             c.impulse.phase_model = PhaseModel::Diabatic;
           else
             fail(l, "phase_model must be adiabatic or diabatic, got '" + std::string(v) + "'");
         }},
    };
    table["numeric"] = {
        {"dt_policy",
         [&c](auto v, auto l) {
           v = trim(v);
           if (v == "auto")
             c.dt.kind = DtPolicy::Kind::Automatic;
           else if (v == "fixed")
             c.dt.kind = DtPolicy::Kind::Fixed;
           else
             fail(l, "dt_policy must be auto or fixed, got '" + std::string(v) + "'");
         }},
        {"dt_ns", [&c](auto v, auto l) { c.dt.fixed_dt = parse_number(v, l); }},
        {"phase_per_step", [&c](auto v, auto l) { c.dt.phase_per_step = parse_number(v, l); }},
        {"min_steps", [&c](auto v, auto l) { c.dt.min_steps = static_cast<double>(parse_count(v, l)); }},
    };
    table["spectral"] = {
        {"enabled", [&c](auto v, auto l) { c.spectral.enabled = parse_flag(v, l); }},
        {"window",
         [&c](auto v, auto l) {
           v = trim(v);
           if (v == "none")
             c.spectral.hann = false;
           else if (v == "hann")
             c.spectral.hann = true;
           else
             fail(l, "window must be none or hann, got '" + std::string(v) + "'");
         }},
        {"threshold", [&c](auto v, auto l) { c.spectral.threshold = parse_number(v, l); }},
    };
    table["darkstate"] = {
        {"omega1_mhz", [&c](auto v, auto l) { c.dark.omega1_mhz = parse_number(v, l); }},
        {"omega2_mhz", [&c](auto v, auto l) { c.dark.omega2_mhz = parse_number(v, l); }},
        {"omega_min_mhz", [&c](auto v, auto l) { c.dark.omega_min_mhz = parse_number(v, l); }},
        {"omega_max_mhz", [&c](auto v, auto l) { c.dark.omega_max_mhz = parse_number(v, l); }},
        {"samples", [&c](auto v, auto l) { c.dark.samples = parse_count(v, l); }},
    };
    table["lzcheck"] = {
        {"adiabatic_params", [&c](auto v, auto l) { c.lzcheck.adiabatic_params = parse_list(v, l); }},
        {"sweep_rate", [&c](auto v, auto l) { c.lzcheck.sweep_rate = parse_number(v, l); }},
        {"window_factor", [&c](auto v, auto l) { c.lzcheck.window_factor = parse_number(v, l); }},
    };
    table["ft"] = {
        {"input", [&c](auto v, auto) { c.ft_input = std::string(trim(v)); }},
    };
    table["output"] = {
        {"dir", [&c](auto v, auto) { c.output.dir = std::string(trim(v)); }},
        {"image", [&c](auto v, auto l) { c.output.image = parse_flag(v, l); }},
        {"workers", [&c](auto v, auto l) { c.output.workers = parse_count(v, l); }},
    };
  }

  void feed(std::string_view text) {
    std::string section;
    std::size_t line_no = 0;
    while (!text.empty()) {
      ++line_no;
      const auto newline = text.find('\n');
      std::string_view line = text.substr(0, newline);
      text.remove_prefix(newline == std::string_view::npos ? text.size() : newline + 1);

      const auto comment = line.find_first_of("#;");
      if (comment != std::string_view::npos) line = line.substr(0, comment);
      line = trim(line);
      if (line.empty()) continue;

      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "unterminated section header");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (!table.contains(section)) fail(line_no, "unknown section [" + section + "]");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(line_no, "expected key = value");
      const std::string key(trim(line.substr(0, eq)));
      const std::string_view value = trim(line.substr(eq + 1));
      if (section.empty()) fail(line_no, "key '" + key + "' outside of a section");
      const auto& keys = table.find(section)->second;
      const auto handler = keys.find(key);
      if (handler == keys.end()) fail(line_no, "unknown key '" + key + "' in [" + section + "]");
      const std::string full = section + "." + key;
      if (seen.contains(full)) fail(line_no, "duplicate key '" + key + "' in [" + section + "]");
      seen[full] = line_no;
      handler->second(value, line_no);
    }
  }

  void finish() {
    RunConfig& c = config;
    SystemInput& s = c.system_input;
    const std::size_t eps_line = line_of("system.epsilon_mhz");
    const std::size_t delta_line = line_of("system.delta_mhz");
    if (s.epsilon_mhz.empty()) fail(eps_line, "epsilon_mhz needs at least one TLS");
    if (!seen.contains("system.delta_mhz")) s.delta_mhz.assign(s.epsilon_mhz.size(), 10.0);
    if (s.delta_mhz.size() != s.epsilon_mhz.size())
      fail(delta_line, "delta_mhz has " + std::to_string(s.delta_mhz.size()) + " entries but epsilon_mhz has " +
                           std::to_string(s.epsilon_mhz.size()));
    if (s.epsilon_mhz.front() <= 0.0) fail(eps_line, "invariant violated: TLS energies must be positive");
    for (std::size_t i = 1; i < s.epsilon_mhz.size(); ++i)
      if (!(s.epsilon_mhz[i] > s.epsilon_mhz[i - 1]))
        fail(eps_line, "invariant violated: TLS energies must be strictly increasing");
    for (double d : s.delta_mhz)
      if (d < 0.0) fail(delta_line, "invariant violated: couplings must be non-negative");
    if (!(s.slope > 0.0)) fail(line_of("system.slope"), "invariant violated: slope must be positive");

    std::vector<Tls> tls;
    for (std::size_t i = 0; i < s.epsilon_mhz.size(); ++i)
      tls.push_back({units::mhz_to_rad_per_ns(s.epsilon_mhz[i]), units::mhz_to_rad_per_ns(s.delta_mhz[i])});
    c.system = SystemSpec(std::move(tls), s.slope);

    GridInput& g = c.grid;
    if (!seen.contains("grid.a_min_mhz")) g.a_min_mhz = 0.5 * s.epsilon_mhz.front() / s.slope;
    if (!seen.contains("grid.a_max_mhz")) g.a_max_mhz = 3.0 * s.epsilon_mhz.back() / s.slope;
    if (!(g.t_min_ns > 0.0)) fail(line_of("grid.t_min_ns"), "invariant violated: t_min_ns must be positive");
    if (!(g.t_max_ns > g.t_min_ns)) fail(line_of("grid.t_max_ns"), "invariant violated: t_max_ns must exceed t_min_ns");
    if (g.t_samples < 2) fail(line_of("grid.t_samples"), "invariant violated: t_samples must be at least 2");
    if (!(g.a_min_mhz > 0.0)) fail(line_of("grid.a_min_mhz"), "invariant violated: a_min_mhz must be positive");
    if (!(g.a_max_mhz > g.a_min_mhz)) fail(line_of("grid.a_max_mhz"), "invariant violated: a_max_mhz must exceed a_min_mhz");
    if (g.a_samples < 2) fail(line_of("grid.a_samples"), "invariant violated: a_samples must be at least 2");
    c.t_axis = linspace(g.t_min_ns, g.t_max_ns, g.t_samples);
    c.a_axis = linspace(units::mhz_to_rad_per_ns(g.a_min_mhz), units::mhz_to_rad_per_ns(g.a_max_mhz), g.a_samples);

    if (c.dt.kind == DtPolicy::Kind::Fixed && !(c.dt.fixed_dt > 0.0))
      fail(line_of("numeric.dt_ns"), "invariant violated: a fixed dt_policy needs dt_ns > 0");
    if (!(c.dt.phase_per_step > 0.0) || c.dt.phase_per_step > kMaxStepPhase)
      fail(line_of("numeric.phase_per_step"), "invariant violated: phase_per_step must lie in (0, 0.1]");
    if (c.dt.min_steps < 2) fail(line_of("numeric.min_steps"), "invariant violated: min_steps must be at least 2");

    if (!(c.spectral.threshold > 0.0 && c.spectral.threshold < 1.0))
      fail(line_of("spectral.threshold"), "invariant violated: threshold must lie in (0, 1)");

    if (c.dark.omega1_mhz == 0.0 && c.dark.omega2_mhz == 0.0)
      fail(line_of("darkstate.omega2_mhz"), "invariant violated: at least one dark-state coupling must be non-zero");
    if (!(c.dark.omega_max_mhz > c.dark.omega_min_mhz))
      fail(line_of("darkstate.omega_max_mhz"), "invariant violated: omega_max_mhz must exceed omega_min_mhz");
    if (c.dark.samples < 2) fail(line_of("darkstate.samples"), "invariant violated: samples must be at least 2");

    if (c.lzcheck.adiabatic_params.empty())
      fail(line_of("lzcheck.adiabatic_params"), "adiabatic_params must not be empty");
    for (double d : c.lzcheck.adiabatic_params)
      if (d < 0.0) fail(line_of("lzcheck.adiabatic_params"), "invariant violated: adiabatic params must be >= 0");
    if (!(c.lzcheck.sweep_rate > 0.0))
      fail(line_of("lzcheck.sweep_rate"), "invariant violated: sweep_rate must be positive");
    if (c.lzcheck.window_factor < 20.0)
      fail(line_of("lzcheck.window_factor"), "invariant violated: window_factor must be at least 20");

    if (c.output.dir.empty()) fail(line_of("output.dir"), "output dir must not be empty");
    if (c.output.workers < 1) fail(line_of("output.workers"), "invariant violated: workers must be at least 1");
  }
};

}  // namespace

RunConfig parse_config(std::string_view text) {
  Parser parser;
  parser.feed(text);
  parser.finish();
  return std::move(parser.config);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string_view engine_name(Engine engine) {
  switch (engine) {
    case Engine::Analytic: return "analytic";
    case Engine::Numeric: return "numeric";
    case Engine::Both: return "both";
  }
  return "analytic";
}

std::string describe_dt(const DtPolicy& dt) {
  if (dt.kind == DtPolicy::Kind::Fixed) return "fixed dt_ns=" + format_number(dt.fixed_dt);
  return "auto dt=min(" + format_number(dt.phase_per_step) + "/max(eps_N, s*A, delta_max), T/" +
         format_number(dt.min_steps) + ")";
}

std::string to_text(const RunConfig& c, bool with_output) {
  std::ostringstream out;
  out << "[system]\n"
      << "epsilon_mhz = " << format_list(c.system_input.epsilon_mhz) << "\n"
      << "delta_mhz = " << format_list(c.system_input.delta_mhz) << "\n"
      << "slope = " << format_number(c.system_input.slope) << "\n\n"
      << "[grid]\n"
      << "t_min_ns = " << format_number(c.grid.t_min_ns) << "\n"
      << "t_max_ns = " << format_number(c.grid.t_max_ns) << "\n"
      << "t_samples = " << c.grid.t_samples << "\n"
      << "a_min_mhz = " << format_number(c.grid.a_min_mhz) << "\n"
      << "a_max_mhz = " << format_number(c.grid.a_max_mhz) << "\n"
      << "a_samples = " << c.grid.a_samples << "\n\n"
      << "[engine]\n"
      << "mode = " << engine_name(c.engine) << "\n"
      << "stokes = " << (c.impulse.stokes ? "on" : "off") << "\n"
      << "phase_model = " << (c.impulse.phase_model == PhaseModel::Adiabatic ? "adiabatic" : "diabatic") << "\n\n"
      << "[numeric]\n"
      << "dt_policy = " << (c.dt.kind == DtPolicy::Kind::Fixed ? "fixed" : "auto") << "\n"
      << "dt_ns = " << format_number(c.dt.fixed_dt) << "\n"
      << "phase_per_step = " << format_number(c.dt.phase_per_step) << "\n"
      << "min_steps = " << format_number(c.dt.min_steps) << "\n\n"
      << "[spectral]\n"
      << "enabled = " << (c.spectral.enabled ? "on" : "off") << "\n"
      << "window = " << (c.spectral.hann ? "hann" : "none") << "\n"
      << "threshold = " << format_number(c.spectral.threshold) << "\n\n"
      << "[darkstate]\n"
      << "omega1_mhz = " << format_number(c.dark.omega1_mhz) << "\n"
      << "omega2_mhz = " << format_number(c.dark.omega2_mhz) << "\n"
      << "omega_min_mhz = " << format_number(c.dark.omega_min_mhz) << "\n"
      << "omega_max_mhz = " << format_number(c.dark.omega_max_mhz) << "\n"
      << "samples = " << c.dark.samples << "\n\n"
      << "[lzcheck]\n"
      << "adiabatic_params = " << format_list(c.lzcheck.adiabatic_params) << "\n"
      << "sweep_rate = " << format_number(c.lzcheck.sweep_rate) << "\n"
      << "window_factor = " << format_number(c.lzcheck.window_factor) << "\n\n";
  if (!c.ft_input.empty()) out << "[ft]\n" << "input = " << c.ft_input << "\n\n";
  if (!with_output) return out.str();
  out << "[output]\n"
      << "dir = " << c.output.dir << "\n"
      << "image = " << (c.output.image ? "on" : "off") << "\n"
      << "workers = " << c.output.workers << "\n";
  return out.str();
}

}  // namespace lzs::app
