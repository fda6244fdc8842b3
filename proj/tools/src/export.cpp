#include "lzs/app/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lzs/errors.hpp"
#include "lzs/units.hpp"

namespace lzs::app {
namespace {

std::ofstream open_for_write(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_table(const Eigen::MatrixXd& values, const std::vector<double>& columns,
                 const std::vector<double>& a_axis, const std::string& path, const Header& header) {
  auto out = open_for_write(path);
  for (const auto& line : header) out << "# " << line << '\n';
  out << "a_rad_per_ns,a_mhz";
  for (double c : columns) out << ',' << format_value(c);
  out << '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    const double a = a_axis[static_cast<std::size_t>(r)];
    out << format_value(a) << ',' << format_value(units::rad_per_ns_to_mhz(a));
    for (Eigen::Index c = 0; c < values.cols(); ++c) out << ',' << format_value(values(r, c));
    out << '\n';
  }
  finish(out, path);
}

std::vector<double> split_numbers(const std::string& line, const std::string& path, std::size_t line_no) {
  std::vector<double> values;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size())
      throw IoError(path + ":" + std::to_string(line_no) + ": malformed value '" + cell + "'");
    values.push_back(v);
  }
  return values;
}

}  // namespace

std::string format_value(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_for_write(path);
  out << text;
  finish(out, path);
}

void export_pattern(const PatternGrid& grid, const std::string& path, const Header& header) {
  write_table(grid.values, grid.t_axis, grid.a_axis, path, header);
}

void export_ftmap(const FtMap& map, const std::string& path, const Header& header) {
  write_table(map.magnitudes, map.k_axis, map.a_axis, path, header);
}

PatternGrid read_pattern(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pattern file '" + path + "'");
  PatternGrid grid;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      const std::string prefix = "a_rad_per_ns,a_mhz,";
      if (line.rfind(prefix, 0) != 0) throw IoError(path + ":" + std::to_string(line_no) + ": missing column header");
      grid.t_axis = split_numbers(line.substr(prefix.size()), path, line_no);
      have_header = true;
      continue;
    }
    auto values = split_numbers(line, path, line_no);
    if (values.size() != grid.t_axis.size() + 2)
      throw IoError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(grid.t_axis.size() + 2) +
                    " columns");
    grid.a_axis.push_back(values[0]);
    rows.push_back(std::move(values));
  }
  if (!have_header || rows.empty()) throw IoError("pattern file '" + path + "' has no data");
  grid.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(grid.t_axis.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < grid.t_axis.size(); ++c)
      grid.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c + 2];
  try {
    grid.validate();
  } catch (const DomainError& e) {
    throw IoError("pattern file '" + path + "': " + e.what());
  }
  return grid;
}

void write_graymap(const Eigen::MatrixXd& values, const std::string& path) {
  auto out = open_for_write(path, std::ios::binary);
  out << "P5\n" << values.cols() << ' ' << values.rows() << "\n255\n";
  const double lo = values.size() ? values.minCoeff() : 0.0;
  const double hi = values.size() ? values.maxCoeff() : 0.0;
  const double span = hi - lo;
  std::vector<unsigned char> row(static_cast<std::size_t>(values.cols()));
  for (Eigen::Index r = values.rows() - 1; r >= 0; --r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const double level = span > 0.0 ? (values(r, c) - lo) / span : 0.0;
      row[static_cast<std::size_t>(c)] = static_cast<unsigned char>(std::lround(255.0 * level));
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  finish(out, path);
}

}  // namespace lzs::app
