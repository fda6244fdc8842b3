#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "lzs/pattern.hpp"
#include "lzs/spectral.hpp"

namespace lzs::app {

/// Lines written verbatim after "# " at the top of every output file.
using Header = std::vector<std::string>;

/// CSV: '#' header, then `a_rad_per_ns,a_mhz,<T values>` and one row per
/// amplitude with values at 9 significant digits.
void export_pattern(const PatternGrid& grid, const std::string& path, const Header& header);

/// Same layout with the columns indexed by k_T (rad/ns).
void export_ftmap(const FtMap& map, const std::string& path, const Header& header);

/// Reads a file written by export_pattern. Throws IoError on malformed input.
PatternGrid read_pattern(const std::string& path);

/// 8-bit binary graymap, min-max normalized, highest amplitude on top.
/// A constant array maps to a single gray level.
void write_graymap(const Eigen::MatrixXd& values, const std::string& path);

/// printf("%.9g").
std::string format_value(double value);

/// Writes text to a file, throwing IoError on failure.
void write_text(const std::string& path, const std::string& text);

}  // namespace lzs::app
