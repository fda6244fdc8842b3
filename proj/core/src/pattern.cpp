#include "lzs/pattern.hpp"

#include <cmath>
#include <string>

#include "lzs/errors.hpp"

namespace lzs {

void require_monotone(const std::vector<double>& axis, const char* name) {
  if (axis.size() < 2) throw DomainError(std::string(name) + " needs at least two samples");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!std::isfinite(axis[i])) throw DomainError(std::string(name) + " has a non-finite sample");
    if (i > 0 && !(axis[i] > axis[i - 1]))
      throw DomainError(std::string(name) + " must be strictly increasing");
  }
}

bool is_uniform(const std::vector<double>& axis, double rel_tol) {
  if (axis.size() < 3) return true;
  const double step = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (std::abs((axis[i] - axis[i - 1]) - step) > rel_tol * std::abs(step)) return false;
  }
  return true;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  if (n > 1) out.back() = hi;
  return out;
}

void PatternGrid::validate() const {
  require_monotone(t_axis, "t_axis");
  require_monotone(a_axis, "a_axis");
  if (values.rows() != static_cast<Eigen::Index>(a_axis.size()) ||
      values.cols() != static_cast<Eigen::Index>(t_axis.size()))
    throw DomainError("pattern shape does not match its axes");
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double v = values.data()[i];
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("pattern entry outside [0, 1]");
  }
}

}  // namespace lzs
