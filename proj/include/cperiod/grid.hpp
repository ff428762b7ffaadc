#pragma once

#include <cstddef>

namespace cperiod {

/// Uniform sampling start, start + step, ... up to end.
///
/// Node i sits at start + i * step, so nodes never accumulate rounding drift.
class Grid {
 public:
  /// Throws ValidationError unless start < end, step > 0 and the grid has at least two nodes.
  Grid(double start, double end, double step);

  double start() const noexcept { return start_; }
  double end() const noexcept { return end_; }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return size_; }
  double operator[](std::size_t i) const noexcept { return start_ + static_cast<double>(i) * step_; }
  /// Largest node, which can sit below end() when step does not divide the span.
  double last() const noexcept { return (*this)[size_ - 1]; }

  Grid shifted(double offset) const { return Grid(start_ + offset, end_ + offset, step_); }

 private:
  double start_;
  double end_;
  double step_;
  std::size_t size_;
};

/// Default sampling windows for suprema over unbounded domains.
Grid default_full_line_grid();
Grid default_half_line_grid();

}  // namespace cperiod
