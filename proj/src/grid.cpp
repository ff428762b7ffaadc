#include "cperiod/grid.hpp"

#include <cmath>
#include <numbers>

#include "cperiod/errors.hpp"

namespace cperiod {

Grid::Grid(double start, double end, double step) : start_(start), end_(end), step_(step), size_(0) {
  if (!std::isfinite(start) || !std::isfinite(end) || !std::isfinite(step)) {
    throw ValidationError("grid bounds must be finite");
  }
  if (!(step > 0.0)) throw ValidationError("grid step must be positive");
  if (!(start < end)) throw ValidationError("grid needs start < end");
  // Relative guard keeps end itself a node when (end - start) / step is integral up to rounding.
  const double count = std::floor((end - start) / step * (1.0 + 1e-12)) + 1.0;
  if (count < 2.0) throw ValidationError("grid needs at least two nodes");
  if (count > 4e9) throw ValidationError("grid is too fine");
  size_ = static_cast<std::size_t>(count);
}

Grid default_full_line_grid() { return Grid(-200.0 * std::numbers::pi, 200.0 * std::numbers::pi, 0.005); }

Grid default_half_line_grid() { return Grid(0.0, 400.0 * std::numbers::pi, 0.005); }

}  // namespace cperiod
