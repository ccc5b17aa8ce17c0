#include <algorithm>
#include <cmath>
#include <string>

#include "specfor/error.hpp"
#include "specfor/filters.hpp"
#include "specfor/forensics.hpp"

namespace specfor {

Plane correlation_map(const Plane& plane, std::size_t window) {
  if (window < 3 || window % 2 == 0 || window > std::min(plane.width(), plane.height())) {
    throw Error(ErrorCode::BadWindow, "correlation window must be odd, >= 3 and fit the plane, got " +
                                          std::to_string(window));
  }
  const std::size_t r = window / 2;
  const Plane smoothed = convolve(plane, Kernel::box(3));
  const Plane px = pad_replicate(plane, r);
  const Plane py = pad_replicate(smoothed, r);
  const double n = static_cast<double>(window * window);

  Plane out(plane.width(), plane.height());
  for (std::size_t y = 0; y < plane.height(); ++y) {
    for (std::size_t x = 0; x < plane.width(); ++x) {
      double sx = 0.0, sy = 0.0;
      double xmin = px(x, y), xmax = xmin, ymin = py(x, y), ymax = ymin;
      for (std::size_t j = 0; j < window; ++j) {
        for (std::size_t i = 0; i < window; ++i) {
          const double a = px(x + i, y + j);
          const double b = py(x + i, y + j);
          sx += a;
          sy += b;
          xmin = std::min(xmin, a);
          xmax = std::max(xmax, a);
          ymin = std::min(ymin, b);
          ymax = std::max(ymax, b);
        }
      }
      if (xmin == xmax || ymin == ymax) continue;  // zero variance -> 0
      const double mx = sx / n;
      const double my = sy / n;
      double sxx = 0.0, syy = 0.0, sxy = 0.0;
      for (std::size_t j = 0; j < window; ++j) {
        for (std::size_t i = 0; i < window; ++i) {
          const double a = px(x + i, y + j) - mx;
          const double b = py(x + i, y + j) - my;
          sxx += a * a;
          syy += b * b;
          sxy += a * b;
        }
      }
      if (!(sxx > 0.0) || !(syy > 0.0)) continue;
      out(x, y) = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    }
  }
  return out;
}

}  // namespace specfor
