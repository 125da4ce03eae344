#include "sphdiff/rng.hpp"

#include <cmath>
#include <numbers>

namespace sphdiff::rng {

double NormalStream::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = to_unit_positive(splitmix64(state_));
  const double u2 = to_unit(splitmix64(state_));
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

}  // namespace sphdiff::rng
