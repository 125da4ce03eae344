#include "sphdiff/diffusion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sphdiff {

namespace {

void check_positive(double v, const char* name, const char* who) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::domain_error(std::string(who) + ": " + name + " must be positive");
}

}  // namespace

double point_source_density(double r, double t, double diffusivity, double mass) {
  check_positive(t, "t", "point_source_density");
  check_positive(diffusivity, "D", "point_source_density");
  check_positive(mass, "Q", "point_source_density");
  const double denom = std::pow(4.0 * std::numbers::pi * diffusivity * t, 1.5);
  return mass / denom * std::exp(-r * r / (4.0 * diffusivity * t));
}

double level_set_radius(double t, double mass, double threshold_density,
                        double diffusivity) {
  check_positive(t, "t", "level_set_radius");
  check_positive(mass, "Q", "level_set_radius");
  check_positive(threshold_density, "u", "level_set_radius");
  check_positive(diffusivity, "D", "level_set_radius");
  // The level-set expression carries the (8 pi D t)^{3/2} prefactor; its
  // stationary point is exactly what diffusion_length() returns in closed form.
  const double arg = mass / (threshold_density *
                             std::pow(8.0 * std::numbers::pi * diffusivity * t, 1.5));
  if (arg <= 1.0) return 0.0;
  return 2.0 * std::sqrt(diffusivity * t * std::log(arg));
}

DiffusionLength diffusion_length(double mass, double threshold_density,
                                 double diffusivity) {
  check_positive(mass, "Q", "diffusion_length");
  check_positive(threshold_density, "u", "diffusion_length");
  check_positive(diffusivity, "D", "diffusion_length");
  const double ratio = mass / threshold_density;
  const double t_star = std::pow(ratio, 2.0 / 3.0) /
                        (8.0 * std::numbers::e * std::numbers::pi * diffusivity);
  const double r_d =
      0.5 * std::sqrt(3.0 / (std::numbers::pi * std::numbers::e)) * std::cbrt(ratio);
  return {r_d, t_star};
}

}  // namespace sphdiff
