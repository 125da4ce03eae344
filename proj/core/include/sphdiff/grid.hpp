#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace sphdiff {

enum class GridLayout { equal_angle, gauss_legendre, points };

/// Ordered set of (theta, phi) sample positions on the unit sphere.
///
/// Structured layouts are ring-ordered: point i = ring * nphi + j with
/// phi_j = 2 pi j / nphi. equal_angle places rings at theta = (i+1/2) pi/n;
/// gauss_legendre places them at the Gauss nodes in cos(theta) and carries
/// the quadrature weights needed for analysis.
class SphereGrid {
 public:
  static SphereGrid equal_angle(int ntheta, int nphi);
  static SphereGrid gauss_legendre(int ntheta, int nphi);
  static SphereGrid from_points(std::vector<std::pair<double, double>> points);

  GridLayout layout() const { return layout_; }
  std::size_t size() const;
  std::pair<double, double> point(std::size_t i) const;

  // Structured layouts only (0 / empty otherwise).
  int ntheta() const { return ntheta_; }
  int nphi() const { return nphi_; }
  const std::vector<double>& ring_theta() const { return ring_theta_; }
  /// Weights for the integral over cos(theta); gauss_legendre only.
  const std::vector<double>& ring_weight() const { return ring_weight_; }

  bool structured() const { return layout_ != GridLayout::points; }
  bool supports_analysis() const { return layout_ == GridLayout::gauss_legendre; }

 private:
  SphereGrid() = default;

  GridLayout layout_ = GridLayout::points;
  int ntheta_ = 0, nphi_ = 0;
  std::vector<double> ring_theta_;
  std::vector<double> ring_weight_;
  std::vector<std::pair<double, double>> points_;
};

/// Parses "neq:NTHETAxNPHI" (equal-angle) or "gl:NTHETAxNPHI" (Gauss-Legendre),
/// e.g. "neq:256x512". Throws std::invalid_argument on malformed input.
SphereGrid parse_grid_spec(const std::string& spec);

}  // namespace sphdiff
