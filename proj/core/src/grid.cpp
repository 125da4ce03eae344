#include "sphdiff/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sphdiff/quadrature.hpp"

namespace sphdiff {

SphereGrid SphereGrid::equal_angle(int ntheta, int nphi) {
  if (ntheta < 1 || nphi < 1)
    throw std::invalid_argument("SphereGrid::equal_angle: need ntheta, nphi >= 1");
  SphereGrid g;
  g.layout_ = GridLayout::equal_angle;
  g.ntheta_ = ntheta;
  g.nphi_ = nphi;
  g.ring_theta_.resize(ntheta);
  for (int i = 0; i < ntheta; ++i)
    g.ring_theta_[i] = (i + 0.5) * std::numbers::pi / ntheta;
  return g;
}

SphereGrid SphereGrid::gauss_legendre(int ntheta, int nphi) {
  if (ntheta < 1 || nphi < 1)
    throw std::invalid_argument("SphereGrid::gauss_legendre: need ntheta, nphi >= 1");
  SphereGrid g;
  g.layout_ = GridLayout::gauss_legendre;
  g.ntheta_ = ntheta;
  g.nphi_ = nphi;
  const auto rule = sphdiff::gauss_legendre(ntheta);
  g.ring_theta_.resize(ntheta);
  g.ring_weight_.resize(ntheta);
  for (int i = 0; i < ntheta; ++i) {
    // nodes ascend in x = cos(theta); rings run north to south
    g.ring_theta_[i] = std::acos(rule.nodes[ntheta - 1 - i]);
    g.ring_weight_[i] = rule.weights[ntheta - 1 - i];
  }
  return g;
}

SphereGrid SphereGrid::from_points(std::vector<std::pair<double, double>> points) {
  SphereGrid g;
  g.layout_ = GridLayout::points;
  g.points_ = std::move(points);
  return g;
}

std::size_t SphereGrid::size() const {
  if (layout_ == GridLayout::points) return points_.size();
  return static_cast<std::size_t>(ntheta_) * static_cast<std::size_t>(nphi_);
}

std::pair<double, double> SphereGrid::point(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("SphereGrid::point: index out of range");
  if (layout_ == GridLayout::points) return points_[i];
  const std::size_t ring = i / static_cast<std::size_t>(nphi_);
  const std::size_t j = i % static_cast<std::size_t>(nphi_);
  return {ring_theta_[ring], 2.0 * std::numbers::pi * static_cast<double>(j) / nphi_};
}

SphereGrid parse_grid_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const auto cross = spec.find('x', colon == std::string::npos ? 0 : colon);
  if (colon == std::string::npos || cross == std::string::npos || cross < colon)
    throw std::invalid_argument("grid spec must look like 'neq:256x512' or 'gl:64x64', got '" +
                                spec + "'");
  const std::string kind = spec.substr(0, colon);
  int ntheta = 0, nphi = 0;
  try {
    ntheta = std::stoi(spec.substr(colon + 1, cross - colon - 1));
    nphi = std::stoi(spec.substr(cross + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("grid spec has non-numeric sizes: '" + spec + "'");
  }
  if (kind == "neq") return SphereGrid::equal_angle(ntheta, nphi);
  if (kind == "gl") return SphereGrid::gauss_legendre(ntheta, nphi);
  throw std::invalid_argument("grid layout must be 'neq' or 'gl', got '" + kind + "'");
}

}  // namespace sphdiff
