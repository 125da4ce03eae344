#pragma once

namespace sphdiff {

/// 3-D heat kernel for a point disturbance of total mass Q:
///   u(r, t) = Q (4 pi D t)^{-3/2} e^{-r^2/(4 D t)}.
/// Throws std::domain_error unless t > 0, D > 0, Q > 0.
double point_source_density(double r, double t, double diffusivity, double mass);

/// Radius of the density level set at threshold u and time t,
///   r(t) = 2 sqrt(D t) ln^{1/2}( Q / (u (8 pi D t)^{3/2}) ),
/// or 0 once the level set has closed (log argument <= 1).
double level_set_radius(double t, double mass, double threshold_density,
                        double diffusivity);

struct DiffusionLength {
  double r_d;     ///< maximum level-set radius; independent of D
  double t_star;  ///< time at which the maximum is reached
};

/// Stationary point of level_set_radius in closed form:
///   t* = (Q/u)^{2/3} / (8 e pi D),
///   r_D = (1/2) sqrt(3/(pi e)) (Q/u)^{1/3} ~= 0.29635 (Q/u)^{1/3}.
DiffusionLength diffusion_length(double mass, double threshold_density,
                                 double diffusivity);

}  // namespace sphdiff
