#include "sphdiff/mode_evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sphdiff {

namespace {

// Discriminant c^2/(4D^2) - l(l+1)k^2 whose sign selects the branch;
// K_l = c sqrt(disc), K_l' = c sqrt(-disc). Factoring c^2 out first avoids
// the cancellation that c^4/(4D^2) - c^2 l(l+1) k^2 suffers near the
// crossover.
double discriminant(int l, const ModelParams& p) {
  const double ld = static_cast<double>(l);
  return p.c * p.c / (4.0 * p.D * p.D) - ld * (ld + 1.0) * p.k * p.k;
}

// Double characteristic root: the bracket cosh + (c^2/2DK) sinh degenerates
// to 0/0; below these thresholds its limit 1 + c^2 t/(2D) is used instead.
bool near_double_root(double K, double t, const ModelParams& p) {
  const double r = p.attenuation_rate();
  return std::abs(K) * std::abs(t) < 1e-8 || K * K < 1e-12 * r * r;
}

void check_degree(int l, const char* who) {
  if (l < 0)
    throw std::domain_error(std::string(who) + ": degree must be nonnegative");
}

}  // namespace

void ModelParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c) || !(D > 0.0) || !std::isfinite(D) ||
      !(k != 0.0) || !std::isfinite(k))
    throw std::domain_error("ModelParams: require finite c > 0, D > 0, k != 0");
}

double dimensionless_time(double t, const ModelParams& p) {
  return p.attenuation_rate() * t;
}

double physical_time(double tprime, const ModelParams& p) {
  return tprime / p.attenuation_rate();
}

double crossover_degree(const ModelParams& p) {
  p.validate();
  // |k|: only k^2 enters the equation, and the crossover is positive for
  // every valid parameter set.
  const double dk = p.D * std::abs(p.k);
  return (std::sqrt(dk * dk + p.c * p.c) - dk) / (2.0 * dk);
}

BranchRate rate(int l, const ModelParams& p) {
  check_degree(l, "rate");
  p.validate();
  const double disc = discriminant(l, p);
  if (disc >= 0.0) return {Branch::hyperbolic, p.c * std::sqrt(disc)};
  return {Branch::oscillatory, p.c * std::sqrt(-disc)};
}

double a_factor(int l, double t, const ModelParams& p) {
  const auto [branch, K] = rate(l, p);
  if (branch != Branch::hyperbolic) return 0.0;
  const double r = p.attenuation_rate();
  if (near_double_root(K, t, p)) return 1.0 + r * t;
  return std::cosh(t * K) + r / K * std::sinh(t * K);
}

double b_factor(int l, double t, const ModelParams& p) {
  const auto [branch, K] = rate(l, p);
  if (branch != Branch::oscillatory) return 0.0;
  return std::cos(t * K) + p.attenuation_rate() / K * std::sin(t * K);
}

AttenuatedFactors attenuated_factors(int l, double t, const ModelParams& p) {
  check_degree(l, "attenuated_factors");
  p.validate();
  if (l == 0) return {1.0, 0.0};  // constant mode is conserved

  const double r = p.attenuation_rate();
  const double x = r * t;
  const double disc = discriminant(l, p);
  if (disc >= 0.0) {
    const double K = p.c * std::sqrt(disc);
    if (near_double_root(K, t, p)) return {std::exp(-x) * (1.0 + r * t), 0.0};
    // e^{-x} cosh(tK) = (em + ep)/2 with both exponents <= 0 (K <= c^2/2D),
    // so nothing overflows however large t is.
    const double em = std::exp(-(x - t * K));
    const double ep = std::exp(-(x + t * K));
    return {0.5 * (em + ep) + 0.5 * (r / K) * (em - ep), 0.0};
  }
  const double K = p.c * std::sqrt(-disc);
  return {0.0, std::exp(-x) * (std::cos(t * K) + r / K * std::sin(t * K))};
}

double mode_factor(int l, double t, const ModelParams& p) {
  const auto [ga, gb] = attenuated_factors(l, t, p);
  return ga + gb;
}

EvolutionFactors evolution_factors(int l, double t, const ModelParams& p) {
  const auto [branch, K] = rate(l, p);
  return {l,
          branch,
          K,
          a_factor(l, t, p),
          b_factor(l, t, p),
          mode_factor(l, t, p)};
}

double mode_ode_oracle(int l, double t, const ModelParams& p, long steps) {
  check_degree(l, "mode_ode_oracle");
  p.validate();
  if (steps < 1) throw std::invalid_argument("mode_ode_oracle: steps must be positive");
  if (t < 0.0) throw std::invalid_argument("mode_ode_oracle: t must be nonnegative");

  const double ld = static_cast<double>(l);
  const double lam = ld * (ld + 1.0) * p.k * p.k;
  const double h = t / static_cast<double>(steps);
  const double stiffness = std::max(p.c * p.c / p.D,
                                    p.c * std::abs(p.k) * std::sqrt(ld * (ld + 1.0)));
  if (h * stiffness >= 0.1)
    throw std::invalid_argument(
        "mode_ode_oracle: step size too large; need t/steps * max(c^2/D, "
        "c|k|sqrt(l(l+1))) < 0.1");

  const double c2 = p.c * p.c;
  const auto acc = [&](double y, double v) { return -c2 * (v / p.D + lam * y); };

  double y = 1.0, v = 0.0;
  for (long i = 0; i < steps; ++i) {
    const double k1y = v;
    const double k1v = acc(y, v);
    const double k2y = v + 0.5 * h * k1v;
    const double k2v = acc(y + 0.5 * h * k1y, v + 0.5 * h * k1v);
    const double k3y = v + 0.5 * h * k2v;
    const double k3v = acc(y + 0.5 * h * k2y, v + 0.5 * h * k2v);
    const double k4y = v + h * k3v;
    const double k4v = acc(y + h * k3y, v + h * k3v);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  return y;
}

}  // namespace sphdiff
