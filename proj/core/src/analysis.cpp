#include "sphdiff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sphdiff/legendre.hpp"
#include "sphdiff/random_field.hpp"
#include "sphdiff/rng.hpp"

namespace sphdiff {

namespace {

constexpr double pi = std::numbers::pi;

void check_theta(double theta, const char* who) {
  if (!(theta >= 0.0 && theta <= pi))
    throw std::domain_error(std::string(who) + ": angular distance must lie in [0, pi]");
}

void check_time(double t, const char* who) {
  if (!(t >= 0.0))
    throw std::domain_error(std::string(who) + ": time must be nonnegative");
}

void require_oscillatory_tail(int L, const ModelParams& p, const char* who) {
  if (static_cast<double>(L) <= crossover_degree(p))
    throw std::domain_error(std::string(who) + ": L must exceed the crossover degree " +
                            std::to_string(crossover_degree(p)) +
                            " (hyperbolic modes void the bound)");
}

}  // namespace

double covariance(const CovarianceQuery& q, const AngularSpectrum& s,
                  const ModelParams& p) {
  check_theta(q.theta_distance, "covariance");
  check_time(q.t, "covariance");
  check_time(q.t_prime, "covariance");
  const int L = std::min(q.L, s.size());
  const double x = std::cos(q.theta_distance);

  double sum = 0.0;
  double pm1 = 0.0, pl = 1.0;
  for (int l = 0; l < L; ++l) {
    const auto g = attenuated_factors(l, q.t, p);
    const auto gp = attenuated_factors(l, q.t_prime, p);
    sum += (2.0 * l + 1.0) * s[l] * pl * (g.a * gp.a + g.b * gp.b);
    const double pn = (l == 0) ? x : ((2.0 * l + 1.0) * x * pl - l * pm1) / (l + 1.0);
    pm1 = pl;
    pl = pn;
  }
  return sum / (4.0 * pi);
}

AngularSpectrum evolved_spectrum(const AngularSpectrum& s, double t,
                                 const ModelParams& p) {
  check_time(t, "evolved_spectrum");
  std::vector<double> out(static_cast<std::size_t>(s.size()));
  for (int l = 0; l < s.size(); ++l) {
    const double f = mode_factor(l, t, p);
    out[static_cast<std::size_t>(l)] = s[l] * (f * f);
  }
  return AngularSpectrum(std::move(out));
}

double truncation_error_exact(int L, double t, const AngularSpectrum& s,
                              const ModelParams& p) {
  if (L < 1) throw std::domain_error("truncation_error_exact: need L >= 1");
  check_time(t, "truncation_error_exact");
  double sum = 0.0;
  for (int l = L; l < s.size(); ++l) {
    const double f = mode_factor(l, t, p);  // f^2 = e^{-c^2 t/D} (A^2 + B^2)
    sum += (2.0 * l + 1.0) * s[l] * f * f;
  }
  return std::sqrt(sum) / (2.0 * std::sqrt(pi));
}

double truncation_bound(int L, double t, const AngularSpectrum& s,
                        const ModelParams& p) {
  if (L < 1) throw std::domain_error("truncation_bound: need L >= 1");
  check_time(t, "truncation_bound");
  require_oscillatory_tail(L, p, "truncation_bound");
  // K_l' grows with l, so the sup of 1 + c^2/(2 D K_l') over l >= L sits at L.
  const auto [branch, K] = rate(L, p);
  if (branch != Branch::oscillatory)
    throw std::domain_error("truncation_bound: degree L is not oscillatory");
  const double sup = 1.0 + p.attenuation_rate() / K;
  double tail = 0.0;
  for (int l = L; l < s.size(); ++l) tail += (2.0 * l + 1.0) * s[l];
  return sup / (2.0 * std::sqrt(pi)) * std::exp(-p.attenuation_rate() * t) *
         std::sqrt(tail);
}

double chebyshev_tail_probability(int L, double t, double epsilon,
                                  const AngularSpectrum& s, const ModelParams& p) {
  if (!(epsilon > 0.0))
    throw std::domain_error("chebyshev_tail_probability: epsilon must be positive");
  if (L < 1) throw std::domain_error("chebyshev_tail_probability: need L >= 1");
  check_time(t, "chebyshev_tail_probability");
  require_oscillatory_tail(L, p, "chebyshev_tail_probability");
  double var = 0.0;
  for (int l = L; l < s.size(); ++l) {
    const double f = mode_factor(l, t, p);
    var += (2.0 * l + 1.0) * s[l] * f * f;
  }
  var /= 4.0 * pi;
  return var / (epsilon * epsilon);
}

double temporal_increment_norm(double t, double h, const AngularSpectrum& s,
                               const ModelParams& p) {
  check_time(t, "temporal_increment_norm");
  if (!(h > 0.0))
    throw std::domain_error("temporal_increment_norm: h must be positive");
  double sum = 0.0;
  for (int l = 0; l < s.size(); ++l) {
    const auto g1 = attenuated_factors(l, t + h, p);
    const auto g0 = attenuated_factors(l, t, p);
    const double da = g1.a - g0.a;
    const double db = g1.b - g0.b;
    sum += (2.0 * l + 1.0) * s[l] * (da * da + db * db);
  }
  return std::sqrt(sum) / (2.0 * std::sqrt(pi));
}

SpatialIncrement spatial_increment_mse(double theta_distance, double t, double gamma,
                                       const AngularSpectrum& s, const ModelParams& p) {
  check_theta(theta_distance, "spatial_increment_mse");
  check_time(t, "spatial_increment_mse");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::domain_error("spatial_increment_mse: gamma must lie in [0, 1]");

  const double x = std::cos(theta_distance);
  double exact = 0.0;
  double bound_sum = 0.0;
  double pm1 = 0.0, pl = 1.0;
  for (int l = 0; l < s.size(); ++l) {
    const auto g = attenuated_factors(l, t, p);
    exact += (2.0 * l + 1.0) * s[l] * (g.a * g.a + g.b * g.b) * (1.0 - pl);

    // Envelope of e^{-c^2 t/D}(A^2 + B^2) uniform in t: 1 on the hyperbolic
    // branch, (1 + c^2/(2 D K_l'))^2 on the oscillatory one.
    const auto [branch, K] = rate(l, p);
    const double env = branch == Branch::hyperbolic
                           ? 1.0
                           : (1.0 + p.attenuation_rate() / K) *
                                 (1.0 + p.attenuation_rate() / K);
    bound_sum += std::pow(2.0 * l + 1.0, 1.0 + 2.0 * gamma) * s[l] * env;

    const double pn = (l == 0) ? x : ((2.0 * l + 1.0) * x * pl - l * pm1) / (l + 1.0);
    pm1 = pl;
    pl = pn;
  }
  return {exact / (2.0 * pi), std::pow(1.0 - x, gamma) / pi * bound_sum};
}

MonteCarloEstimate monte_carlo_covariance(double theta_distance, double t,
                                          double t_prime, const AngularSpectrum& s,
                                          const ModelParams& p, int n_samples,
                                          std::uint64_t seed) {
  check_theta(theta_distance, "monte_carlo_covariance");
  check_time(t, "monte_carlo_covariance");
  check_time(t_prime, "monte_carlo_covariance");
  if (n_samples < 100)
    throw std::invalid_argument("monte_carlo_covariance: need n_samples >= 100");
  if (s.empty()) throw std::invalid_argument("monte_carlo_covariance: empty spectrum");

  const int lmax = s.lmax();
  // Point pair on a common meridian, symmetric about the equator, so the
  // angular distance is exactly theta_distance for any value in [0, pi].
  const double phi0 = 0.9;
  const double theta_p = 0.5 * (pi - theta_distance);
  const double theta_q = 0.5 * (pi + theta_distance);

  // Per-point basis tables N_lm(cos theta), m >= 0, and shared e^{im phi0}.
  const auto basis_table = [lmax](double theta) {
    std::vector<double> table(static_cast<std::size_t>(lmax + 1) * (lmax + 2) / 2);
    std::vector<double> col(lmax + 1);
    const double x = std::cos(theta);
    for (int m = 0; m <= lmax; ++m) {
      assoc_legendre_normalized_col(lmax, m, x, col);
      for (int l = m; l <= lmax; ++l)
        table[static_cast<std::size_t>(l) * (l + 1) / 2 + m] = col[l - m];
    }
    return table;
  };
  const auto table_p = basis_table(theta_p);
  const auto table_q = basis_table(theta_q);
  std::vector<std::complex<double>> phase(lmax + 1);
  for (int m = 0; m <= lmax; ++m)
    phase[m] = {std::cos(m * phi0), std::sin(m * phi0)};

  std::vector<double> f_t(lmax + 1), f_tp(lmax + 1);
  for (int l = 0; l <= lmax; ++l) {
    f_t[l] = mode_factor(l, t, p);
    f_tp[l] = mode_factor(l, t_prime, p);
  }

  const auto evaluate = [&](const HarmonicCoefficients& coeffs,
                            const std::vector<double>& table,
                            const std::vector<double>& f) {
    double v = 0.0;
    for (int l = 0; l <= lmax; ++l) {
      const std::size_t base = static_cast<std::size_t>(l) * (l + 1) / 2;
      double inner = coeffs.at(l, 0).real() * table[base];
      for (int m = 1; m <= l; ++m)
        inner += 2.0 * (coeffs.at(l, m) * phase[m]).real() * table[base + m];
      v += f[l] * inner;
    }
    return v;
  };

  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const std::uint64_t sample_seed =
        rng::derive_state(seed, 0x6d63u, static_cast<std::uint64_t>(i));
    const auto coeffs = sample_coefficients(s, sample_seed);
    const double prod =
        evaluate(coeffs, table_p, f_t) * evaluate(coeffs, table_q, f_tp);
    const double delta = prod - mean;
    mean += delta / (i + 1);
    m2 += delta * (prod - mean);
  }
  const double var = m2 / (n_samples - 1);
  return {mean, std::sqrt(std::max(var, 0.0) / n_samples)};
}

}  // namespace sphdiff
