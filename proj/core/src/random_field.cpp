#include "sphdiff/random_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "sphdiff/legendre.hpp"
#include "sphdiff/rng.hpp"

namespace sphdiff {

HarmonicCoefficients sample_coefficients(const AngularSpectrum& spectrum,
                                         std::uint64_t seed) {
  if (spectrum.empty())
    throw std::invalid_argument("sample_coefficients: empty spectrum");
  const int lmax = spectrum.lmax();
  HarmonicCoefficients out(lmax);
  for (int l = 0; l <= lmax; ++l) {
    const double cl = spectrum[l];
    if (cl < 0.0 || !std::isfinite(cl))
      throw std::domain_error("sample_coefficients: C_" + std::to_string(l) +
                              " is negative or not finite");
    const double sigma0 = std::sqrt(cl);
    const double sigma = std::sqrt(0.5 * cl);
    {
      rng::NormalStream ns(seed, static_cast<std::uint64_t>(l), 0);
      out.at(l, 0) = {sigma0 * ns.next(), 0.0};
    }
    for (int m = 1; m <= l; ++m) {
      rng::NormalStream ns(seed, static_cast<std::uint64_t>(l),
                           static_cast<std::uint64_t>(m));
      const double re = sigma * ns.next();
      const double im = sigma * ns.next();
      out.at(l, m) = {re, im};
    }
  }
  return out;
}

HarmonicCoefficients evolve_coefficients(const HarmonicCoefficients& coeffs,
                                         double t, const ModelParams& params) {
  HarmonicCoefficients out = coeffs;
  for (int l = 0; l <= coeffs.lmax(); ++l) {
    const double f = mode_factor(l, t, params);
    for (int m = 0; m <= l; ++m) out.at(l, m) *= f;
  }
  return out;
}

namespace {

// Inner sum of one ring (or one free point):
// u = sum_l a_l0 N_l0 + 2 Re sum_{m>0} sum_l a_lm N_lm e^{im phi}.
void synthesize_ring(const HarmonicCoefficients& coeffs, double theta, int nphi,
                     double* out, std::vector<std::complex<double>>& gm,
                     std::vector<double>& col) {
  const int lmax = coeffs.lmax();
  const double x = std::cos(theta);
  for (int m = 0; m <= lmax; ++m) {
    assoc_legendre_normalized_col(lmax, m, x, col);
    std::complex<double> acc{0.0, 0.0};
    for (int l = m; l <= lmax; ++l) acc += coeffs.at(l, m) * col[l - m];
    gm[m] = acc;
  }
  const double dphi = 2.0 * std::numbers::pi / nphi;
  for (int j = 0; j < nphi; ++j) {
    const double phi = dphi * j;
    const std::complex<double> w{std::cos(phi), std::sin(phi)};
    std::complex<double> pw = w;
    double v = gm[0].real();
    for (int m = 1; m <= lmax; ++m) {
      v += 2.0 * (gm[m] * pw).real();
      pw *= w;
    }
    out[j] = v;
  }
}

double synthesize_point(const HarmonicCoefficients& coeffs, double theta, double phi,
                        std::vector<double>& col) {
  const int lmax = coeffs.lmax();
  const double x = std::cos(theta);
  double v = 0.0;
  for (int m = 0; m <= lmax; ++m) {
    assoc_legendre_normalized_col(lmax, m, x, col);
    std::complex<double> acc{0.0, 0.0};
    for (int l = m; l <= lmax; ++l) acc += coeffs.at(l, m) * col[l - m];
    if (m == 0) {
      v += acc.real();
    } else {
      const double mphi = m * phi;
      v += 2.0 * (acc * std::complex<double>(std::cos(mphi), std::sin(mphi))).real();
    }
  }
  return v;
}

}  // namespace

std::vector<double> synthesize(const HarmonicCoefficients& coeffs,
                               const SphereGrid& grid, unsigned threads) {
  if (grid.size() == 0) throw std::invalid_argument("synthesize: empty grid");
  if (coeffs.lmax() < 0) throw std::invalid_argument("synthesize: empty coefficients");
  std::vector<double> field(grid.size());
  const int lmax = coeffs.lmax();

  if (grid.structured()) {
    const int nring = grid.ntheta();
    const int nphi = grid.nphi();
    if (threads == 0)
      threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(nring));

    auto run = [&](int first, int last) {
      std::vector<std::complex<double>> gm(lmax + 1);
      std::vector<double> col(lmax + 1);
      for (int r = first; r < last; ++r)
        synthesize_ring(coeffs, grid.ring_theta()[r], nphi,
                        field.data() + static_cast<std::size_t>(r) * nphi, gm, col);
    };

    if (threads <= 1) {
      run(0, nring);
    } else {
      // Rings are independent, so any partition gives identical output.
      std::vector<std::thread> pool;
      pool.reserve(threads);
      const int chunk = (nring + static_cast<int>(threads) - 1) / static_cast<int>(threads);
      for (unsigned ti = 0; ti < threads; ++ti) {
        const int first = static_cast<int>(ti) * chunk;
        const int last = std::min(nring, first + chunk);
        if (first >= last) break;
        pool.emplace_back(run, first, last);
      }
      for (auto& th : pool) th.join();
    }
  } else {
    std::vector<double> col(lmax + 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto [theta, phi] = grid.point(i);
      field[i] = synthesize_point(coeffs, theta, phi, col);
    }
  }
  return field;
}

HarmonicCoefficients analyze(std::span<const double> field, const SphereGrid& grid,
                             int lmax) {
  if (!grid.supports_analysis())
    throw std::invalid_argument("analyze: grid must use the gauss_legendre layout");
  if (lmax < 0) throw std::invalid_argument("analyze: lmax must be nonnegative");
  if (grid.ntheta() < lmax + 1 || grid.nphi() < 2 * lmax + 1)
    throw std::invalid_argument(
        "analyze: insufficient resolution (aliasing); need ntheta >= lmax+1 and "
        "nphi >= 2*lmax+1");
  if (field.size() != grid.size())
    throw std::invalid_argument("analyze: field size does not match grid size");

  HarmonicCoefficients out(lmax);
  const int nphi = grid.nphi();
  const double dphi = 2.0 * std::numbers::pi / nphi;
  std::vector<std::complex<double>> fm(lmax + 1);
  std::vector<double> col(lmax + 1);

  for (int r = 0; r < grid.ntheta(); ++r) {
    const double theta = grid.ring_theta()[r];
    const double w = grid.ring_weight()[r];
    const double* row = field.data() + static_cast<std::size_t>(r) * nphi;

    // F_m = dphi sum_j u_j e^{-im phi_j}
    std::fill(fm.begin(), fm.end(), std::complex<double>{0.0, 0.0});
    for (int j = 0; j < nphi; ++j) {
      const double phi = dphi * j;
      const std::complex<double> w1{std::cos(phi), -std::sin(phi)};
      std::complex<double> pw{1.0, 0.0};
      const double u = row[j];
      for (int m = 0; m <= lmax; ++m) {
        fm[m] += u * pw;
        pw *= w1;
      }
    }

    const double x = std::cos(theta);
    for (int m = 0; m <= lmax; ++m) {
      assoc_legendre_normalized_col(lmax, m, x, col);
      const std::complex<double> fmd = fm[m] * (w * dphi);
      for (int l = m; l <= lmax; ++l) out.at(l, m) += fmd * col[l - m];
    }
  }
  return out;
}

double green_function(double theta, double t, int L, const ModelParams& params) {
  if (L < 1) throw std::invalid_argument("green_function: need L >= 1");
  const double x = std::cos(theta);
  double sum = 0.0;
  double pm1 = 0.0;  // P_{l-1}
  double p = 1.0;    // P_l, starting at l = 0
  for (int l = 0; l < L; ++l) {
    sum += (2.0 * l + 1.0) * p * mode_factor(l, t, params);
    const double pn = (l == 0) ? x : ((2.0 * l + 1.0) * x * p - l * pm1) / (l + 1.0);
    pm1 = p;
    p = pn;
  }
  return sum / (4.0 * std::numbers::pi);
}

}  // namespace sphdiff
