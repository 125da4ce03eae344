#include "sphdiff/legendre.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sphdiff {

namespace {

constexpr double inv_sqrt_4pi = 0.28209479177387814;  // (4 pi)^{-1/2}

void check_abscissa(double x, const char* who) {
  if (!(x >= -1.0 && x <= 1.0))
    throw std::domain_error(std::string(who) + ": abscissa " + std::to_string(x) +
                            " outside [-1, 1] is not a valid cosine");
}

void check_degree_order(int l, int m, const char* who) {
  if (l < 0 || std::abs(m) > l)
    throw std::domain_error(std::string(who) + ": invalid (l, m) = (" +
                            std::to_string(l) + ", " + std::to_string(m) + ")");
}

}  // namespace

double legendre_p(int l, double x) {
  if (l < 0) throw std::domain_error("legendre_p: degree must be nonnegative");
  check_abscissa(x, "legendre_p");
  if (l == 0) return 1.0;
  double pm1 = 1.0;
  double p = x;
  for (int n = 1; n < l; ++n) {
    const double pn = ((2.0 * n + 1.0) * x * p - n * pm1) / (n + 1.0);
    pm1 = p;
    p = pn;
  }
  return p;
}

void legendre_p_all(int lmax, double x, std::span<double> out) {
  if (lmax < 0) throw std::domain_error("legendre_p_all: lmax must be nonnegative");
  check_abscissa(x, "legendre_p_all");
  if (out.size() < static_cast<std::size_t>(lmax) + 1)
    throw std::invalid_argument("legendre_p_all: output span too small");
  out[0] = 1.0;
  if (lmax == 0) return;
  out[1] = x;
  for (int n = 1; n < lmax; ++n)
    out[n + 1] = ((2.0 * n + 1.0) * x * out[n] - n * out[n - 1]) / (n + 1.0);
}

void assoc_legendre_normalized_col(int lmax, int m, double x, std::span<double> out) {
  if (m < 0 || m > lmax)
    throw std::domain_error("assoc_legendre_normalized_col: need 0 <= m <= lmax");
  check_abscissa(x, "assoc_legendre_normalized_col");
  if (out.size() < static_cast<std::size_t>(lmax - m) + 1)
    throw std::invalid_argument("assoc_legendre_normalized_col: output span too small");

  // Sectoral seed N_mm. (1-x)(1+x) is exactly 0 at the poles, so every m != 0
  // value vanishes there instead of hitting 0 * inf.
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = inv_sqrt_4pi;
  for (int i = 1; i <= m; ++i)
    pmm *= std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * s;
  out[0] = pmm;
  if (lmax == m) return;

  double plm1 = std::sqrt(2.0 * m + 3.0) * x * pmm;  // N_{m+1,m}
  out[1] = plm1;
  double plm2 = pmm;
  for (int l = m + 2; l <= lmax; ++l) {
    const double ld = static_cast<double>(l);
    const double md = static_cast<double>(m);
    const double a = std::sqrt((4.0 * ld * ld - 1.0) / (ld * ld - md * md));
    const double b = std::sqrt((2.0 * ld + 1.0) * (ld - 1.0 - md) * (ld - 1.0 + md) /
                               ((2.0 * ld - 3.0) * (ld - md) * (ld + md)));
    const double pl = a * x * plm1 - b * plm2;
    out[l - m] = pl;
    plm2 = plm1;
    plm1 = pl;
  }
}

double assoc_legendre_normalized(int l, int m, double x) {
  check_degree_order(l, m, "assoc_legendre_normalized");
  check_abscissa(x, "assoc_legendre_normalized");
  const int am = std::abs(m);

  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = inv_sqrt_4pi;
  for (int i = 1; i <= am; ++i)
    pmm *= std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * s;
  double value = pmm;
  if (l > am) {
    double plm2 = pmm;
    double plm1 = std::sqrt(2.0 * am + 3.0) * x * pmm;
    value = plm1;
    for (int n = am + 2; n <= l; ++n) {
      const double nd = static_cast<double>(n);
      const double md = static_cast<double>(am);
      const double a = std::sqrt((4.0 * nd * nd - 1.0) / (nd * nd - md * md));
      const double b = std::sqrt((2.0 * nd + 1.0) * (nd - 1.0 - md) * (nd - 1.0 + md) /
                                 ((2.0 * nd - 3.0) * (nd - md) * (nd + md)));
      value = a * x * plm1 - b * plm2;
      plm2 = plm1;
      plm1 = value;
    }
  }
  // N_{l,-m} = (-1)^m N_lm
  if (m < 0 && (am & 1)) value = -value;
  return value;
}

std::complex<double> y_lm(int l, int m, double theta, double phi) {
  check_degree_order(l, m, "y_lm");
  const double n = assoc_legendre_normalized(l, m, std::cos(theta));
  const double mphi = static_cast<double>(m) * phi;
  return n * std::complex<double>(std::cos(mphi), std::sin(mphi));
}

double zonal_kernel(int l, double cos_theta) {
  if (l < 0) throw std::domain_error("zonal_kernel: degree must be nonnegative");
  check_abscissa(cos_theta, "zonal_kernel");
  return (2.0 * l + 1.0) / (4.0 * std::numbers::pi) * legendre_p(l, cos_theta);
}

}  // namespace sphdiff
