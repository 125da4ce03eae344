#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace sphdiff {

/// Triangular container of spherical-harmonic coefficients a_lm,
/// 0 <= l <= lmax, |m| <= l.
///
/// Only m >= 0 is stored; negative orders are reconstructed on access from
/// the real-field symmetry a_{l,-m} = (-1)^m conj(a_lm). Coefficients with
/// m = 0 are real for a real field.
class HarmonicCoefficients {
 public:
  HarmonicCoefficients() = default;
  explicit HarmonicCoefficients(int lmax);  // zero-initialized

  int lmax() const { return lmax_; }
  std::size_t stored_size() const { return data_.size(); }

  /// Value for any |m| <= l; m < 0 uses the Hermitian reconstruction.
  std::complex<double> get(int l, int m) const;

  /// Mutable access to a stored entry, m >= 0 only.
  std::complex<double>& at(int l, int m);
  const std::complex<double>& at(int l, int m) const;

  std::span<const std::complex<double>> stored() const { return data_; }
  std::span<std::complex<double>> stored() { return data_; }

 private:
  std::size_t index(int l, int m) const;

  int lmax_ = -1;
  std::vector<std::complex<double>> data_;
};

/// Coefficient CSV: '#' comments, header "l,m,re,im", rows only for m >= 0,
/// 17 significant digits. m = 0 rows must have im = 0.
void save_coefficients(const std::string& path, const HarmonicCoefficients& c,
                       const std::vector<std::string>& header_comments = {});
HarmonicCoefficients load_coefficients(const std::string& path);

}  // namespace sphdiff
