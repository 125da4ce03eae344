#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sphdiff {

/// Angular power spectrum C_0..C_{L0-1}: the per-coefficient variances of an
/// isotropic random field, in field-units^2.
class AngularSpectrum {
 public:
  AngularSpectrum() = default;
  explicit AngularSpectrum(std::vector<double> values) : values_(std::move(values)) {}

  int size() const { return static_cast<int>(values_.size()); }
  int lmax() const { return size() - 1; }
  bool empty() const { return values_.empty(); }
  double operator[](int l) const { return values_[static_cast<std::size_t>(l)]; }
  std::span<const double> values() const { return values_; }

  /// First L0 entries (or all of them when L0 exceeds the size).
  AngularSpectrum truncated(int L0) const;

 private:
  std::vector<double> values_;
};

enum class SpectrumFormat { Cl, Dl };

/// Scaled spectrum D_l = l(l+1) C_l / (2 pi) and its inverse.
double dl_from_cl(int l, double cl);
/// Throws std::domain_error at l = 0 (l(l+1) = 0 leaves C_0 undetermined).
double cl_from_dl(int l, double dl);

struct SpectrumLoadResult {
  AngularSpectrum spectrum;
  SpectrumFormat format;
  std::vector<std::string> warnings;  // filled gaps, implied leading zeros
};

/// Reads a spectrum CSV. Layout: optional '#' comment lines, a mandatory
/// header naming the value column ("l,Cl" or "l,Dl"), then one row per l in
/// strictly increasing order. Gaps are filled with zeros and reported in
/// warnings. Dl input is converted via C_l = 2 pi D_l / (l(l+1)); a Dl row at
/// l = 0 is a hard error.
/// If `expected` is given, a header naming the other column is a parse_error.
SpectrumLoadResult load_spectrum(const std::string& path,
                                 std::optional<SpectrumFormat> expected = {});

/// Writes a spectrum CSV in the layout accepted by load_spectrum, 17
/// significant digits, LF line endings. Dl output starts at l = 1.
void save_spectrum(const std::string& path, const AngularSpectrum& s,
                   SpectrumFormat format,
                   const std::vector<std::string>& header_comments = {});

/// Synthetic power-law spectrum: C_l = scale for l < l0 (flat head, including
/// l = 0), C_l = scale * l^-alpha for l >= max(1, l0). Requires alpha > 2,
/// the summability boundary of sum (2l+1) C_l under an infinite tail.
AngularSpectrum power_law_spectrum(double alpha, double scale, int l0, int lmax);

struct SpectrumReport {
  double sum_weighted = 0.0;        ///< sum (2l+1)   C_l
  double sum_weighted_cubed = 0.0;  ///< sum (2l+1)^3 C_l
  std::optional<double> tail_exponent;  ///< alpha-hat fitted over the top decade of l
  /// Integral estimate of the mass beyond lmax, 2 C_lmax lmax^2 / (alpha-hat - 2),
  /// assuming the fitted power law continues; present when alpha-hat > 2.
  std::optional<double> tail_remainder_estimate;
};

/// Sanity report for a spectrum. Throws std::domain_error when any C_l < 0.
SpectrumReport validate_spectrum(const AngularSpectrum& s);

}  // namespace sphdiff
