// Energy-spectrum families and the positivity precondition for the
// structural parameter. Family spectra compute levels on the fly from closed
// forms, so a truncation with N = 10^6 levels costs no storage; custom
// spectra materialize an explicit level list.
#ifndef QMAXENT_SPECTRA_HPP
#define QMAXENT_SPECTRA_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qmaxent {

enum class Family { custom, uniform, oscillator, box, hydrogen };

struct Level {
  double energy = 0.0;
  std::int64_t degeneracy = 1;
};

/// An ordered, strictly increasing list of distinct energy levels with
/// degeneracies; e_1 = 0 always. Immutable after construction and safe to
/// share across threads.
class Spectrum {
 public:
  /// e_n = (n-1) e_max/(N-1), degeneracy m on every level, W = m N.
  static Spectrum uniform(std::int64_t n, double e_max, std::int64_t m = 1);
  /// e_n = (n-1) hbar_omega, g = 1 (ground level shifted to zero).
  static Spectrum oscillator(std::int64_t n, double hbar_omega);
  /// e_n = (n^2 - 1) gamma, g = 1.
  static Spectrum box(std::int64_t n, double gamma);
  /// e_n = (1 - 1/n^2) e_ion, g = 2 n^2.
  static Spectrum hydrogen(std::int64_t n, double e_ion);
  /// Explicit levels; validates e_1 = 0, strict ordering, g >= 1, N >= 2.
  static Spectrum custom(std::vector<Level> levels, std::string label = "custom");

  std::int64_t size() const { return n_; }          // distinct levels N
  double energy(std::int64_t i) const;              // i in [0, N)
  double degeneracy(std::int64_t i) const;          // g as double (can be 2 n^2)
  double e_max() const { return e_max_; }
  double microstate_count() const { return w_; }    // W = sum g
  Family family() const { return family_; }
  double family_param() const { return param_; }    // e_max / hbar_omega / gamma / e_ion
  std::int64_t uniform_m() const { return m_; }
  const std::string& label() const { return label_; }

  /// Levels as an explicit list (materializes family spectra; guarded to
  /// N <= 2^21 so nothing huge is accidentally allocated).
  std::vector<Level> materialize() const;

 private:
  Spectrum() = default;
  Family family_ = Family::custom;
  std::int64_t n_ = 0;
  std::int64_t m_ = 1;       // uniform-family degeneracy
  double param_ = 0.0;
  double e_max_ = 0.0;
  double w_ = 0.0;
  std::string label_;
  std::vector<Level> levels_;  // custom only
};

/// U strictly between two levels per the convention e_t < U <= e_{t+1};
/// t is 1-based (t = number of levels strictly below U), 1 <= t <= N-1.
struct EnergySplit {
  double u = 0.0;
  std::int64_t t = 0;
};

/// Locates U in the spectrum. Throws std::out_of_range unless 0 < U < e_max.
EnergySplit split(const Spectrum& spectrum, double u);

/// Sum g_n (e_n - U) over all levels (Kahan, ascending). A positive value
/// certifies beta_N > 0 for this truncation.
double beta_positivity_margin(const Spectrum& spectrum, double u);

/// Reads a spectrum definition file (TOML subset): either
///   family = "uniform" | "oscillator" | "box" | "hydrogen"  with its
///   parameters (n, emax, m / hbar_omega / gamma / e_ion), or
///   levels = [[energy, degeneracy], ...] for a custom spectrum.
Spectrum load_spectrum_file(const std::string& path);

}  // namespace qmaxent

#endif  // QMAXENT_SPECTRA_HPP
