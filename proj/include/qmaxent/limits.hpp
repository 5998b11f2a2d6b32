// Truncation sweeps N -> infinity, extrapolation of beta_N / delta_N / T_N,
// and numerical validation of the closed-form limits: the continuous-spectrum
// temperatures, the oscillator/box series limits, and the hydrogen gap decay
// rate with its constant.
#ifndef QMAXENT_LIMITS_HPP
#define QMAXENT_LIMITS_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qmaxent/qmath.hpp"
#include "qmaxent/solver.hpp"
#include "qmaxent/spectra.hpp"

namespace qmaxent {

struct LimitRow {
  std::int64_t n = 0;
  double beta = 0.0;
  double delta = 0.0;   // NaN for q = 1
  double temperature = 0.0;
  double p1 = 0.0;      // ground-level microstate probability
  double margin = 0.0;  // beta positivity margin of the truncation
  bool ok = false;
  std::string error;
};

struct RateFit {
  double exponent = 0.0;   // c in delta_N ~ A N^{-c}
  double prefactor = 0.0;  // A
  bool valid = false;
};

struct LimitSequence {
  std::string family_label;
  double u = 0.0;
  double q = 1.0;
  std::vector<LimitRow> rows;  // sorted by N
  RateFit fit;
  double beta_limit = 0.0;
  double t_limit = 0.0;
};

/// Doubling schedule n0, 2 n0, ... capped at n_max (n_max appended when the
/// last doubled entry falls short of it).
std::vector<std::int64_t> geometric_schedule(std::int64_t n0, std::int64_t n_max,
                                             double factor = 2.0);

/// Runs one solver instance per schedule entry (rows execute on the worker
/// pool; output order is by N regardless of thread count). A row whose solve
/// fails is marked failed and the sweep continues. Fills the rate fit (when
/// enough q < 1 rows exist) and the extrapolated beta / T limits.
LimitSequence sweep(const std::function<Spectrum(std::int64_t)>& make_spectrum,
                    const std::string& family_label, double u,
                    const EntropicParams& params,
                    const std::vector<std::int64_t>& schedule);

/// Least-squares line on (log N, log delta_N) over the last tail_count
/// usable rows. Throws std::domain_error when fewer than 3 such rows exist or
/// the tail spans less than two decades of N.
RateFit fit_rate(const LimitSequence& seq, int tail_count);

/// Closed-form limit of N^{3(1-q)} delta_N for the hydrogen family:
///   3^(1-q) e_ion / ((1-q) (e_ion - U)^(1-q) U^(1+q)).
/// Note the ground-level degeneracy g(e_1) = 2 carried through the
/// balance removes the 2^(1-q) factor sometimes quoted in the denominator;
/// the sweep prefactor confirms this form to ~1e-5.
double lemma_constant(double u, double q, double e_ion);

/// Limiting two-tier hydrogen distribution: mass 1 - U/e_ion on the ground
/// level and U/e_ion on the terminal level at e_ion (q-independent).
struct TwoTier {
  double ground_mass = 0.0;
  double top_mass = 0.0;
};
TwoTier two_tier(double u, double e_ion);

/// Sampled continuous distribution rho(e, T) over an energy grid:
///   q = 1:        exp(-e/kT)/kT
///   1/2 <= q < 1: ((2q-1)/q)^(1/(1-q)) exp_{2-q}(1/q - (2q-1)e/(q^2 kT))/kT
/// Throws std::domain_error for q < 1/2 (the normalization diverges).
struct DensityCurve {
  std::vector<double> e;
  std::vector<double> rho;
  double q = 1.0;
  double kt = 1.0;
};
DensityCurve density_curve(double t, double q, double k,
                           const std::vector<double>& e_grid);

/// Both sides of the continuum beta equation at a given beta (defaults to the
/// closed-form root 1/(qU), or 1/U at q = 1): the improper integrals in
/// closed form plus their N-point Riemann sums on [0, e_max]. The integral
/// residual vanishes at the root; the sums approach the integrals as N and
/// e_max grow. Requires q in (1/2, 1].
struct RiemannCheck {
  double beta = 0.0;
  double integral_lhs = 0.0;
  double integral_rhs = 0.0;
  double sum_lhs = 0.0;
  double sum_rhs = 0.0;
  double residual() const { return integral_lhs - integral_rhs; }
};
RiemannCheck riemann_check(double u, double q, double e_max, std::int64_t n,
                           double beta = std::numeric_limits<double>::quiet_NaN());

/// Infinite-spectrum limit for the oscillator (q in (1/2, 1)) and the box
/// (q in (1/3, 1)) solved directly from the ratio series: finds the gap delta
/// with sum r_n e_n / sum r_n = U, p1 = 1/sum r_n, and the temperature from
/// the closed-form T(beta, p1). Series are summed until the integral-bound
/// tail drops below 1e-12 of the partial sum (the oscillator uses an exact
/// midpoint-integral tail).
struct SeriesLimit {
  double beta = 0.0;
  double delta = 0.0;
  double p1 = 0.0;
  double temperature = 0.0;
};
SeriesLimit oscillator_series_limit(double u, double q, double hbar_omega, double k);
SeriesLimit box_series_limit(double u, double q, double gamma, double k);

}  // namespace qmaxent

#endif  // QMAXENT_LIMITS_HPP
