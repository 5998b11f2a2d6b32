// q-deformed special functions and the spectrum-dependent entropy scale
// factor. Everything here is a pure function of its arguments; the rest of
// the library is built on top of these.
#ifndef QMAXENT_QMATH_HPP
#define QMAXENT_QMATH_HPP

#include <span>

namespace qmaxent {

/// Parameters of the deformed entropy: deformation q in (0,1], the Boltzmann
/// constant k (in the user's energy/temperature units, default 1) and the
/// spectrum exponent sigma > 0 entering the scale factor. q = 1 routes all
/// callers to the classical formulas.
struct EntropicParams {
  double q = 1.0;
  double k = 1.0;
  double sigma = 1.0;

  /// Throws std::domain_error unless 0 < q <= 1, k > 0, sigma > 0.
  void validate() const;
};

/// Deformed logarithm (z^(1-q) - 1)/(1 - q), z >= 0. Continuous in z on
/// [0, inf) for q < 1; q = 1 falls back to log(z).
double q_log(double z, double q);

/// Deformed exponential [1 + (1-q) z]_+ ^ (1/(1-q)). Total on the reals:
/// a clipped base yields 0 for q < 1 and +inf for q > 1 (the one-sided
/// limit; the solver's exp_{2-q} weights blow up there by design).
/// Inverse of q_log on the positive branch. q = 1 falls back to exp(z).
double q_exp(double z, double q);

/// Signed power sign(z) |z|^q. Odd, strictly increasing, identity at q = 1.
double signed_power(double z, double q);

/// Scale factor k_s = k^q (e_max / (W^sigma - 1))^(1-q) tying the deformed
/// entropy to the macroscopic temperature scale. Returns k exactly at q = 1.
/// W is the total microstate count (can exceed 2^31, hence double).
double scale_factor(const EntropicParams& params, double e_max, double w);

/// Entropy of a microstate probability vector:
///   q < 1: k_s (sum p_i^q - 1)/(1 - q)
///   q = 1: k   sum p_i log(1/p_i), with 0 log(1/0) := 0 (no epsilon floor).
/// Throws std::domain_error for negative entries or |sum p - 1| > 1e-9.
double entropy_value(std::span<const double> p, const EntropicParams& params,
                     double k_s);

}  // namespace qmaxent

#endif  // QMAXENT_QMATH_HPP
