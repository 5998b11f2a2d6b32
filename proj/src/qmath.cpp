#include "qmaxent/qmath.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmaxent/numeric.hpp"

namespace qmaxent {

void EntropicParams::validate() const {
  if (!(q > 0.0) || !(q <= 1.0)) throw std::domain_error("EntropicParams: q must be in (0, 1]");
  if (!(k > 0.0)) throw std::domain_error("EntropicParams: k must be positive");
  if (!(sigma > 0.0)) throw std::domain_error("EntropicParams: sigma must be positive");
}

double q_log(double z, double q) {
  if (z < 0.0) throw std::domain_error("q_log: z must be nonnegative");
  if (q == 1.0) return std::log(z);
  return (std::pow(z, 1.0 - q) - 1.0) / (1.0 - q);
}

double q_exp(double z, double q) {
  if (q == 1.0) return std::exp(z);
  const double one_minus_q = 1.0 - q;
  const double base = 1.0 + one_minus_q * z;
  if (base <= 0.0) {
    // Clipped branch: limit is 0 for positive exponent, +inf for negative.
    return one_minus_q > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  // Bases near 1 lose digits in pow's log; log1p keeps the small-argument
  // cancellation out of the beta solver's exp_{2-q} evaluations.
  if (base < 2.0) return std::exp(std::log1p(one_minus_q * z) / one_minus_q);
  return std::pow(base, 1.0 / one_minus_q);
}

double signed_power(double z, double q) {
  if (z == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(z), q), z);
}

double scale_factor(const EntropicParams& params, double e_max, double w) {
  params.validate();
  if (!(e_max > 0.0)) throw std::domain_error("scale_factor: e_max must be positive");
  if (!(w >= 2.0)) throw std::domain_error("scale_factor: W must be >= 2");
  if (params.q == 1.0) return params.k;
  const double denom = std::pow(w, params.sigma) - 1.0;
  if (!(denom > 0.0)) throw std::domain_error("scale_factor: W^sigma must exceed 1");
  return std::pow(params.k, params.q) *
         std::pow(e_max / denom, 1.0 - params.q);
}

double entropy_value(std::span<const double> p, const EntropicParams& params,
                     double k_s) {
  params.validate();
  KahanSum total;
  for (double pi : p) {
    if (pi < 0.0) throw std::domain_error("entropy_value: negative probability");
    total.add(pi);
  }
  if (std::abs(total.value() - 1.0) > 1e-9)
    throw std::domain_error("entropy_value: probabilities do not sum to 1");

  if (params.q == 1.0) {
    KahanSum s;
    for (double pi : p)
      if (pi > 0.0) s.add(-pi * std::log(pi));
    return params.k * s.value();
  }
  KahanSum s;
  for (double pi : p) s.add(std::pow(pi, params.q));
  return k_s * (s.value() - 1.0) / (1.0 - params.q);
}

}  // namespace qmaxent
