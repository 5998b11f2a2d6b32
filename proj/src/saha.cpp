#include "qmaxent/saha.hpp"

#include <cmath>
#include <stdexcept>

#include "qmaxent/numeric.hpp"

namespace qmaxent {

namespace {
constexpr double kTLow = 1e3;
constexpr double kTHigh = 1e7;
}  // namespace

double hydrogen_temperature(double u, double q, double e_ion, double k) {
  if (!(u > 0.0) || !(u < e_ion))
    throw std::domain_error("hydrogen_temperature: need 0 < U < e_ion");
  if (!(q > 0.0) || !(q < 1.0))
    throw std::domain_error("hydrogen_temperature: need q in (0, 1)");
  if (!(k > 0.0)) throw std::domain_error("hydrogen_temperature: need k > 0");
  return std::pow((1.0 - q) / q, 1.0 / q) *
         std::pow(u / e_ion, (1.0 - q) / q) * e_ion / k;
}

double ionization_temperature(double q, double e_ion, double k) {
  if (!(q > 0.0) || !(q < 1.0))
    throw std::domain_error("ionization_temperature: need q in (0, 1)");
  return std::pow((1.0 - q) / q, 1.0 / q) * e_ion / k;
}

double saha_factor(double t, const SahaConditions& cond, SahaSign sign) {
  if (!(t > 0.0)) throw std::domain_error("saha_factor: need T > 0");
  if (sign == SahaSign::automatic)
    throw std::invalid_argument("saha_factor: sign must be concrete");
  const double chi = cond.e_ion_eV * constants::eV_J;
  const double thermal = 2.0 * M_PI * cond.m_e * cond.k * t / (cond.h * cond.h);
  const double s = sign == SahaSign::printed ? 1.0 : -1.0;
  return std::pow(thermal, 1.5) * std::exp(s * chi / (cond.k * t)) / cond.eta;
}

double saha_ionized_fraction(double t, const SahaConditions& cond, SahaSign sign) {
  const double a = saha_factor(t, cond, sign);
  // Positive root of x^2/(1-x) = A, written without the -A + sqrt(...)
  // cancellation: x = 2/(1 + sqrt(1 + 4/A)).
  return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 / a));
}

SahaSign resolve_saha_sign(const SahaConditions& cond) {
  if (cond.sign != SahaSign::automatic) return cond.sign;
  // The printed form is usable only if A(T) is monotone over the bracket and
  // crosses the target; otherwise fall back to the conventional sign.
  const double target = cond.x_target * cond.x_target / (1.0 - cond.x_target);
  double prev = saha_factor(kTLow, cond, SahaSign::printed);
  bool increasing = true, decreasing = true;
  for (int i = 1; i <= 64; ++i) {
    const double t = kTLow * std::pow(kTHigh / kTLow, i / 64.0);
    const double a = saha_factor(t, cond, SahaSign::printed);
    increasing = increasing && a >= prev;
    decreasing = decreasing && a <= prev;
    prev = a;
  }
  const double a_lo = saha_factor(kTLow, cond, SahaSign::printed);
  const double a_hi = saha_factor(kTHigh, cond, SahaSign::printed);
  const bool bracketed = (a_lo - target) * (a_hi - target) < 0.0;
  if ((increasing || decreasing) && bracketed) return SahaSign::printed;
  return SahaSign::conventional;
}

SahaSolution saha_ionization_temperature(const SahaConditions& cond) {
  if (!(cond.x_target > 0.0) || !(cond.x_target < 1.0))
    throw std::domain_error("saha_ionization_temperature: x_target must be in (0, 1)");
  const SahaSign sign = resolve_saha_sign(cond);
  const double target = cond.x_target * cond.x_target / (1.0 - cond.x_target);

  // log-bisection on T; adapt to the observed direction of A(T).
  const double a_lo = saha_factor(kTLow, cond, sign);
  const double a_hi = saha_factor(kTHigh, cond, sign);
  if ((a_lo - target) * (a_hi - target) >= 0.0)
    throw convergence_error(
        "saha_ionization_temperature: no bracket in [1e3, 1e7] K "
        "(constants or sign convention misconfigured)");
  const bool rising = a_hi > a_lo;
  double lo = std::log(kTLow), hi = std::log(kTHigh);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double a = saha_factor(std::exp(mid), cond, sign);
    if ((a < target) == rising)
      lo = mid;
    else
      hi = mid;
  }
  return {std::exp(0.5 * (lo + hi)), sign};
}

std::vector<std::pair<double, double>> saha_sweep(double eta_min, double eta_max,
                                                  int points,
                                                  const SahaConditions& base) {
  if (!(eta_min > 0.0) || !(eta_max > eta_min) || points < 2)
    throw std::invalid_argument("saha_sweep: bad grid");
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(points));
  parallel_for(out.size(), [&](std::size_t i) {
    SahaConditions cond = base;
    cond.eta = eta_min * std::pow(eta_max / eta_min,
                                  static_cast<double>(i) / (points - 1));
    out[i] = {cond.eta, saha_ionization_temperature(cond).t_ion};
  });
  return out;
}

}  // namespace qmaxent
