#include "qmaxent/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmaxent/numeric.hpp"

namespace qmaxent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_problem(const Spectrum& spectrum, double u, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("solver: q must be in (0, 1]");
  if (!(u > 0.0) || !(u < spectrum.e_max()))
    throw std::domain_error("solver: U must satisfy 0 < U < e_max");
}

// Weight base at level i for gap delta: b = e/U + (1-q) delta (U - e).
// Identically equal to 1 + (1-q) beta (e - U); the delta form is exact at
// the ground level (b_1 = (1-q) U delta) where the direct form cancels.
inline double weight_base(double e, double u, double q, double delta) {
  return e / u + (1.0 - q) * delta * (u - e);
}

// Residual in the gap variable, strictly increasing in delta. Terms are
// summed in ascending level order with compensated accumulation. A base that
// underflows the finite domain makes its weight +inf; the resulting +-inf
// residual still carries the correct sign for bracketing.
double residual_delta(const Spectrum& spectrum, double u, double q, double delta) {
  const double kappa = 1.0 / (q - 1.0);
  KahanSum acc;
  for (std::int64_t i = 0; i < spectrum.size(); ++i) {
    const double e = spectrum.energy(i);
    const double b = weight_base(e, u, q, delta);
    const double w = b > 0.0 ? std::pow(b, kappa) : kInf;
    const double term = spectrum.degeneracy(i) * w * (e - u);
    if (std::isinf(term)) return term;
    acc.add(term);
  }
  return acc.value();
}

// Classical residual, log-domain with max shift: exp(-beta E_n) is scaled by
// the positive factor exp(-max_n(-beta E_n)), which moves no root.
double residual_classical(const Spectrum& spectrum, double u, double beta) {
  const double shift = beta >= 0.0 ? beta * u : -beta * (spectrum.e_max() - u);
  KahanSum acc;
  for (std::int64_t i = 0; i < spectrum.size(); ++i) {
    const double en = spectrum.energy(i) - u;
    acc.add(spectrum.degeneracy(i) * std::exp(-beta * en - shift) * en);
  }
  return acc.value();
}

double solve_delta_impl(const Spectrum& spectrum, double u, double q,
                        const SolveOptions& opts) {
  const double delta0 = 1.0 / ((1.0 - q) * u);              // beta = 0
  const double delta_max =                                   // beta at g's domain edge
      delta0 + 1.0 / ((1.0 - q) * (spectrum.e_max() - u));
  const double margin = beta_positivity_margin(spectrum, u);  // residual at delta0
  if (margin == 0.0) return delta0;

  auto f = [&](double d) { return residual_delta(spectrum, u, q, d); };

  if (margin < 0.0) {
    // Root in (delta0, delta_max): beta < 0.
    const double hi = delta_max * (1.0 - 1e-15);
    const double f_hi = f(hi);
    if (!(f_hi > 0.0))
      throw convergence_error("solve_beta: no sign change below the negative-beta endpoint");
    return find_root_increasing(f, delta0, hi, margin, f_hi, opts.tol, 0.0,
                                opts.max_iter)
        .x;
  }

  // Root in (0, delta0): beta > 0. Probe the 10% reparameterization trigger:
  // residual still positive there means the root hugs the endpoint, so solve
  // in log(delta) where bisection resolves delta down to 1e-300.
  const double trigger = 0.1 * delta0;
  const double f_trigger = f(trigger);
  if (f_trigger <= 0.0) {
    return find_root_increasing(f, trigger, delta0, f_trigger, margin, opts.tol, 0.0,
                                opts.max_iter)
        .x;
  }
  auto flog = [&](double t) { return f(std::exp(t)); };
  const double t_lo = std::log(1e-300);
  const double t_hi = std::log(trigger);
  const double f_lo = flog(t_lo);
  if (!(f_lo < 0.0))
    throw convergence_error("solve_beta: residual not negative at delta = 1e-300");
  // Relative tolerance on delta equals absolute tolerance on log(delta).
  const double t =
      find_root_increasing(flog, t_lo, t_hi, f_lo, f_trigger, 0.0, opts.tol,
                           opts.max_iter)
          .x;
  return std::exp(t);
}

double solve_classical(const Spectrum& spectrum, double u, const SolveOptions& opts) {
  const double margin = beta_positivity_margin(spectrum, u);
  if (margin == 0.0) return 0.0;
  auto f = [&](double beta) { return -residual_classical(spectrum, u, beta); };

  double lo = 0.0, hi = 0.0;
  double f_lo = 0.0, f_hi = 0.0;
  if (margin > 0.0) {
    // -residual is increasing; -r(0) = -margin < 0, expand upward.
    lo = 0.0;
    f_lo = -margin;
    hi = 1.0 / u;
    f_hi = f(hi);
    int guard = 0;
    while (!(f_hi > 0.0)) {
      hi *= 2.0;
      f_hi = f(hi);
      if (++guard > 100) throw convergence_error("solve_beta: bracket expansion failed");
    }
  } else {
    hi = 0.0;
    f_hi = -margin;
    lo = -1.0 / u;
    f_lo = f(lo);
    int guard = 0;
    while (!(f_lo < 0.0)) {
      lo *= 2.0;
      f_lo = f(lo);
      if (++guard > 100) throw convergence_error("solve_beta: bracket expansion failed");
    }
  }
  return find_root_increasing(f, lo, hi, f_lo, f_hi, opts.tol, opts.tol * 1e-3,
                              opts.max_iter)
      .x;
}

}  // namespace

double residual(const Spectrum& spectrum, double u, double q, double beta) {
  check_problem(spectrum, u, q);
  if (q == 1.0) return residual_classical(spectrum, u, beta);
  const double lo = -1.0 / ((1.0 - q) * (spectrum.e_max() - u));
  const double hi = 1.0 / ((1.0 - q) * u);
  if (!(beta > lo) || !(beta < hi))
    throw std::domain_error("residual: beta outside the finite-weight interval");
  return residual_delta(spectrum, u, q, hi - beta);
}

double solve_delta(const Spectrum& spectrum, double u, double q,
                   const SolveOptions& opts) {
  check_problem(spectrum, u, q);
  if (q == 1.0) return kNaN;
  return solve_delta_impl(spectrum, u, q, opts);
}

double solve_beta(const Spectrum& spectrum, double u, double q,
                  const SolveOptions& opts) {
  check_problem(spectrum, u, q);
  if (q == 1.0) return solve_classical(spectrum, u, opts);
  return 1.0 / ((1.0 - q) * u) - solve_delta_impl(spectrum, u, q, opts);
}

MaxEntSolution distribution(const Spectrum& spectrum, double u, double q, double beta) {
  check_problem(spectrum, u, q);
  const std::int64_t n = spectrum.size();
  MaxEntSolution sol;
  sol.q = q;
  sol.u = u;
  sol.beta = beta;
  sol.p.resize(static_cast<std::size_t>(n));

  if (q == 1.0) {
    sol.delta = kNaN;
    const double shift = beta >= 0.0 ? beta * u : -beta * (spectrum.e_max() - u);
    KahanSum zhat;
    for (std::int64_t i = 0; i < n; ++i) {
      const double w = std::exp(-beta * (spectrum.energy(i) - u) - shift);
      sol.p[static_cast<std::size_t>(i)] = w;
      zhat.add(spectrum.degeneracy(i) * w);
    }
    for (double& pi : sol.p) pi /= zhat.value();
    sol.log_z = shift + std::log(zhat.value());
    sol.z = std::exp(sol.log_z);
    return sol;
  }

  const double delta = 1.0 / ((1.0 - q) * u) - beta;
  sol.delta = delta;
  const double kappa = 1.0 / (q - 1.0);
  // Normalize by the largest weight (the smallest base, since kappa < 0) so
  // the scaled sum never overflows; recover log Z afterwards.
  double b_min = kInf;
  for (std::int64_t i = 0; i < n; ++i)
    b_min = std::min(b_min, weight_base(spectrum.energy(i), u, q, delta));
  if (!(b_min > 0.0))
    throw std::domain_error("distribution: beta outside the finite-weight interval");
  const double log_b_min = std::log(b_min);
  KahanSum zhat;
  for (std::int64_t i = 0; i < n; ++i) {
    const double b = weight_base(spectrum.energy(i), u, q, delta);
    const double what = std::exp(kappa * (std::log(b) - log_b_min));
    sol.p[static_cast<std::size_t>(i)] = what;
    zhat.add(spectrum.degeneracy(i) * what);
  }
  for (double& pi : sol.p) pi /= zhat.value();
  sol.log_z = kappa * log_b_min + std::log(zhat.value());
  sol.z = std::exp(sol.log_z);
  return sol;
}

std::vector<double> ratios(const MaxEntSolution& solution, const Spectrum& spectrum,
                           double u, double q) {
  if (!(q < 1.0)) throw std::domain_error("ratios: defined for q < 1 only");
  const double delta = solution.delta;
  const double beta = solution.beta;
  std::vector<double> r(static_cast<std::size_t>(spectrum.size()));
  for (std::int64_t i = 0; i < spectrum.size(); ++i) {
    const double num = u * delta;
    const double den = u * delta + spectrum.energy(i) * beta;
    r[static_cast<std::size_t>(i)] = std::pow(num / den, 1.0 / (1.0 - q));
  }
  return r;
}

Multipliers multipliers(const MaxEntSolution& solution, double k_s, double q) {
  Multipliers m;
  if (q == 1.0) {
    m.lambda1 = k_s * (solution.log_z - 1.0);
    m.lambda2 = k_s * solution.beta;
    return m;
  }
  // At the optimum sum_i p_i^q = Z^(1-q) (the two sides of the first-order
  // condition coincide), so both multipliers reduce to Z^(1-q) expressions.
  const double z_pow = std::exp((1.0 - q) * solution.log_z);
  m.lambda1 = k_s * q * z_pow / (1.0 - q);
  m.lambda2 = solution.beta * k_s * q * z_pow;
  return m;
}

double temperature(const MaxEntSolution& solution, double k_s, double q) {
  if (solution.beta == 0.0) return kInf;  // infinite-temperature signal
  if (q == 1.0) return 1.0 / (k_s * solution.beta);
  const double log_abs_t = -(std::log(q) + std::log(std::abs(solution.beta)) +
                             std::log(k_s) + (1.0 - q) * solution.log_z) /
                           q;
  return std::copysign(std::exp(log_abs_t), solution.beta);
}

MaxEntSolution solve(const Spectrum& spectrum, double u, const EntropicParams& params,
                     const SolveOptions& opts) {
  params.validate();
  const double q = params.q;
  MaxEntSolution sol;
  if (q == 1.0) {
    sol = distribution(spectrum, u, q, solve_classical(spectrum, u, opts));
  } else {
    check_problem(spectrum, u, q);
    const double delta = solve_delta_impl(spectrum, u, q, opts);
    sol = distribution(spectrum, u, q, 1.0 / ((1.0 - q) * u) - delta);
    sol.delta = delta;  // keep the solver's delta verbatim (full precision)
    sol.beta = 1.0 / ((1.0 - q) * u) - delta;
  }
  const double k_s = scale_factor(params, spectrum.e_max(), spectrum.microstate_count());
  const Multipliers m = multipliers(sol, k_s, q);
  sol.lambda1 = m.lambda1;
  sol.lambda2 = m.lambda2;
  sol.temperature = temperature(sol, k_s, q);

  // Entropy at the optimum, degeneracy weighted.
  if (q == 1.0) {
    KahanSum s;
    for (std::int64_t i = 0; i < spectrum.size(); ++i) {
      const double pi = sol.p[static_cast<std::size_t>(i)];
      if (pi > 0.0) s.add(-spectrum.degeneracy(i) * pi * std::log(pi));
    }
    sol.entropy = params.k * s.value();
  } else {
    KahanSum s;
    for (std::int64_t i = 0; i < spectrum.size(); ++i)
      s.add(spectrum.degeneracy(i) *
            std::pow(sol.p[static_cast<std::size_t>(i)], q));
    sol.entropy = k_s * (s.value() - 1.0) / (1.0 - q);
  }
  return sol;
}

}  // namespace qmaxent
