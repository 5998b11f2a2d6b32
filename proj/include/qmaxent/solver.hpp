// Solves one finite truncated maximum-entropy problem: the structural
// parameter beta, the optimal distribution, Lagrange multipliers and the
// temperature.
//
// For q < 1 everything is evaluated through the gap variable
//   delta = 1/((1-q) U) - beta,
// in which the exp_{2-q} weight bases take the cancellation-free form
//   b_n = e_n/U + (1-q) delta (U - e_n),        w_n = b_n^(1/(q-1)),
// exact for any beta (b_1 = (1-q) U delta at the ground level). The residual
//   r(delta) = sum_n g_n w_n (e_n - U)
// is strictly increasing in delta and has exactly one zero. For q = 1 the
// classical residual is evaluated in the log domain with a max shift.
#ifndef QMAXENT_SOLVER_HPP
#define QMAXENT_SOLVER_HPP

#include <vector>

#include "qmaxent/qmath.hpp"
#include "qmaxent/spectra.hpp"

namespace qmaxent {

/// Solution of one truncated problem. p holds one microstate probability per
/// distinct level (multiply by g_n for the level mass). delta is the gap to
/// the singular endpoint for q < 1 and NaN at q = 1. Z may overflow to +inf
/// for extreme near-endpoint solutions; log_z is always finite and is what
/// the temperature and multiplier formulas actually consume.
struct MaxEntSolution {
  double q = 1.0;
  double u = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  std::vector<double> p;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double z = 0.0;
  double log_z = 0.0;
  double entropy = 0.0;
  double temperature = 0.0;
};

struct SolveOptions {
  double tol = 1e-12;   // relative, on beta (or on delta in the endpoint branch)
  int max_iter = 200;
};

/// Residual of the beta equation, degeneracy weighted:
///   sum_n g_n exp_{2-q}(-beta (e_n - U)) (e_n - U)
/// Strictly decreasing in beta; zero exactly at the structural parameter.
/// For q < 1, beta must lie inside the open interval where every weight is
/// finite, (-1/((1-q)(e_max - U)), 1/((1-q) U)); outside it a domain error
/// is thrown.
double residual(const Spectrum& spectrum, double u, double q, double beta);

/// Root of the residual. Bracketed bisection with secant refinement; when the
/// root sits within 10% of the q < 1 singular endpoint the solve switches to
/// logarithmic bisection in delta (endpoint-hugging hydrogen truncations push
/// delta below 1e-9). Throws std::domain_error unless 0 < U < e_max, and
/// convergence_error if iterations run out.
double solve_beta(const Spectrum& spectrum, double u, double q,
                  const SolveOptions& opts = {});

/// Returns the gap delta = 1/((1-q)U) - beta for the solved instance; this is
/// the primary solver output for q < 1 (beta is derived from it, so delta
/// keeps full relative precision near the endpoint). NaN for q = 1.
double solve_delta(const Spectrum& spectrum, double u, double q,
                   const SolveOptions& opts = {});

/// Distribution and partition sum at a given root: p_n = exp_{2-q}(-beta E_n)/Z
/// with Z the microstate (degeneracy-weighted) sum. Fills p, z, log_z.
MaxEntSolution distribution(const Spectrum& spectrum, double u, double q, double beta);

/// Probability ratios r_n = p_n / p_1 = (U delta / (U delta + e_n beta))^(1/(1-q)).
/// Requires q < 1.
std::vector<double> ratios(const MaxEntSolution& solution, const Spectrum& spectrum,
                           double u, double q);

/// Lagrange multipliers at the optimum:
///   q < 1: lambda1 = k_s q Z^(1-q)/(1-q),  lambda2 = beta k_s q Z^(1-q)
///   q = 1: lambda1 = k (log Z - 1),        lambda2 = k beta
/// lambda2 equals dS/dU = 1/|T|^q (signed) by the Envelope Theorem.
struct Multipliers {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};
Multipliers multipliers(const MaxEntSolution& solution, double k_s, double q);

/// Temperature from the postulated entropy-energy relation:
///   q < 1: T = sign(beta) (1/(q |beta| k_s Z^(1-q)))^(1/q)
///   q = 1: T = 1/(k beta)
/// beta = 0 signals infinite temperature (+inf).
double temperature(const MaxEntSolution& solution, double k_s, double q);

/// One-shot convenience: solve, then fill distribution, multipliers, entropy
/// and temperature using the scale factor of `params` for this spectrum.
MaxEntSolution solve(const Spectrum& spectrum, double u, const EntropicParams& params,
                     const SolveOptions& opts = {});

}  // namespace qmaxent

#endif  // QMAXENT_SOLVER_HPP
