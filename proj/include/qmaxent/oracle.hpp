// Independent brute-force maximizer for small spectra (up to 4 distinct
// levels). Certifies the solver: it reduces the constrained problem to one
// (N=3) or two (N=4) free variables and maximizes the entropy directly from
// powers, sharing none of the solver's q-exponential machinery.
#ifndef QMAXENT_ORACLE_HPP
#define QMAXENT_ORACLE_HPP

#include <vector>

#include "qmaxent/qmath.hpp"
#include "qmaxent/spectra.hpp"

namespace qmaxent {

struct OracleResult {
  std::vector<double> p;  // microstate probability per distinct level
  double entropy = 0.0;
  double u_realized = 0.0;
};

/// Maximizes S_{q,s} over the constrained simplex for a spectrum with 2..4
/// distinct levels. N=2 is forced by the constraints; N=3 is golden-section
/// on the exact one-variable reduction (grid fallback guards boundary
/// optima); N=4 is a two-variable grid with local refinement.
/// Throws std::domain_error when U is outside (0, e_max) or N > 4.
OracleResult brute_force(const Spectrum& spectrum, double u, double q, double k_s);

/// Optimal-entropy curve S(p*(U)) over a U grid (parallel over grid points).
std::vector<std::pair<double, double>> value_curve(const Spectrum& spectrum, double q,
                                                   double k_s,
                                                   const std::vector<double>& u_grid);

}  // namespace qmaxent

#endif  // QMAXENT_ORACLE_HPP
