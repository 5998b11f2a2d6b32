// Closed-form hydrogen thermodynamics and the Saha-equation plausibility
// cross-check on the predicted ionization temperature.
#ifndef QMAXENT_SAHA_HPP
#define QMAXENT_SAHA_HPP

#include <vector>

namespace qmaxent {

namespace constants {
inline constexpr double k_boltzmann_J = 1.380649e-23;        // J/K (exact SI)
inline constexpr double k_boltzmann_eV = 8.617333262e-5;     // eV/K
inline constexpr double electron_mass_kg = 9.1093837015e-31;
inline constexpr double planck_Js = 6.62607015e-34;
inline constexpr double eV_J = 1.602176634e-19;              // J per eV (exact SI)
inline constexpr double hydrogen_e_ion_eV = 13.6;
}  // namespace constants

/// Closed-form hydrogen temperature
///   T = ((1-q)/q)^(1/q) (U/e_ion)^((1-q)/q) e_ion / k,  0 < U < e_ion.
/// Collapses to U/k at q = 1/2.
double hydrogen_temperature(double u, double q, double e_ion, double k);

/// Critical ionization temperature T_ion = ((1-q)/q)^(1/q) e_ion / k;
/// hydrogen_temperature(e_ion, q) == t_ion(q), and
/// T = T_ion (U/e_ion)^((1-q)/q).
double ionization_temperature(double q, double e_ion, double k);

/// Sign of the exponential in the Saha factor. `printed` keeps the
/// +e_ion/kT form as it appears in the source relation; `conventional` is the
/// standard -e_ion/kT. `automatic` probes the printed sign first (requires a
/// monotone factor and a bracketed root) and falls back to conventional.
enum class SahaSign { printed, conventional, automatic };

struct SahaConditions {
  double eta = 1e19;          // density parameter, 1/m^3
  double x_target = 0.999;    // ionized fraction defining T_ion
  SahaSign sign = SahaSign::automatic;
  double e_ion_eV = constants::hydrogen_e_ion_eV;
  double m_e = constants::electron_mass_kg;
  double h = constants::planck_Js;
  double k = constants::k_boltzmann_J;
};

/// Right-hand side A(T, eta) of x^2/(1-x) = A; `sign` must be concrete.
double saha_factor(double t, const SahaConditions& cond, SahaSign sign);

/// Ionized fraction from the positive quadratic root, evaluated in the
/// cancellation-free form x = 2/(1 + sqrt(1 + 4/A)).
double saha_ionized_fraction(double t, const SahaConditions& cond,
                             SahaSign sign = SahaSign::conventional);

/// Resolves `automatic` by probing whether the printed sign yields a
/// monotone factor with a bracketed root in [1e3, 1e7] K for these
/// conditions; returns the convention actually usable.
SahaSign resolve_saha_sign(const SahaConditions& cond);

/// Root-finds T with ionized fraction x_target, bracketed in [1e3, 1e7] K.
/// Throws convergence_error when no bracket exists (signals a constants or
/// sign misconfiguration). Returns the temperature and the sign used.
struct SahaSolution {
  double t_ion = 0.0;
  SahaSign sign_used = SahaSign::conventional;
};
SahaSolution saha_ionization_temperature(const SahaConditions& cond);

/// (eta, T_ion) table over a log-spaced density grid.
std::vector<std::pair<double, double>> saha_sweep(double eta_min, double eta_max,
                                                  int points,
                                                  const SahaConditions& base);

}  // namespace qmaxent

#endif  // QMAXENT_SAHA_HPP
