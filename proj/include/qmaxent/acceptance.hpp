// The acceptance suite: eleven end-to-end criteria pinning the library's
// numerical claims (closed-form limits, decay rates, oracle equivalence,
// property checks, the Saha cross-check), each with its tolerance fixed in
// code. Shared by the CLI `accept` subcommand and the acceptance test binary.
#ifndef QMAXENT_ACCEPTANCE_HPP
#define QMAXENT_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qmaxent {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::vector<std::string> details;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
};

/// Runs every criterion; when `live` is given, prints one PASS/FAIL line per
/// criterion (plus measured-value details) as it completes.
AcceptanceReport run_acceptance(std::ostream* live = nullptr);

}  // namespace qmaxent

#endif  // QMAXENT_ACCEPTANCE_HPP
