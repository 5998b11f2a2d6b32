// Small numeric building blocks shared across the library: compensated
// summation, bracketed root finding, golden-section maximization, a
// least-squares line fit and a deterministic worker pool.
#ifndef QMAXENT_NUMERIC_HPP
#define QMAXENT_NUMERIC_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmaxent {

/// Thrown when an iterative method exhausts its iteration budget or cannot
/// establish a sign-changing bracket.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// Kahan compensated accumulator. Sums are accumulated in ascending index
/// order by all callers so results are reproducible across thread counts.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

struct RootResult {
  double x = 0.0;
  int iterations = 0;
};

/// Finds the root of a monotone increasing function on [lo, hi] with
/// f(lo) < 0 < f(hi). Secant steps accelerate plain bisection; any secant
/// proposal that leaves the bracket (or meets a non-finite value) falls back
/// to the midpoint. Terminates when the bracket width drops below
/// rel_tol*|x| + abs_tol.
RootResult find_root_increasing(const std::function<double(double)>& f, double lo,
                                double hi, double f_lo, double f_hi, double rel_tol,
                                double abs_tol, int max_iter);

/// Golden-section maximization of a unimodal function on [lo, hi].
/// Returns the abscissa of the maximum with interval tolerance tol.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol, int max_iter = 300);

/// Least-squares line y = slope*x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Composite Simpson rule on [a, b] with n subintervals (n rounded up to even).
double integrate_simpson(const std::function<double(double)>& f, double a, double b,
                         int n);

/// Runs fn(0..count-1) on a worker pool. Thread count comes from
/// QMAXENT_THREADS when set, hardware concurrency otherwise. Callers write
/// results into preallocated slots indexed by the argument, which keeps
/// output independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Number formatting used by every emitter: 17 significant digits, '.'
/// decimal separator, round-trips doubles exactly.
std::string fmt17(double v);

/// FNV-1a 64-bit hash, hex-encoded; used to stamp configs into output metadata.
std::string fnv1a_hex(const std::string& data);

}  // namespace qmaxent

#endif  // QMAXENT_NUMERIC_HPP
