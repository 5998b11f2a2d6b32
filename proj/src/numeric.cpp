#include "qmaxent/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace qmaxent {

RootResult find_root_increasing(const std::function<double(double)>& f, double lo,
                                double hi, double f_lo, double f_hi, double rel_tol,
                                double abs_tol, int max_iter) {
  if (!(lo < hi)) throw convergence_error("root bracket is empty");
  if (!(f_lo < 0.0) || !(f_hi > 0.0))
    throw convergence_error("root bracket does not change sign");

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    // Secant proposal through the bracket endpoints when both values are
    // finite; it must land strictly inside, otherwise bisect.
    double cand = 0.5 * (lo + hi);
    if (std::isfinite(f_lo) && std::isfinite(f_hi) && f_hi > f_lo) {
      const double s = lo - f_lo * (hi - lo) / (f_hi - f_lo);
      const double guard = 0.01 * (hi - lo);
      if (s > lo + guard && s < hi - guard) cand = s;
    }
    const double fc = f(cand);
    if (fc == 0.0) return {cand, it + 1};
    if (fc < 0.0) {
      lo = cand;
      f_lo = fc;
    } else {
      hi = cand;
      f_hi = fc;
    }
    x = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * std::abs(x) + abs_tol) return {x, it + 1};
  }
  throw convergence_error("root finder exceeded max iterations");
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol, int max_iter) {
  constexpr double phi = 0.6180339887498949;  // (sqrt(5)-1)/2
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line needs >= 2 points");
  const double n = static_cast<double>(x.size());
  KahanSum sx, sy, sxx, sxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx.add(x[i]);
    sy.add(y[i]);
    sxx.add(x[i] * x[i]);
    sxy.add(x[i] * y[i]);
  }
  const double det = n * sxx.value() - sx.value() * sx.value();
  if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit out;
  out.slope = (n * sxy.value() - sx.value() * sy.value()) / det;
  out.intercept = (sy.value() - out.slope * sx.value()) / n;
  return out;
}

double integrate_simpson(const std::function<double(double)>& f, double a, double b,
                         int n) {
  if (n < 2) n = 2;
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  KahanSum acc;
  acc.add(f(a));
  acc.add(f(b));
  for (int i = 1; i < n; ++i) acc.add((i % 2 ? 4.0 : 2.0) * f(a + i * h));
  return acc.value() * h / 3.0;
}

namespace {

unsigned worker_count() {
  if (const char* env = std::getenv("QMAXENT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const unsigned workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qmaxent
