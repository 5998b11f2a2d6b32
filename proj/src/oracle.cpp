#include "qmaxent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmaxent/numeric.hpp"

namespace qmaxent {

namespace {

// Entropy in level-mass variables x_n = g_n p_n, evaluated from first
// principles via powers (independent of the solver's exp_{2-q} path):
//   q < 1: k_s (sum g^{1-q} x^q - 1)/(1-q)
//   q = 1: -k sum x log(x/g)
struct Objective {
  double q;
  double k_s;
  std::vector<double> g;
  std::vector<double> g_pow;  // g^{1-q}

  double operator()(const std::vector<double>& x) const {
    if (q == 1.0) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > 0.0) s -= x[i] * std::log(x[i] / g[i]);
      return k_s * s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      s += g_pow[i] * std::pow(x[i], q);
    return k_s * (s - 1.0) / (1.0 - q);
  }
};

Objective make_objective(const Spectrum& spectrum, double q, double k_s) {
  Objective obj;
  obj.q = q;
  obj.k_s = k_s;
  for (std::int64_t i = 0; i < spectrum.size(); ++i) {
    obj.g.push_back(spectrum.degeneracy(i));
    obj.g_pow.push_back(std::pow(spectrum.degeneracy(i), 1.0 - q));
  }
  return obj;
}

OracleResult finish(const Spectrum& spectrum, const std::vector<double>& x,
                    const Objective& obj) {
  OracleResult res;
  res.entropy = obj(x);
  KahanSum u;
  for (std::int64_t i = 0; i < spectrum.size(); ++i) {
    res.p.push_back(x[static_cast<std::size_t>(i)] / spectrum.degeneracy(i));
    u.add(x[static_cast<std::size_t>(i)] * spectrum.energy(i));
  }
  res.u_realized = u.value();
  return res;
}

// N = 3: masses as affine functions of x1 (the paper's one-variable
// reduction, generalized to arbitrary levels 0 < e2 < e3).
std::vector<double> masses3(double x1, double u, double e2, double e3) {
  const double x2 = ((1.0 - x1) * e3 - u) / (e3 - e2);
  const double x3 = (u - (1.0 - x1) * e2) / (e3 - e2);
  return {x1, x2, x3};
}

OracleResult brute3(const Spectrum& spectrum, double u, const Objective& obj) {
  const double e2 = spectrum.energy(1);
  const double e3 = spectrum.energy(2);
  const double lo = std::max(0.0, 1.0 - u / e2);
  const double hi = 1.0 - u / e3;
  auto s_of = [&](double x1) { return obj(masses3(x1, u, e2, e3)); };

  // Grid scan at 1e-4 resolution picks the basin (guards the boundary);
  // golden-section then refines around the best cell.
  const int cells = 10000;
  double best_x = lo, best_s = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= cells; ++i) {
    const double x = lo + (hi - lo) * i / cells;
    const double s = s_of(x);
    if (s > best_s) {
      best_s = s;
      best_x = x;
    }
  }
  const double cell = (hi - lo) / cells;
  const double a = std::max(lo, best_x - 2.0 * cell);
  const double b = std::min(hi, best_x + 2.0 * cell);
  double x1 = golden_max(s_of, a, b, 1e-14 * std::max(1.0, hi - lo));
  if (s_of(best_x) > s_of(x1)) x1 = best_x;
  return finish(spectrum, masses3(x1, u, e2, e3), obj);
}

// N = 4: two free masses (x1, x2); the rest follow from the constraints.
OracleResult brute4(const Spectrum& spectrum, double u, const Objective& obj) {
  const double e2 = spectrum.energy(1);
  const double e3 = spectrum.energy(2);
  const double e4 = spectrum.energy(3);
  auto masses = [&](double x1, double x2) -> std::vector<double> {
    const double w = u - x2 * e2;
    const double rest = 1.0 - x1 - x2;
    const double x3 = (rest * e4 - w) / (e4 - e3);
    const double x4 = (w - rest * e3) / (e4 - e3);
    return {x1, x2, x3, x4};
  };
  auto s_of = [&](double x1, double x2) {
    const std::vector<double> x = masses(x1, x2);
    if (x[2] < 0.0 || x[3] < 0.0 || x1 < 0.0 || x2 < 0.0)
      return -std::numeric_limits<double>::infinity();
    return obj(x);
  };

  const double x2_cap = std::min(1.0, u / e2);
  const int cells = 300;
  double bx1 = 0.0, bx2 = 0.0, best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= cells; ++i)
    for (int j = 0; j <= cells; ++j) {
      const double s = s_of(static_cast<double>(i) / cells,
                            x2_cap * static_cast<double>(j) / cells);
      if (s > best) {
        best = s;
        bx1 = static_cast<double>(i) / cells;
        bx2 = x2_cap * static_cast<double>(j) / cells;
      }
    }
  if (!std::isfinite(best)) throw std::domain_error("brute_force: no feasible point found");

  // Compass pattern search, halving the step until it hits rounding.
  double step = std::max(1.0, x2_cap) / cells;
  while (step > 1e-13) {
    bool improved = false;
    constexpr double dir[8][2] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                                  {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (const auto& d : dir) {
      const double s = s_of(bx1 + d[0] * step, bx2 + d[1] * step);
      if (s > best) {
        best = s;
        bx1 += d[0] * step;
        bx2 += d[1] * step;
        improved = true;
        break;
      }
    }
    if (!improved) step *= 0.5;
  }
  return finish(spectrum, masses(bx1, bx2), obj);
}

}  // namespace

OracleResult brute_force(const Spectrum& spectrum, double u, double q, double k_s) {
  if (spectrum.size() > 4)
    throw std::domain_error("brute_force: supports at most 4 distinct levels");
  if (!(u > 0.0) || !(u < spectrum.e_max()))
    throw std::domain_error("brute_force: U outside (0, e_max) is infeasible");
  if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("brute_force: q must be in (0, 1]");

  const Objective obj = make_objective(spectrum, q, k_s);
  if (spectrum.size() == 2) {
    const double x2 = u / spectrum.energy(1);
    return finish(spectrum, {1.0 - x2, x2}, obj);
  }
  if (spectrum.size() == 3) return brute3(spectrum, u, obj);
  return brute4(spectrum, u, obj);
}

std::vector<std::pair<double, double>> value_curve(const Spectrum& spectrum, double q,
                                                   double k_s,
                                                   const std::vector<double>& u_grid) {
  std::vector<std::pair<double, double>> out(u_grid.size());
  parallel_for(u_grid.size(), [&](std::size_t i) {
    out[i] = {u_grid[i], brute_force(spectrum, u_grid[i], q, k_s).entropy};
  });
  return out;
}

}  // namespace qmaxent
