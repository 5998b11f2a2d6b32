#include "qmaxent/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmaxent/numeric.hpp"

namespace qmaxent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Aitken delta-squared on the last three values; falls back to the last
// value when the differences degenerate.
double aitken(double x1, double x2, double x3) {
  const double d1 = x2 - x1;
  const double d2 = x3 - x2;
  const double den = d1 - d2;
  if (den == 0.0 || !std::isfinite(den)) return x3;
  const double out = x3 + d2 * d2 / den;
  return std::isfinite(out) ? out : x3;
}

}  // namespace

std::vector<std::int64_t> geometric_schedule(std::int64_t n0, std::int64_t n_max,
                                             double factor) {
  if (n0 < 2 || n_max < n0 || factor <= 1.0)
    throw std::invalid_argument("geometric_schedule: bad arguments");
  std::vector<std::int64_t> out;
  double n = static_cast<double>(n0);
  while (static_cast<std::int64_t>(n) <= n_max) {
    const auto v = static_cast<std::int64_t>(std::ceil(n));
    if (out.empty() || v > out.back()) out.push_back(v);
    n *= factor;
  }
  if (out.back() < n_max) out.push_back(n_max);
  return out;
}

LimitSequence sweep(const std::function<Spectrum(std::int64_t)>& make_spectrum,
                    const std::string& family_label, double u,
                    const EntropicParams& params,
                    const std::vector<std::int64_t>& schedule) {
  params.validate();
  LimitSequence seq;
  seq.family_label = family_label;
  seq.u = u;
  seq.q = params.q;
  seq.rows.resize(schedule.size());

  parallel_for(schedule.size(), [&](std::size_t i) {
    LimitRow& row = seq.rows[i];
    row.n = schedule[i];
    try {
      const Spectrum spectrum = make_spectrum(schedule[i]);
      row.margin = beta_positivity_margin(spectrum, u);
      const MaxEntSolution sol = solve(spectrum, u, params);
      row.beta = sol.beta;
      row.delta = sol.delta;
      row.temperature = sol.temperature;
      row.p1 = sol.p.front();
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });

  if (params.q < 1.0) {
    try {
      seq.fit = fit_rate(seq, 8);
    } catch (const std::exception&) {
      seq.fit.valid = false;
    }
  }

  // Extrapolations from the last usable rows.
  std::vector<const LimitRow*> ok;
  for (const LimitRow& r : seq.rows)
    if (r.ok) ok.push_back(&r);
  if (ok.empty()) {
    seq.beta_limit = kNaN;
    seq.t_limit = kNaN;
    return seq;
  }
  seq.beta_limit = ok.back()->beta;
  seq.t_limit = ok.back()->temperature;
  if (ok.size() >= 3) {
    const LimitRow& a = *ok[ok.size() - 3];
    const LimitRow& b = *ok[ok.size() - 2];
    const LimitRow& c = *ok[ok.size() - 1];
    seq.t_limit = aitken(a.temperature, b.temperature, c.temperature);
    // Richardson on beta with the locally observed delta decay rate; the
    // empirical rate absorbs the slowly varying corrections that a pure
    // power law misses at finite N.
    if (seq.q < 1.0 && b.delta > 0.0 && c.delta > 0.0 && c.delta < b.delta) {
      const double rate = std::log(b.delta / c.delta) /
                          std::log(static_cast<double>(c.n) / static_cast<double>(b.n));
      const double r = std::pow(static_cast<double>(c.n) / static_cast<double>(b.n), rate);
      if (std::isfinite(r) && r > 1.0001) {
        const double ex = (r * c.beta - b.beta) / (r - 1.0);
        if (std::isfinite(ex)) seq.beta_limit = ex;
      }
    } else {
      seq.beta_limit = aitken(a.beta, b.beta, c.beta);
    }
  }
  return seq;
}

RateFit fit_rate(const LimitSequence& seq, int tail_count) {
  std::vector<double> log_n, log_delta;
  for (const LimitRow& r : seq.rows) {
    if (r.ok && r.delta > 0.0 && std::isfinite(r.delta)) {
      log_n.push_back(std::log(static_cast<double>(r.n)));
      log_delta.push_back(std::log(r.delta));
    }
  }
  if (tail_count < 3) throw std::domain_error("fit_rate: tail_count must be >= 3");
  if (log_n.size() < 3) throw std::domain_error("fit_rate: need >= 3 rows with delta > 0");
  if (static_cast<int>(log_n.size()) > tail_count) {
    log_n.erase(log_n.begin(), log_n.end() - tail_count);
    log_delta.erase(log_delta.begin(), log_delta.end() - tail_count);
  }
  if (log_n.back() - log_n.front() < 2.0 * std::log(10.0))
    throw std::domain_error("fit_rate: tail spans less than two decades of N");
  const LineFit line = fit_line(log_n, log_delta);
  RateFit fit;
  fit.exponent = -line.slope;
  fit.prefactor = std::exp(line.intercept);
  fit.valid = true;
  return fit;
}

double lemma_constant(double u, double q, double e_ion) {
  if (!(u > 0.0) || !(u < e_ion)) throw std::domain_error("lemma_constant: need 0 < U < e_ion");
  if (!(q > 0.0) || !(q < 1.0)) throw std::domain_error("lemma_constant: need q in (0, 1)");
  return std::pow(3.0, 1.0 - q) * e_ion /
         ((1.0 - q) * std::pow(e_ion - u, 1.0 - q) * std::pow(u, 1.0 + q));
}

TwoTier two_tier(double u, double e_ion) {
  if (!(u > 0.0) || !(u < e_ion)) throw std::domain_error("two_tier: need 0 < U < e_ion");
  return {1.0 - u / e_ion, u / e_ion};
}

DensityCurve density_curve(double t, double q, double k,
                           const std::vector<double>& e_grid) {
  if (!(t > 0.0) || !(k > 0.0)) throw std::domain_error("density_curve: need T > 0, k > 0");
  if (!(q >= 0.5) || !(q <= 1.0))
    throw std::domain_error("density_curve: q must be in [1/2, 1] (normalization diverges below)");
  DensityCurve curve;
  curve.q = q;
  curve.kt = k * t;
  curve.e = e_grid;
  curve.rho.reserve(e_grid.size());
  const double kt = k * t;
  if (q == 1.0) {
    for (double e : e_grid) curve.rho.push_back(std::exp(-e / kt) / kt);
    return curve;
  }
  const double amp = std::pow((2.0 * q - 1.0) / q, 1.0 / (1.0 - q));
  for (double e : e_grid) {
    const double arg = 1.0 / q - (2.0 * q - 1.0) * e / (q * q * kt);
    curve.rho.push_back(amp * q_exp(arg, 2.0 - q) / kt);
  }
  return curve;
}

RiemannCheck riemann_check(double u, double q, double e_max, std::int64_t n,
                           double beta) {
  if (!(u > 0.0)) throw std::domain_error("riemann_check: need U > 0");
  if (!(q > 0.5) || !(q <= 1.0)) throw std::domain_error("riemann_check: q must be in (1/2, 1]");
  if (n < 2 || !(e_max > u)) throw std::domain_error("riemann_check: need N >= 2, e_max > U");

  RiemannCheck out;
  out.beta = std::isnan(beta) ? (q == 1.0 ? 1.0 / u : 1.0 / (q * u)) : beta;
  const double b = out.beta;
  const double h = e_max / static_cast<double>(n - 1);

  if (q == 1.0) {
    // int_0^inf exp(-beta(e-U)) e de  vs  U int_0^inf exp(-beta(e-U)) de
    out.integral_lhs = std::exp(b * u) / (b * b);
    out.integral_rhs = u * std::exp(b * u) / b;
    KahanSum lhs, rhs;
    for (std::int64_t j = 0; j < n; ++j) {
      const double e = h * static_cast<double>(j);
      const double w = std::exp(-b * (e - u));
      lhs.add(w * e);
      rhs.add(w * u);
    }
    out.sum_lhs = h * lhs.value();
    out.sum_rhs = h * rhs.value();
    return out;
  }

  const double base0 = 1.0 - (1.0 - q) * b * u;
  if (!(base0 > 0.0) || !(b > 0.0))
    throw std::domain_error("riemann_check: beta outside (0, 1/((1-q)U))");
  // Closed forms of the two improper integrals (they exist for q > 1/2):
  //   int exp_{2-q}(-beta(e-U)) de       = base0^{q/(q-1)} / (beta q)
  //   int [exp_{2-q}(-beta(e-U))]^q de   = base0^{(2q-1)/(q-1)} / (beta (2q-1))
  out.integral_lhs = std::pow(base0, q / (q - 1.0)) / (b * q);
  out.integral_rhs = std::pow(base0, (2.0 * q - 1.0) / (q - 1.0)) / (b * (2.0 * q - 1.0));
  KahanSum lhs, rhs;
  const double kappa = 1.0 / (q - 1.0);
  for (std::int64_t j = 0; j < n; ++j) {
    const double e = h * static_cast<double>(j);
    const double base = 1.0 + (1.0 - q) * b * (e - u);
    lhs.add(std::pow(base, kappa));
    rhs.add(std::pow(base, q * kappa));
  }
  out.sum_lhs = h * lhs.value();
  out.sum_rhs = h * rhs.value();
  return out;
}

// ---------------------------------------------------------------------------
// Series limits (oscillator, box)
// ---------------------------------------------------------------------------

namespace {

struct SeriesSums {
  double s0 = 0.0;  // sum r_n
  double s1 = 0.0;  // sum r_n e_n
};

// Oscillator ratio series at gap delta: r(t) = (A/(A + c t))^s over t = n-1,
// summed explicitly to t < M with exact power-integral midpoint tails.
SeriesSums oscillator_sums(double u, double q, double hbar_omega, double delta) {
  const double s = 1.0 / (1.0 - q);
  const double beta = 1.0 / ((1.0 - q) * u) - delta;
  const double a = u * delta;
  const double c = hbar_omega * beta;
  constexpr std::int64_t m = 20000;
  KahanSum s0, s1;
  for (std::int64_t t = 0; t < m; ++t) {
    const double r = std::pow(a / (a + c * static_cast<double>(t)), s);
    s0.add(r);
    s1.add(r * static_cast<double>(t));
  }
  // Tails over t >= M: midpoint integrals from t0 = M - 1/2, closed form.
  const double t0 = static_cast<double>(m) - 0.5;
  const double u0 = a + c * t0;
  const double as = std::pow(a, s);
  const double tail0 = as * std::pow(u0, 1.0 - s) / (c * (s - 1.0));
  const double tail1 = as / (c * c) *
                       (std::pow(u0, 2.0 - s) / (s - 2.0) -
                        a * std::pow(u0, 1.0 - s) / (s - 1.0));
  return {s0.value() + tail0, hbar_omega * (s1.value() + tail1)};
}

// Box ratio series: r_n = (A/(A + B(n^2-1)))^s, explicit summation until the
// integral-bound tails of both series drop below 1e-12 of the partials.
SeriesSums box_sums(double u, double q, double gamma, double delta) {
  const double s = 1.0 / (1.0 - q);
  const double beta = 1.0 / ((1.0 - q) * u) - delta;
  const double a = u * delta;
  const double bb = gamma * beta;
  constexpr std::int64_t cap = 5000000;
  KahanSum s0, s1;
  std::int64_t n = 1;
  for (; n <= cap; ++n) {
    const double e = (static_cast<double>(n) * n - 1.0) * gamma;
    const double r = std::pow(a / (a + bb * (static_cast<double>(n) * n - 1.0)), s);
    s0.add(r);
    s1.add(r * e);
    if (n >= 64 && (n & (n - 1)) == 0) {  // check bound at powers of two
      const double nd = static_cast<double>(n);
      // r(n) ~ (a/bb)^s n^{-2s}; integral bounds on the remainders.
      const double tail0 = std::pow(a / bb, s) * std::pow(nd, 1.0 - 2.0 * s) /
                           (2.0 * s - 1.0);
      const double tail1 = gamma * std::pow(a / bb, s) * std::pow(nd, 3.0 - 2.0 * s) /
                           (2.0 * s - 3.0);
      if (tail0 < 1e-12 * s0.value() && tail1 < 1e-12 * std::max(s1.value(), a))
        break;
    }
  }
  if (n > cap)
    throw convergence_error("box_series_limit: series too slow to converge at this q");
  return {s0.value(), s1.value()};
}

SeriesLimit series_limit(double u, double q, double k, double unit_pow,
                         const std::function<SeriesSums(double)>& sums) {
  // Mean-energy identity G(delta) = S1/S0 - U is increasing in delta.
  const double delta0 = 1.0 / ((1.0 - q) * u);
  auto g = [&](double log_delta) {
    const SeriesSums ss = sums(std::exp(log_delta));
    return ss.s1 / ss.s0 - u;
  };
  double lo = std::log(delta0) - 40.0;
  double g_lo = g(lo);
  for (int guard = 0; !(g_lo < 0.0) && guard < 20; ++guard) {
    lo -= 20.0;
    g_lo = g(lo);
  }
  // Walk the upper end toward delta0 only as far as needed: the series grow
  // expensive as beta -> 0, and the root normally sits well below delta0.
  double hi = 0.0, g_hi = 0.0;
  bool bracketed = false;
  for (double frac = 0.5; frac > 1e-13; frac *= 0.5) {
    hi = std::log(delta0 * (1.0 - frac));
    g_hi = g(hi);
    if (g_hi > 0.0) {
      bracketed = true;
      break;
    }
  }
  if (!bracketed || !(g_lo < 0.0))
    throw convergence_error("series_limit: mean-energy identity not bracketed");
  const double t = find_root_increasing(g, lo, hi, g_lo, g_hi, 0.0, 1e-13, 300).x;

  SeriesLimit out;
  out.delta = std::exp(t);
  out.beta = delta0 - out.delta;
  const SeriesSums ss = sums(out.delta);
  out.p1 = 1.0 / ss.s0;
  // T = (1/k) (p1^{1-q} (1-q) delta U / (q beta unit^{1-q}))^{1/q}
  out.temperature =
      std::pow(std::pow(out.p1, 1.0 - q) * (1.0 - q) * out.delta * u /
                   (q * out.beta * unit_pow),
               1.0 / q) /
      k;
  return out;
}

}  // namespace

SeriesLimit oscillator_series_limit(double u, double q, double hbar_omega, double k) {
  if (!(q > 0.5) || !(q < 1.0))
    throw std::domain_error("oscillator_series_limit: q must be in (1/2, 1)");
  if (1.0 / (1.0 - q) < 2.05)
    throw std::domain_error("oscillator_series_limit: q too close to 1/2 for the mean series");
  if (!(u > 0.0) || !(hbar_omega > 0.0) || !(k > 0.0))
    throw std::domain_error("oscillator_series_limit: bad arguments");
  return series_limit(u, q, k, std::pow(hbar_omega, 1.0 - q),
                      [&](double d) { return oscillator_sums(u, q, hbar_omega, d); });
}

SeriesLimit box_series_limit(double u, double q, double gamma, double k) {
  if (!(q > 1.0 / 3.0) || !(q < 1.0))
    throw std::domain_error("box_series_limit: q must be in (1/3, 1)");
  if (!(u > 0.0) || !(gamma > 0.0) || !(k > 0.0))
    throw std::domain_error("box_series_limit: bad arguments");
  return series_limit(u, q, k, std::pow(gamma, 1.0 - q),
                      [&](double d) { return box_sums(u, q, gamma, d); });
}

}  // namespace qmaxent
