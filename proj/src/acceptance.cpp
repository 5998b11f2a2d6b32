#include "qmaxent/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <ostream>
#include <random>

#include "qmaxent/limits.hpp"
#include "qmaxent/numeric.hpp"
#include "qmaxent/oracle.hpp"
#include "qmaxent/qmath.hpp"
#include "qmaxent/saha.hpp"
#include "qmaxent/solver.hpp"
#include "qmaxent/spectra.hpp"

namespace qmaxent {

namespace {

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

double rel_dev(double value, double target) {
  return std::abs(value - target) / std::abs(target);
}

Spectrum example1() {
  return Spectrum::custom({{0.0, 1}, {0.5, 1}, {1.0, 1}}, "example1");
}

// --- C1: continuous-limit beta on the pinned uniform grid ------------------

void c1(CriterionResult& r) {
  const Spectrum grid = Spectrum::uniform(6001, 30.0, 1);
  r.passed = true;
  for (double q : {0.6, 0.75, 0.9}) {
    const double beta = solve_beta(grid, 1.0, q);
    const double target = 1.0 / q;
    const double dev = rel_dev(beta, target);
    const bool ok = dev <= 0.02;
    r.passed = r.passed && ok;
    r.details.push_back(fmt("q=%.2f: beta=%.6f target=%.6f dev=%.2f%%%s", q, beta,
                            target, 100.0 * dev, ok ? "" : "  <-- exceeds 2%"));
  }
}

// --- C2: classical limit on the same grid -----------------------------------

void c2(CriterionResult& r) {
  const Spectrum grid = Spectrum::uniform(6001, 30.0, 1);
  const EntropicParams params{1.0, 1.0, 1.0};
  const MaxEntSolution sol = solve(grid, 1.0, params);
  const double dev_beta = rel_dev(sol.beta, 1.0);
  const double dev_t = rel_dev(sol.temperature, 1.0);
  r.passed = dev_beta <= 0.02 && dev_t <= 0.02;
  r.details.push_back(fmt("beta=%.8f (target 1/U=1, dev=%.3f%%), T=%.8f (target U/k=1, dev=%.3f%%)",
                          sol.beta, 100.0 * dev_beta, sol.temperature, 100.0 * dev_t));
}

// --- C3: specific-heat slope over U-T sweeps --------------------------------

void c3(CriterionResult& r) {
  r.passed = true;
  for (double q : {0.6, 0.8, 0.95}) {
    const double ratio = q == 0.6 ? 12000.0 : 1000.0;  // e_max = ratio * U
    const std::int64_t n_max = q == 0.6 ? 131072 : 65536;
    const EntropicParams params{q, 1.0, 1.0};
    std::vector<double> us = {1.0, 2.0, 3.0};
    std::vector<double> ts;
    for (double u : us) {
      const double e_max = ratio * u;
      const auto schedule = geometric_schedule(4096, n_max);
      const LimitSequence seq = sweep(
          [&](std::int64_t n) { return Spectrum::uniform(n + 1, e_max, 1); },
          "uniform", u, params, schedule);
      ts.push_back(seq.t_limit);
    }
    const LineFit line = fit_line(us, ts);
    const double target = (2.0 * q - 1.0) / q;  // dT/dU at k = 1
    const double dev = rel_dev(line.slope, target);
    const bool ok = dev <= 0.02;
    r.passed = r.passed && ok;
    r.details.push_back(fmt("q=%.2f: slope=%.6f target=%.6f dev=%.3f%%%s", q,
                            line.slope, target, 100.0 * dev, ok ? "" : "  <-- exceeds 2%"));
  }
}

// --- C4: oscillator Boltzmann-Gibbs closed form ------------------------------

void c4(CriterionResult& r) {
  const EntropicParams params{1.0, 1.0, 1.0};
  r.passed = true;
  for (double u : {0.5, 1.5, 3.0}) {
    const auto schedule = geometric_schedule(64, 4096);
    const LimitSequence seq =
        sweep([&](std::int64_t n) { return Spectrum::oscillator(n, 1.0); },
              "oscillator", u, params, schedule);
    const double target = std::log((1.0 + u) / u);
    const double dev = rel_dev(seq.beta_limit, target);
    const bool ok = dev <= 1e-4;
    r.passed = r.passed && ok;
    r.details.push_back(
        fmt("U=%.1f: beta_limit=%.10f closed=%.10f rel=%.2e%s", u, seq.beta_limit,
            target, dev, ok ? "" : "  <-- exceeds 1e-4"));
  }
}

// --- C5: endpoint regimes (oscillator q<=1/2, box q<=1/3) --------------------

void c5(CriterionResult& r) {
  r.passed = true;
  struct Case {
    const char* name;
    std::function<Spectrum(std::int64_t)> make;
    double u, q;
    std::int64_t n_max;
  };
  const Case cases[] = {
      {"oscillator q=0.4", [](std::int64_t n) { return Spectrum::oscillator(n, 1.0); },
       1.5, 0.4, 131072},
      {"box q=0.3", [](std::int64_t n) { return Spectrum::box(n, 1.0); }, 2.0, 0.3,
       16384},
  };
  for (const Case& c : cases) {
    const EntropicParams params{c.q, 1.0, 1.0};
    const LimitSequence seq =
        sweep(c.make, c.name, c.u, params, geometric_schedule(64, c.n_max));
    bool monotone = true;
    for (std::size_t i = 1; i < seq.rows.size(); ++i)
      monotone = monotone && seq.rows[i].ok && seq.rows[i].delta < seq.rows[i - 1].delta;
    const double target = 1.0 / ((1.0 - c.q) * c.u);
    const double dev = rel_dev(seq.beta_limit, target);
    const bool ok = monotone && dev <= 0.01;
    r.passed = r.passed && ok;
    r.details.push_back(fmt(
        "%s: delta monotone=%s, beta@Nmax=%.5f, extrapolated=%.6f vs 1/((1-q)U)=%.6f (dev=%.3f%%)%s",
        c.name, monotone ? "yes" : "NO", seq.rows.back().beta, seq.beta_limit, target,
        100.0 * dev, ok ? "" : "  <-- fail"));
  }
}

// --- C6: hydrogen gap decay rate and constant --------------------------------

void c6(CriterionResult& r) {
  const double e_ion = 13.6, u = 6.8;
  r.passed = true;
  for (double q : {0.4, 0.5, 0.7}) {
    const auto t0 = std::chrono::steady_clock::now();
    const EntropicParams params{q, 1.0, 1.0};
    const LimitSequence seq =
        sweep([&](std::int64_t n) { return Spectrum::hydrogen(n, e_ion); }, "hydrogen",
              u, params, geometric_schedule(64, 100000));
    const double rate_target = 3.0 * (1.0 - q);
    const double rate_err = std::abs(seq.fit.exponent - rate_target);
    const LimitRow& last = seq.rows.back();
    const double scaled = last.delta * std::pow(static_cast<double>(last.n), rate_target);
    const double constant = lemma_constant(u, q, e_ion);
    const double const_dev = rel_dev(scaled, constant);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = seq.fit.valid && rate_err <= 0.05 && const_dev <= 0.05 && secs < 60.0;
    r.passed = r.passed && ok;
    r.details.push_back(fmt(
        "q=%.1f: exponent=%.4f (target %.2f, |err|=%.4f); N^c*delta=%.6g vs C=%.6g (dev=%.3f%%); %.1f s%s",
        q, seq.fit.exponent, rate_target, rate_err, scaled, constant, 100.0 * const_dev,
        secs, ok ? "" : "  <-- fail"));
  }
}

// --- C7: two-tier ground mass -------------------------------------------------

void c7(CriterionResult& r) {
  const double e_ion = 13.6, u = 6.8;
  const TwoTier tier = two_tier(u, e_ion);
  r.passed = true;
  for (double q : {0.3, 0.5, 0.7}) {
    const EntropicParams params{q, 1.0, 1.0};
    const LimitSequence seq =
        sweep([&](std::int64_t n) { return Spectrum::hydrogen(n, e_ion); }, "hydrogen",
              u, params, geometric_schedule(64, 65536));
    const LimitRow& last = seq.rows.back();
    const double mass = 2.0 * last.p1;  // g(e_1) = 2
    const double err = std::abs(mass - tier.ground_mass);
    const bool ok = err <= 1e-3;
    r.passed = r.passed && ok;
    r.details.push_back(fmt("q=%.1f: g1*p1=%.8f vs 1-U/e_ion=%.8f (|err|=%.2e)%s", q,
                            mass, tier.ground_mass, err, ok ? "" : "  <-- fail"));
  }
}

// --- C8: hydrogen temperature with physical constants ------------------------

void c8(CriterionResult& r) {
  const double e_ion = 13.6, u = 6.8;
  const double k = constants::k_boltzmann_eV;
  const EntropicParams params{0.5, k, 1.0};
  const LimitSequence seq =
      sweep([&](std::int64_t n) { return Spectrum::hydrogen(n, e_ion); }, "hydrogen", u,
            params, geometric_schedule(64, 65536));
  const double t_target = u / k;
  const double dev_t = rel_dev(seq.t_limit, t_target);
  const double tion = ionization_temperature(0.5, e_ion, k);
  const double dev_tion = rel_dev(tion, e_ion / k);
  r.passed = dev_t <= 0.02 && dev_tion <= 0.01;
  r.details.push_back(fmt("T_limit=%.6g K vs U/k=%.6g K (dev=%.4f%%)", seq.t_limit,
                          t_target, 100.0 * dev_t));
  r.details.push_back(fmt("T_ion(0.5)=%.6g K vs e_ion/k=%.6g K (dev=%.2e)", tion,
                          e_ion / k, dev_tion));
}

// --- C9: oracle equivalence on the three-level spectrum ----------------------

void c9(CriterionResult& r) {
  const Spectrum spec = example1();
  double max_dp = 0.0, max_ds = 0.0;
  for (int iq = 1; iq <= 10; ++iq) {
    const double q = 0.1 * iq;  // 0.1 .. 1.0
    for (int iu = 0; iu < 10; ++iu) {
      const double u = 0.05 + 0.1 * iu;
      const EntropicParams params{q, 1.0, 1.0};
      const MaxEntSolution sol = solve(spec, u, params);
      const double k_s = scale_factor(params, spec.e_max(), spec.microstate_count());
      const OracleResult oracle = brute_force(spec, u, q, k_s);
      for (std::size_t i = 0; i < sol.p.size(); ++i)
        max_dp = std::max(max_dp, std::abs(sol.p[i] - oracle.p[i]));
      max_ds = std::max(max_ds, std::abs(sol.entropy - oracle.entropy));
    }
  }
  r.passed = max_dp <= 1e-6 && max_ds <= 1e-9;
  r.details.push_back(fmt("10x10 grid: max|p_solver - p_oracle|=%.2e (<=1e-6), "
                          "max|S_solver - S_oracle|=%.2e (<=1e-9)",
                          max_dp, max_ds));
}

// --- C10: randomized property suite -------------------------------------------

void c10(CriterionResult& r) {
  std::mt19937 rng(20240811u);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  std::string first_failure;
  auto fail = [&](const std::string& what) {
    ++failures;
    if (first_failure.empty()) first_failure = what;
  };

  auto random_spectrum = [&](int kind) -> Spectrum {
    switch (kind) {
      case 0:
        return Spectrum::uniform(5 + static_cast<std::int64_t>(unit(rng) * 195),
                                 0.5 + 49.5 * unit(rng),
                                 1 + static_cast<std::int64_t>(unit(rng) * 2.99));
      case 1:
        return Spectrum::oscillator(5 + static_cast<std::int64_t>(unit(rng) * 295),
                                    0.1 + 2.0 * unit(rng));
      case 2:
        return Spectrum::box(4 + static_cast<std::int64_t>(unit(rng) * 96),
                             0.1 + 2.0 * unit(rng));
      case 3:
        return Spectrum::hydrogen(3 + static_cast<std::int64_t>(unit(rng) * 97),
                                  1.0 + 20.0 * unit(rng));
      default: {
        std::vector<Level> levels{{0.0, 1 + static_cast<std::int64_t>(unit(rng) * 3)}};
        double e = 0.0;
        const int extra = 1 + static_cast<int>(unit(rng) * 8);
        for (int i = 0; i < extra; ++i) {
          e += 0.05 + unit(rng);
          levels.push_back({e, 1 + static_cast<std::int64_t>(unit(rng) * 3)});
        }
        return Spectrum::custom(std::move(levels));
      }
    }
  };

  constexpr int kInstances = 1000;
  for (int trial = 0; trial < kInstances; ++trial) {
    const Spectrum spec = random_spectrum(trial % 5);
    const double q = trial % 6 == 5 ? 1.0 : 0.1 + 0.85 * unit(rng);
    const double u = (0.05 + 0.9 * unit(rng)) * spec.e_max();
    const EntropicParams params{q, 1.0, 1.0};
    MaxEntSolution sol;
    try {
      sol = solve(spec, u, params);
    } catch (const std::exception& e) {
      fail(fmt("trial %d: solve threw: %s", trial, e.what()));
      continue;
    }

    // Constraint residuals.
    KahanSum norm, energy;
    for (std::int64_t i = 0; i < spec.size(); ++i) {
      norm.add(spec.degeneracy(i) * sol.p[static_cast<std::size_t>(i)]);
      energy.add(spec.degeneracy(i) * sol.p[static_cast<std::size_t>(i)] *
                 (spec.energy(i) - u));
    }
    if (std::abs(norm.value() - 1.0) > 1e-10)
      fail(fmt("trial %d: normalization off by %.2e", trial, norm.value() - 1.0));
    if (std::abs(energy.value()) > 1e-9 * spec.e_max())
      fail(fmt("trial %d: mean energy off by %.2e", trial, energy.value()));

    // Positivity and beta sign vs margin.
    for (double pi : sol.p)
      if (!(pi > 0.0)) fail(fmt("trial %d: nonpositive probability", trial));
    const double margin = beta_positivity_margin(spec, u);
    if (margin != 0.0 && sol.beta != 0.0 &&
        std::signbit(margin) != std::signbit(sol.beta) &&
        std::abs(sol.beta) > 1e-9 / spec.e_max())
      fail(fmt("trial %d: sign(beta) != sign(margin)", trial));

    // Residual monotonicity on a sample of instances.
    if (trial % 10 == 0 && q < 1.0) {
      const double hi = 1.0 / ((1.0 - q) * u);
      const double lo = -1.0 / ((1.0 - q) * (spec.e_max() - u));
      double prev = 0.0;
      bool first = true;
      for (int j = 1; j <= 20; ++j) {
        const double beta = lo + (hi - lo) * j / 21.0;
        const double res = residual(spec, u, q, beta);
        if (!first && !(res < prev)) fail(fmt("trial %d: residual not decreasing", trial));
        prev = res;
        first = false;
      }
    }

    // Scale-factor independence: beta and p bit-identical under (k, sigma)
    // changes (k_s enters only temperature and multipliers).
    if (trial % 10 == 5) {
      const EntropicParams other{q, 1.380649e-23, 2.0};
      const MaxEntSolution alt = solve(spec, u, other);
      if (std::memcmp(&alt.beta, &sol.beta, sizeof(double)) != 0)
        fail(fmt("trial %d: beta depends on scale factor", trial));
      if (alt.p.size() != sol.p.size() ||
          std::memcmp(alt.p.data(), sol.p.data(), sol.p.size() * sizeof(double)) != 0)
        fail(fmt("trial %d: p depends on scale factor", trial));
    }
  }

  // Truncation monotonicity: beta_N strictly increasing once the margin is
  // positive (oscillator / box / hydrogen).
  for (int trial = 0; trial < 50; ++trial) {
    const int kind = 1 + trial % 3;
    const std::int64_t n0 = 32 + static_cast<std::int64_t>(unit(rng) * 96);
    auto make = [&](std::int64_t n) {
      return kind == 1   ? Spectrum::oscillator(n, 1.0)
             : kind == 2 ? Spectrum::box(n, 1.0)
                         : Spectrum::hydrogen(n, 13.6);
    };
    const double q = 0.2 + 0.7 * unit(rng);
    const Spectrum s0 = make(n0);
    const double u = (0.1 + 0.5 * unit(rng)) * s0.e_max();
    double prev = -1e300;
    bool all_positive = true;
    for (std::int64_t n : {n0, 2 * n0, 4 * n0}) {
      const Spectrum s = make(n);
      all_positive = all_positive && beta_positivity_margin(s, u) > 0.0;
      const double beta = solve_beta(s, u, q);
      if (all_positive) {
        if (!(beta > prev)) fail(fmt("beta_N not increasing (kind %d, N=%lld)", kind,
                                     static_cast<long long>(n)));
        prev = beta;
      }
    }
  }

  // Envelope check on the three-level spectrum: central difference of the
  // optimal entropy vs lambda2.
  {
    const Spectrum spec = example1();
    const double h = 1e-5;
    for (int i = 0; i < 10; ++i) {
      const double q = 0.15 + 0.08 * i;
      const double u = 0.2 + 0.06 * i;
      const EntropicParams params{q, 1.0, 1.0};
      const MaxEntSolution sol = solve(spec, u, params);
      const double ds = (solve(spec, u + h, params).entropy -
                         solve(spec, u - h, params).entropy) /
                        (2.0 * h);
      if (rel_dev(sol.lambda2, ds) > 1e-4)
        fail(fmt("envelope: lambda2=%.8f vs dS/dU=%.8f at q=%.2f U=%.2f", sol.lambda2,
                 ds, q, u));
    }
  }

  r.passed = failures == 0;
  r.details.push_back(fmt("%d randomized instances + 50 truncation-monotonicity + 10 envelope checks; %d failure(s)%s%s",
                          kInstances, failures, failures ? " first: " : "",
                          first_failure.c_str()));
}

// --- C11: Saha cross-check ----------------------------------------------------

void c11(CriterionResult& r) {
  SahaConditions base;
  base.sign = SahaSign::automatic;
  const SahaSign sign = resolve_saha_sign(base);
  base.sign = sign;
  const auto table = saha_sweep(1e13, 1e27, 33, base);
  const double t_low = table.front().second;
  const double t_high = table.back().second;
  const double dev_low = rel_dev(t_low, 6.2e3);
  const double dev_high = rel_dev(t_high, 6.5e5);
  r.passed = dev_low <= 0.10 && dev_high <= 0.10;
  r.details.push_back(fmt("sign convention: %s (printed +e_ion/kT form %s)",
                          sign == SahaSign::printed ? "printed" : "conventional",
                          sign == SahaSign::printed ? "usable" : "admits no root; fell back"));
  r.details.push_back(fmt("eta=1e13 -> T=%.4g K (ref 6.2e3, dev=%.2f%%); eta=1e27 -> T=%.4g K (ref 6.5e5, dev=%.2f%%)",
                          t_low, 100.0 * dev_low, t_high, 100.0 * dev_high));
  const double tion = ionization_temperature(0.5, 13.6, constants::k_boltzmann_eV);
  r.details.push_back(fmt("T_ion(q=0.5)=%.4g K lies inside [%.4g, %.4g]: %s", tion,
                          t_low, t_high, (tion > t_low && tion < t_high) ? "yes" : "NO"));
}

}  // namespace

bool AcceptanceReport::all_passed() const {
  for (const CriterionResult& c : criteria)
    if (!c.passed) return false;
  return true;
}

AcceptanceReport run_acceptance(std::ostream* live) {
  struct Entry {
    int id;
    const char* name;
    void (*fn)(CriterionResult&);
    double time_cap;  // seconds; 0 = unbounded
  };
  const Entry entries[] = {
      {1, "continuous-limit beta, uniform grid (6001, 30), U=1", c1, 5.0},
      {2, "classical limit: beta=1/U and T=U/k on the same grid", c2, 5.0},
      {3, "specific-heat slope dT/dU = (2q-1)/(qk) from U-T sweeps", c3, 0.0},
      {4, "oscillator q=1 closed-form beta via sweep extrapolation", c4, 10.0},
      {5, "endpoint regimes: delta_N -> 0, beta -> 1/((1-q)U)", c5, 0.0},
      {6, "hydrogen gap decay: exponent 3(1-q) and closed-form constant", c6, 180.0},
      {7, "hydrogen two-tier ground mass 1 - U/e_ion", c7, 0.0},
      {8, "hydrogen temperature: T=U/k at q=0.5, T_ion(0.5)=e_ion/k", c8, 0.0},
      {9, "oracle equivalence on the three-level spectrum", c9, 0.0},
      {10, "randomized property suite (constraints, monotonicity, envelope)", c10, 60.0},
      {11, "Saha ionization-temperature range cross-check", c11, 0.0},
  };

  AcceptanceReport report;
  for (const Entry& e : entries) {
    CriterionResult res;
    res.id = e.id;
    res.name = e.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.fn(res);
    } catch (const std::exception& ex) {
      res.passed = false;
      res.details.push_back(std::string("exception: ") + ex.what());
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.time_cap > 0.0 && res.seconds > e.time_cap) {
      res.passed = false;
      res.details.push_back(fmt("runtime %.1f s exceeds the %.0f s cap", res.seconds,
                                e.time_cap));
    }
    if (live) {
      char line[256];
      std::snprintf(line, sizeof line, "C%02d %s  %s  [%.2f s]\n", res.id,
                    res.passed ? "PASS" : "FAIL", res.name.c_str(), res.seconds);
      *live << line;
      for (const std::string& d : res.details) *live << "      " << d << "\n";
      live->flush();
    }
    report.criteria.push_back(std::move(res));
  }
  return report;
}

}  // namespace qmaxent
