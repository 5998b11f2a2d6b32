// qmaxent command-line interface.
//
// Subcommands:
//   solve   one truncated instance: beta, T, multipliers, entropy, p head
//   sweep   truncation sweep N -> infinity with rate fit and extrapolation
//   figure  datasets for the standard figures (1..7)
//   saha    Saha ionization-temperature table over a density grid
//   accept  run the acceptance suite (exit 0 iff every criterion passes)
//
// Exit codes: 0 success, 2 domain error, 3 convergence failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmaxent/acceptance.hpp"
#include "qmaxent/io.hpp"
#include "qmaxent/limits.hpp"
#include "qmaxent/numeric.hpp"
#include "qmaxent/oracle.hpp"
#include "qmaxent/qmath.hpp"
#include "qmaxent/saha.hpp"
#include "qmaxent/solver.hpp"
#include "qmaxent/spectra.hpp"

namespace {

using namespace qmaxent;

// ---------------------------------------------------------------------------
// Shared spectrum options
// ---------------------------------------------------------------------------

struct SpectrumOptions {
  std::string family;        // uniform | oscillator | box | hydrogen
  std::string levels;        // "e:g,e:g,..." custom spectrum
  std::string spectrum_file; // TOML definition file
  std::int64_t n = 0;
  double emax = 0.0;
  std::int64_t m = 1;
  double hbar_omega = 1.0;
  double gamma = 1.0;
  double e_ion = 13.6;
};

void add_spectrum_options(CLI::App* cmd, SpectrumOptions& opt, bool with_n) {
  cmd->add_option("--family", opt.family,
                  "spectrum family: uniform|oscillator|box|hydrogen");
  cmd->add_option("--levels", opt.levels,
                  "explicit levels as 'e:g,e:g,...' (custom spectrum)");
  cmd->add_option("--spectrum", opt.spectrum_file, "spectrum definition file (TOML)");
  if (with_n) cmd->add_option("--n", opt.n, "number of levels in the truncation");
  cmd->add_option("--emax", opt.emax, "top energy (uniform family)");
  cmd->add_option("--m", opt.m, "per-level degeneracy (uniform family)");
  cmd->add_option("--hbar-omega", opt.hbar_omega, "level spacing (oscillator family)");
  cmd->add_option("--gamma", opt.gamma, "energy unit (box family)");
  cmd->add_option("--e-ion", opt.e_ion, "ionization energy (hydrogen family)");
}

std::vector<Level> parse_levels(const std::string& text) {
  std::vector<Level> levels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::size_t colon = item.find(':');
    Level level;
    level.energy = std::stod(item.substr(0, colon));
    level.degeneracy = colon == std::string::npos ? 1 : std::stoll(item.substr(colon + 1));
    levels.push_back(level);
  }
  return levels;
}

Spectrum make_spectrum(const SpectrumOptions& opt, std::int64_t n_override = 0) {
  const std::int64_t n = n_override > 0 ? n_override : opt.n;
  if (!opt.spectrum_file.empty()) return load_spectrum_file(opt.spectrum_file);
  if (!opt.levels.empty()) return Spectrum::custom(parse_levels(opt.levels));
  if (opt.family == "uniform") return Spectrum::uniform(n, opt.emax, opt.m);
  if (opt.family == "oscillator") return Spectrum::oscillator(n, opt.hbar_omega);
  if (opt.family == "box") return Spectrum::box(n, opt.gamma);
  if (opt.family == "hydrogen") return Spectrum::hydrogen(n, opt.e_ion);
  throw std::domain_error("no spectrum given: use --family, --levels or --spectrum");
}

double family_default_sigma(const SpectrumOptions& opt) {
  return opt.family == "box" ? 2.0 : 1.0;  // box: W^2 scaling makes k_s exact
}

std::string describe_config(const CLI::App& app) {
  std::string out = app.get_name();
  for (const CLI::Option* o : app.get_options()) {
    if (o->count() == 0 || o->get_name() == "--help") continue;
    out += " " + o->get_name() + "=" + o->as<std::string>();
  }
  return out;
}

void emit(const Table& table, const std::string& path, const std::string& format,
          const std::string& extra_json = "") {
  const std::string content =
      format == "json" ? to_json(table, extra_json) : to_csv(table);
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

int run_solve(const SpectrumOptions& sopt, double u, const EntropicParams& params,
              const std::string& out_path, const std::string& format,
              const std::string& config) {
  const Spectrum spectrum = make_spectrum(sopt);
  const MaxEntSolution sol = solve(spectrum, u, params);

  std::printf("spectrum = %s\n", spectrum.label().c_str());
  std::printf("beta     = %s\n", fmt17(sol.beta).c_str());
  if (params.q < 1.0) std::printf("delta    = %s\n", fmt17(sol.delta).c_str());
  std::printf("T        = %s\n", fmt17(sol.temperature).c_str());
  std::printf("lambda1  = %s\n", fmt17(sol.lambda1).c_str());
  std::printf("lambda2  = %s\n", fmt17(sol.lambda2).c_str());
  std::printf("S        = %s\n", fmt17(sol.entropy).c_str());
  std::printf("Z        = %s\n", fmt17(sol.z).c_str());
  const std::size_t head = std::min<std::size_t>(sol.p.size(), 10);
  std::printf("p[0..%zu]", head - 1);
  for (std::size_t i = 0; i < head; ++i) std::printf(" %s", fmt17(sol.p[i]).c_str());
  std::printf("\n");

  if (!out_path.empty()) {
    Table t;
    t.config = config;
    t.columns = {"n", "e", "g", "p"};
    for (std::int64_t i = 0; i < spectrum.size(); ++i)
      t.rows.push_back({std::to_string(i + 1), fmt17(spectrum.energy(i)),
                        fmt17(spectrum.degeneracy(i)),
                        fmt17(sol.p[static_cast<std::size_t>(i)])});
    std::string extra;
    {
      std::ostringstream os;
      os << "{\"beta\":" << fmt17(sol.beta) << ",\"T\":" << fmt17(sol.temperature)
         << ",\"lambda1\":" << fmt17(sol.lambda1) << ",\"lambda2\":" << fmt17(sol.lambda2)
         << ",\"S\":" << fmt17(sol.entropy) << "}";
      extra = os.str();
    }
    emit(t, out_path, format, extra);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int run_sweep(const SpectrumOptions& sopt, double u, const EntropicParams& params,
              std::int64_t n0, std::int64_t n_max, const std::string& out_path,
              const std::string& format, const std::string& config) {
  const std::string label = sopt.family.empty() ? "custom" : sopt.family;
  const LimitSequence seq = sweep(
      [&](std::int64_t n) { return make_spectrum(sopt, n); }, label, u, params,
      geometric_schedule(n0, n_max));

  if (seq.fit.valid)
    std::fprintf(stderr, "fit: delta_N ~ %.6g * N^-%.4f\n", seq.fit.prefactor,
                 seq.fit.exponent);
  std::fprintf(stderr, "beta_limit = %s, T_limit = %s\n", fmt17(seq.beta_limit).c_str(),
               fmt17(seq.t_limit).c_str());

  if (format == "json") {
    const std::string content = limit_sequence_json(seq, config);
    if (out_path.empty() || out_path == "-")
      std::cout << content;
    else
      write_file(out_path, content);
  } else {
    emit(limit_sequence_table(seq, config), out_path, "csv");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// figure datasets
// ---------------------------------------------------------------------------

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    out.push_back(a + (b - a) * static_cast<double>(i) / (n - 1));
  return out;
}

Table figure1(const std::string& config) {
  // Optimal-entropy curves on the three-level spectrum, k = 1.
  const Spectrum spec = Spectrum::custom({{0.0, 1}, {0.5, 1}, {1.0, 1}}, "example1");
  Table t;
  t.config = config;
  t.columns = {"q", "u", "s"};
  for (double q : {0.2, 0.3, 0.8, 1.0}) {
    const EntropicParams params{q, 1.0, 1.0};
    const double k_s = scale_factor(params, spec.e_max(), spec.microstate_count());
    t.rows.push_back({fmt17(q), fmt17(0.0), fmt17(0.0)});
    for (auto [u, s] : value_curve(spec, q, k_s, linspace(0.01, 0.99, 99)))
      t.rows.push_back({fmt17(q), fmt17(u), fmt17(s)});
    t.rows.push_back({fmt17(q), fmt17(1.0), fmt17(0.0)});
  }
  return t;
}

Table figure2(const std::string& config) {
  // U-T lines for the uniformly refined spectrum, k = 1.
  Table t;
  t.config = config;
  t.columns = {"q", "u", "t"};
  for (double q : {0.6, 0.8, 0.95, 1.0}) {
    const EntropicParams params{q, 1.0, 1.0};
    for (double u : {0.5, 1.0, 2.0, 3.0, 4.0, 5.0}) {
      const double e_max = (q == 0.6 ? 2000.0 : 1000.0) * u;
      const LimitSequence seq = sweep(
          [&](std::int64_t n) { return Spectrum::uniform(n + 1, e_max, 1); }, "uniform",
          u, params, geometric_schedule(4096, 65536));
      t.rows.push_back({fmt17(q), fmt17(u), fmt17(seq.t_limit)});
    }
  }
  return t;
}

Table figure3(const std::string& config) {
  // rho(e, T) for k = T = 1.
  Table t;
  t.config = config;
  t.columns = {"q", "e", "rho"};
  const std::vector<double> grid = linspace(0.0, 8.0, 401);
  for (double q : {0.6, 0.8, 0.95, 1.0}) {
    const DensityCurve curve = density_curve(1.0, q, 1.0, grid);
    for (std::size_t i = 0; i < curve.e.size(); ++i)
      t.rows.push_back({fmt17(q), fmt17(curve.e[i]), fmt17(curve.rho[i])});
  }
  return t;
}

Table figure_oscillator_box(bool oscillator, const std::string& config) {
  // U-T for the oscillator (fig 4) and box (fig 5), k = hbar_omega = gamma = 1.
  Table t;
  t.config = config;
  t.columns = {"q", "u", "t"};
  for (double u : linspace(0.1, 5.0, 50)) {
    const double t_bg = oscillator
                            ? 1.0 / std::log((1.0 + u) / u)
                            : 0.0;  // box BG value filled via sweep below
    if (oscillator) {
      t.rows.push_back({fmt17(1.0), fmt17(u), fmt17(t_bg)});
    } else {
      const EntropicParams params{1.0, 1.0, 1.0};
      const LimitSequence seq =
          sweep([&](std::int64_t n) { return Spectrum::box(n, 1.0); }, "box", u, params,
                geometric_schedule(64, 2048));
      t.rows.push_back({fmt17(1.0), fmt17(u), fmt17(seq.t_limit)});
    }
  }
  for (double q : {0.6, 0.8, 0.95}) {
    for (double u : linspace(0.1, 5.0, 50)) {
      const SeriesLimit lim = oscillator ? oscillator_series_limit(u, q, 1.0, 1.0)
                                         : box_series_limit(u, q, 1.0, 1.0);
      t.rows.push_back({fmt17(q), fmt17(u), fmt17(lim.temperature)});
    }
  }
  return t;
}

Table figure6(const std::string& config) {
  // Hydrogen U-T closed form, k = e_ion = 1.
  Table t;
  t.config = config;
  t.columns = {"q", "u", "t"};
  for (double q : {0.3, 0.5, 0.7})
    for (double u : linspace(0.01, 0.999, 100))
      t.rows.push_back({fmt17(q), fmt17(u), fmt17(hydrogen_temperature(u, q, 1.0, 1.0))});
  return t;
}

Table figure7(const std::string& config) {
  // log10 of the critical ionization temperature over q, physical constants.
  Table t;
  t.config = config;
  t.columns = {"q", "log10_t_ion"};
  for (double q : linspace(0.02, 0.98, 193))
    t.rows.push_back({fmt17(q), fmt17(std::log10(ionization_temperature(
                                     q, 13.6, constants::k_boltzmann_eV)))});
  return t;
}

int run_figure(int id, const std::string& out_path, const std::string& format,
               const std::string& config) {
  Table t;
  switch (id) {
    case 1: t = figure1(config); break;
    case 2: t = figure2(config); break;
    case 3: t = figure3(config); break;
    case 4: t = figure_oscillator_box(true, config); break;
    case 5: t = figure_oscillator_box(false, config); break;
    case 6: t = figure6(config); break;
    case 7: t = figure7(config); break;
    default: throw std::domain_error("figure id must be 1..7");
  }
  emit(t, out_path, format);
  return 0;
}

// ---------------------------------------------------------------------------
// saha
// ---------------------------------------------------------------------------

int run_saha(double eta_min, double eta_max, int points, double x_target,
             const std::string& sign_name, const std::string& out_path,
             const std::string& format, const std::string& config) {
  SahaConditions cond;
  cond.x_target = x_target;
  cond.sign = sign_name == "printed"        ? SahaSign::printed
              : sign_name == "conventional" ? SahaSign::conventional
                                            : SahaSign::automatic;
  const SahaSign resolved = resolve_saha_sign(cond);
  cond.sign = resolved;
  const auto rows = saha_sweep(eta_min, eta_max, points, cond);

  Table t;
  t.config = config + " sign=" +
             (resolved == SahaSign::printed ? std::string("printed")
                                            : std::string("conventional"));
  t.columns = {"eta", "t_ion"};
  for (const auto& [eta, temp] : rows)
    t.rows.push_back({fmt17(eta), fmt17(temp)});
  emit(t, out_path, format);
  std::fprintf(stderr, "sign convention used: %s\n",
               resolved == SahaSign::printed ? "printed" : "conventional");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized entropy maximization over finite energy spectra"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a TOML file");
  std::string dump_config_path;
  app.add_option("--dump-config", dump_config_path,
                 "write the effective configuration to this file (TOML)");

  // solve ---------------------------------------------------------------
  SpectrumOptions solve_spec;
  double solve_u = 0.5;
  EntropicParams solve_params;
  std::string solve_out, solve_format = "csv";
  CLI::App* cmd_solve = app.add_subcommand("solve", "solve one truncated instance");
  add_spectrum_options(cmd_solve, solve_spec, true);
  cmd_solve->add_option("--u", solve_u, "internal energy, 0 < U < e_max")->required();
  cmd_solve->add_option("--q", solve_params.q, "entropic index in (0, 1]");
  cmd_solve->add_option("--k", solve_params.k, "Boltzmann-constant value");
  cmd_solve->add_option("--sigma", solve_params.sigma,
                        "scale-factor exponent (default: family-specific)");
  cmd_solve->add_option("--out", solve_out, "write per-level output to this file");
  cmd_solve->add_option("--format", solve_format, "csv|json");

  // sweep ---------------------------------------------------------------
  SpectrumOptions sweep_spec;
  double sweep_u = 0.5;
  EntropicParams sweep_params;
  std::int64_t sweep_n0 = 64, sweep_nmax = 100000;
  std::string sweep_out, sweep_format = "csv";
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "truncation sweep N -> infinity");
  add_spectrum_options(cmd_sweep, sweep_spec, false);
  cmd_sweep->add_option("--u", sweep_u, "internal energy")->required();
  cmd_sweep->add_option("--q", sweep_params.q, "entropic index in (0, 1]");
  cmd_sweep->add_option("--k", sweep_params.k, "Boltzmann-constant value");
  cmd_sweep->add_option("--sigma", sweep_params.sigma, "scale-factor exponent");
  cmd_sweep->add_option("--n0", sweep_n0, "first truncation size");
  cmd_sweep->add_option("--nmax", sweep_nmax, "last truncation size");
  cmd_sweep->add_option("--out", sweep_out, "output file (default stdout)");
  cmd_sweep->add_option("--format", sweep_format, "csv|json");

  // figure --------------------------------------------------------------
  int figure_id = 1;
  std::string figure_out, figure_format = "csv";
  CLI::App* cmd_figure = app.add_subcommand("figure", "emit a figure dataset");
  cmd_figure->add_option("--id", figure_id, "figure number 1..7")->required();
  cmd_figure->add_option("--out", figure_out, "output file (default stdout)");
  cmd_figure->add_option("--format", figure_format, "csv|json");

  // saha ----------------------------------------------------------------
  double eta_min = 1e13, eta_max = 1e27, saha_x = 0.999;
  int saha_points = 29;
  std::string saha_sign = "auto", saha_out, saha_format = "csv";
  CLI::App* cmd_saha = app.add_subcommand("saha", "Saha ionization-temperature table");
  cmd_saha->add_option("--eta-min", eta_min, "density parameter lower end, 1/m^3");
  cmd_saha->add_option("--eta-max", eta_max, "density parameter upper end, 1/m^3");
  cmd_saha->add_option("--points", saha_points, "grid points (log-spaced)");
  cmd_saha->add_option("--x", saha_x, "ionized fraction defining T_ion");
  cmd_saha->add_option("--sign", saha_sign,
                       "exponential sign convention: auto|printed|conventional");
  cmd_saha->add_option("--out", saha_out, "output file (default stdout)");
  cmd_saha->add_option("--format", saha_format, "csv|json");

  // accept --------------------------------------------------------------
  std::string accept_out;
  CLI::App* cmd_accept = app.add_subcommand("accept", "run the acceptance suite");
  cmd_accept->add_option("--out", accept_out, "also write the report to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!dump_config_path.empty())
      write_file(dump_config_path, app.config_to_str(true, true));
    if (cmd_solve->parsed()) {
      if (!cmd_solve->count("--sigma")) solve_params.sigma = family_default_sigma(solve_spec);
      return run_solve(solve_spec, solve_u, solve_params, solve_out, solve_format,
                       describe_config(*cmd_solve));
    }
    if (cmd_sweep->parsed()) {
      if (!cmd_sweep->count("--sigma")) sweep_params.sigma = family_default_sigma(sweep_spec);
      return run_sweep(sweep_spec, sweep_u, sweep_params, sweep_n0, sweep_nmax,
                       sweep_out, sweep_format, describe_config(*cmd_sweep));
    }
    if (cmd_figure->parsed())
      return run_figure(figure_id, figure_out, figure_format, describe_config(*cmd_figure));
    if (cmd_saha->parsed())
      return run_saha(eta_min, eta_max, saha_points, saha_x, saha_sign, saha_out,
                      saha_format, describe_config(*cmd_saha));
    if (cmd_accept->parsed()) {
      const AcceptanceReport report = run_acceptance(&std::cout);
      if (!accept_out.empty()) {
        std::ostringstream os;
        for (const CriterionResult& c : report.criteria) {
          os << "C" << c.id << (c.passed ? " PASS " : " FAIL ") << c.name << "\n";
          for (const std::string& d : c.details) os << "  " << d << "\n";
        }
        write_file(accept_out, os.str());
      }
      return report.all_passed() ? 0 : 1;
    }
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return 2;
  } catch (const qmaxent::convergence_error& e) {
    std::fprintf(stderr, "convergence failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
