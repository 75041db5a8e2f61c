#include "calabi/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "calabi/center_of_mass.hpp"
#include "calabi/errors.hpp"
#include "calabi/fiber_integrals.hpp"
#include "calabi/profile.hpp"
#include "calabi/report.hpp"
#include "calabi/riemann_roch.hpp"
#include "calabi/sweep.hpp"
#include "calabi/transforms.hpp"
#include "calabi/verification.hpp"

namespace calabi::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

GeometryData geometry_of(const RunConfig& cfg, double tau0) {
  return curve_geometry(cfg.genus_or_default(), cfg.degree_or_default(), tau0);
}

ProfileParams profile_params(const RunConfig& cfg) {
  if (cfg.s_m) return ProfileParams{cfg.n, *cfg.s_m};
  return ProfileParams{cfg.n, smcurvature(geometry_of(cfg, 0.0))};
}

std::vector<double> k_values(const RunConfig& cfg) {
  return cfg.k_list.empty() ? std::vector<double>{cfg.k} : cfg.k_list;
}

report::Table cmd_profile(const RunConfig& cfg) {
  const MomentumProfile mp(profile_params(cfg));
  const auto fc = factor_check(mp, 10000);
  report::Table t{{"quantity", "tau", "value"}, {}};
  t.add({std::string("c0"), kNaN, mp.c0()});
  t.add({std::string("tau0"), kNaN, mp.tau0()});
  t.add({std::string("eta2_tau0"), mp.tau0(), mp.eta2_at_tau0()});
  t.add({std::string("min_f"), fc.argmin, fc.min_f});
  t.add({std::string("phi_tau0"), mp.tau0(), fc.phi_at_tau0});
  t.add({std::string("dphi_tau0"), mp.tau0(), fc.dphi_at_tau0});
  for (int j = 0; j <= 16; ++j) {
    const double tau = mp.tau0() * j / 16.0;
    t.add({std::string("phi"), tau, mp.phi(tau)});
  }
  return t;
}

report::Table cmd_dims(const RunConfig& cfg) {
  if (cfg.n != 1) throw InvalidInput("dims: the geometry input describes a curve; n must be 1");
  GeometryData gd = geometry_of(cfg, 0.0);
  if (cfg.tau0) {
    gd.tau0_ratio = parse_ratio(*cfg.tau0);
    gd.tau0 = static_cast<double>(gd.tau0_ratio->first) / static_cast<double>(gd.tau0_ratio->second);
  } else {
    gd.tau0 = MomentumProfile({1, smcurvature(gd)}).tau0();
  }
  report::Table t{{"k", "exact", "tau0", "bands", "dim_hk", "a0", "a1", "vol_lhat", "vol_d", "b0", "b1", "sigma"}, {}};
  for (double k : k_values(cfg)) {
    const auto r = dimension_report(gd, k);
    t.add({k, r.exact, gd.tau0, static_cast<long>(r.multiplicities.size()), r.dim_hk, r.chi.a0, r.chi.a1,
           r.vol.vol_lhat, r.vol.vol_d, r.vol.b0, r.vol.b1, r.sigma});
  }
  return t;
}

std::pair<long, long> band_range(const RunConfig& cfg, long total) {
  const long lo = cfg.a_min.value_or(1);
  const long hi = cfg.a_max.value_or(total);
  if (lo < 1 || hi < lo || hi > total)
    throw InvalidInput("band range must satisfy 1 <= a_min <= a_max <= floor(k tau0) = " + std::to_string(total));
  return {lo, hi};
}

report::Table cmd_bands(const RunConfig& cfg) {
  const MomentumProfile mp(profile_params(cfg));
  const CoordinateChart chart(mp);
  const long total = sweep::band_total(cfg.k, mp.tau0());
  if (total < 1) throw InvalidInput("k tau0 < 1: there are no bands");
  const auto [lo, hi] = band_range(cfg, total);
  const auto bands = sweep::bands_parallel(chart, cfg.k, lo, hi, cfg.threads, cfg.quad_tol);
  report::Table t{{"a", "tau_a", "t_a", "log_I_exact", "log_I_laplace", "rel_err", "regime"}, {}};
  for (const auto& b : bands)
    t.add({static_cast<long>(b.a), b.tau_a, b.t_a, b.log_i_exact, b.log_i_laplace, b.laplace_rel_err(),
           regime_name(classify(b.a, cfg.k, mp.tau0()))});
  return t;
}

std::optional<GeometryData> optional_geometry(const RunConfig& cfg, double tau0) {
  if (!cfg.geometry_mode()) return std::nullopt;
  if (cfg.n != 1) throw InvalidInput("the geometry input describes a curve; n must be 1");
  return geometry_of(cfg, tau0);
}

report::Table cmd_mu(const RunConfig& cfg) {
  const MomentumProfile mp(profile_params(cfg));
  const CoordinateChart chart(mp);
  const auto gd = optional_geometry(cfg, mp.tau0());
  const auto table = sweep::mu_table(chart, cfg.k, gd, cfg.threads, cfg.quad_tol);
  const auto [lo, hi] = band_range(cfg, static_cast<long>(table.mu.size()));
  report::Table t{{"a", "regime", "multiplicity", "mu_fiber", "mu", "mu_d"}, {}};
  for (long a = lo; a <= hi; ++a) {
    const auto& row = table.mu[static_cast<std::size_t>(a - 1)];
    t.add({row.a, regime_name(row.regime), row.multiplicity, row.mu_fiber, row.mu, row.mu_d});
  }
  return t;
}

report::Table cmd_energy(const RunConfig& cfg) {
  if (!cfg.geometry_mode()) throw InvalidInput("energy needs band multiplicities: give --genus/--degree, not --s-m");
  const MomentumProfile mp(profile_params(cfg));
  const CoordinateChart chart(mp);
  const auto gd = *optional_geometry(cfg, mp.tau0());
  report::Table t{{"k", "diag_energy", "trace_residual", "modeled_offdiag", "v", "sigma", "c0", "dim_hk",
                   "energy_per_dim", "v_expansion_residual_k2", "outside_gap_k2"},
                  {}};
  for (double k : k_values(cfg)) {
    const auto table = sweep::mu_table(chart, k, gd, cfg.threads, cfg.quad_tol);
    const auto e = assemble_energy(table.mu, gd, k, mp.c0());
    t.add({e.k, e.diag_energy, e.trace_residual, e.modeled_offdiag, e.v, e.sigma, e.c0, e.dim_hk,
           e.energy_per_dim(), (e.v - 1.0 - e.sigma / k) * k * k, (mu_outside(e.c0, k) - e.v) * k * k});
  }
  return t;
}

void write_table(const RunConfig& cfg, const report::Table& t, std::ostream& os) {
  std::ofstream file;
  std::ostream* dst = &os;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary);
    if (!file) throw InvalidInput("cannot open output file '" + cfg.out + "'");
    dst = &file;
  }
  if (cfg.format == "json")
    report::write_json(*dst, t);
  else
    report::write_csv(*dst, t);
  dst->flush();
  if (!*dst) throw NumericalError("failed writing output");
}

}  // namespace

void RunConfig::validate() const {
  static const std::vector<std::string> known{"profile", "dims", "bands", "mu", "energy", "verify"};
  if (std::find(known.begin(), known.end(), subcommand) == known.end())
    throw InvalidInput("unknown subcommand '" + subcommand + "'");
  if (n < 1) throw InvalidInput("n must be a positive integer");
  if (s_m && (genus || degree)) throw InvalidInput("give either --s-m or --genus/--degree, not both");
  if (s_m && !(*s_m < 0.0)) throw InvalidInput("S_M must be negative");
  if (tau0 && subcommand != "dims") throw InvalidInput("--tau0 applies to dims only");
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidInput("k must be positive");
  for (double v : k_list)
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("every k in --k-list must be positive");
  if (!(quad_tol > 0.0 && quad_tol < 1.0)) throw InvalidInput("--quad-tol must lie in (0, 1)");
  if (format != "csv" && format != "json") throw InvalidInput("--format must be csv or json");
  if (threads < 1) throw InvalidInput("--threads must be at least 1");
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& help_out) {
  RunConfig cfg;
  cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  CLI::App app{"Calabi-ansatz profiles, fiber band integrals and balancing diagnostics"};
  app.require_subcommand(1);

  double s_m = 0.0;
  int genus = 0, degree = 0;
  long a_min = 0, a_max = 0;
  std::string tau0;
  auto* o_n = app.add_option("--n", cfg.n, "complex dimension of the divisor");
  auto* o_s = app.add_option("--s-m", s_m, "scalar curvature of the base (negative)");
  auto* o_g = app.add_option("--genus", genus, "genus of the base curve (default 2)");
  auto* o_d = app.add_option("--degree", degree, "degree of L on the base curve (default 2)");
  auto* o_t = app.add_option("--tau0", tau0, "exact fiber area p/q for dims");
  app.add_option("--k", cfg.k, "quantization level (real)");
  app.add_option("--k-list", cfg.k_list, "comma-separated k values")->delimiter(',');
  auto* o_lo = app.add_option("--a-min", a_min, "first band");
  auto* o_hi = app.add_option("--a-max", a_max, "last band");
  app.add_option("--quad-tol", cfg.quad_tol, "relative quadrature tolerance");
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", cfg.threads, "worker threads");
  app.add_option("--seed", cfg.seed, "seed for sampled checks");
  (void)o_n;

  for (const char* name : {"profile", "dims", "bands", "mu", "energy", "verify"})
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    help_out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    help_out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw InvalidInput(e.what());
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (o_s->count()) cfg.s_m = s_m;
  if (o_g->count()) cfg.genus = genus;
  if (o_d->count()) cfg.degree = degree;
  if (o_t->count()) cfg.tau0 = tau0;
  if (o_lo->count()) cfg.a_min = a_min;
  if (o_hi->count()) cfg.a_max = a_max;
  cfg.validate();
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  if (cfg.subcommand == "verify") {
    if (!cfg.geometry_mode()) throw InvalidInput("verify runs on a curve geometry: give --genus/--degree, not --s-m");
    if (cfg.n != 1) throw InvalidInput("verify runs on a curve geometry; n must be 1");
    VerifyConfig vc;
    vc.genus = cfg.genus_or_default();
    vc.degree = cfg.degree_or_default();
    vc.k = cfg.k;
    if (!cfg.k_list.empty()) vc.k_list = cfg.k_list;
    vc.threads = cfg.threads;
    vc.rel_tol = cfg.quad_tol;
    vc.seed = cfg.seed;
    const auto records = run_verification(vc);
    write_table(cfg, report::records_table(records), os);
    return all_hard_pass(records) ? kOk : kVerificationFailure;
  }
  report::Table t;
  if (cfg.subcommand == "profile")
    t = cmd_profile(cfg);
  else if (cfg.subcommand == "dims")
    t = cmd_dims(cfg);
  else if (cfg.subcommand == "bands")
    t = cmd_bands(cfg);
  else if (cfg.subcommand == "mu")
    t = cmd_mu(cfg);
  else
    t = cmd_energy(cfg);
  write_table(cfg, t, os);
  return kOk;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_args(argc, argv, out);
    if (!cfg) return kOk;
    return run(*cfg, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace calabi::cli
