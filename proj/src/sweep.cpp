#include "calabi/sweep.hpp"

#include <cmath>
#include <exception>
#include <limits>


#include "calabi/errors.hpp"

namespace calabi::sweep {

namespace {

void check_range(long a_lo, long a_hi) {
  if (a_lo < 1 || a_hi < a_lo) throw InvalidInput("band range must satisfy 1 <= a_min <= a_max");
}

// Rethrows the exception of the lowest failing index, so the reported error does not
// depend on scheduling.
void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

long band_total(double k, double tau0) { return static_cast<long>(std::floor(k * tau0 * (1.0 + 1e-14))); }

std::vector<FiberBand> bands_serial(const CoordinateChart& chart, double k, long a_lo, long a_hi, double rel_tol) {
  check_range(a_lo, a_hi);
  std::vector<FiberBand> out;
  out.reserve(static_cast<std::size_t>(a_hi - a_lo + 1));
  for (long a = a_lo; a <= a_hi; ++a) out.push_back(compute_band(chart, static_cast<double>(a), k, rel_tol));
  return out;
}

std::vector<FiberBand> bands_parallel(const CoordinateChart& chart, double k, long a_lo, long a_hi, int threads,
                                      double rel_tol) {
  check_range(a_lo, a_hi);
  if (threads < 1) throw InvalidInput("threads must be at least 1");
  const long count = a_hi - a_lo + 1;
  std::vector<FiberBand> out(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = compute_band(chart, static_cast<double>(a_lo + i), k, rel_tol);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return out;
}

std::vector<double> mu_serial(const BandSeries& series, double rel_tol) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(series.bands()));
  for (long a = 1; a <= series.bands(); ++a) out.push_back(mu_fiber(series, a, rel_tol));
  return out;
}

std::vector<double> mu_parallel(const BandSeries& series, int threads, double rel_tol) {
  if (threads < 1) throw InvalidInput("threads must be at least 1");
  const long count = series.bands();
  std::vector<double> out(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = mu_fiber(series, i + 1, rel_tol);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return out;
}

MuTable mu_table(const CoordinateChart& chart, double k, const std::optional<GeometryData>& gd, int threads,
                 double rel_tol) {
  const auto& mp = chart.profile();
  const long total = band_total(k, mp.tau0());
  if (total < 1) throw InvalidInput("k tau0 < 1: there are no bands");
  MuTable t;
  t.k = k;
  t.bands = threads > 1 ? bands_parallel(chart, k, 1, total, threads, rel_tol) : bands_serial(chart, k, 1, total, rel_tol);

  std::vector<double> log_i;
  log_i.reserve(t.bands.size());
  for (const auto& b : t.bands) log_i.push_back(b.log_i_exact);
  const BergmanSurrogate surrogate(mp.n(), mp.params().s_m, k, mp.tau0());
  const BandSeries series(surrogate, std::move(log_i));
  const auto fiber = threads > 1 ? mu_parallel(series, threads, rel_tol) : mu_serial(series, rel_tol);

  std::vector<double> mult(static_cast<std::size_t>(total), std::numeric_limits<double>::quiet_NaN());
  if (gd) {
    const auto m = band_multiplicities(*gd, k);
    for (std::size_t i = 0; i < mult.size() && i < m.size(); ++i) mult[i] = m[i];
  }
  const double outside = mu_outside(mp.c0(), k);
  const double d1 = mu_d_band1(surrogate);
  for (long a = 1; a <= total; ++a) {
    BandMu row;
    row.a = a;
    row.regime = classify(static_cast<double>(a), k, mp.tau0());
    row.mu_fiber = fiber[static_cast<std::size_t>(a - 1)];
    const bool near = row.regime == Regime::Inside || row.regime == Regime::Neck;
    row.mu = near ? row.mu_fiber : outside;
    row.mu_d = a == 1 ? d1 : 0.0;
    row.multiplicity = mult[static_cast<std::size_t>(a - 1)];
    t.mu.push_back(row);
  }
  return t;
}

}  // namespace calabi::sweep
