// Serial reference against the OpenMP sweep: band quadratures and per-band mu.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <thread>

#include "calabi/center_of_mass.hpp"
#include "calabi/sweep.hpp"

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  double k = 400.0, s_m = -2.0;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int repeats = 3;
  CLI::App app{"serial vs parallel sweep timing"};
  app.add_option("--k", k);
  app.add_option("--s-m", s_m);
  app.add_option("--threads", threads);
  app.add_option("--repeats", repeats);
  CLI11_PARSE(app, argc, argv);

  using namespace calabi;
  const MomentumProfile mp({1, s_m});
  const CoordinateChart chart(mp);
  const long total = sweep::band_total(k, mp.tau0());

  std::vector<FiberBand> ser, par;
  double t_ser = 1e300, t_par = 1e300;
  for (int r = 0; r < repeats; ++r) {
    t_ser = std::min(t_ser, seconds([&] { ser = sweep::bands_serial(chart, k, 1, total); }));
    t_par = std::min(t_par, seconds([&] { par = sweep::bands_parallel(chart, k, 1, total, threads); }));
  }
  bool same = ser.size() == par.size();
  for (std::size_t i = 0; same && i < ser.size(); ++i) same = ser[i].log_i_exact == par[i].log_i_exact;

  std::vector<double> log_i;
  for (const auto& b : ser) log_i.push_back(b.log_i_exact);
  const BandSeries series(BergmanSurrogate(1, s_m, k, mp.tau0()), log_i);
  std::vector<double> mu_s, mu_p;
  double m_ser = 1e300, m_par = 1e300;
  for (int r = 0; r < repeats; ++r) {
    m_ser = std::min(m_ser, seconds([&] { mu_s = sweep::mu_serial(series); }));
    m_par = std::min(m_par, seconds([&] { mu_p = sweep::mu_parallel(series, threads); }));
  }
  const bool same_mu = mu_s == mu_p;

  std::printf("k=%g  S_M=%g  bands=%ld  threads=%d  (best of %d)\n", k, s_m, total, threads, repeats);
  std::printf("%-8s %12s %12s %9s %10s\n", "stage", "serial[s]", "parallel[s]", "speedup", "identical");
  std::printf("%-8s %12.4f %12.4f %9.2f %10s\n", "bands", t_ser, t_par, t_ser / t_par, same ? "yes" : "NO");
  std::printf("%-8s %12.4f %12.4f %9.2f %10s\n", "mu", m_ser, m_par, m_ser / m_par, same_mu ? "yes" : "NO");
  return same && same_mu ? 0 : 1;
}
