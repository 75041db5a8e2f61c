#pragma once

#include <optional>
#include <vector>

#include "calabi/center_of_mass.hpp"
#include "calabi/fiber_integrals.hpp"

// Band-parallel drivers. Each index is computed independently and written to its
// own slot, so serial and parallel runs give bit-identical results.
namespace calabi::sweep {

std::vector<FiberBand> bands_serial(const CoordinateChart& chart, double k, long a_lo, long a_hi,
                                    double rel_tol = numerics::kDefaultRelTol);
std::vector<FiberBand> bands_parallel(const CoordinateChart& chart, double k, long a_lo, long a_hi, int threads,
                                      double rel_tol = numerics::kDefaultRelTol);

std::vector<double> mu_serial(const BandSeries& series, double rel_tol = numerics::kDefaultRelTol);
std::vector<double> mu_parallel(const BandSeries& series, int threads, double rel_tol = numerics::kDefaultRelTol);

// Everything needed for the per-band diagonal at one k.
struct MuTable {
  double k = 0.0;
  std::vector<FiberBand> bands;  // a = 1..B
  std::vector<BandMu> mu;
};

// Bands 1..floor(k tau0). Multiplicities are filled from gd when given, NaN otherwise.
MuTable mu_table(const CoordinateChart& chart, double k, const std::optional<GeometryData>& gd, int threads,
                 double rel_tol = numerics::kDefaultRelTol);

long band_total(double k, double tau0);

}  // namespace calabi::sweep
