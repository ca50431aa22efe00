#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sqz/gaussian.hpp"

namespace sqz {

// Passive losses between the cell and the photocurrent: path transmission,
// detector quantum efficiency, and homodyne fringe visibility. Visibility
// enters the effective efficiency squared (mode-overlap power penalty).
struct DetectionChain {
  double path_transmission = 1.0;
  double quantum_efficiency = 1.0;
  double visibility = 1.0;
};

double effective_efficiency(const DetectionChain& chain);

// Measured variance of X(phi) in shot-noise units after the chain losses.
double detect(const GaussianState& state, const DetectionChain& chain,
              double phi);

// Invert the beamsplitter loss model: given a measured noise level (dB) and
// the effective efficiency, return the source noise level (dB).
// Throws UnphysicalError if the measured level is below the vacuum floor
// 1 - eta that the chain alone would produce.
double infer_source_db(double measured_db, double eta);

struct ScanSample {
  double phi_rad = 0.0;
  double variance_snu = 1.0;
  std::int64_t samples = 0;  // 0 means analytic (infinite-sample limit)
};

// A homodyne phase scan V(phi), normalized so that the shot-noise reference
// (signal blocked, vacuum input) reads 1.0.
struct HomodyneScan {
  std::vector<ScanSample> samples;
  double sql_reference_snu = 1.0;
};

// Simulate a phase scan. samples_per_point = 0 returns the analytic
// variances; otherwise each point is the sample variance of that many
// Gaussian draws from the detected distribution, reproducible per seed.
HomodyneScan synthesize_scan(const GaussianState& state,
                             const DetectionChain& chain,
                             const std::vector<double>& phi_grid,
                             std::int64_t samples_per_point,
                             std::uint64_t seed);

struct CovarianceFit {
  GaussianState state;   // zero mean, covariance in quadrature units
  double residual = 0.0; // rms of V(phi) residuals, SNU
};

// Least-squares fit of V(phi) = S00 cos^2 + S11 sin^2 + S01 sin(2 phi).
// Needs at least 3 phases that are distinct modulo pi.
CovarianceFit fit_covariance(const HomodyneScan& scan);

struct WignerGrid {
  double half_width = 5.0;
  int n_points = 0;
  Eigen::MatrixXd values;  // values(i, j) = W(x_j, p_i), row-major in p
};

WignerGrid wigner_grid(const GaussianState& state, double half_width,
                       int n_points);

// CSV emitters/readers; columns `phi_rad,variance_snu,samples` for scans,
// `# half_width=..` / `# n=..` headers then row-major values for Wigner
// grids. Values carry 9 significant digits.
void write_scan_csv(std::ostream& out, const HomodyneScan& scan);
HomodyneScan read_scan_csv(std::istream& in);
void write_wigner_csv(std::ostream& out, const WignerGrid& grid);

}  // namespace sqz
