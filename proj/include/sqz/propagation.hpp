#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sqz/bloch.hpp"
#include "sqz/gaussian.hpp"

namespace sqz {

// Sideband frequency of the noise measurement. The spectral covariance at
// +/- omega is carried as a complex Hermitian 2x2 matrix; its real part is
// what a homodyne measurement at that analysis frequency sees.
struct AnalysisFrequency {
  double omega_rad_s = 2.0 * 3.14159265358979323846 * 1e6;
};

// Quadrature input-output map of one thin slice at a fixed sideband
// frequency: S_out = T S_in T^dag + N. Both matrices are real at omega = 0.
struct SliceTransfer {
  Eigen::Matrix2cd transfer = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd added_noise = Eigen::Matrix2cd::Zero();

  Eigen::Matrix2d transfer_real() const { return transfer.real(); }
  Eigen::Matrix2d added_noise_real() const { return added_noise.real(); }
};

// Field-atom coupling bundle entering the slice solve.
struct FieldCoupling {
  Eigen::MatrixXd feedback;    // dim x 2, d(ds)/dt += feedback * (dX,dP)
  Eigen::MatrixXd source;      // 2 x dim, d(dX,dP)/dz = source * ds
  Eigen::VectorXd conserved;   // left null direction of the drift
  double line_density_m = 0.0; // atoms per meter
};

// Frequency-domain solve of one slice: atomic fluctuations are eliminated
// through the resolvent (i w - A)^{-1} and the remaining field equation is
// integrated exactly across the slice length.
SliceTransfer slice_response(const Eigen::MatrixXd& drift,
                             const Eigen::MatrixXcd& diffusion,
                             const FieldCoupling& coupling, double omega,
                             double slice_length);

struct CellConfig {
  EnsembleConfig ensemble;
  DriveField drive;
  MagneticField field;
  AnalysisFrequency analysis;
  int n_slices = 200;
  bool check_stability = true;
};

struct CellResult {
  GaussianState output;
  std::complex<double> rabi_drive_out{0.0, 0.0};
  std::complex<double> rabi_signal_out{0.0, 0.0};
};

// March the cell slice by slice: local steady state and linearization at the
// (depleting, rotating) classical drive, exact slice transfer at the
// analysis frequency, classical amplitudes updated per slice.
CellResult propagate_cell_detailed(const GaussianState& input,
                                   const AtomScheme& scheme,
                                   const CellConfig& cfg,
                                   const AtomicConstants& constants = {});

GaussianState propagate_cell(const GaussianState& input,
                             const AtomScheme& scheme, const CellConfig& cfg,
                             const AtomicConstants& constants = {});

// Runs at n and 2n slices; throws NonConvergedError when the minimum
// variance moves by more than 1e-4 SNU with n >= 3200. Returns the 2n run.
GaussianState propagate_cell_checked(const GaussianState& input,
                                     const AtomScheme& scheme,
                                     const CellConfig& cfg,
                                     const AtomicConstants& constants = {});

struct SweepPoint {
  double value = 0.0;
  double min_snu = 1.0;
  double max_snu = 1.0;
  double angle_rad = 0.0;
  std::string error;  // empty on success
};

// One propagate_cell per grid value; per-point failures are recorded in the
// error field and the sweep continues. Points run on a small worker pool
// with results keyed by grid index.
std::vector<SweepPoint> squeezing_vs(
    const AtomScheme& scheme, const CellConfig& base,
    const std::vector<double>& values,
    const std::function<void(double, CellConfig&)>& apply,
    const AtomicConstants& constants = {});

}  // namespace sqz
