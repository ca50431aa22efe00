#include "sqz/propagation.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

namespace sqz {

namespace {

using Cplx = std::complex<double>;
constexpr Cplx kI{0.0, 1.0};

// Vacuum spectral covariance (unsymmetrized): Re part is the measurable
// covariance, the imaginary part carries the canonical commutator.
Eigen::Matrix2cd vacuum_spectral() {
  Eigen::Matrix2cd s;
  s << 0.25, 0.25 * kI, -0.25 * kI, 0.25;
  return s;
}

Eigen::Matrix2cd spectral_from_state(const GaussianState& state) {
  Eigen::Matrix2cd s = state.cov.cast<Cplx>();
  s(0, 1) += 0.25 * kI;
  s(1, 0) -= 0.25 * kI;
  return s;
}

}  // namespace

SliceTransfer slice_response(const Eigen::MatrixXd& drift,
                             const Eigen::MatrixXcd& diffusion,
                             const FieldCoupling& coupling, double omega,
                             double slice_length) {
  SliceTransfer out;
  if (coupling.line_density_m <= 0.0) {
    return out;  // empty slice: identity, no added noise
  }
  const int d = static_cast<int>(drift.rows());

  // Regularize the conserved (trace) direction so the resolvent is well
  // defined down to omega = 0. Fluctuations, noises and field couplings are
  // all orthogonal to it, so results are unaffected.
  const Eigen::VectorXd c_hat = coupling.conserved.normalized();
  const double mu = std::max(drift.norm() / d, 1.0);
  Eigen::MatrixXcd m = (-drift + mu * (c_hat * c_hat.transpose())).cast<Cplx>();
  m.diagonal().array() -= kI * omega;

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  const Eigen::VectorXcd u_diag = lu.matrixLU().diagonal();
  const double pivot_max = u_diag.cwiseAbs().maxCoeff();
  const double pivot_min = u_diag.cwiseAbs().minCoeff();
  if (!(pivot_min > 0.0) || pivot_max / pivot_min > 1e12) {
    throw SingularResolventError(
        "resolvent condition estimate " +
        std::to_string(pivot_min > 0.0 ? pivot_max / pivot_min : INFINITY) +
        " at omega=" + std::to_string(omega));
  }

  // G = source * R via the transposed system
  Eigen::PartialPivLU<Eigen::MatrixXcd> lut(m.transpose());
  const Eigen::MatrixXcd gt =
      lut.solve(coupling.source.transpose().cast<Cplx>());
  const Eigen::MatrixXcd g = gt.transpose();

  const Eigen::Matrix2cd k = g * coupling.feedback.cast<Cplx>();
  const Eigen::Matrix2cd q =
      g * (2.0 * diffusion) * g.adjoint() / coupling.line_density_m;

  out.transfer = (k * slice_length).exp();
  // Van Loan block integral for N = int_0^dz e^{Kv} Q e^{K^dag v} dv
  Eigen::Matrix4cd block = Eigen::Matrix4cd::Zero();
  block.topLeftCorner<2, 2>() = k;
  block.topRightCorner<2, 2>() = q;
  block.bottomRightCorner<2, 2>() = -k.adjoint();
  const Eigen::Matrix4cd eb = (block * slice_length).exp();
  const Eigen::Matrix2cd f = eb.topRightCorner<2, 2>();
  Eigen::Matrix2cd n = f * out.transfer.adjoint();
  out.added_noise = 0.5 * (n + n.adjoint());
  return out;
}

CellResult propagate_cell_detailed(const GaussianState& input,
                                   const AtomScheme& scheme,
                                   const CellConfig& cfg,
                                   const AtomicConstants& constants) {
  if (cfg.n_slices < 1) throw DomainError("n_slices must be >= 1");
  if (cfg.analysis.omega_rad_s < 0.0) throw DomainError("omega must be >= 0");
  const QuantAxis axis = dominant_axis(cfg.field);
  AtomEngine engine(scheme, axis, constants);

  const double area = beam_area_m2(cfg.drive);
  const double n_line = cfg.ensemble.line_density_m(area);
  const double g0_sq = coupling_rate(constants, area);
  const double g0 = std::sqrt(g0_sq);
  const double dz = cfg.ensemble.length_m / cfg.n_slices;
  const double omega = cfg.analysis.omega_rad_s;

  Cplx rabi_d = rabi_from_power(cfg.drive, constants);
  Cplx rabi_s = 0.0;
  Eigen::Matrix2cd spectral = spectral_from_state(input);

  for (int k = 0; k < cfg.n_slices; ++k) {
    const Eigen::MatrixXcd h =
        engine.hamiltonian(rabi_d, rabi_s, cfg.field, cfg.drive.detuning_rad_s);
    const Eigen::MatrixXcd lmat = engine.liouvillian(h);
    const Eigen::MatrixXcd rho = engine.steady_state_from_liouvillian(lmat);
    const Eigen::MatrixXd drift = engine.drift_from_liouvillian(lmat);
    if (cfg.check_stability) check_drift_stability(drift);
    const Eigen::MatrixXcd diffusion = engine.diffusion_matrix(rho);

    FieldCoupling coupling;
    coupling.feedback = g0 * engine.signal_feedback(rho);
    coupling.source = (g0 * n_line) * engine.signal_source();
    coupling.conserved = engine.conserved_direction();
    coupling.line_density_m = n_line;

    const SliceTransfer slice =
        slice_response(drift, diffusion, coupling, omega, dz);
    spectral = slice.transfer * spectral * slice.transfer.adjoint() +
               slice.added_noise;

    rabi_d += dz * 2.0 * kI * g0_sq * n_line * engine.drive_polarization(rho);
    rabi_s += dz * 2.0 * kI * g0_sq * n_line * engine.signal_polarization(rho);
  }

  CellResult result;
  result.output.mean.setZero();
  const Eigen::Matrix2d re = spectral.real();
  result.output.cov = 0.5 * (re + re.transpose());
  result.rabi_drive_out = rabi_d;
  result.rabi_signal_out = rabi_s;
  return result;
}

GaussianState propagate_cell(const GaussianState& input,
                             const AtomScheme& scheme, const CellConfig& cfg,
                             const AtomicConstants& constants) {
  return propagate_cell_detailed(input, scheme, cfg, constants).output;
}

GaussianState propagate_cell_checked(const GaussianState& input,
                                     const AtomScheme& scheme,
                                     const CellConfig& cfg,
                                     const AtomicConstants& constants) {
  const GaussianState coarse = propagate_cell(input, scheme, cfg, constants);
  CellConfig fine = cfg;
  fine.n_slices = 2 * cfg.n_slices;
  const GaussianState refined = propagate_cell(input, scheme, fine, constants);
  const double delta = std::abs(min_variance(refined).variance -
                                min_variance(coarse).variance) /
                       kVacuumVariance;
  if (cfg.n_slices >= 3200 && delta > 1e-4) {
    throw NonConvergedError("slice doubling moved the minimum variance by " +
                            std::to_string(delta) + " SNU at n_slices=" +
                            std::to_string(cfg.n_slices));
  }
  return refined;
}

std::vector<SweepPoint> squeezing_vs(
    const AtomScheme& scheme, const CellConfig& base,
    const std::vector<double>& values,
    const std::function<void(double, CellConfig&)>& apply,
    const AtomicConstants& constants) {
  std::vector<SweepPoint> points(values.size());
  std::atomic<std::size_t> cursor{0};
  const unsigned n_workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(),
                            static_cast<unsigned>(values.size())));
  auto work = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= values.size()) return;
      SweepPoint& p = points[i];
      p.value = values[i];
      try {
        CellConfig cfg = base;
        apply(values[i], cfg);
        const GaussianState out =
            propagate_cell(vacuum(), scheme, cfg, constants);
        const MinVariance mv = min_variance(out);
        p.min_snu = mv.variance / kVacuumVariance;
        p.max_snu = (out.cov.trace() - mv.variance) / kVacuumVariance;
        p.angle_rad = mv.angle_rad;
      } catch (const std::exception& e) {
        p.error = e.what();
      }
    }
  };
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return points;
}

}  // namespace sqz
