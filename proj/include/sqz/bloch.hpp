#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sqz/fields.hpp"
#include "sqz/scheme.hpp"

namespace sqz {

// Microscopic engine for one atomic species in one geometry: interaction
// Hamiltonian with Zeeman terms, Liouvillian and its steady state, the
// linearized drift of operator fluctuations, the Langevin diffusion matrix
// from the generalized Einstein relations, and the couplings between the
// atomic fluctuations and the quantized signal mode.
//
// Operator bookkeeping: for n levels the fluctuation space has dimension
// n^2. Transition operators |mu><nu| are flattened as a = mu*n + nu, which
// matches the column-major vec(rho) layout, so the generator of expectation
// values coincides with the Liouvillian matrix. Public fluctuation
// quantities use the Hermitian component basis (populations, then
// (sigma+sigma^dag)/2 and (sigma-sigma^dag)/2i per level pair); there the
// drift and the field couplings are real.
class AtomEngine {
 public:
  AtomEngine(const AtomScheme& scheme, QuantAxis axis,
             const AtomicConstants& constants = {});

  int n_levels() const { return n_; }
  int dim() const { return n_ * n_; }
  QuantAxis axis() const { return axis_; }
  const AtomScheme& scheme() const { return scheme_; }

  // Level-space Hamiltonian (rad/s) for classical drive/signal amplitudes.
  // detuning is quoted against the scheme's energy-offset reference.
  Eigen::MatrixXcd hamiltonian(std::complex<double> rabi_drive,
                               std::complex<double> rabi_signal,
                               const MagneticField& b, double detuning) const;

  // Schroedinger-picture generator on vec(rho).
  Eigen::MatrixXcd liouvillian(const Eigen::MatrixXcd& h) const;

  Eigen::MatrixXcd steady_state(const Eigen::MatrixXcd& h) const;
  Eigen::MatrixXcd steady_state_from_liouvillian(
      const Eigen::MatrixXcd& lmat) const;

  // Real drift matrix over Hermitian fluctuation components.
  Eigen::MatrixXd drift_matrix(const Eigen::MatrixXcd& h) const;
  Eigen::MatrixXd drift_from_liouvillian(const Eigen::MatrixXcd& lmat) const;

  // Langevin diffusion D (Hermitian, <f_a(t) f_b(t')> = 2 D_ab delta) for a
  // single atom at the given steady state, Hermitian component basis.
  Eigen::MatrixXcd diffusion_matrix(const Eigen::MatrixXcd& rho) const;

  // Atomic response to the signal quadratures: d(delta s)/dt gains
  // g0 * feedback(rho) * (dX, dP)^T.
  Eigen::MatrixXd signal_feedback(const Eigen::MatrixXcd& rho) const;

  // Signal-mode source: d(dX, dP)/dz = g0 * n_L * signal_source() * delta s.
  const Eigen::MatrixXd& signal_source() const { return source_; }

  // <M^dag> for the classical propagation of the drive / signal means:
  // d(rabi)/dz = 2 i g0^2 n_L <M^dag>.
  std::complex<double> drive_polarization(const Eigen::MatrixXcd& rho) const;
  std::complex<double> signal_polarization(const Eigen::MatrixXcd& rho) const;

  // Expectation vector in the Hermitian basis.
  Eigen::VectorXd state_vector(const Eigen::MatrixXcd& rho) const;

  // Ordered second moments <dt_a dt_b> of the fluctuations at rho; feeds the
  // regression oracles and the Einstein-relation consistency check.
  Eigen::MatrixXcd atomic_covariance(const Eigen::MatrixXcd& rho) const;

  // Coefficients of the identity operator (the drift's conserved direction).
  const Eigen::VectorXd& conserved_direction() const {
    return identity_coeff_;
  }

  const AtomicConstants& constants() const { return constants_; }

 private:
  void build_basis();
  void build_operators();

  AtomScheme scheme_;
  QuantAxis axis_;
  AtomicConstants constants_;
  int n_ = 0;

  // basis change: s = V vec(rho); operator coefficients c = V^{-T} y
  Eigen::MatrixXcd v_;
  Eigen::MatrixXcd v_inv_;
  std::vector<Eigen::MatrixXcd> herm_ops_;    // Hermitian basis as matrices
  std::vector<Eigen::MatrixXcd> lambda_e_;    // adjoint dissipator of e_a
  std::vector<Eigen::MatrixXcd> lindblad_;    // jump operators
  Eigen::MatrixXcd lmat_diss_;                // dissipative superoperator
  Eigen::MatrixXcd drive_op_;                 // M_d = sum w_d |e><g|
  Eigen::MatrixXcd signal_op_;                // M_s = sum w_s |e><g|
  Eigen::MatrixXcd zeeman_par_;               // g_F * m diagonal
  Eigen::MatrixXcd zeeman_perp_;              // g_F * F_perp ladder
  Eigen::MatrixXcd offset_diag_;              // energy offsets
  Eigen::MatrixXcd excited_diag_;             // excited-manifold projector
  Eigen::MatrixXd source_;                    // 2 x dim signal source rows
  Eigen::VectorXd identity_coeff_;
};

// Throws UnstableDriftError when an eigenvalue's real part exceeds
// 1e-6 * scale; the pass criterion used in tests is 1e-9 * scale.
void check_drift_stability(const Eigen::MatrixXd& drift);

// Convenience wrappers matching one-off use.
Eigen::MatrixXcd build_hamiltonian(const AtomScheme& scheme, QuantAxis axis,
                                   std::complex<double> rabi_drive,
                                   std::complex<double> rabi_signal,
                                   const MagneticField& b, double detuning,
                                   const AtomicConstants& constants = {});
Eigen::MatrixXcd steady_state(const AtomScheme& scheme, QuantAxis axis,
                              const Eigen::MatrixXcd& h,
                              const AtomicConstants& constants = {});
Eigen::MatrixXd drift_matrix(const AtomScheme& scheme, QuantAxis axis,
                             const Eigen::MatrixXcd& h,
                             const AtomicConstants& constants = {});
Eigen::MatrixXcd diffusion_matrix(const AtomScheme& scheme, QuantAxis axis,
                                  const Eigen::MatrixXcd& rho,
                                  const AtomicConstants& constants = {});

}  // namespace sqz
