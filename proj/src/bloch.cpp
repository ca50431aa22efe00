#include "sqz/bloch.hpp"

#include <cmath>

namespace sqz {

namespace {

using Cplx = std::complex<double>;
constexpr Cplx kI{0.0, 1.0};

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::VectorXcd vec_of(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Eigen::MatrixXcd mat_of(const Eigen::VectorXcd& v, int n) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n);
}

}  // namespace

AtomEngine::AtomEngine(const AtomScheme& scheme, QuantAxis axis,
                       const AtomicConstants& constants)
    : scheme_(scheme), axis_(axis), constants_(constants) {
  scheme_.levels.validate();
  scheme_.couplings.validate(scheme_.levels);
  scheme_.decay.validate(scheme_.levels);
  n_ = scheme_.levels.n_levels();
  build_basis();
  build_operators();
}

void AtomEngine::build_basis() {
  const int d = dim();
  v_ = Eigen::MatrixXcd::Zero(d, d);
  v_inv_ = Eigen::MatrixXcd::Zero(d, d);
  // populations first, then (u, w) pairs for mu < nu
  for (int mu = 0; mu < n_; ++mu) {
    v_(mu, mu * n_ + mu) = 1.0;
    v_inv_(mu * n_ + mu, mu) = 1.0;
  }
  int idx = n_;
  for (int mu = 0; mu < n_; ++mu) {
    for (int nu = mu + 1; nu < n_; ++nu) {
      const int a_up = mu * n_ + nu;   // e_{mu nu}
      const int a_dn = nu * n_ + mu;   // e_{nu mu}
      v_(idx, a_up) = 0.5;
      v_(idx, a_dn) = 0.5;
      v_(idx + 1, a_up) = Cplx(0.0, -0.5);
      v_(idx + 1, a_dn) = Cplx(0.0, +0.5);
      // e_{mu nu} = u + i w, e_{nu mu} = u - i w
      v_inv_(a_up, idx) = 1.0;
      v_inv_(a_up, idx + 1) = kI;
      v_inv_(a_dn, idx) = 1.0;
      v_inv_(a_dn, idx + 1) = -kI;
      idx += 2;
    }
  }
  herm_ops_.assign(d, Eigen::MatrixXcd::Zero(n_, n_));
  for (int b = 0; b < d; ++b) {
    for (int a = 0; a < d; ++a) {
      if (v_(b, a) == Cplx(0.0, 0.0)) continue;
      herm_ops_[b](a / n_, a % n_) += v_(b, a);
    }
  }
  identity_coeff_ = Eigen::VectorXd::Zero(d);
  identity_coeff_.head(n_).setOnes();
}

void AtomEngine::build_operators() {
  const int d = dim();
  const LevelScheme& lv = scheme_.levels;

  // classical / quantized field operators with polarization weights
  const PolarizationWeights w = polarization_decomposition(axis_);
  drive_op_ = Eigen::MatrixXcd::Zero(n_, n_);
  signal_op_ = Eigen::MatrixXcd::Zero(n_, n_);
  for (const auto& e : scheme_.couplings.entries) {
    const int ig = lv.index_of(e.ground);
    const int ix = lv.index_of(e.excited);
    const int p = static_cast<int>(e.polarization);
    drive_op_(ix, ig) += w.drive[p] * e.dipole_weight;
    signal_op_(ix, ig) += w.signal[p] * e.dipole_weight;
  }

  offset_diag_ = Eigen::MatrixXcd::Zero(n_, n_);
  excited_diag_ = Eigen::MatrixXcd::Zero(n_, n_);
  zeeman_par_ = Eigen::MatrixXcd::Zero(n_, n_);
  zeeman_perp_ = Eigen::MatrixXcd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    const Level& l = lv.levels[i];
    offset_diag_(i, i) = l.energy_offset;
    const double gf = l.manifold == Manifold::ground ? lv.g_factor_ground
                                                     : lv.g_factor_excited;
    if (l.manifold == Manifold::excited) excited_diag_(i, i) = 1.0;
    zeeman_par_(i, i) = gf * l.m;
    const double f = lv.manifold_spin(l.manifold);
    for (int j = 0; j < n_; ++j) {
      const Level& lj = lv.levels[j];
      if (lj.manifold != l.manifold) continue;
      if (std::abs(lj.m - l.m - 1.0) > 1e-9) continue;
      // <m+1| F_x |m> = sqrt(f(f+1) - m(m+1)) / 2
      const double elem =
          0.5 * std::sqrt(f * (f + 1.0) - l.m * (l.m + 1.0));
      zeeman_perp_(j, i) += gf * elem;
      zeeman_perp_(i, j) += gf * elem;
    }
  }

  // jump operators
  lindblad_.clear();
  const int n_ground = lv.n_ground();
  for (const auto& [label, rate] : scheme_.decay.excited_decay) {
    if (rate <= 0.0) continue;
    const int ie = lv.index_of(label);
    for (const auto& [key, frac] : scheme_.decay.branching) {
      if (key.first != label || frac <= 0.0) continue;
      const int ig = lv.index_of(key.second);
      Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n_, n_);
      l(ig, ie) = std::sqrt(rate * frac);
      lindblad_.push_back(l);
    }
  }
  if (scheme_.decay.ground_relax > 0.0) {
    // transit: every level drains into a fresh unpolarized ground mixture
    const double r = scheme_.decay.ground_relax / n_ground;
    for (int mu = 0; mu < n_; ++mu) {
      for (int g = 0; g < n_; ++g) {
        if (lv.levels[g].manifold != Manifold::ground) continue;
        Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n_, n_);
        l(g, mu) = std::sqrt(r);
        lindblad_.push_back(l);
      }
    }
  }
  if (scheme_.decay.excited_dephasing > 0.0) {
    for (int i = 0; i < n_; ++i) {
      if (lv.levels[i].manifold != Manifold::excited) continue;
      Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n_, n_);
      l(i, i) = std::sqrt(2.0 * scheme_.decay.excited_dephasing);
      lindblad_.push_back(l);
    }
  }

  // dissipative superoperator and the adjoint dissipator of each basis op
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n_, n_);
  lmat_diss_ = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd j_op = Eigen::MatrixXcd::Zero(n_, n_);
  for (const auto& l : lindblad_) {
    const Eigen::MatrixXcd ldl = l.adjoint() * l;
    j_op += ldl;
    lmat_diss_ += kron(l.conjugate(), l);
    lmat_diss_ -= 0.5 * kron(id, ldl);
    lmat_diss_ -= 0.5 * kron(ldl.transpose(), id);
  }
  lambda_e_.assign(d, Eigen::MatrixXcd::Zero(n_, n_));
  for (int a = 0; a < d; ++a) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n_, n_);
    e(a / n_, a % n_) = 1.0;
    Eigen::MatrixXcd out = -0.5 * (j_op * e + e * j_op);
    for (const auto& l : lindblad_) {
      out += l.adjoint() * e * l;
    }
    lambda_e_[a] = out;
  }

  // signal source rows: quadrature growth operators expanded over the
  // Hermitian basis (coefficients c = V^{-T} y)
  const Eigen::MatrixXcd ox =
      0.5 * kI * (signal_op_.adjoint() - signal_op_);
  const Eigen::MatrixXcd op = 0.5 * (signal_op_.adjoint() + signal_op_);
  source_ = Eigen::MatrixXd::Zero(2, d);
  Eigen::VectorXcd yx(d), yp(d);
  for (int a = 0; a < d; ++a) {
    yx(a) = ox(a / n_, a % n_);
    yp(a) = op(a / n_, a % n_);
  }
  const Eigen::VectorXcd cx = v_inv_.transpose() * yx;
  const Eigen::VectorXcd cp = v_inv_.transpose() * yp;
  if (cx.imag().cwiseAbs().maxCoeff() > 1e-12 ||
      cp.imag().cwiseAbs().maxCoeff() > 1e-12) {
    throw NonHermitianError("signal source rows are not real");
  }
  source_.row(0) = cx.real();
  source_.row(1) = cp.real();
}

Eigen::MatrixXcd AtomEngine::hamiltonian(Cplx rabi_drive, Cplx rabi_signal,
                                         const MagneticField& b,
                                         double detuning) const {
  const double b_par =
      axis_ == QuantAxis::x ? b.b_x_gauss : b.b_z_gauss;
  const double b_perp =
      axis_ == QuantAxis::x ? b.b_z_gauss : b.b_x_gauss;
  Eigen::MatrixXcd h = offset_diag_ - detuning * excited_diag_;
  h += constants_.mu_b_rad_s_gauss * (b_par * zeeman_par_ + b_perp * zeeman_perp_);
  h -= 0.5 * (rabi_drive * drive_op_ +
              std::conj(rabi_drive) * drive_op_.adjoint());
  h -= 0.5 * (rabi_signal * signal_op_ +
              std::conj(rabi_signal) * signal_op_.adjoint());
  const double scale = h.cwiseAbs().maxCoeff();
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale)) {
    throw NonHermitianError("assembled Hamiltonian is not Hermitian");
  }
  return h;
}

Eigen::MatrixXcd AtomEngine::liouvillian(const Eigen::MatrixXcd& h) const {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n_, n_);
  return -kI * (kron(id, h) - kron(h.transpose(), id)) + lmat_diss_;
}

Eigen::MatrixXcd AtomEngine::steady_state(const Eigen::MatrixXcd& h) const {
  return steady_state_from_liouvillian(liouvillian(h));
}

Eigen::MatrixXcd AtomEngine::steady_state_from_liouvillian(
    const Eigen::MatrixXcd& lmat) const {
  const int d = dim();
  const double lnorm = lmat.norm();
  Eigen::MatrixXcd m = lmat;
  // the (0,0)-population row is implied by trace conservation; replace it
  // with the normalization constraint
  m.row(0).setZero();
  for (int mu = 0; mu < n_; ++mu) m(0, mu * n_ + mu) = 1.0;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d);
  rhs(0) = 1.0;
  Eigen::VectorXcd x = m.partialPivLu().solve(rhs);
  double residual = (lmat * x).norm();
  if (!(residual <= 1e-9 * lnorm) || !x.allFinite()) {
    // slow path: diagnose degeneracy via the singular spectrum
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(lmat, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(d - 2) < 1e-9 * sv(0)) {
      throw DegenerateSteadyStateError(
          "Liouvillian null space has dimension > 1");
    }
    x = svd.matrixV().col(d - 1);
    Cplx trace = 0.0;
    for (int mu = 0; mu < n_; ++mu) trace += x(mu * n_ + mu);
    if (std::abs(trace) < 1e-9) {
      throw DegenerateSteadyStateError("steady state has vanishing trace");
    }
    x /= trace;
    residual = (lmat * x).norm();
    if (!(residual <= 1e-8 * lnorm)) {
      throw DegenerateSteadyStateError("steady-state residual " +
                                       std::to_string(residual / lnorm));
    }
  }
  Eigen::MatrixXcd rho = mat_of(x, n_);
  if ((rho - rho.adjoint()).norm() > 1e-8 * (1.0 + rho.norm())) {
    throw NonHermitianError("steady state is not Hermitian");
  }
  rho = 0.5 * (rho + rho.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-9) {
    throw DegenerateSteadyStateError(
        "steady state has a negative population " +
        std::to_string(es.eigenvalues().minCoeff()));
  }
  rho /= rho.trace().real();
  return rho;
}

Eigen::MatrixXd AtomEngine::drift_matrix(const Eigen::MatrixXcd& h) const {
  return drift_from_liouvillian(liouvillian(h));
}

Eigen::MatrixXd AtomEngine::drift_from_liouvillian(
    const Eigen::MatrixXcd& lmat) const {
  // with a = mu*n + nu matching vec(rho), d<e_a>/dt = sum_b L_ab <e_b>
  const Eigen::MatrixXcd a = v_ * lmat * v_inv_;
  if (a.imag().cwiseAbs().maxCoeff() >
      1e-9 * (1.0 + a.real().cwiseAbs().maxCoeff())) {
    throw NonHermitianError("drift matrix has imaginary parts");
  }
  return a.real();
}

Eigen::MatrixXcd AtomEngine::diffusion_matrix(
    const Eigen::MatrixXcd& rho) const {
  const int d = dim();
  // generalized Einstein relation, single atom:
  // 2D_ab = <Lam(e_a e_b)> - <Lam(e_a) e_b> - <e_a Lam(e_b)>
  std::vector<Eigen::MatrixXcd> rho_lam(d), lam_rho(d);
  Eigen::VectorXcd w(d);
  for (int a = 0; a < d; ++a) {
    rho_lam[a] = rho * lambda_e_[a];
    lam_rho[a] = lambda_e_[a] * rho;
    w(a) = rho_lam[a].trace();
  }
  Eigen::MatrixXcd de(d, d);
  for (int a = 0; a < d; ++a) {
    const int mu_a = a / n_, nu_a = a % n_;
    for (int b = 0; b < d; ++b) {
      const int mu_b = b / n_, nu_b = b % n_;
      Cplx val = -rho_lam[a](nu_b, mu_b) - lam_rho[b](nu_a, mu_a);
      if (nu_a == mu_b) val += w(mu_a * n_ + nu_b);
      de(a, b) = val;
    }
  }
  Eigen::MatrixXcd diff = 0.5 * (v_ * de * v_.transpose());
  if ((diff - diff.adjoint()).norm() > 1e-9 * (1.0 + diff.norm())) {
    throw NonHermitianError("diffusion matrix is not Hermitian");
  }
  diff = 0.5 * (diff + diff.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff);
  const double scale = std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < -1e-6 * scale) {
    throw NegativeDiffusionError(
        "diffusion matrix eigenvalue " +
        std::to_string(es.eigenvalues().minCoeff() / scale) +
        " (relative) is negative");
  }
  return diff;
}

Eigen::MatrixXd AtomEngine::signal_feedback(const Eigen::MatrixXcd& rho) const {
  const int d = dim();
  const Eigen::MatrixXcd com = rho * signal_op_ - signal_op_ * rho;
  Eigen::VectorXcd ce(d);
  for (int a = 0; a < d; ++a) ce(a) = com(a % n_, a / n_);
  const Eigen::VectorXcd ct = v_ * ce;
  Eigen::MatrixXd feedback(d, 2);
  feedback.col(0) = 2.0 * ct.imag();
  feedback.col(1) = 2.0 * ct.real();
  return feedback;
}

std::complex<double> AtomEngine::drive_polarization(
    const Eigen::MatrixXcd& rho) const {
  return (rho * drive_op_.adjoint()).trace();
}

std::complex<double> AtomEngine::signal_polarization(
    const Eigen::MatrixXcd& rho) const {
  return (rho * signal_op_.adjoint()).trace();
}

Eigen::VectorXd AtomEngine::state_vector(const Eigen::MatrixXcd& rho) const {
  const Eigen::VectorXcd s = v_ * vec_of(rho);
  return s.real();
}

Eigen::MatrixXcd AtomEngine::atomic_covariance(
    const Eigen::MatrixXcd& rho) const {
  const int d = dim();
  const Eigen::VectorXd s = state_vector(rho);
  Eigen::MatrixXcd cov(d, d);
  for (int a = 0; a < d; ++a) {
    const Eigen::MatrixXcd ra = rho * herm_ops_[a];
    for (int b = 0; b < d; ++b) {
      cov(a, b) = (ra * herm_ops_[b]).trace() - s(a) * s(b);
    }
  }
  return cov;
}

void check_drift_stability(const Eigen::MatrixXd& drift) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(drift, /*computeEigenvectors=*/false);
  const double scale =
      std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  const double worst = es.eigenvalues().real().maxCoeff();
  if (worst > 1e-6 * scale) {
    throw UnstableDriftError("drift eigenvalue with real part " +
                             std::to_string(worst) + " (scale " +
                             std::to_string(scale) + ")");
  }
}

Eigen::MatrixXcd build_hamiltonian(const AtomScheme& scheme, QuantAxis axis,
                                   std::complex<double> rabi_drive,
                                   std::complex<double> rabi_signal,
                                   const MagneticField& b, double detuning,
                                   const AtomicConstants& constants) {
  AtomEngine engine(scheme, axis, constants);
  return engine.hamiltonian(rabi_drive, rabi_signal, b, detuning);
}

Eigen::MatrixXcd steady_state(const AtomScheme& scheme, QuantAxis axis,
                              const Eigen::MatrixXcd& h,
                              const AtomicConstants& constants) {
  AtomEngine engine(scheme, axis, constants);
  return engine.steady_state(h);
}

Eigen::MatrixXd drift_matrix(const AtomScheme& scheme, QuantAxis axis,
                             const Eigen::MatrixXcd& h,
                             const AtomicConstants& constants) {
  AtomEngine engine(scheme, axis, constants);
  return engine.drift_matrix(h);
}

Eigen::MatrixXcd diffusion_matrix(const AtomScheme& scheme, QuantAxis axis,
                                  const Eigen::MatrixXcd& rho,
                                  const AtomicConstants& constants) {
  AtomEngine engine(scheme, axis, constants);
  return engine.diffusion_matrix(rho);
}

}  // namespace sqz
