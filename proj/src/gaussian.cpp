#include "sqz/gaussian.hpp"

#include <cmath>

namespace sqz {

namespace {
constexpr double kPi = 3.14159265358979323846;

Eigen::Matrix2d symmetrized(const Eigen::Matrix2d& m) {
  return 0.5 * (m + m.transpose());
}
}  // namespace

SymplecticTransform SymplecticTransform::identity() {
  return SymplecticTransform{};
}

SymplecticTransform SymplecticTransform::shear(double g) {
  SymplecticTransform t;
  t.S << 1.0, 0.0, -g, 1.0;
  return t;
}

SymplecticTransform SymplecticTransform::rotation(double phi) {
  SymplecticTransform t;
  const double c = std::cos(phi), s = std::sin(phi);
  t.S << c, -s, s, c;
  return t;
}

GaussianState vacuum() { return GaussianState{}; }

GaussianState apply_symplectic(const GaussianState& state,
                               const SymplecticTransform& transform) {
  const double det = transform.S.determinant();
  if (std::abs(det - 1.0) > 1e-9) {
    throw NonSymplecticError("transform determinant " + std::to_string(det) +
                             " is not 1");
  }
  GaussianState out;
  out.mean = transform.S * state.mean;
  out.cov = symmetrized(transform.S * state.cov * transform.S.transpose());
  return out;
}

GaussianState apply_loss(const GaussianState& state, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("loss transmission eta must lie in [0,1], got " +
                      std::to_string(eta));
  }
  GaussianState out;
  out.mean = std::sqrt(eta) * state.mean;
  out.cov = symmetrized(eta * state.cov + (1.0 - eta) * kVacuumVariance *
                                              Eigen::Matrix2d::Identity());
  return out;
}

double quadrature_variance(const GaussianState& state, double phi) {
  const Eigen::Vector2d c(std::cos(phi), std::sin(phi));
  return c.dot(state.cov * c);
}

MinVariance min_variance(const GaussianState& state) {
  // V(phi) = m + a*cos(2phi) + b*sin(2phi) with the rotation amplitude
  // r = hypot(a, b); the minimum is m - r.
  const double m = 0.5 * (state.cov(0, 0) + state.cov(1, 1));
  const double a = 0.5 * (state.cov(0, 0) - state.cov(1, 1));
  const double b = 0.5 * (state.cov(0, 1) + state.cov(1, 0));
  const double r = std::hypot(a, b);
  MinVariance result;
  result.variance = m - r;
  if (r < 1e-300) {
    result.angle_rad = 0.0;  // isotropic: angle 0 by convention
    return result;
  }
  double phi = 0.5 * (std::atan2(b, a) + kPi);
  phi = std::fmod(phi, kPi);
  if (phi < 0.0) phi += kPi;
  result.angle_rad = phi;
  return result;
}

double wigner(const GaussianState& state, double x, double p) {
  const double det = state.cov.determinant();
  if (!(det > 0.0)) {
    throw SingularCovarianceError("covariance determinant " +
                                  std::to_string(det) + " is not positive");
  }
  const Eigen::Vector2d r(x - state.mean(0), p - state.mean(1));
  const Eigen::Vector2d sol = state.cov.ldlt().solve(r);
  const double quad = r.dot(sol);
  return std::exp(-0.5 * quad) / (2.0 * kPi * std::sqrt(det));
}

NoiseFigure to_snu(double variance) {
  if (!(variance > 0.0)) {
    throw DomainError("variance must be positive, got " +
                      std::to_string(variance));
  }
  NoiseFigure f;
  f.snu = variance / kVacuumVariance;
  f.value_db = 10.0 * std::log10(f.snu);
  return f;
}

NoiseFigure from_db(double db) {
  NoiseFigure f;
  f.value_db = db;
  f.snu = std::pow(10.0, db / 10.0);
  return f;
}

}  // namespace sqz
