#pragma once

#include <Eigen/Dense>

#include "sqz/errors.hpp"

namespace sqz {

// Quadrature convention: X = (a + a^dag)/2, P = (a - a^dag)/2i, so the vacuum
// variance is 1/4 in each quadrature and det(cov) >= 1/16 for physical states.
inline constexpr double kVacuumVariance = 0.25;

// Single-mode Gaussian state: mean quadrature vector and 2x2 covariance.
struct GaussianState {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = kVacuumVariance * Eigen::Matrix2d::Identity();
};

// Lossless quadrature map; det S must equal 1.
struct SymplecticTransform {
  Eigen::Matrix2d S = Eigen::Matrix2d::Identity();

  static SymplecticTransform identity();
  // S = [[1,0],[-g,1]]: adds -g*X to P, leaving X untouched.
  static SymplecticTransform shear(double g);
  static SymplecticTransform rotation(double phi);
};

// A variance both as shot-noise units (vacuum = 1) and decibels.
struct NoiseFigure {
  double value_db = 0.0;
  double snu = 1.0;
};

struct MinVariance {
  double variance = kVacuumVariance;
  double angle_rad = 0.0;  // in [0, pi)
};

GaussianState vacuum();

GaussianState apply_symplectic(const GaussianState& state,
                               const SymplecticTransform& transform);

// Beamsplitter loss model: mean -> sqrt(eta)*mean,
// cov -> eta*cov + (1-eta)*vacuum.
GaussianState apply_loss(const GaussianState& state, double eta);

// Variance of X(phi) = X cos(phi) + P sin(phi).
double quadrature_variance(const GaussianState& state, double phi);

// Smallest quadrature variance and the phase attaining it. Isotropic
// covariances report angle 0.
MinVariance min_variance(const GaussianState& state);

double wigner(const GaussianState& state, double x, double p);

NoiseFigure to_snu(double variance);
NoiseFigure from_db(double db);

}  // namespace sqz
