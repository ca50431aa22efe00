#include "sqz/psr_shear.hpp"

#include <cmath>

namespace sqz {

GaussianState shear_step(const GaussianState& state, double dg) {
  return apply_symplectic(state, SymplecticTransform::shear(dg));
}

GaussianState propagate(const GaussianState& state,
                        const ShearMediumConfig& cfg) {
  if (cfg.n_slices < 1) {
    throw DomainError("n_slices must be >= 1");
  }
  if (cfg.alpha_total < 0.0) {
    throw DomainError("alpha_total must be >= 0");
  }
  const double dg = cfg.g_total / cfg.n_slices;
  const double eta_slice = std::exp(-cfg.alpha_total / cfg.n_slices);
  GaussianState s = state;
  for (int i = 0; i < cfg.n_slices; ++i) {
    s = shear_step(s, dg);
    s = apply_loss(s, eta_slice);
  }
  return s;
}

double pure_shear_min_variance(double g) {
  return kVacuumVariance * ((2.0 + g * g) - g * std::sqrt(g * g + 4.0)) / 2.0;
}

}  // namespace sqz
