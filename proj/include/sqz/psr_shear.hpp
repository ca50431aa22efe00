#pragma once

#include "sqz/gaussian.hpp"

namespace sqz {

// Phenomenological self-rotation medium: an integrated quadrature shear
// g_total interleaved with intensity absorption alpha_total, applied in
// n_slices thin steps. End-to-end power transmission is exp(-alpha_total).
struct ShearMediumConfig {
  double g_total = 0.0;
  double alpha_total = 0.0;
  int n_slices = 1000;
};

// One thin shear step, S = [[1,0],[-dg,1]].
GaussianState shear_step(const GaussianState& state, double dg);

GaussianState propagate(const GaussianState& state,
                        const ShearMediumConfig& cfg);

// Closed form for the minimum variance after a lossless shear g on vacuum:
// (1/4) * ((2 + g^2) - g*sqrt(g^2 + 4)) / 2.
double pure_shear_min_variance(double g);

}  // namespace sqz
