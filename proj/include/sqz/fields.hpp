#pragma once

#include <array>
#include <complex>

#include "sqz/errors.hpp"

namespace sqz {

// Reference atomic data used to convert bench units (mW, mG) into rates.
// Values are standard 87Rb D1 figures; all are overridable.
struct AtomicConstants {
  double gamma_d1 = 2.0 * 3.14159265358979323846 * 5.75e6;  // rad/s
  double i_sat_w_m2 = 44.9;                // 4.49 mW/cm^2
  double mu_b_rad_s_gauss = 2.0 * 3.14159265358979323846 * 1.3996e6;
  double wavelength_m = 794.979e-9;
};

// Linearly y-polarized drive beam. The detuning is quoted against the
// F=2 -> F'=1 line; level energy offsets place transitions relative to it.
struct DriveField {
  double power_w = 6e-3;
  double waist_m = 2e-3;          // 1/e^2 intensity radius
  double detuning_rad_s = 2.0 * 3.14159265358979323846 * 814.5e6;
};

struct MagneticField {
  double b_x_gauss = 0.0;  // transverse (perpendicular to propagation)
  double b_z_gauss = 0.0;  // longitudinal (along propagation)
};

enum class QuantAxis { x, z };

// The axis with the larger field magnitude; ties pick x.
QuantAxis dominant_axis(const MagneticField& b);

// Peak intensity of a collimated Gaussian beam, 2P/(pi w^2).
double beam_intensity_w_m2(const DriveField& drive);

// Effective beam area consistent with the peak-intensity convention,
// P = I_peak * area.
double beam_area_m2(const DriveField& drive);

// On-resonance Rabi frequency from power: Gamma * sqrt(I / (2 I_sat)).
double rabi_from_power(const DriveField& drive,
                       const AtomicConstants& constants = {});

struct EnsembleConfig {
  double number_density_m3 = 2e15;
  double length_m = 0.075;
  double temperature_k = 347.15;  // diagnostic only

  // Atoms per unit length of beam.
  double line_density_m(double beam_area) const {
    return number_density_m3 * beam_area;
  }
  double atom_count(double beam_area) const {
    return number_density_m3 * beam_area * length_m;
  }
};

// Single-atom coupling rate g0^2 into the paraxial signal mode, fixed by the
// resonant cross-section 3 lambda^2 / (2 pi): a unit-weight two-level
// transition then reproduces the textbook optical depth n * sigma0 * L.
double coupling_rate(const AtomicConstants& constants, double beam_area);

// Amplitudes of the y-polarized drive and x-polarized signal on the
// (sigma+, sigma-, pi) components for the chosen quantization axis.
// Each triple has unit norm.
struct PolarizationWeights {
  std::array<std::complex<double>, 3> drive;
  std::array<std::complex<double>, 3> signal;
};

PolarizationWeights polarization_decomposition(QuantAxis axis);

}  // namespace sqz
