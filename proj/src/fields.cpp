#include "sqz/fields.hpp"

#include <cmath>

namespace sqz {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

QuantAxis dominant_axis(const MagneticField& b) {
  return std::abs(b.b_x_gauss) >= std::abs(b.b_z_gauss) ? QuantAxis::x
                                                        : QuantAxis::z;
}

double beam_intensity_w_m2(const DriveField& drive) {
  if (!(drive.waist_m > 0.0)) throw DomainError("waist must be > 0");
  if (drive.power_w < 0.0) throw DomainError("power must be >= 0");
  return 2.0 * drive.power_w / (kPi * drive.waist_m * drive.waist_m);
}

double beam_area_m2(const DriveField& drive) {
  if (!(drive.waist_m > 0.0)) throw DomainError("waist must be > 0");
  return kPi * drive.waist_m * drive.waist_m / 2.0;
}

double rabi_from_power(const DriveField& drive,
                       const AtomicConstants& constants) {
  const double intensity = beam_intensity_w_m2(drive);
  return constants.gamma_d1 *
         std::sqrt(intensity / (2.0 * constants.i_sat_w_m2));
}

double coupling_rate(const AtomicConstants& constants, double beam_area) {
  if (!(beam_area > 0.0)) throw DomainError("beam area must be > 0");
  const double sigma0 =
      3.0 * constants.wavelength_m * constants.wavelength_m / (2.0 * kPi);
  return sigma0 * constants.gamma_d1 / (4.0 * beam_area);
}

PolarizationWeights polarization_decomposition(QuantAxis axis) {
  PolarizationWeights w;
  if (axis == QuantAxis::z) {
    // Spherical basis about z: e+ = -(x+iy)/sqrt2, e- = (x-iy)/sqrt2.
    // y-polarized drive -> (i,i)/sqrt2; x-polarized signal -> (-1,1)/sqrt2.
    w.drive = {kI * kInvSqrt2, kI * kInvSqrt2, 0.0};
    w.signal = {-kInvSqrt2, kInvSqrt2, 0.0};
  } else {
    // Quantization along x; transverse plane spanned by (y, z) with
    // e+ = -(y+iz)/sqrt2, e- = (y-iz)/sqrt2. The y-polarized drive becomes
    // an equal sigma+/sigma- superposition, the x-polarized signal is pi.
    w.drive = {-kInvSqrt2, kInvSqrt2, 0.0};
    w.signal = {0.0, 0.0, 1.0};
  }
  return w;
}

}  // namespace sqz
