#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sqz/errors.hpp"

namespace sqz {

enum class Manifold { ground, excited };

enum class Polarization { sigma_plus, sigma_minus, pi };

// Which field an entry serves in the scheme's natural geometry (transverse
// quantization axis): the classical drive or the quantized signal mode.
// When the quantization axis is longitudinal both fields decompose onto the
// sigma transitions; the dynamical couplings then follow from the
// polarization weights, not from this tag.
enum class CouplingRole { drive, signal };

struct Level {
  std::string label;
  Manifold manifold = Manifold::ground;
  double m = 0.0;                // magnetic quantum number
  double energy_offset = 0.0;    // rad/s, relative to the detuning reference
};

struct LevelScheme {
  std::vector<Level> levels;
  double g_factor_ground = 0.5;
  double g_factor_excited = 0.5;

  int index_of(const std::string& label) const;
  const Level& level(const std::string& label) const;
  int n_levels() const { return static_cast<int>(levels.size()); }
  int n_ground() const;
  // Largest |m| within a manifold; used as the effective F for transverse
  // Zeeman ladder elements.
  double manifold_spin(Manifold manifold) const;
  void validate() const;
};

struct CouplingEntry {
  std::string ground;
  std::string excited;
  Polarization polarization = Polarization::pi;
  double dipole_weight = 1.0;    // signed, dimensionless
  CouplingRole role = CouplingRole::drive;
};

struct CouplingTable {
  std::vector<CouplingEntry> entries;
  void validate(const LevelScheme& scheme) const;
};

// Decay bookkeeping: total excited decay rates with branching fractions into
// the grounds, a transit (ground relaxation) rate that returns population to
// an unpolarized ground mixture, and optional excited-state dephasing.
struct DecayModel {
  std::map<std::string, double> excited_decay;                     // rad/s
  std::map<std::pair<std::string, std::string>, double> branching; // e -> g
  double ground_relax = 2.0 * 3.14159265358979323846 * 10e3;       // rad/s
  double excited_dephasing = 0.0;                                  // rad/s

  double decay_rate(const LevelScheme& scheme, const std::string& excited,
                    const std::string& ground) const;
  // Total population loss rate of a level (decay out plus transit).
  double population_loss(const LevelScheme& scheme,
                         const std::string& label) const;
  void validate(const LevelScheme& scheme) const;
};

// The Gamma_{mu,nu} coherence-decay table implied by the Lindblad terms,
// keyed by (label, label). Diagonal entries are population loss rates.
std::map<std::pair<std::string, std::string>, double> coherence_decay_table(
    const LevelScheme& scheme, const DecayModel& decay);

struct AtomScheme {
  LevelScheme levels;
  CouplingTable couplings;
  DecayModel decay;
};

// Minimal four-level system supporting cross-polarized self-rotation: ground
// and excited doublets (m = -1/2, +1/2) with J=1/2 -> J'=1/2 angular
// weights. The sigma transitions serve the drive, the pi transitions the
// signal, in the transverse-axis geometry. Excited levels sit 2*pi*814.5 MHz
// above the detuning reference (the F=2 -> F'=1 line), i.e. on F'=2.
AtomScheme default_x_scheme();

// Structured-text round trip so alternative schemes can be loaded without
// recompilation. See README for the format.
std::string serialize_scheme(const AtomScheme& scheme);
AtomScheme parse_scheme(const std::string& text);

}  // namespace sqz
