#include "sqz/scheme.hpp"

#include <cmath>
#include <sstream>

#include "sqz/csv.hpp"

namespace sqz {

namespace {
constexpr double kPi = 3.14159265358979323846;

int delta_m_of(Polarization pol) {
  switch (pol) {
    case Polarization::sigma_plus:
      return 1;
    case Polarization::sigma_minus:
      return -1;
    case Polarization::pi:
      return 0;
  }
  return 0;
}

std::string pol_name(Polarization pol) {
  switch (pol) {
    case Polarization::sigma_plus:
      return "sigma+";
    case Polarization::sigma_minus:
      return "sigma-";
    case Polarization::pi:
      return "pi";
  }
  return "?";
}

Polarization pol_from_name(const std::string& name, long line) {
  if (name == "sigma+") return Polarization::sigma_plus;
  if (name == "sigma-") return Polarization::sigma_minus;
  if (name == "pi") return Polarization::pi;
  throw ParseError("unknown polarization '" + name + "'", line);
}

}  // namespace

int LevelScheme::index_of(const std::string& label) const {
  for (int i = 0; i < n_levels(); ++i) {
    if (levels[i].label == label) return i;
  }
  throw SchemeMismatchError("unknown level label '" + label + "'");
}

const Level& LevelScheme::level(const std::string& label) const {
  return levels[index_of(label)];
}

int LevelScheme::n_ground() const {
  int n = 0;
  for (const auto& l : levels) {
    if (l.manifold == Manifold::ground) ++n;
  }
  return n;
}

double LevelScheme::manifold_spin(Manifold manifold) const {
  double f = 0.0;
  for (const auto& l : levels) {
    if (l.manifold == manifold) f = std::max(f, std::abs(l.m));
  }
  return f;
}

void LevelScheme::validate() const {
  if (levels.empty()) throw SchemeMismatchError("scheme has no levels");
  int ground = 0, excited = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!std::isfinite(levels[i].energy_offset) ||
        !std::isfinite(levels[i].m)) {
      throw SchemeMismatchError("non-finite level data for '" +
                                levels[i].label + "'");
    }
    for (std::size_t j = i + 1; j < levels.size(); ++j) {
      if (levels[i].label == levels[j].label) {
        throw SchemeMismatchError("duplicate level label '" +
                                  levels[i].label + "'");
      }
    }
    (levels[i].manifold == Manifold::ground ? ground : excited) += 1;
  }
  if (ground == 0 || excited == 0) {
    throw SchemeMismatchError(
        "scheme needs at least one ground and one excited level");
  }
}

void CouplingTable::validate(const LevelScheme& scheme) const {
  for (const auto& e : entries) {
    const Level& g = scheme.level(e.ground);
    const Level& x = scheme.level(e.excited);
    if (g.manifold != Manifold::ground || x.manifold != Manifold::excited) {
      throw SchemeMismatchError("coupling " + e.ground + " -> " + e.excited +
                                " must go from a ground to an excited level");
    }
    const double dm = x.m - g.m;
    if (std::abs(dm - delta_m_of(e.polarization)) > 1e-9) {
      throw SchemeMismatchError("coupling " + e.ground + " -> " + e.excited +
                                " violates the " + pol_name(e.polarization) +
                                " selection rule (dm=" + std::to_string(dm) +
                                ")");
    }
  }
}

double DecayModel::decay_rate(const LevelScheme& scheme,
                              const std::string& excited,
                              const std::string& ground) const {
  const auto it_rate = excited_decay.find(excited);
  if (it_rate == excited_decay.end()) return 0.0;
  const auto it_frac = branching.find({excited, ground});
  if (it_frac == branching.end()) return 0.0;
  (void)scheme;
  return it_rate->second * it_frac->second;
}

double DecayModel::population_loss(const LevelScheme& scheme,
                                   const std::string& label) const {
  double rate = ground_relax;
  const Level& l = scheme.level(label);
  if (l.manifold == Manifold::excited) {
    const auto it = excited_decay.find(label);
    if (it != excited_decay.end()) rate += it->second;
  }
  return rate;
}

void DecayModel::validate(const LevelScheme& scheme) const {
  if (ground_relax < 0.0 || excited_dephasing < 0.0) {
    throw DomainError("relaxation rates must be >= 0");
  }
  for (const auto& [label, rate] : excited_decay) {
    if (scheme.level(label).manifold != Manifold::excited) {
      throw SchemeMismatchError("decay rate on non-excited level '" + label +
                                "'");
    }
    if (rate < 0.0) throw DomainError("negative decay rate on '" + label + "'");
    double total = 0.0;
    for (const auto& [key, frac] : branching) {
      if (key.first != label) continue;
      if (scheme.level(key.second).manifold != Manifold::ground) {
        throw SchemeMismatchError("branching target '" + key.second +
                                  "' is not a ground level");
      }
      if (frac < 0.0) throw DomainError("negative branching fraction");
      total += frac;
    }
    if (rate > 0.0 && std::abs(total - 1.0) > 1e-12) {
      throw SchemeMismatchError("branching fractions for '" + label +
                                "' sum to " + std::to_string(total));
    }
  }
}

std::map<std::pair<std::string, std::string>, double> coherence_decay_table(
    const LevelScheme& scheme, const DecayModel& decay) {
  std::map<std::pair<std::string, std::string>, double> table;
  for (const auto& mu : scheme.levels) {
    for (const auto& nu : scheme.levels) {
      double rate =
          0.5 * (decay.population_loss(scheme, mu.label) +
                 decay.population_loss(scheme, nu.label));
      if (mu.label == nu.label) {
        rate = decay.population_loss(scheme, mu.label);
      } else {
        // one dephasing unit per excited projector touching the pair
        int touched = 0;
        if (mu.manifold == Manifold::excited) ++touched;
        if (nu.manifold == Manifold::excited) ++touched;
        if (mu.manifold == Manifold::excited &&
            nu.manifold == Manifold::excited) {
          touched = 2;
        }
        rate += decay.excited_dephasing * touched;
      }
      table[{mu.label, nu.label}] = rate;
    }
  }
  return table;
}

AtomScheme default_x_scheme() {
  AtomScheme s;
  const double hyperfine = 2.0 * kPi * 814.5e6;  // F'=1 -> F'=2 splitting
  s.levels.levels = {
      {"g-", Manifold::ground, -0.5, 0.0},
      {"g+", Manifold::ground, +0.5, 0.0},
      {"e-", Manifold::excited, -0.5, hyperfine},
      {"e+", Manifold::excited, +0.5, hyperfine},
  };
  s.levels.g_factor_ground = 0.5;
  s.levels.g_factor_excited = 0.5;

  // J=1/2 -> J'=1/2 angular weights.
  const double w_sigma = std::sqrt(2.0 / 3.0);
  const double w_pi = std::sqrt(1.0 / 3.0);
  s.couplings.entries = {
      {"g-", "e+", Polarization::sigma_plus, +w_sigma, CouplingRole::drive},
      {"g+", "e-", Polarization::sigma_minus, -w_sigma, CouplingRole::drive},
      {"g-", "e-", Polarization::pi, +w_pi, CouplingRole::signal},
      {"g+", "e+", Polarization::pi, -w_pi, CouplingRole::signal},
  };

  const double gamma = 2.0 * kPi * 5.75e6;
  s.decay.excited_decay = {{"e-", gamma}, {"e+", gamma}};
  s.decay.branching = {
      {{"e-", "g-"}, 0.5},
      {{"e-", "g+"}, 0.5},
      {{"e+", "g-"}, 0.5},
      {{"e+", "g+"}, 0.5},
  };
  s.decay.ground_relax = 2.0 * kPi * 10e3;
  s.decay.excited_dephasing = 0.0;

  s.levels.validate();
  s.couplings.validate(s.levels);
  s.decay.validate(s.levels);
  return s;
}

std::string serialize_scheme(const AtomScheme& scheme) {
  std::ostringstream out;
  out << "# levels: label manifold m energy_offset_rad_s\n";
  for (const auto& l : scheme.levels.levels) {
    out << "level " << l.label << ' '
        << (l.manifold == Manifold::ground ? "ground" : "excited") << ' '
        << format_g9(l.m) << ' ' << format_g9(l.energy_offset) << '\n';
  }
  out << "g_factor_ground " << format_g9(scheme.levels.g_factor_ground)
      << '\n';
  out << "g_factor_excited " << format_g9(scheme.levels.g_factor_excited)
      << '\n';
  out << "# couplings: polarization ground excited dipole_weight role\n";
  for (const auto& c : scheme.couplings.entries) {
    out << "coupling " << pol_name(c.polarization) << ' ' << c.ground << ' '
        << c.excited << ' ' << format_g9(c.dipole_weight) << ' '
        << (c.role == CouplingRole::drive ? "drive" : "signal") << '\n';
  }
  for (const auto& [label, rate] : scheme.decay.excited_decay) {
    out << "decay " << label << ' ' << format_g9(rate) << '\n';
  }
  for (const auto& [key, frac] : scheme.decay.branching) {
    out << "branch " << key.first << ' ' << key.second << ' '
        << format_g9(frac) << '\n';
  }
  out << "ground_relax " << format_g9(scheme.decay.ground_relax) << '\n';
  out << "excited_dephasing " << format_g9(scheme.decay.excited_dephasing)
      << '\n';
  return out.str();
}

AtomScheme parse_scheme(const std::string& text) {
  AtomScheme scheme;
  scheme.decay.ground_relax = 0.0;
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  auto to_number = [&](const std::string& tok) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError("cannot parse number '" + tok + "'", line_no);
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string key;
    row >> key;
    std::vector<std::string> args;
    for (std::string tok; row >> tok;) args.push_back(tok);
    if (key == "level") {
      if (args.size() != 4) throw ParseError("level needs 4 fields", line_no);
      Level l;
      l.label = args[0];
      if (args[1] == "ground") {
        l.manifold = Manifold::ground;
      } else if (args[1] == "excited") {
        l.manifold = Manifold::excited;
      } else {
        throw ParseError("unknown manifold '" + args[1] + "'", line_no);
      }
      l.m = to_number(args[2]);
      l.energy_offset = to_number(args[3]);
      scheme.levels.levels.push_back(l);
    } else if (key == "g_factor_ground") {
      if (args.size() != 1) throw ParseError("g_factor_ground needs 1 field", line_no);
      scheme.levels.g_factor_ground = to_number(args[0]);
    } else if (key == "g_factor_excited") {
      if (args.size() != 1) throw ParseError("g_factor_excited needs 1 field", line_no);
      scheme.levels.g_factor_excited = to_number(args[0]);
    } else if (key == "coupling") {
      if (args.size() != 5) throw ParseError("coupling needs 5 fields", line_no);
      CouplingEntry c;
      c.polarization = pol_from_name(args[0], line_no);
      c.ground = args[1];
      c.excited = args[2];
      c.dipole_weight = to_number(args[3]);
      if (args[4] == "drive") {
        c.role = CouplingRole::drive;
      } else if (args[4] == "signal") {
        c.role = CouplingRole::signal;
      } else {
        throw ParseError("unknown role '" + args[4] + "'", line_no);
      }
      scheme.couplings.entries.push_back(c);
    } else if (key == "decay") {
      if (args.size() != 2) throw ParseError("decay needs 2 fields", line_no);
      scheme.decay.excited_decay[args[0]] = to_number(args[1]);
    } else if (key == "branch") {
      if (args.size() != 3) throw ParseError("branch needs 3 fields", line_no);
      scheme.decay.branching[{args[0], args[1]}] = to_number(args[2]);
    } else if (key == "ground_relax") {
      if (args.size() != 1) throw ParseError("ground_relax needs 1 field", line_no);
      scheme.decay.ground_relax = to_number(args[0]);
    } else if (key == "excited_dephasing") {
      if (args.size() != 1) throw ParseError("excited_dephasing needs 1 field", line_no);
      scheme.decay.excited_dephasing = to_number(args[0]);
    } else {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
  }
  scheme.levels.validate();
  scheme.couplings.validate(scheme.levels);
  scheme.decay.validate(scheme.levels);
  return scheme;
}

}  // namespace sqz
