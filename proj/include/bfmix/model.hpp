#pragma once

// Physical specification of the Bose-Fermi mixture: species, contact
// couplings, trap + lattice, and the trap-frequency quench.  Recoil units
// (hbar = M = k = 1) are baked in; energies are measured in E_R.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bfmix/grid.hpp"
#include "bfmix/types.hpp"

namespace bfmix {

enum class Statistics { Bosonic, Fermionic };

struct SpeciesSpec {
  char label = 'B';
  int count = 1;             // N_sigma
  Statistics statistics = Statistics::Bosonic;
  double mass = 1.0;
  int n_orbitals = 1;        // m_sigma
};

// s-wave contact couplings.  Spin-polarized fermions cannot interact via
// s-wave scattering, so no fermion-fermion coupling exists at all.
struct InteractionSpec {
  double g_bb = 0.0;
  double g_fb = 0.0;
  static constexpr double g_ff() { return 0.0; }
};

struct TrapSpec {
  double omega = 0.1;   // harmonic frequency, units of omega_R
  double v0 = 3.0;      // lattice depth, units of E_R
  double k = 1.0;       // lattice wavenumber, fixed at 1 in recoil units
  double period() const { return M_PI / k; }
};

struct SystemSpec {
  SpeciesSpec bosons{'B', 20, Statistics::Bosonic, 1.0, 4};
  SpeciesSpec fermions{'F', 2, Statistics::Fermionic, 1.0, 8};
  InteractionSpec interactions{};
  TrapSpec trap{};
  GridSpec grid{};
  int schmidt_rank = 10;  // M

  const SpeciesSpec& species(Statistics s) const {
    return s == Statistics::Bosonic ? bosons : fermions;
  }
};

// Olshanii's effective 1D coupling
//   g = 2 a_s / (m a_perp^2) * (1 - |zeta(1/2)| a_s / (sqrt(2) a_perp))^-1
// in recoil units.  Throws on the confinement-induced-resonance pole.
inline double effective_coupling_1d(double a_s, double a_perp,
                                    double mass = 1.0) {
  constexpr double abs_zeta_half = 1.4603545088095868;  // |zeta(1/2)|
  if (a_perp <= 0.0)
    throw std::invalid_argument("effective_coupling_1d: a_perp must be > 0");
  const double denom = 1.0 - abs_zeta_half * a_s / (std::sqrt(2.0) * a_perp);
  if (denom <= 0.0)
    throw std::domain_error(
        "effective_coupling_1d: confinement-induced resonance (denominator <= "
        "0)");
  return 2.0 * a_s / (mass * a_perp * a_perp) / denom;
}

// V(x) = (m/2) omega^2 x^2 + V0 sin^2(k x)
inline Vec potential_vector(const TrapSpec& trap, const Grid& grid,
                            double mass = 1.0) {
  Vec v(grid.n());
  for (int j = 0; j < grid.n(); ++j) {
    const double x = grid.points()[j];
    const double s = std::sin(trap.k * x);
    v[j] = 0.5 * mass * trap.omega * trap.omega * x * x + trap.v0 * s * s;
  }
  return v;
}

namespace detail {
inline void check(bool ok, const std::string& path, const std::string& what,
                  std::vector<std::string>& errors) {
  if (!ok) errors.push_back(path + ": " + what);
}
}  // namespace detail

inline void validate_species(const SpeciesSpec& s, const std::string& path,
                             std::vector<std::string>& errors) {
  detail::check(s.count >= 1, path + ".count", "must be >= 1", errors);
  detail::check(s.mass > 0.0, path + ".mass", "must be > 0", errors);
  detail::check(s.n_orbitals >= 1, path + ".n_orbitals", "must be >= 1",
                errors);
  if (s.statistics == Statistics::Fermionic)
    detail::check(s.n_orbitals >= s.count, path + ".n_orbitals",
                  "fermions need n_orbitals >= count (Pauli)", errors);
}

// Validates every invariant; throws with all violated field paths at once.
// Returns the spec unchanged (validation is idempotent).
inline SystemSpec validate_system(const SystemSpec& spec) {
  std::vector<std::string> errors;
  validate_species(spec.bosons, "bosons", errors);
  validate_species(spec.fermions, "fermions", errors);
  detail::check(spec.bosons.statistics == Statistics::Bosonic, "bosons",
                "must be bosonic", errors);
  detail::check(spec.fermions.statistics == Statistics::Fermionic, "fermions",
                "must be fermionic", errors);
  detail::check(spec.interactions.g_bb >= 0.0, "interactions.g_bb",
                "must be >= 0", errors);
  detail::check(spec.interactions.g_fb >= 0.0, "interactions.g_fb",
                "must be >= 0", errors);
  detail::check(spec.trap.omega >= 0.0, "trap.omega", "must be >= 0", errors);
  detail::check(spec.trap.v0 >= 0.0, "trap.v0", "must be >= 0", errors);
  detail::check(spec.trap.k > 0.0, "trap.k", "must be > 0", errors);
  detail::check(spec.grid.n_points >= 2, "grid.n_points", "must be >= 2",
                errors);
  detail::check(spec.grid.x_minus < spec.grid.x_plus, "grid",
                "requires x_minus < x_plus", errors);
  detail::check(spec.schmidt_rank >= 1, "schmidt_rank", "must be >= 1",
                errors);
  if (!errors.empty()) {
    std::string msg = "invalid system spec:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }
  return spec;
}

// Number of complete lattice wells inside the box; wells span between odd
// multiples of pi/(2k), so a box at x_pm = +-19 pi/2 holds 19 wells.
inline int well_count(const SystemSpec& spec) {
  const double span = spec.grid.x_plus - spec.grid.x_minus;
  return static_cast<int>(std::lround(span / spec.trap.period()));
}

inline SystemSpec quench(const SystemSpec& spec, double omega_f) {
  if (omega_f < 0.0)
    throw std::invalid_argument("quench: omega_f must be >= 0");
  SystemSpec out = spec;
  out.trap.omega = omega_f;
  return out;
}

}  // namespace bfmix
