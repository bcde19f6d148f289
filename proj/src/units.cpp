#include "vdw/units.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vdw {

namespace {

// SI value of one atomic unit of each quantity
struct AtomicUnits {
  double frequency;        // E_h / hbar
  double length;           // a0
  double electric_dipole;  // e a0
  double magnetic_dipole;  // e hbar / m_e
  double magnetisability;  // e^2 a0^2 / m_e
};

AtomicUnits atomic_units() {
  const double a0 = bohr_radius_si();
  const double hartree = si::hbar * si::hbar / (si::m_e * a0 * a0);
  return {hartree / si::hbar, a0, si::e * a0, si::e * si::hbar / si::m_e,
          si::e * si::e * a0 * a0 / si::m_e};
}

// Natural-unit value of one SI unit.
struct SiFactors {
  double frequency;
  double length;
  double electric_dipole;
  double magnetic_dipole;
  double magnetisability;
};

SiFactors si_factors() {
  const double a0 = bohr_radius_si();
  const double q = std::sqrt(si::eps0 * si::hbar * si::c);
  const double mu0 = 1.0 / (si::eps0 * si::c * si::c);
  return {a0 / si::c, 1.0 / a0, 1.0 / (q * a0), 1.0 / (si::c * q * a0),
          mu0 / (a0 * a0 * a0)};
}

}  // namespace

UnitSystem parse_unit_system(std::string_view text) {
  if (text == "SI") return UnitSystem::SI;
  if (text == "au") return UnitSystem::au;
  if (text == "natural") return UnitSystem::natural;
  throw std::invalid_argument("units must be one of SI, au, natural (got '" +
                              std::string(text) + "')");
}

std::string to_string(UnitSystem u) {
  switch (u) {
    case UnitSystem::SI: return "SI";
    case UnitSystem::au: return "au";
    case UnitSystem::natural: return "natural";
  }
  return "?";
}

double bohr_radius_si() {
  return 4.0 * std::numbers::pi * si::eps0 * si::hbar * si::hbar /
         (si::m_e * si::e * si::e);
}

double frequency_factor(UnitSystem u) {
  if (u == UnitSystem::natural) return 1.0;
  const double f = si_factors().frequency;
  return u == UnitSystem::SI ? f : f * atomic_units().frequency;
}

double length_factor(UnitSystem u) {
  // the natural length unit is the bohr radius
  if (u != UnitSystem::SI) return 1.0;
  const double f = si_factors().length;
  return u == UnitSystem::SI ? f : f * atomic_units().length;
}

double electric_dipole_factor(UnitSystem u) {
  if (u == UnitSystem::natural) return 1.0;
  const double f = si_factors().electric_dipole;
  return u == UnitSystem::SI ? f : f * atomic_units().electric_dipole;
}

double magnetic_dipole_factor(UnitSystem u) {
  if (u == UnitSystem::natural) return 1.0;
  const double f = si_factors().magnetic_dipole;
  return u == UnitSystem::SI ? f : f * atomic_units().magnetic_dipole;
}

double magnetisability_factor(UnitSystem u) {
  if (u == UnitSystem::natural) return 1.0;
  const double f = si_factors().magnetisability;
  return u == UnitSystem::SI ? f : f * atomic_units().magnetisability;
}

}  // namespace vdw
