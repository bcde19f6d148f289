#pragma once

// Conversion of molecular data into natural units: hbar = c = eps0 = mu0 = 1
// with the bohr radius as unit of length. Energies then come out in units of
// hbar c / a0 and frequencies in units of c / a0.

#include <string>
#include <string_view>

namespace vdw {

enum class UnitSystem { SI, au, natural };

UnitSystem parse_unit_system(std::string_view text);
std::string to_string(UnitSystem u);

namespace si {
// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double c = 299792458.0;                 // m / s
inline constexpr double eps0 = 8.8541878128e-12;         // F / m
inline constexpr double e = 1.602176634e-19;             // C
inline constexpr double m_e = 9.1093837015e-31;          // kg
}  // namespace si

/// Bohr radius 4 pi eps0 hbar^2 / (m_e e^2) in metres.
double bohr_radius_si();

// Multiply a value given in unit system `u` by these factors to obtain
// natural units. Quantities: angular frequency (SI: rad/s, au: hartree / hbar),
// length (SI: m, au: bohr), electric dipole (SI: C m, au: e a0), magnetic
// dipole (SI: J/T, au: e hbar / m_e), magnetisability (SI: J/T^2,
// au: e^2 a0^2 / m_e).
double frequency_factor(UnitSystem u);
double length_factor(UnitSystem u);
double electric_dipole_factor(UnitSystem u);
double magnetic_dipole_factor(UnitSystem u);
double magnetisability_factor(UnitSystem u);

}  // namespace vdw
