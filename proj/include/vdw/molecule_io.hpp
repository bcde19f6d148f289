#pragma once

// JSON molecule files.
//
//   {
//     "name": "A",
//     "units": "SI" | "au" | "natural",
//     "transitions": [ {"omega": w, "d": [x, y, z], "m_imag": [x, y, z]}, ... ],
//     "beta_dia": [[...], [...], [...]]        (optional, default zero)
//   }
//
// m_imag holds the real vector m_tilde of a magnetic transition dipole
// m = i * m_tilde. Values are converted to natural units on load; files are
// written in natural units.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vdw/response.hpp"
#include "vdw/units.hpp"

namespace vdw {

/// Malformed or schema-violating molecule file; the message names the source
/// and the offending field or parse position.
class MoleculeFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedMolecule {
  Molecule molecule;  // natural units
  UnitSystem units = UnitSystem::natural;
};

LoadedMolecule parse_molecule(std::string_view text, const std::string& source = "<input>");
LoadedMolecule load_molecule(const std::filesystem::path& path);

/// Natural-unit JSON; parse_molecule(serialize_molecule(m)) reproduces m
/// bit for bit.
std::string serialize_molecule(const Molecule& mol);
void save_molecule(const Molecule& mol, const std::filesystem::path& path);

}  // namespace vdw
