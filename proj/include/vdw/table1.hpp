#pragma once

// Distance power laws of the ten dispersion components between the
// electric (E), paramagnetic (P), diamagnetic (D) and chiral (C) responses of
// a molecule pair, fitted in the retarded and non-retarded windows.

#include <string>
#include <vector>

#include "vdw/asymptotics.hpp"

namespace vdw {

struct PowerLawRow {
  std::string name;  // EE, EP, ..., CC
  double expected_retarded = 0.0;
  double expected_nonretarded = 0.0;
  /// +1 / -1 for fixed-sign rows, 0 for chiral rows (sign set by handedness)
  int expected_sign = 0;
  PowerLawFit retarded;
  PowerLawFit nonretarded;
  bool retarded_ok = false;
  bool nonretarded_ok = false;
  bool sign_ok = false;
  std::string error;  // set if a fit could not be made

  bool passed() const { return error.empty() && retarded_ok && nonretarded_ok && sign_ok; }
};

struct PowerLawTableOptions {
  Vec3 orientation = Vec3(1.0, 2.0, 3.0);
  bool chiral_only = false;
  int points_per_window = 9;
  double exponent_tolerance = 0.05;
  int jobs = 1;
  QuadSpec spec;
};

/// Rows in the order EE, EP, ED, EC, PP, PD, PC, DD, DC, CC. Molecule a
/// supplies the first response of each row and molecule b the second; the
/// E/P/D roles use electric_part, paramagnetic_part and diamagnetic_part,
/// the C role the full molecule.
std::vector<PowerLawRow> power_law_table(const Molecule& a, const Molecule& b,
                                         const PowerLawTableOptions& options);

std::string format_power_law_table(const std::vector<PowerLawRow>& rows);

/// Directory holding the bundled reference molecules.
std::string data_directory();

}  // namespace vdw
