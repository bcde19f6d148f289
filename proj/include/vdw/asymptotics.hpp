#pragma once

// Closed-form large- and small-separation limits of the free-space
// potentials, and log-log power-law fitting of computed curves.

#include <utility>

#include "vdw/green.hpp"
#include "vdw/potentials.hpp"

namespace vdw {

/// Large-separation limit, static responses only. Supported: EE, MM (anisotropic
/// Casimir-Polder form), EC, MC, PC, DC, CC. Other labels throw
/// std::invalid_argument.
double u_retarded(const Molecule& a, const Molecule& b, const Separation& sep,
                  Component label);

/// Small-separation limit as a sum over transition pairs. Supported: EC, PC,
/// DC, CC. For DC, molecule a supplies beta_dia and molecule b the chiral
/// transitions.
double u_nonretarded(const Molecule& a, const Molecule& b, const Separation& sep,
                     Component label);

struct PowerLawFit {
  double exponent = 0.0;
  double coefficient_log = 0.0;
  /// max |log|U| - fit| over the window
  double residual = 0.0;
  /// common sign of U in the window, +1 or -1
  int sign = 0;
  std::pair<double, double> window{0.0, 0.0};
  int points = 0;
};

/// Least-squares fit of log|U| = coefficient_log + exponent * log R over the
/// curve points with R in [r_min, r_max]. Throws std::invalid_argument with
/// fewer than five points, and std::domain_error on zeros or a sign change.
PowerLawFit fit_power_law(const PotentialCurve& curve, std::pair<double, double> window);

/// Separation windows where the retarded (R omega_min in [50, 500]) and
/// non-retarded (R omega_max in [1e-4, 1e-3]) laws hold for a pair.
std::pair<double, double> retarded_window(const Molecule& a, const Molecule& b);
std::pair<double, double> nonretarded_window(const Molecule& a, const Molecule& b);

}  // namespace vdw
