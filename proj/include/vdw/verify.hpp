#pragma once

// Numerical checks of the identities behind the potential formulas: energy
// denominator combinations, contour reductions for the scalar free-space
// Green function, and agreement between independent potential code paths.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vdw {

struct IdentityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  /// |lhs - rhs| / max(|lhs|, |rhs|, floor)
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Builds a check and fills residual and passed.
IdentityCheck make_check(std::string name, double lhs, double rhs, double tolerance,
                         double floor = 0.0);

enum class DenominatorKind { EC, PC, CC_plus, CC_minus };

/// Sum of the twelve diagram denominators in the combination used for the
/// given kind, against its compact closed form. Requires omega1 != omega2
/// unless `near_diagonal` is set, in which case omega2 = omega1 is replaced by
/// omega1 * (1 + 1e-6) and the residual trend is what is being tested.
IdentityCheck check_denominators(DenominatorKind kind, double omega1, double omega2,
                                 double omega_a, double omega_b,
                                 bool near_diagonal = false);

/// PV int_0^inf dw' w'^n Im g(w') [1/(w' + w) + (-1)^n / (w' - w)] against
/// (-w)^n cos(w R) / (4 R), for g(w) = e^{i w R} / (4 pi R) and n in 0..3.
/// The integral runs to L = 50 w + 200 / R; the remainder is summed
/// analytically in the Abel sense.
IdentityCheck check_contour_gn(int n, double omega, double R);

/// int_0^inf dw w Im g(w) / (w^2 + xi^2) against e^{-xi R} / (8 R).
IdentityCheck check_contour_j2(double xi, double R);

enum class SuiteGroup { denominators, contour, crosspath };

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<IdentityCheck> checks;

  int failures() const;
  /// One line per check: name lhs rhs residual pass|FAIL.
  std::string format() const;
};

/// Runs every check (or one group) at configurations drawn from `seed`.
VerificationReport run_suite(std::uint64_t seed,
                             std::optional<SuiteGroup> only = std::nullopt);

/// Shortest round-trip decimal form of a double, locale independent.
std::string format_double(double v);

}  // namespace vdw
