#pragma once

// Molecular dipole response at imaginary frequency.
//
// Internal units are natural units with hbar = c = eps0 = mu0 = 1 and the
// bohr radius as unit of length (see units.hpp). Magnetic transition dipoles
// are stored as real vectors m_tilde with m^{0l} = i * m_tilde, so every
// response tensor below is real.

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vdw {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct Transition {
  double omega = 1.0;
  Vec3 d = Vec3::Zero();
  Vec3 m_tilde = Vec3::Zero();
};

struct Molecule {
  std::string name;
  std::vector<Transition> transitions;
  Mat3 beta_dia = Mat3::Zero();
};

// Throws std::invalid_argument describing the first violated invariant.
void validate(const Molecule& mol);

/// Mirror image: every m_tilde is negated, which flips the sign of the
/// cross polarisabilities and leaves alpha and beta untouched.
Molecule enantiomer(const Molecule& mol);

/// Keeps only the electric dipoles (m_tilde = 0, beta_dia = 0).
Molecule electric_part(const Molecule& mol);
/// Keeps only the paramagnetic response (d = 0, beta_dia = 0).
Molecule paramagnetic_part(const Molecule& mol);
/// Keeps only the static diamagnetisability (no transitions).
Molecule diamagnetic_part(const Molecule& mol);
/// Drops beta_dia, keeps all transitions.
Molecule without_diamagnetism(const Molecule& mol);

double min_transition_frequency(const Molecule& mol);
double max_transition_frequency(const Molecule& mol);

struct ResponseSet {
  double xi = 0.0;
  Mat3 alpha = Mat3::Zero();
  Mat3 beta = Mat3::Zero();
  Mat3 chi_em = Mat3::Zero();
  Mat3 chi_me = Mat3::Zero();
};

/// alpha(i xi), beta(i xi) = beta_P(i xi) + beta_D, chi_em(i xi) and
/// chi_me(i xi) = -chi_em^T from the sum over transitions.
ResponseSet eval_response(const Molecule& mol, double xi);

struct StaticLimits {
  Mat3 alpha0 = Mat3::Zero();
  Mat3 beta0 = Mat3::Zero();
  // chi_em(i k c) = k * chi_prime + O(k^3)
  Mat3 chi_prime = Mat3::Zero();
};

// The coefficient chi_prime uses the omega_l^2 denominator that follows from
// expanding chi_em(i k c) for small k; a single power of omega_l would not be
// dimensionally consistent.
StaticLimits static_limits(const Molecule& mol);

enum class Duality { e, m };

/// Duality-space polarisability: alpha, chi_em / c, chi_me / c, beta / c^2.
Mat3 dual_polarisability(const ResponseSet& rs, Duality lam, Duality lamp);

struct DualityAngle {
  double theta = 0.0;
};

/// Rotates the 2x2 block matrix of dual polarisabilities, A' = D A D^T with
/// D = [[cos, sin], [-sin, cos]]. The result need not satisfy Lloyd's
/// relation; see lloyd_violation().
ResponseSet duality_rotate(const ResponseSet& rs, DualityAngle theta);

/// max |chi_me + chi_em^T| relative to the largest response entry. Zero for
/// physical (reciprocal) molecules, nonzero for charge-parity violating sets
/// produced by duality rotations.
double lloyd_violation(const ResponseSet& rs);

/// A molecule together with an optional duality rotation of its response.
/// Everything that consumes responses over a frequency grid takes this type.
class MoleculeResponse {
 public:
  MoleculeResponse(const Molecule& mol, DualityAngle theta = {});

  ResponseSet at(double xi) const;
  const Molecule& molecule() const { return mol_; }
  DualityAngle angle() const { return theta_; }

 private:
  Molecule mol_;
  DualityAngle theta_;
};

}  // namespace vdw
