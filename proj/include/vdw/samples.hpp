#pragma once

// Pseudo-random test molecules and configurations.

#include "vdw/random.hpp"
#include "vdw/response.hpp"

namespace vdw {

/// `n` transitions with frequencies in [0.5, 2], dipoles in [-1, 1]^3, and an
/// optional random negative semi-definite beta_dia.
inline Molecule random_molecule(Rng& rng, int n, bool diamagnetic) {
  Molecule m;
  m.name = "random";
  for (int i = 0; i < n; ++i) {
    Transition t;
    t.omega = rng.uniform(0.5, 2.0);
    t.d = rng.vector(-1.0, 1.0);
    t.m_tilde = rng.vector(-1.0, 1.0);
    m.transitions.push_back(t);
  }
  if (diamagnetic) {
    Mat3 a;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = rng.uniform(-0.5, 0.5);
    m.beta_dia = -(a * a.transpose());
  }
  return m;
}

/// Three transitions along x, y, z with equal weights, so that alpha, beta
/// and chi_em are all multiples of the identity.
inline Molecule isotropic_molecule(double omega, double d, double m_tilde,
                                   double beta_dia = 0.0) {
  Molecule m;
  m.name = "isotropic";
  for (int i = 0; i < 3; ++i) {
    Transition t;
    t.omega = omega;
    t.d = Vec3::Unit(i) * d;
    t.m_tilde = Vec3::Unit(i) * m_tilde;
    m.transitions.push_back(t);
  }
  m.beta_dia = Mat3::Identity() * beta_dia;
  return m;
}

}  // namespace vdw
