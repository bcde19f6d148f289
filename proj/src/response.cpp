#include "vdw/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace vdw {

namespace {

bool finite(const Vec3& v) { return v.allFinite(); }

}  // namespace

void validate(const Molecule& mol) {
  for (std::size_t i = 0; i < mol.transitions.size(); ++i) {
    const auto& t = mol.transitions[i];
    const std::string where = "transition " + std::to_string(i);
    if (!(t.omega > 0.0) || !std::isfinite(t.omega))
      throw std::invalid_argument(where + ": omega must be finite and > 0");
    if (!finite(t.d)) throw std::invalid_argument(where + ": d not finite");
    if (!finite(t.m_tilde))
      throw std::invalid_argument(where + ": m_imag not finite");
  }
  const Mat3& b = mol.beta_dia;
  if (!b.allFinite()) throw std::invalid_argument("beta_dia not finite");
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if ((b - b.transpose()).cwiseAbs().maxCoeff() >
      16 * std::numeric_limits<double>::epsilon() * scale)
    throw std::invalid_argument("beta_dia must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat3> es(b, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument(
        "beta_dia must be negative semi-definite (diamagnetic)");
}

Molecule enantiomer(const Molecule& mol) {
  Molecule out = mol;
  for (auto& t : out.transitions) t.m_tilde = -t.m_tilde;
  return out;
}

Molecule electric_part(const Molecule& mol) {
  Molecule out = mol;
  for (auto& t : out.transitions) t.m_tilde.setZero();
  out.beta_dia.setZero();
  return out;
}

Molecule paramagnetic_part(const Molecule& mol) {
  Molecule out = mol;
  for (auto& t : out.transitions) t.d.setZero();
  out.beta_dia.setZero();
  return out;
}

Molecule diamagnetic_part(const Molecule& mol) {
  Molecule out = mol;
  out.transitions.clear();
  return out;
}

Molecule without_diamagnetism(const Molecule& mol) {
  Molecule out = mol;
  out.beta_dia.setZero();
  return out;
}

double min_transition_frequency(const Molecule& mol) {
  if (mol.transitions.empty())
    throw std::invalid_argument("molecule has no transitions");
  double w = mol.transitions.front().omega;
  for (const auto& t : mol.transitions) w = std::min(w, t.omega);
  return w;
}

double max_transition_frequency(const Molecule& mol) {
  if (mol.transitions.empty())
    throw std::invalid_argument("molecule has no transitions");
  double w = 0.0;
  for (const auto& t : mol.transitions) w = std::max(w, t.omega);
  return w;
}

ResponseSet eval_response(const Molecule& mol, double xi) {
  if (!(xi >= 0.0)) throw std::invalid_argument("eval_response: xi must be >= 0");
  ResponseSet rs;
  rs.xi = xi;
  rs.beta = mol.beta_dia;
  if (std::isinf(xi)) {
    rs.chi_me = -rs.chi_em.transpose();
    return rs;
  }
  for (const auto& t : mol.transitions) {
    const double denom = t.omega * t.omega + xi * xi;
    const double w = 2.0 * t.omega / denom;
    rs.alpha.noalias() += w * t.d * t.d.transpose();
    rs.beta.noalias() += w * t.m_tilde * t.m_tilde.transpose();
    rs.chi_em.noalias() += (2.0 * xi / denom) * t.d * t.m_tilde.transpose();
  }
  rs.chi_me = -rs.chi_em.transpose();
  return rs;
}

StaticLimits static_limits(const Molecule& mol) {
  StaticLimits s;
  s.beta0 = mol.beta_dia;
  for (const auto& t : mol.transitions) {
    if (!(t.omega > 0.0))
      throw std::invalid_argument("static_limits: transition frequency must be > 0");
    s.alpha0.noalias() += (2.0 / t.omega) * t.d * t.d.transpose();
    s.beta0.noalias() += (2.0 / t.omega) * t.m_tilde * t.m_tilde.transpose();
    s.chi_prime.noalias() +=
        (2.0 / (t.omega * t.omega)) * t.d * t.m_tilde.transpose();
  }
  return s;
}

Mat3 dual_polarisability(const ResponseSet& rs, Duality lam, Duality lamp) {
  if (lam == Duality::e) return lamp == Duality::e ? rs.alpha : rs.chi_em;
  return lamp == Duality::e ? rs.chi_me : rs.beta;
}

ResponseSet duality_rotate(const ResponseSet& rs, DualityAngle theta) {
  const double c = std::cos(theta.theta);
  const double s = std::sin(theta.theta);
  // D = [[c, s], [-s, c]];  A'_{ij} = sum_{kl} D_ik A_kl D_jl
  const double D[2][2] = {{c, s}, {-s, c}};
  const Mat3* A[2][2] = {{&rs.alpha, &rs.chi_em}, {&rs.chi_me, &rs.beta}};
  Mat3 out[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out[i][j].setZero();
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out[i][j] += D[i][k] * D[j][l] * *A[k][l];
    }
  ResponseSet r;
  r.xi = rs.xi;
  r.alpha = out[0][0];
  r.chi_em = out[0][1];
  r.chi_me = out[1][0];
  r.beta = out[1][1];
  return r;
}

double lloyd_violation(const ResponseSet& rs) {
  const double scale = std::max({rs.alpha.cwiseAbs().maxCoeff(),
                                 rs.beta.cwiseAbs().maxCoeff(),
                                 rs.chi_em.cwiseAbs().maxCoeff(),
                                 rs.chi_me.cwiseAbs().maxCoeff()});
  if (scale == 0.0) return 0.0;
  return (rs.chi_me + rs.chi_em.transpose()).cwiseAbs().maxCoeff() / scale;
}

MoleculeResponse::MoleculeResponse(const Molecule& mol, DualityAngle theta)
    : mol_(mol), theta_(theta) {}

ResponseSet MoleculeResponse::at(double xi) const {
  ResponseSet rs = eval_response(mol_, xi);
  if (theta_.theta == 0.0) return rs;
  return duality_rotate(rs, theta_);
}

}  // namespace vdw
