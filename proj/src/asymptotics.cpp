#include "vdw/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace vdw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi3 = kPi * kPi * kPi;

Mat3 levi_n(const Vec3& n) { return -cross_matrix(n); }

Mat3 nn(const Vec3& n) { return n * n.transpose(); }

// sum_ip eps_ipq n_q (A T X)_ip
double chiral_contract(const Vec3& n, const Mat3& A, const Mat3& T, const Mat3& X) {
  return levi_n(n).cwiseProduct(A * T * X).sum();
}

double casimir_polder(const Mat3& A, const Mat3& B, const Vec3& n, double R) {
  const double t1 = (A * B).trace();
  const double t2 = n.dot(A * B * n);
  const double t3 = n.dot(A * n) * n.dot(B * n);
  return -(13.0 * t1 - 56.0 * t2 + 63.0 * t3) / (128.0 * kPi3 * std::pow(R, 7));
}

double cc_retarded(const Mat3& ca, const Mat3& cb, const Vec3& n, double R) {
  const Mat3 eps = levi_n(n);
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
          const double w = ca(i, j) * cb(p, q);
          if (w == 0.0) continue;
          const double t = 101.0 * (i == p) * (j == q) -
                           171.0 * (j == q) * n[i] * n[p] -
                           171.0 * (i == p) * n[j] * n[q] +
                           297.0 * n[i] * n[j] * n[p] * n[q] +
                           81.0 * eps(j, p) * eps(q, i);
          s += w * t;
        }
  return s / (128.0 * kPi3 * std::pow(R, 9));
}

double min_frequency(const Molecule& a, const Molecule& b) {
  double w = INFINITY;
  for (const Molecule* m : {&a, &b})
    for (const auto& t : m->transitions) w = std::min(w, t.omega);
  if (std::isinf(w)) throw std::invalid_argument("pair has no transitions");
  return w;
}

double max_frequency(const Molecule& a, const Molecule& b) {
  double w = 0.0;
  for (const Molecule* m : {&a, &b})
    for (const auto& t : m->transitions) w = std::max(w, t.omega);
  if (w == 0.0) throw std::invalid_argument("pair has no transitions");
  return w;
}

}  // namespace

double u_retarded(const Molecule& a, const Molecule& b, const Separation& sep,
                  Component label) {
  const Vec3 n = sep.unit();
  const double R = sep.distance();
  const StaticLimits sa = static_limits(a);
  const StaticLimits sb = static_limits(b);
  const Mat3 T = 5.0 * Mat3::Identity() - 9.0 * nn(n);
  const double ec_pref = 7.0 / (128.0 * kPi3 * std::pow(R, 8));
  switch (label) {
    case Component::EE:
      return casimir_polder(sa.alpha0, sb.alpha0, n, R);
    case Component::MM:
      return casimir_polder(sa.beta0, sb.beta0, n, R);
    case Component::EC:
      return ec_pref * chiral_contract(n, sa.alpha0, T, sb.chi_prime);
    case Component::MC:
      return ec_pref * chiral_contract(n, sa.beta0, T, sb.chi_prime.transpose());
    case Component::PC:
      return ec_pref * chiral_contract(n, sa.beta0 - a.beta_dia, T,
                                       sb.chi_prime.transpose());
    case Component::DC:
      return ec_pref * chiral_contract(n, a.beta_dia, T, sb.chi_prime.transpose());
    case Component::CC:
      return cc_retarded(sa.chi_prime, sb.chi_prime, n, R);
    default:
      throw std::invalid_argument("no retarded closed form for " + to_string(label));
  }
}

double u_nonretarded(const Molecule& a, const Molecule& b, const Separation& sep,
                     Component label) {
  const Vec3 n = sep.unit();
  const double R = sep.distance();
  const Mat3 P = Mat3::Identity() - 3.0 * nn(n);
  double s = 0.0;
  switch (label) {
    case Component::EC:
    case Component::PC: {
      for (const auto& tm : a.transitions)
        for (const auto& tl : b.transitions) {
          const Mat3 X = label == Component::EC ? Mat3(tm.d * tm.d.transpose())
                                                : Mat3(tm.m_tilde * tm.m_tilde.transpose());
          Mat3 Y = tl.d * tl.m_tilde.transpose();
          if (label == Component::PC) Y.transposeInPlace();
          s += tm.omega / (tm.omega + tl.omega) * chiral_contract(n, X, P, Y);
        }
      return s / (8.0 * kPi * kPi * std::pow(R, 5));
    }
    case Component::DC: {
      Mat3 Y = Mat3::Zero();
      for (const auto& tl : b.transitions) Y += tl.d * tl.m_tilde.transpose();
      const Mat3 T = 3.0 * Mat3::Identity() - 7.0 * nn(n);
      return 5.0 * chiral_contract(n, a.beta_dia, T, Y.transpose()) /
             (64.0 * kPi3 * std::pow(R, 6));
    }
    case Component::CC: {
      for (const auto& tm : a.transitions)
        for (const auto& tl : b.transitions) {
          const Mat3 XA = tm.d * tm.m_tilde.transpose();
          const Mat3 XB = tl.d * tl.m_tilde.transpose();
          // sum XA_ij XB_pq P_ip P_jq = tr(XA^T P XB P)
          s += (XA.transpose() * P * XB * P).trace() / (tm.omega + tl.omega);
        }
      return s / (8.0 * kPi * kPi * std::pow(R, 6));
    }
    default:
      throw std::invalid_argument("no non-retarded closed form for " + to_string(label));
  }
}

PowerLawFit fit_power_law(const PotentialCurve& curve, std::pair<double, double> window) {
  if (curve.r_values.size() != curve.u_values.size())
    throw std::invalid_argument("curve has mismatched columns");
  std::vector<double> lx, ly;
  int sign = 0;
  // window edges tolerate grid roundoff
  const double lo = window.first * (1.0 - 1e-12), hi = window.second * (1.0 + 1e-12);
  for (std::size_t i = 0; i < curve.r_values.size(); ++i) {
    const double r = curve.r_values[i];
    if (r < lo || r > hi) continue;
    const double u = curve.u_values[i];
    if (u == 0.0 || !std::isfinite(u))
      throw std::domain_error("U vanishes or is not finite at R = " + std::to_string(r));
    const int s = u > 0.0 ? 1 : -1;
    if (sign != 0 && s != sign)
      throw std::domain_error("U changes sign inside the fit window");
    sign = s;
    lx.push_back(std::log(r));
    ly.push_back(std::log(std::abs(u)));
  }
  if (lx.size() < 5) throw std::invalid_argument("fit window holds fewer than 5 points");
  const double m = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.coefficient_log = my - fit.exponent * mx;
  for (std::size_t i = 0; i < lx.size(); ++i)
    fit.residual = std::max(
        fit.residual, std::abs(ly[i] - fit.coefficient_log - fit.exponent * lx[i]));
  fit.sign = sign;
  fit.window = window;
  fit.points = static_cast<int>(lx.size());
  return fit;
}

std::pair<double, double> retarded_window(const Molecule& a, const Molecule& b) {
  const double w = min_frequency(a, b);
  return {50.0 / w, 500.0 / w};
}

std::pair<double, double> nonretarded_window(const Molecule& a, const Molecule& b) {
  const double w = max_frequency(a, b);
  return {1e-4 / w, 1e-3 / w};
}

}  // namespace vdw
