#include "vdw/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vdw/random.hpp"

namespace vdw {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_distance(double R) {
  if (!(R > 0.0) || !std::isfinite(R))
    throw std::invalid_argument("separation must be finite and nonzero");
}

void require_frequency(double xi) {
  if (!(xi >= 0.0)) throw std::invalid_argument("xi must be >= 0");
}

// k^2 G for R = r - r'.
Mat3 scaled_free(const Vec3& R_vec, double xi) {
  const double R = R_vec.norm();
  require_positive_distance(R);
  require_frequency(xi);
  const Vec3 n = R_vec / R;
  const double x = xi * R;
  const double f = 1.0 + x + x * x;
  const double g = 3.0 + 3.0 * x + x * x;
  const double pref = std::exp(-x) / (4.0 * kPi * R * R * R);
  return pref * (f * Mat3::Identity() - g * n * n.transpose());
}

// curl_r G(r, r') = e^{-kR} (1 + kR) / (4 pi R^3) [r' - r]_x
Mat3 curl_free(const Vec3& r, const Vec3& rp, double xi) {
  const Vec3 v = rp - r;
  const double R = v.norm();
  require_positive_distance(R);
  require_frequency(xi);
  const double x = xi * R;
  return (std::exp(-x) * (1.0 + x) / (4.0 * kPi * R * R * R)) * cross_matrix(v);
}

}  // namespace

Separation::Separation(const Vec3& r_a, const Vec3& r_b) : r_a_(r_a), r_b_(r_b) {
  const Vec3 d = r_a - r_b;
  distance_ = d.norm();
  require_positive_distance(distance_);
  unit_ = d / distance_;
}

Separation Separation::along(const Vec3& direction, double distance) {
  const double n = direction.norm();
  if (!(n > 0.0)) throw std::invalid_argument("orientation must be nonzero");
  return Separation(direction * (distance / n), Vec3::Zero());
}

Mat3 cross_matrix(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Mat3 g0(const Separation& sep, double xi) {
  if (!(xi > 0.0)) throw std::invalid_argument("g0: xi must be > 0 (use g0_scaled)");
  return scaled_free(sep.r_a() - sep.r_b(), xi) / (xi * xi);
}

Mat3 g0_scaled(const Separation& sep, double xi) {
  return scaled_free(sep.r_a() - sep.r_b(), xi);
}

Mat3 g0_curl_left(const Separation& sep, double xi) {
  return curl_free(sep.r_b(), sep.r_a(), xi);
}

Mat3 g0_curl_both(const Separation& sep, double xi) {
  return scaled_free(sep.r_a() - sep.r_b(), xi);
}

Mat3 GreenProvider::block(Duality lam, Duality lamp, const Vec3& r,
                          const Vec3& rp, double xi) const {
  if (lam == Duality::e) {
    if (lamp == Duality::e) return scaled_green(r, rp, xi);
    return -xi * curl_right(r, rp, xi);
  }
  if (lamp == Duality::e) return -xi * curl_left(r, rp, xi);
  return curl_both(r, rp, xi);
}

Mat3 FreeSpaceGreen::scaled_green(const Vec3& r, const Vec3& rp, double xi) const {
  return scaled_free(r - rp, xi);
}

Mat3 FreeSpaceGreen::curl_left(const Vec3& r, const Vec3& rp, double xi) const {
  return curl_free(r, rp, xi);
}

Mat3 FreeSpaceGreen::curl_right(const Vec3& r, const Vec3& rp, double xi) const {
  // G x <-curl' = -curl x G in free space
  return -curl_free(r, rp, xi);
}

Mat3 FreeSpaceGreen::curl_both(const Vec3& r, const Vec3& rp, double xi) const {
  return scaled_free(r - rp, xi);
}

std::shared_ptr<const GreenProvider> free_space_provider() {
  static const auto provider = std::make_shared<const FreeSpaceGreen>();
  return provider;
}

namespace {

constexpr int kLevi[3][3][3] = {
    {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
    {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
    {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};

// d/dr_k (first = true) or d/dr'_k of scaled_green, central differences with
// one Richardson step.
Mat3 partial(const GreenProvider& p, const Vec3& r, const Vec3& rp, double xi,
             int k, bool first, double h) {
  auto central = [&](double step) {
    Vec3 e = Vec3::Zero();
    e[k] = step;
    if (first)
      return Mat3((p.scaled_green(r + e, rp, xi) - p.scaled_green(r - e, rp, xi)) /
                  (2.0 * step));
    return Mat3((p.scaled_green(r, rp + e, xi) - p.scaled_green(r, rp - e, xi)) /
                (2.0 * step));
  };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

Mat3 mixed_partial(const GreenProvider& p, const Vec3& r, const Vec3& rp,
                   double xi, int k, int n, double h) {
  auto central = [&](double step) {
    Vec3 ek = Vec3::Zero();
    Vec3 en = Vec3::Zero();
    ek[k] = step;
    en[n] = step;
    return Mat3((p.scaled_green(r + ek, rp + en, xi) -
                 p.scaled_green(r + ek, rp - en, xi) -
                 p.scaled_green(r - ek, rp + en, xi) +
                 p.scaled_green(r - ek, rp - en, xi)) /
                (4.0 * step * step));
  };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

void require_fd_frequency(double xi) {
  if (!(xi > 0.0))
    throw std::invalid_argument("finite-difference curls need xi > 0");
}

}  // namespace

Mat3 fd_curl_left(const GreenProvider& p, const Vec3& r, const Vec3& rp, double xi) {
  require_fd_frequency(xi);
  const double h = 1e-5 * (r - rp).norm();
  Mat3 d[3];
  for (int k = 0; k < 3; ++k) d[k] = partial(p, r, rp, xi, k, true, h);
  Mat3 out = Mat3::Zero();
  // (curl x T)_ij = eps_ikl d_k T_lj
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          if (kLevi[i][k][l] != 0) out(i, j) += kLevi[i][k][l] * d[k](l, j);
  return out / (xi * xi);
}

Mat3 fd_curl_right(const GreenProvider& p, const Vec3& r, const Vec3& rp, double xi) {
  require_fd_frequency(xi);
  const double h = 1e-5 * (r - rp).norm();
  Mat3 d[3];
  for (int l = 0; l < 3; ++l) d[l] = partial(p, r, rp, xi, l, false, h);
  Mat3 out = Mat3::Zero();
  // (T x <-curl)_ij = eps_jkl T_ik d_l
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          if (kLevi[j][k][l] != 0) out(i, j) += kLevi[j][k][l] * d[l](i, k);
  return out / (xi * xi);
}

Mat3 fd_curl_both(const GreenProvider& p, const Vec3& r, const Vec3& rp, double xi) {
  require_fd_frequency(xi);
  // the mixed second derivative loses accuracy at 1e-5 R, so it uses a
  // coarser step
  const double h = 1e-3 * (r - rp).norm();
  Mat3 d[3][3];
  for (int k = 0; k < 3; ++k)
    for (int n = 0; n < 3; ++n) d[k][n] = mixed_partial(p, r, rp, xi, k, n, h);
  Mat3 out = Mat3::Zero();
  // eps_ikl eps_jmn d_k d'_n T_lm
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          if (kLevi[i][k][l] == 0) continue;
          for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n)
              if (kLevi[j][m][n] != 0)
                out(i, j) += kLevi[i][k][l] * kLevi[j][m][n] * d[k][n](l, m);
        }
  return out / (xi * xi);
}

namespace {

double rel_dev(const Mat3& a, const Mat3& b) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

ProviderCheck check_provider(const GreenProvider& p, int samples,
                             unsigned long long seed) {
  Rng rng(seed);
  ProviderCheck c;
  for (int s = 0; s < samples; ++s) {
    const Vec3 r = rng.vector(-2.0, 2.0);
    const Vec3 rp = r + rng.unit_vector() * rng.uniform(0.5, 3.0);
    const double xi = rng.log_uniform(0.05, 3.0);
    c.curl_left = std::max(c.curl_left,
                           rel_dev(p.curl_left(r, rp, xi), fd_curl_left(p, r, rp, xi)));
    c.curl_right = std::max(
        c.curl_right, rel_dev(p.curl_right(r, rp, xi), fd_curl_right(p, r, rp, xi)));
    c.curl_both = std::max(c.curl_both,
                           rel_dev(p.curl_both(r, rp, xi), fd_curl_both(p, r, rp, xi)));
    c.reciprocity = std::max(
        c.reciprocity,
        rel_dev(p.scaled_green(r, rp, xi), p.scaled_green(rp, r, xi).transpose()));
  }
  return c;
}

}  // namespace vdw
