#pragma once

// Green tensors at imaginary frequency omega = i xi.
//
// A provider supplies the regular building blocks of the dyadic Green tensor
// G(r, r', i xi); the duality-space blocks used by the potentials are
// assembled from them by GreenProvider::block(). Every quantity is real and
// finite for xi >= 0 and r != r'.

#include <memory>

#include "vdw/response.hpp"

namespace vdw {

/// Pair of positions with R = r_a - r_b.
class Separation {
 public:
  Separation(const Vec3& r_a, const Vec3& r_b);

  /// r_b at the origin, r_a = distance * direction (direction is normalised).
  static Separation along(const Vec3& direction, double distance);

  const Vec3& r_a() const { return r_a_; }
  const Vec3& r_b() const { return r_b_; }
  double distance() const { return distance_; }
  /// (r_a - r_b) / R
  const Vec3& unit() const { return unit_; }
  Separation swapped() const { return Separation(r_b_, r_a_); }

 private:
  Vec3 r_a_;
  Vec3 r_b_;
  double distance_;
  Vec3 unit_;
};

/// Cross-product matrix: cross_matrix(v) * w == v.cross(w).
Mat3 cross_matrix(const Vec3& v);

/// Free-space G(r_a, r_b, i xi). Rejects xi <= 0 because of the 1/k^2 pole.
Mat3 g0(const Separation& sep, double xi);

/// k^2 G(r_a, r_b, i xi), finite down to xi = 0.
Mat3 g0_scaled(const Separation& sep, double xi);

/// curl_b G(r_b, r_a, i xi) = e^{-kR} (1 + kR) / (4 pi R^3) [r_a - r_b]_x.
Mat3 g0_curl_left(const Separation& sep, double xi);

/// curl_a G(r_a, r_b, i xi) x curl_b (from the left) = k^2 G(r_a, r_b, i xi).
Mat3 g0_curl_both(const Separation& sep, double xi);

/// Regular building blocks of a Green tensor at imaginary frequency. Block
/// assembly, finite-difference checks and all potentials go through this
/// interface. Implementations must be immutable and thread-safe.
class GreenProvider {
 public:
  virtual ~GreenProvider() = default;

  /// k^2 G(r, r', i xi)
  virtual Mat3 scaled_green(const Vec3& r, const Vec3& rp, double xi) const = 0;
  /// curl_r G(r, r', i xi)
  virtual Mat3 curl_left(const Vec3& r, const Vec3& rp, double xi) const = 0;
  /// G(r, r', i xi) x <-curl_{r'}
  virtual Mat3 curl_right(const Vec3& r, const Vec3& rp, double xi) const = 0;
  /// curl_r G(r, r', i xi) x <-curl_{r'}
  virtual Mat3 curl_both(const Vec3& r, const Vec3& rp, double xi) const = 0;

  /// Duality-space block G_{lam lamp}(r, r', i xi), in natural units:
  ///   ee =  k^2 G            em = -k G x <-curl'
  ///   me = -k curl x G       mm =  curl x G x <-curl'
  /// This is the negative of the block definition with explicit (i omega / c)
  /// factors evaluated at omega = i xi; potentials are bilinear in the
  /// blocks, so the overall sign drops out.
  Mat3 block(Duality lam, Duality lamp, const Vec3& r, const Vec3& rp,
             double xi) const;
};

class FreeSpaceGreen final : public GreenProvider {
 public:
  Mat3 scaled_green(const Vec3& r, const Vec3& rp, double xi) const override;
  Mat3 curl_left(const Vec3& r, const Vec3& rp, double xi) const override;
  Mat3 curl_right(const Vec3& r, const Vec3& rp, double xi) const override;
  Mat3 curl_both(const Vec3& r, const Vec3& rp, double xi) const override;
};

std::shared_ptr<const GreenProvider> free_space_provider();

/// Finite-difference curls of a provider's scaled_green (central differences,
/// step h = 1e-5 R, one Richardson step). Only defined for xi > 0, since the
/// curls are recovered by dividing k^2 back out.
Mat3 fd_curl_left(const GreenProvider& p, const Vec3& r, const Vec3& rp, double xi);
Mat3 fd_curl_right(const GreenProvider& p, const Vec3& r, const Vec3& rp, double xi);
Mat3 fd_curl_both(const GreenProvider& p, const Vec3& r, const Vec3& rp, double xi);

struct ProviderCheck {
  double curl_left = 0.0;
  double curl_right = 0.0;
  double curl_both = 0.0;
  double reciprocity = 0.0;
};

/// Largest relative deviation between a provider's analytic curls and the
/// finite-difference fallback, plus the Onsager residual of scaled_green,
/// over `samples` pseudo-random (r, r', xi) points.
ProviderCheck check_provider(const GreenProvider& p, int samples,
                             unsigned long long seed);

}  // namespace vdw
