#pragma once

// Dispersion potentials between two molecules as imaginary-frequency
// integrals. All energies are in natural units (hbar = c = eps0 = 1, bohr).

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vdw/green.hpp"
#include "vdw/quad.hpp"
#include "vdw/response.hpp"

namespace vdw {

enum class Component { EE, EM, ME, MM, EC, CE, MC, CM, PC, DC, CC, TOTAL };

using DualityTuple = std::array<Duality, 4>;

/// A named component or a single raw (l1 l2 l3 l4) duality tuple.
class ComponentLabel {
 public:
  ComponentLabel(Component c) : named_(c) {}  // NOLINT(implicit)
  explicit ComponentLabel(const DualityTuple& t) : tuple_(t) {}

  /// Accepts the names above (case-sensitive) or four letters from {e, m}.
  static ComponentLabel parse(std::string_view text);

  bool is_named() const { return named_.has_value(); }
  Component named() const { return *named_; }
  const DualityTuple& tuple() const { return *tuple_; }
  std::string str() const;

  bool operator==(const ComponentLabel& o) const = default;

 private:
  std::optional<Component> named_;
  std::optional<DualityTuple> tuple_;
};

std::string to_string(Component c);
std::string to_string(const DualityTuple& t);

/// Tuples summed for a label. PC and DC expand like MC; the restriction of
/// molecule A's magnetisability is applied by u_named.
std::vector<DualityTuple> expand(const ComponentLabel& label);

/// Initial partition of the frequency axis and the decay hint for potential
/// integrands at separation R.
struct FrequencyGrid {
  std::vector<double> breakpoints;
  double decay_rate = 0.0;
};
FrequencyGrid frequency_grid(const Molecule& a, const Molecule& b, double R);

/// U for one duality tuple:
///   -(1/2pi) int dxi tr[A_a^{l1 l2} G_{l2 l3}(r_a, r_b) A_b^{l3 l4} G_{l4 l1}(r_b, r_a)].
QuadResult u_unified(const MoleculeResponse& a, const MoleculeResponse& b,
                     const Separation& sep, const DualityTuple& tuple,
                     const GreenProvider& provider, const QuadSpec& spec);

/// Sum over the tuple set of a label, integrated as a single integrand.
QuadResult u_named(const MoleculeResponse& a, const MoleculeResponse& b,
                   const Separation& sep, const ComponentLabel& label,
                   const GreenProvider& provider, const QuadSpec& spec);

/// Electric molecule a, chiral molecule b:
///   (1/pi) int dxi xi tr[alpha_a k^2G(r_a, r_b) chi_b curl G(r_b, r_a)].
QuadResult u_ec_direct(const MoleculeResponse& a, const MoleculeResponse& b,
                       const Separation& sep, const GreenProvider& provider,
                       const QuadSpec& spec);

/// Magnetic molecule a, chiral molecule b:
///   (1/pi) int dxi xi tr[beta_a (curl G x curl)(r_a, r_b) chi_me_b (G x curl)(r_b, r_a)].
/// u_pc_direct keeps only the paramagnetic part of beta_a, u_dc_direct only
/// the diamagnetic part, u_mc_direct both.
QuadResult u_mc_direct(const MoleculeResponse& a, const MoleculeResponse& b,
                       const Separation& sep, const GreenProvider& provider,
                       const QuadSpec& spec);
QuadResult u_pc_direct(const MoleculeResponse& a, const MoleculeResponse& b,
                       const Separation& sep, const GreenProvider& provider,
                       const QuadSpec& spec);
QuadResult u_dc_direct(const MoleculeResponse& a, const MoleculeResponse& b,
                       const Separation& sep, const GreenProvider& provider,
                       const QuadSpec& spec);

/// Chiral-chiral potential from the double- and single-curl traces.
QuadResult u_cc_direct(const MoleculeResponse& a, const MoleculeResponse& b,
                       const Separation& sep, const GreenProvider& provider,
                       const QuadSpec& spec);

/// Free-space closed-form kernels for EC, MC, PC, DC and CC.
QuadResult u_free_fast(const Molecule& a, const Molecule& b, const Separation& sep,
                       Component label, const QuadSpec& spec);

/// Isotropic chiral-chiral kernel
///   (1/8pi^3 R^6) int dk e^{-2kR} chi_a chi_b (3 + 6kR + 4k^2R^2),
/// with chi = tr(chi_em) / 3.
QuadResult u_cc_isotropic(const Molecule& a, const Molecule& b, double R,
                          const QuadSpec& spec);

struct PotentialCurve {
  ComponentLabel component = Component::TOTAL;
  std::vector<double> r_values;
  std::vector<double> u_values;
  std::vector<double> error_estimates;
  std::vector<bool> converged;
};

/// Evaluates u_named on every separation R * orientation (r_b at the origin).
/// Points are distributed over `jobs` threads; results keep input order.
PotentialCurve compute_curve(const MoleculeResponse& a, const MoleculeResponse& b,
                             const Vec3& orientation, const ComponentLabel& label,
                             const std::vector<double>& r_values,
                             const GreenProvider& provider, const QuadSpec& spec,
                             int jobs = 1);

/// n points from r_min to r_max, linear or logarithmic, endpoints exact.
std::vector<double> separation_grid(double r_min, double r_max, int n, bool log);

}  // namespace vdw
