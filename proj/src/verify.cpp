#include "vdw/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "vdw/potentials.hpp"
#include "vdw/quad.hpp"
#include "vdw/samples.hpp"

namespace vdw {

namespace {

constexpr double kPi = std::numbers::pi;
using LD = long double;
using cplx = std::complex<double>;

constexpr double kDenominatorTol = 1e-12;
constexpr double kContourTol = 1e-6;
constexpr double kCrossPathTol = 1e-10;
constexpr double kDualityTol = 1e-12;

// Energy denominators of the twelve time-ordered diagrams.
struct Denominators {
  LD inv[13];
  Denominators(LD w1, LD w2, LD A, LD B) {
    const LD D[13] = {0,
                      (A + w1) * (w1 + w2) * (B + w2),
                      (A + w1) * (w1 + w2) * (B + w1),
                      (A + w1) * (A + B) * (B + w2),
                      (A + w1) * (A + B + w1 + w2) * (B + w1),
                      (A + w1) * (A + B) * (A + w2),
                      (A + w1) * (A + B + w1 + w2) * (A + w2),
                      (B + w1) * (A + B) * (B + w2),
                      (B + w1) * (A + B + w1 + w2) * (B + w2),
                      (B + w1) * (A + B) * (A + w2),
                      (B + w1) * (A + B + w1 + w2) * (A + w1),
                      (B + w1) * (w1 + w2) * (A + w2),
                      (B + w1) * (w1 + w2) * (A + w1)};
    inv[0] = 0;
    for (int i = 1; i <= 12; ++i) inv[i] = 1.0L / D[i];
  }
};

// sign * (1 - 2 + 3 - 9 - 11 - 12) + even part; the even part of the
// paramagnetic combination has every sign reversed.
LD chiral_combination(LD sign, LD w1, LD w2, LD A, LD B, bool paramagnetic) {
  const Denominators d(w1, w2, A, B);
  const auto& v = d.inv;
  const LD odd = v[1] - v[2] + v[3] - v[9] - v[11] - v[12];
  const LD even = v[4] - v[5] + v[6] + v[7] + v[8] + v[10];
  return sign * odd + (paramagnetic ? -even : even);
}

LD cc_combination(LD sign, LD w1, LD w2, LD A, LD B) {
  const Denominators d(w1, w2, A, B);
  const auto& v = d.inv;
  return v[1] - v[2] + v[3] + v[9] + v[11] - v[12] +
         sign * (v[4] - v[5] + v[6] - v[7] + v[8] + v[10]);
}

LD f_pm(LD sign, LD w1, LD w2, LD A, LD B) {
  return w1 / ((A + w1) * (B + w1)) * (1.0L / (w1 + w2) + sign / (w1 - w2));
}

std::string kind_name(DenominatorKind k) {
  switch (k) {
    case DenominatorKind::EC: return "EC";
    case DenominatorKind::PC: return "PC";
    case DenominatorKind::CC_plus: return "CC+";
    case DenominatorKind::CC_minus: return "CC-";
  }
  return "?";
}

// h(x) = polynomial + sum residue / (x - pole), real on the real axis.
struct Rational {
  std::vector<double> poly;
  std::vector<std::pair<cplx, cplx>> poles;  // (residue, pole)

  double derivative(int k, double x) const {
    double p = 0.0;
    for (std::size_t j = static_cast<std::size_t>(k); j < poly.size(); ++j) {
      double c = poly[j];
      for (int i = 0; i < k; ++i) c *= static_cast<double>(j - static_cast<std::size_t>(i));
      p += c * std::pow(x, static_cast<double>(j) - k);
    }
    cplx s = 0.0;
    for (const auto& [res, pole] : poles) {
      // d^k/dx^k 1/(x - p) = (-1)^k k! / (x - p)^{k+1}
      cplx t = 1.0 / (x - pole);
      for (int i = 1; i <= k; ++i) t *= -static_cast<double>(i) / (x - pole);
      s += res * t;
    }
    return p + s.real();
  }
};

// Abel-regularised int_L^inf h(x) sin(R x) dx from the integration-by-parts
// expansion -e^{iRL} sum_k (-1)^k h^(k)(L) / (iR)^{k+1}.
double sine_tail(const Rational& h, double L, double R) {
  const cplx iR(0.0, R);
  cplx sum = 0.0;
  cplx scale = 1.0 / iR;
  double last = INFINITY;
  const int degree = static_cast<int>(h.poly.size());
  for (int k = 0; k < 200; ++k) {
    const cplx term = (k % 2 == 0 ? 1.0 : -1.0) * h.derivative(k, L) * scale;
    const double mag = std::abs(term);
    sum += term;
    if (k > degree) {
      if (mag <= 1e-19 * std::abs(sum)) break;
      // asymptotic series: stop before the terms start growing
      if (mag > last) break;
    }
    last = mag;
    scale /= iR;
  }
  return (-std::exp(iR * L) * sum).imag();
}

// Coefficients of x^n / (x - a) = q(x) + a^n / (x - a).
std::vector<double> quotient(int n, double a) {
  std::vector<double> q(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) q[static_cast<std::size_t>(j)] = std::pow(a, n - 1 - j);
  return q;
}

QuadSpec tight_spec() {
  QuadSpec s;
  s.rel_tol = 1e-12;
  s.max_evals = 200000;
  return s;
}

}  // namespace

IdentityCheck make_check(std::string name, double lhs, double rhs, double tolerance,
                         double floor) {
  IdentityCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.tolerance = tolerance;
  const double scale = std::max({std::abs(lhs), std::abs(rhs), floor});
  c.residual = scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
  c.passed = std::isfinite(c.residual) && c.residual <= tolerance;
  return c;
}

IdentityCheck check_denominators(DenominatorKind kind, double omega1, double omega2,
                                 double omega_a, double omega_b, bool near_diagonal) {
  for (double w : {omega1, omega2, omega_a, omega_b})
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("check_denominators: frequencies must be > 0");
  std::string name = "denominators." + kind_name(kind);
  if (omega1 == omega2) {
    if (!near_diagonal)
      throw std::invalid_argument("check_denominators: omega1 == omega2 needs limit mode");
    omega2 = omega1 * (1.0 + 1e-6);
    name += ".near_diagonal";
  }
  const LD w1 = omega1, w2 = omega2, A = omega_a, B = omega_b;
  LD lhs = 0.0L;
  LD rhs = 0.0L;
  const LD bracket = 1.0L / ((A + w2) * (B + w2)) - 1.0L / ((A + w1) * (B + w1));
  switch (kind) {
    case DenominatorKind::EC:
      lhs = chiral_combination(1, w1, w2, A, B, false) +
            chiral_combination(-1, w2, w1, A, B, false);
      rhs = 4 * A / (A + B) * bracket * (1.0L / (w2 + w1) - 1.0L / (w2 - w1));
      break;
    case DenominatorKind::PC:
      lhs = chiral_combination(1, w1, w2, A, B, true) +
            chiral_combination(-1, w2, w1, A, B, true);
      rhs = 4 * A / (A + B) * bracket * (1.0L / (w2 + w1) + 1.0L / (w2 - w1));
      break;
    case DenominatorKind::CC_plus:
    case DenominatorKind::CC_minus: {
      const LD s = kind == DenominatorKind::CC_plus ? 1 : -1;
      lhs = cc_combination(s, w1, w2, A, B) + cc_combination(s, w2, w1, A, B);
      rhs = 4 / (A + B) * (f_pm(s, w1, w2, A, B) + f_pm(s, w2, w1, A, B));
      break;
    }
  }
  return make_check(name, static_cast<double>(lhs), static_cast<double>(rhs),
                    kDenominatorTol);
}

IdentityCheck check_contour_gn(int n, double omega, double R) {
  if (n < 0 || n > 3) throw std::invalid_argument("check_contour_gn: n must be in 0..3");
  if (!(omega > 0.0) || !(R > 0.0))
    throw std::invalid_argument("check_contour_gn: omega and R must be > 0");
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  const double norm = 1.0 / (4.0 * kPi * R);
  auto f = [=](double x) {
    return std::pow(x, n) * std::sin(x * R) * norm *
           (1.0 / (x + omega) + sign / (x - omega));
  };
  const double L = 50.0 * omega + 200.0 / R;
  const QuadResult body = integrate_pv(f, omega, 0.0, L, tight_spec());

  Rational h;
  h.poly.assign(static_cast<std::size_t>(n), 0.0);
  const auto q1 = quotient(n, -omega);
  const auto q2 = quotient(n, omega);
  for (int j = 0; j < n; ++j)
    h.poly[static_cast<std::size_t>(j)] =
        q1[static_cast<std::size_t>(j)] + sign * q2[static_cast<std::size_t>(j)];
  h.poles.emplace_back(std::pow(-omega, n), -omega);
  h.poles.emplace_back(sign * std::pow(omega, n), omega);
  const double tail = norm * sine_tail(h, L, R);

  const double lhs = body.value + tail;
  const double rhs = std::pow(-omega, n) * std::cos(omega * R) / (4.0 * R);
  const double floor = 1e-3 * std::max(1.0, std::pow(omega, n)) / (4.0 * R);
  auto c = make_check("contour.g" + std::to_string(n), lhs, rhs, kContourTol, floor);
  if (body.error_estimate > 0.1 * kContourTol * std::max(std::abs(rhs), floor))
    c.passed = false;
  return c;
}

IdentityCheck check_contour_j2(double xi, double R) {
  if (!(xi > 0.0) || !(R > 0.0))
    throw std::invalid_argument("check_contour_j2: xi and R must be > 0");
  const double norm = 1.0 / (4.0 * kPi * R);
  auto f = [=](double x) { return x * std::sin(x * R) * norm / (x * x + xi * xi); };
  const double L = 50.0 * xi + 200.0 / R;
  QuadSpec spec = tight_spec();
  // the value is exponentially small for large xi R; judge it on the scale of g
  spec.abs_tol = 1e-16 * norm;
  const QuadResult body = integrate_interval(f, 0.0, L, spec);

  Rational h;
  h.poles.emplace_back(0.5, cplx(0.0, xi));
  h.poles.emplace_back(0.5, cplx(0.0, -xi));
  const double tail = norm * sine_tail(h, L, R);

  const double lhs = body.value + tail;
  const double rhs = std::exp(-xi * R) / (8.0 * R);
  const double floor = 1e-3 / (8.0 * R);
  auto c = make_check("contour.j2", lhs, rhs, kContourTol, floor);
  if (body.error_estimate > 0.1 * kContourTol * std::max(std::abs(rhs), floor))
    c.passed = false;
  return c;
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

int VerificationReport::failures() const {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

std::string VerificationReport::format() const {
  std::string out = "# seed " + std::to_string(seed) + "\n";
  for (const auto& c : checks) {
    out += c.name + ' ' + format_double(c.lhs) + ' ' + format_double(c.rhs) + ' ' +
           format_double(c.residual) + ' ' + (c.passed ? "pass" : "FAIL") + '\n';
  }
  out += "# " + std::to_string(checks.size() - static_cast<std::size_t>(failures())) +
         "/" + std::to_string(checks.size()) + " passed\n";
  return out;
}

namespace {

void denominator_group(Rng& rng, std::vector<IdentityCheck>& out) {
  const DenominatorKind kinds[] = {DenominatorKind::EC, DenominatorKind::PC,
                                   DenominatorKind::CC_plus, DenominatorKind::CC_minus};
  for (auto k : kinds) out.push_back(check_denominators(k, 1, 2, 3, 4));

  // the swapped frequencies must satisfy the same identity
  for (auto k : kinds) {
    auto c = check_denominators(k, 2, 1, 3, 4);
    c.name += ".swapped";
    out.push_back(c);
  }

  for (auto k : kinds) {
    IdentityCheck worst;
    worst.residual = -1.0;
    for (int i = 0; i < 1000; ++i) {
      double w1 = rng.log_uniform(0.01, 100.0);
      double w2 = rng.log_uniform(0.01, 100.0);
      const double wa = rng.log_uniform(0.01, 100.0);
      const double wb = rng.log_uniform(0.01, 100.0);
      if (std::abs(w1 - w2) < 1e-6 * std::max(w1, w2)) w2 = w1 * (1.0 + 1e-6);
      const auto c = check_denominators(k, w1, w2, wa, wb);
      if (c.residual > worst.residual) worst = c;
    }
    worst.name += ".random1000";
    out.push_back(worst);
  }

  for (auto k : kinds) out.push_back(check_denominators(k, 1.5, 1.5, 0.7, 2.2, true));
}

void contour_group(Rng& rng, std::vector<IdentityCheck>& out) {
  out.push_back(check_contour_gn(1, 1.0, 1.0));
  out.push_back(check_contour_gn(0, 0.01, 1.0));
  for (int n = 0; n <= 3; ++n) {
    const double w = rng.uniform(0.2, 3.0);
    const double R = rng.uniform(0.5, 3.0);
    out.push_back(check_contour_gn(n, w, R));
  }
  {
    const double w = 1.3, R = 0.8;
    const auto g0 = check_contour_gn(0, w, R);
    const auto g2 = check_contour_gn(2, w, R);
    out.push_back(make_check("contour.parity_g2_g0", g2.lhs, w * w * g0.lhs, kContourTol));
  }
  out.push_back(check_contour_j2(1.0, 1.0));
  out.push_back(check_contour_j2(1.0, 2.0));
  {
    auto c = check_contour_j2(50.0, 1.0);
    c.name += ".large_xi";
    c.residual = std::abs(c.lhs - c.rhs);
    c.tolerance = 1e-10;
    c.passed = c.residual <= c.tolerance;
    out.push_back(c);
  }
  for (int i = 0; i < 2; ++i)
    out.push_back(check_contour_j2(rng.log_uniform(0.1, 5.0), rng.uniform(0.5, 3.0)));
}

void crosspath_group(Rng& rng, std::vector<IdentityCheck>& out) {
  const auto& p = *free_space_provider();
  QuadSpec spec;
  spec.rel_tol = 1e-12;
  const Molecule a = random_molecule(rng, 2, true);
  const Molecule b = random_molecule(rng, 2, true);
  const Separation sep = Separation::along(rng.unit_vector(), rng.log_uniform(0.5, 20.0));

  auto named = [&](const MoleculeResponse& x, const MoleculeResponse& y, Component c) {
    return u_named(x, y, sep, c, p, spec).value;
  };
  out.push_back(make_check("crosspath.EC", named(a, b, Component::EC),
                           u_ec_direct(a, b, sep, p, spec).value, kCrossPathTol));
  out.push_back(make_check("crosspath.PC", named(a, b, Component::PC),
                           u_pc_direct(a, b, sep, p, spec).value, kCrossPathTol));
  out.push_back(make_check("crosspath.DC", named(a, b, Component::DC),
                           u_dc_direct(a, b, sep, p, spec).value, kCrossPathTol));
  out.push_back(make_check("crosspath.MC", named(a, b, Component::MC),
                           u_mc_direct(a, b, sep, p, spec).value, kCrossPathTol));
  out.push_back(make_check("crosspath.CC", named(a, b, Component::CC),
                           u_cc_direct(a, b, sep, p, spec).value, kCrossPathTol));
  out.push_back(make_check("crosspath.EC_free", u_free_fast(a, b, sep, Component::EC, spec).value,
                           u_ec_direct(a, b, sep, p, spec).value, kCrossPathTol));
  out.push_back(make_check("crosspath.MC_free", u_free_fast(a, b, sep, Component::MC, spec).value,
                           u_mc_direct(a, b, sep, p, spec).value, kCrossPathTol));
  out.push_back(make_check("crosspath.CC_free", u_free_fast(a, b, sep, Component::CC, spec).value,
                           u_cc_direct(a, b, sep, p, spec).value, kCrossPathTol));

  const double total = named(a, b, Component::TOTAL);
  const std::pair<const char*, double> angles[] = {
      {"pi/7", kPi / 7.0}, {"pi/4", kPi / 4.0}, {"pi/2", kPi / 2.0}};
  for (const auto& [label, theta] : angles) {
    const MoleculeResponse ra(a, {theta}), rb(b, {theta});
    out.push_back(make_check(std::string("duality.TOTAL.") + label,
                             named(ra, rb, Component::TOTAL), total, kDualityTol));
  }
  const MoleculeResponse ra(a, {kPi / 2.0}), rb(b, {kPi / 2.0});
  out.push_back(make_check("duality.EE_to_MM", named(a, b, Component::EE),
                           named(ra, rb, Component::MM), kDualityTol));
  out.push_back(make_check("duality.EC_to_MC", named(a, b, Component::EC),
                           named(ra, rb, Component::MC), kDualityTol));

  const Molecule ia = isotropic_molecule(rng.uniform(0.5, 2.0), 1.0, 0.7, -0.2);
  const Molecule ib = isotropic_molecule(rng.uniform(0.5, 2.0), 0.8, -0.5, -0.1);
  const double ee = std::abs(named(ia, ib, Component::EE));
  out.push_back(make_check("isotropic.EC", named(ia, ib, Component::EC), 0.0, kDualityTol, ee));
  out.push_back(make_check("isotropic.MC", named(ia, ib, Component::MC), 0.0, kDualityTol, ee));
  out.push_back(make_check("isotropic.CC", named(ia, ib, Component::CC),
                           u_cc_isotropic(ia, ib, sep.distance(), spec).value,
                           kCrossPathTol));
}

}  // namespace

VerificationReport run_suite(std::uint64_t seed, std::optional<SuiteGroup> only) {
  VerificationReport report;
  report.seed = seed;
  // separate streams so that a subset run draws the same points
  if (!only || *only == SuiteGroup::denominators) {
    Rng rng(seed);
    denominator_group(rng, report.checks);
  }
  if (!only || *only == SuiteGroup::contour) {
    Rng rng(seed + 1);
    contour_group(rng, report.checks);
  }
  if (!only || *only == SuiteGroup::crosspath) {
    Rng rng(seed + 2);
    crosspath_group(rng, report.checks);
  }
  return report;
}

}  // namespace vdw
