#include "vdw/potentials.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace vdw {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr Duality E = Duality::e;
constexpr Duality M = Duality::m;

struct NamedEntry {
  Component c;
  const char* name;
};

constexpr NamedEntry kNames[] = {
    {Component::EE, "EE"}, {Component::EM, "EM"}, {Component::ME, "ME"},
    {Component::MM, "MM"}, {Component::EC, "EC"}, {Component::CE, "CE"},
    {Component::MC, "MC"}, {Component::CM, "CM"}, {Component::PC, "PC"},
    {Component::DC, "DC"}, {Component::CC, "CC"}, {Component::TOTAL, "TOTAL"}};

// tr(A B C D) without forming the full product
double trace4(const Mat3& a, const Mat3& b, const Mat3& c, const Mat3& d) {
  const Mat3 ab = a * b;
  const Mat3 cd = c * d;
  return ab.cwiseProduct(cd.transpose()).sum();
}

MoleculeResponse restrict_a(const MoleculeResponse& a, Component label) {
  if (label == Component::PC)
    return MoleculeResponse(without_diamagnetism(a.molecule()), a.angle());
  if (label == Component::DC)
    return MoleculeResponse(diamagnetic_part(a.molecule()), a.angle());
  return a;
}

QuadResult integrate_potential(const Integrand& f, const Molecule& a, const Molecule& b,
                               double R, const QuadSpec& spec) {
  const FrequencyGrid grid = frequency_grid(a, b, R);
  QuadSpec s = spec;
  s.decay_rate = grid.decay_rate;
  return integrate_halfline(f, s, grid.breakpoints);
}

// epsilon_{ipq} n_q
Mat3 levi_n(const Vec3& n) { return -cross_matrix(n); }

}  // namespace

std::string to_string(Component c) {
  for (const auto& e : kNames)
    if (e.c == c) return e.name;
  return "?";
}

std::string to_string(const DualityTuple& t) {
  std::string s;
  for (Duality d : t) s += d == E ? 'e' : 'm';
  return s;
}

ComponentLabel ComponentLabel::parse(std::string_view text) {
  for (const auto& e : kNames)
    if (text == e.name) return ComponentLabel(e.c);
  if (text.size() == 4) {
    DualityTuple t{};
    bool ok = true;
    for (std::size_t i = 0; i < 4; ++i) {
      if (text[i] == 'e')
        t[i] = E;
      else if (text[i] == 'm')
        t[i] = M;
      else
        ok = false;
    }
    if (ok) return ComponentLabel(t);
  }
  throw std::invalid_argument("unknown component label '" + std::string(text) + "'");
}

std::string ComponentLabel::str() const {
  return named_ ? to_string(*named_) : to_string(*tuple_);
}

std::vector<DualityTuple> expand(const ComponentLabel& label) {
  if (!label.is_named()) return {label.tuple()};
  switch (label.named()) {
    case Component::EE: return {{E, E, E, E}};
    case Component::EM: return {{E, E, M, M}};
    case Component::ME: return {{M, M, E, E}};
    case Component::MM: return {{M, M, M, M}};
    case Component::EC: return {{E, E, E, M}, {E, E, M, E}};
    case Component::CE: return {{E, M, E, E}, {M, E, E, E}};
    case Component::MC:
    case Component::PC:
    case Component::DC: return {{M, M, E, M}, {M, M, M, E}};
    case Component::CM: return {{E, M, M, M}, {M, E, M, M}};
    case Component::CC:
      return {{E, M, E, M}, {E, M, M, E}, {M, E, E, M}, {M, E, M, E}};
    case Component::TOTAL: {
      std::vector<DualityTuple> all;
      for (int bits = 0; bits < 16; ++bits) {
        DualityTuple t{};
        for (int i = 0; i < 4; ++i) t[i] = (bits >> (3 - i)) & 1 ? M : E;
        all.push_back(t);
      }
      return all;
    }
  }
  throw std::logic_error("unhandled component");
}

FrequencyGrid frequency_grid(const Molecule& a, const Molecule& b, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("separation must be > 0");
  FrequencyGrid g;
  g.decay_rate = 2.0 * R;
  double w_max = 0.0;
  double w_min = 1.0 / (2.0 * R);
  for (const Molecule* m : {&a, &b})
    for (const auto& t : m->transitions) {
      g.breakpoints.push_back(t.omega);
      w_max = std::max(w_max, t.omega);
      w_min = std::min(w_min, t.omega);
    }
  const double xi_max = std::max(40.0 / (2.0 * R), 20.0 * w_max);
  g.breakpoints.push_back(xi_max);
  for (double x = xi_max / 10.0; x > 1e-2 * w_min; x /= 10.0) g.breakpoints.push_back(x);
  std::sort(g.breakpoints.begin(), g.breakpoints.end());
  return g;
}

QuadResult u_unified(const MoleculeResponse& a, const MoleculeResponse& b,
                     const Separation& sep, const DualityTuple& tuple,
                     const GreenProvider& provider, const QuadSpec& spec) {
  return u_named(a, b, sep, ComponentLabel(tuple), provider, spec);
}

QuadResult u_named(const MoleculeResponse& a_in, const MoleculeResponse& b,
                   const Separation& sep, const ComponentLabel& label,
                   const GreenProvider& provider, const QuadSpec& spec) {
  const MoleculeResponse a =
      label.is_named() ? restrict_a(a_in, label.named()) : a_in;
  const std::vector<DualityTuple> tuples = expand(label);
  const Vec3 ra = sep.r_a();
  const Vec3 rb = sep.r_b();
  auto f = [&](double xi) {
    const ResponseSet sa = a.at(xi);
    const ResponseSet sb = b.at(xi);
    Mat3 g_ab[2][2];
    Mat3 g_ba[2][2];
    bool have[2][2][2] = {};
    auto idx = [](Duality d) { return d == E ? 0 : 1; };
    auto block_ab = [&](Duality l, Duality lp) -> const Mat3& {
      const int i = idx(l), j = idx(lp);
      if (!have[0][i][j]) {
        g_ab[i][j] = provider.block(l, lp, ra, rb, xi);
        have[0][i][j] = true;
      }
      return g_ab[i][j];
    };
    auto block_ba = [&](Duality l, Duality lp) -> const Mat3& {
      const int i = idx(l), j = idx(lp);
      if (!have[1][i][j]) {
        g_ba[i][j] = provider.block(l, lp, rb, ra, xi);
        have[1][i][j] = true;
      }
      return g_ba[i][j];
    };
    double sum = 0.0;
    for (const auto& t : tuples)
      sum += trace4(dual_polarisability(sa, t[0], t[1]), block_ab(t[1], t[2]),
                    dual_polarisability(sb, t[2], t[3]), block_ba(t[3], t[0]));
    return -sum / (2.0 * kPi);
  };
  return integrate_potential(f, a.molecule(), b.molecule(), sep.distance(), spec);
}

QuadResult u_ec_direct(const MoleculeResponse& a, const MoleculeResponse& b,
                       const Separation& sep, const GreenProvider& provider,
                       const QuadSpec& spec) {
  const Vec3 ra = sep.r_a();
  const Vec3 rb = sep.r_b();
  auto f = [&](double xi) {
    const ResponseSet sa = a.at(xi);
    const ResponseSet sb = b.at(xi);
    return xi *
           trace4(sa.alpha, provider.scaled_green(ra, rb, xi), sb.chi_em,
                  provider.curl_left(rb, ra, xi)) /
           kPi;
  };
  return integrate_potential(f, a.molecule(), b.molecule(), sep.distance(), spec);
}

QuadResult u_mc_direct(const MoleculeResponse& a, const MoleculeResponse& b,
                       const Separation& sep, const GreenProvider& provider,
                       const QuadSpec& spec) {
  const Vec3 ra = sep.r_a();
  const Vec3 rb = sep.r_b();
  auto f = [&](double xi) {
    const ResponseSet sa = a.at(xi);
    const ResponseSet sb = b.at(xi);
    return xi *
           trace4(sa.beta, provider.curl_both(ra, rb, xi), sb.chi_me,
                  provider.curl_right(rb, ra, xi)) /
           kPi;
  };
  return integrate_potential(f, a.molecule(), b.molecule(), sep.distance(), spec);
}

QuadResult u_pc_direct(const MoleculeResponse& a, const MoleculeResponse& b,
                       const Separation& sep, const GreenProvider& provider,
                       const QuadSpec& spec) {
  return u_mc_direct(restrict_a(a, Component::PC), b, sep, provider, spec);
}

QuadResult u_dc_direct(const MoleculeResponse& a, const MoleculeResponse& b,
                       const Separation& sep, const GreenProvider& provider,
                       const QuadSpec& spec) {
  return u_mc_direct(restrict_a(a, Component::DC), b, sep, provider, spec);
}

QuadResult u_cc_direct(const MoleculeResponse& a, const MoleculeResponse& b,
                       const Separation& sep, const GreenProvider& provider,
                       const QuadSpec& spec) {
  const Vec3 ra = sep.r_a();
  const Vec3 rb = sep.r_b();
  auto f = [&](double xi) {
    const ResponseSet sa = a.at(xi);
    const ResponseSet sb = b.at(xi);
    const double both = trace4(sa.chi_em, provider.curl_both(ra, rb, xi), sb.chi_me,
                               provider.scaled_green(rb, ra, xi));
    const double single = trace4(sa.chi_em, provider.curl_left(ra, rb, xi), sb.chi_em,
                                 provider.curl_left(rb, ra, xi));
    return -(both + xi * xi * single) / kPi;
  };
  return integrate_potential(f, a.molecule(), b.molecule(), sep.distance(), spec);
}

namespace {

// Integrand of the free-space EC kernel, also used for MC with the chiral
// tensor transposed.
double ec_kernel(const Mat3& resp_a, const Mat3& chi_b, const Vec3& n, double R,
                 double k) {
  const double x = k * R;
  const double p1 = 1.0 + x * (2.0 + x * (2.0 + x));
  const double p2 = 3.0 + x * (6.0 + x * (4.0 + x));
  const Mat3 T = p1 * Mat3::Identity() - p2 * n * n.transpose();
  const double c = levi_n(n).cwiseProduct(resp_a * T * chi_b).sum();
  const double R2 = R * R;
  return c * k * std::exp(-2.0 * x) / (16.0 * kPi * kPi * kPi * R2 * R2 * R);
}

double cc_kernel(const Mat3& ca, const Mat3& cb, const Vec3& n, double R, double k) {
  const double x = k * R;
  const Mat3 eps = levi_n(n);
  const Mat3 P = Mat3::Identity() - 3.0 * n * n.transpose();
  double t0 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (ca(i, j) == 0.0) continue;
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
          const double w = ca(i, j) * cb(p, q);
          if (w == 0.0) continue;
          const double dd = (i == p) * (j == q);
          const double dn = (j == q) * n[i] * n[p] + (i == p) * n[j] * n[q];
          const double nnnn = n[i] * n[j] * n[p] * n[q];
          const double ee = eps(j, p) * eps(q, i);
          t0 += w * P(j, q) * P(i, p);
          t2 += w * (3.0 * dd - 7.0 * dn + 15.0 * nnnn + ee);
          t3 += w * (2.0 * dd - 4.0 * dn + 6.0 * nnnn + 2.0 * ee);
          t4 += w * (dd - dn + nnnn + ee);
        }
    }
  const double braces = (1.0 + 2.0 * x) * t0 + x * x * (t2 + x * (t3 + x * t4));
  const double R3 = R * R * R;
  return braces * std::exp(-2.0 * x) / (16.0 * kPi * kPi * kPi * R3 * R3);
}

}  // namespace

QuadResult u_free_fast(const Molecule& a_in, const Molecule& b, const Separation& sep,
                       Component label, const QuadSpec& spec) {
  const Vec3 n = sep.unit();
  const double R = sep.distance();
  Integrand f;
  Molecule a = a_in;
  switch (label) {
    case Component::EC:
      f = [&](double k) {
        return ec_kernel(eval_response(a, k).alpha, eval_response(b, k).chi_em, n, R, k);
      };
      break;
    case Component::PC:
    case Component::DC:
    case Component::MC:
      if (label == Component::PC) a = without_diamagnetism(a_in);
      if (label == Component::DC) a = diamagnetic_part(a_in);
      f = [&](double k) {
        return ec_kernel(eval_response(a, k).beta,
                         eval_response(b, k).chi_em.transpose(), n, R, k);
      };
      break;
    case Component::CC:
      f = [&](double k) {
        return cc_kernel(eval_response(a, k).chi_em, eval_response(b, k).chi_em, n, R, k);
      };
      break;
    default:
      throw std::invalid_argument("u_free_fast: no free-space kernel for " +
                                  to_string(label));
  }
  return integrate_potential(f, a, b, R, spec);
}

QuadResult u_cc_isotropic(const Molecule& a, const Molecule& b, double R,
                          const QuadSpec& spec) {
  auto f = [&](double k) {
    const double ca = eval_response(a, k).chi_em.trace() / 3.0;
    const double cb = eval_response(b, k).chi_em.trace() / 3.0;
    const double x = k * R;
    const double R3 = R * R * R;
    return std::exp(-2.0 * x) * ca * cb * (3.0 + x * (6.0 + 4.0 * x)) /
           (8.0 * kPi * kPi * kPi * R3 * R3);
  };
  return integrate_potential(f, a, b, R, spec);
}

std::vector<double> separation_grid(double r_min, double r_max, int n, bool log) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    throw std::invalid_argument("separation grid needs 0 < r_min < r_max");
  if (n < 2) throw std::invalid_argument("separation grid needs at least 2 points");
  std::vector<double> r(static_cast<std::size_t>(n));
  const double lo = log ? std::log(r_min) : r_min;
  const double hi = log ? std::log(r_max) : r_max;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    const double v = lo + (hi - lo) * t;
    r[static_cast<std::size_t>(i)] = log ? std::exp(v) : v;
  }
  r.front() = r_min;
  r.back() = r_max;
  return r;
}

PotentialCurve compute_curve(const MoleculeResponse& a, const MoleculeResponse& b,
                             const Vec3& orientation, const ComponentLabel& label,
                             const std::vector<double>& r_values,
                             const GreenProvider& provider, const QuadSpec& spec,
                             int jobs) {
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    if (!(r_values[i] > 0.0)) throw std::invalid_argument("separations must be > 0");
    if (i > 0 && !(r_values[i] > r_values[i - 1]))
      throw std::invalid_argument("separations must be strictly increasing");
  }
  const std::size_t n = r_values.size();
  PotentialCurve curve;
  curve.component = label;
  curve.r_values = r_values;
  curve.u_values.assign(n, 0.0);
  curve.error_estimates.assign(n, 0.0);
  std::vector<char> ok(n, 0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        const Separation sep = Separation::along(orientation, r_values[i]);
        const QuadResult r = u_named(a, b, sep, label, provider, spec);
        curve.u_values[i] = r.value;
        curve.error_estimates[i] = r.error_estimate;
        ok[i] = r.converged;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  curve.converged.assign(ok.begin(), ok.end());
  return curve;
}

}  // namespace vdw
