#include "vdw/quad.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <vector>

namespace vdw {

EvaluationError::EvaluationError(double abscissa)
    : std::runtime_error("integrand is not finite at x = " + std::to_string(abscissa)),
      abscissa_(abscissa) {}

QuadSpec default_quad_spec() {
  QuadSpec spec;
  if (const char* env = std::getenv("VDW_QUAD_RTOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && std::isfinite(v) && v > 0.0) spec.rel_tol = v;
  }
  return spec;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 21-point Kronrod abscissae and weights with the embedded 10-point Gauss rule
// (every odd-indexed Kronrod node).
constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

// A panel variable t in [lo, hi] with its own transformed integrand.
struct Piece {
  Integrand g;
  double lo;
  double hi;
};

struct Panel {
  int piece;
  double a;
  double b;
  double value;
  double error;
  double absval;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk21(const Piece& p, int index, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[21];
  fv[10] = p.g(c);
  for (int j = 0; j < 10; ++j) {
    fv[j] = p.g(c - h * kXgk[j]);
    fv[20 - j] = p.g(c + h * kXgk[j]);
  }
  double resk = kWgk[10] * fv[10];
  double resg = 0.0;
  double resabs = kWgk[10] * std::abs(fv[10]);
  for (int j = 0; j < 10; ++j) {
    const double pair = fv[j] + fv[20 - j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[20 - j]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fv[10] - mean);
  for (int j = 0; j < 10; ++j)
    resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[20 - j] - mean));

  const double habs = std::abs(h);
  resk *= h;
  resabs *= habs;
  resasc *= habs;
  double err = std::abs((resk - resg * h));
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(50.0 * kEps * resabs, err);
  return {index, a, b, resk, err, resabs};
}

QuadResult adaptive(const std::vector<Piece>& pieces, const QuadSpec& spec) {
  if (!(spec.rel_tol > 0.0) || spec.max_evals <= 0 || !(spec.decay_rate >= 0.0) ||
      !(spec.abs_tol >= 0.0))
    throw std::invalid_argument("invalid QuadSpec");

  std::priority_queue<Panel> heap;
  QuadResult res;
  double value = 0.0;
  double error = 0.0;
  double absval = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].hi > pieces[i].lo)) continue;
    Panel p = gk21(pieces[i], static_cast<int>(i), pieces[i].lo, pieces[i].hi);
    res.evals += 21;
    value += p.value;
    error += p.error;
    absval += p.absval;
    heap.push(p);
  }

  auto tolerance = [&] { return std::max(spec.rel_tol * std::abs(value), spec.abs_tol); };
  while (!heap.empty() && error > tolerance()) {
    // nothing left to gain once the estimate is at the rounding floor
    if (error <= 100.0 * kEps * absval) break;
    if (res.evals + 42 > spec.max_evals) break;
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    const Piece& piece = pieces[static_cast<std::size_t>(worst.piece)];
    const Panel left = gk21(piece, worst.piece, worst.a, mid);
    const Panel right = gk21(piece, worst.piece, mid, worst.b);
    res.evals += 42;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    absval += left.absval + right.absval - worst.absval;
    heap.push(left);
    heap.push(right);
  }

  // re-sum to drop the drift of the running totals
  value = 0.0;
  error = 0.0;
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) {
    return x.piece != y.piece ? x.piece < y.piece : x.a < y.a;
  });
  for (const auto& p : panels) {
    value += p.value;
    error += p.error;
  }
  res.value = value;
  res.error_estimate = error;
  res.converged = error <= tolerance();
  return res;
}

// Wraps f so that a non-finite value reports the original abscissa x.
double checked(const Integrand& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) throw EvaluationError(x);
  return v;
}

Piece finite_piece(const Integrand& f, double a, double b) {
  return {[&f](double x) { return checked(f, x); }, a, b};
}

// Tail [c, inf) in a variable on (0, 1].
Piece tail_piece(const Integrand& f, double c, double decay_rate) {
  if (decay_rate > 0.0) {
    return {[&f, c, decay_rate](double u) {
              // log1p keeps x accurate for u close to 1
              const double x = c - std::log1p(u - 1.0) / decay_rate;
              if (std::isinf(x)) return 0.0;
              return checked(f, x) / (decay_rate * u);
            },
            0.0, 1.0};
  }
  return {[&f, c](double t) {
            const double s = 1.0 - t;
            const double x = c + t / s;
            if (std::isinf(x)) return 0.0;
            return checked(f, x) / (s * s);
          },
          0.0, 1.0};
}

std::vector<double> sorted_inside(std::span<const double> bp, double a, double b) {
  std::vector<double> out;
  for (double x : bp)
    if (std::isfinite(x) && x > a && x < b) out.push_back(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void add_finite_pieces(std::vector<Piece>& pieces, const Integrand& f, double a,
                       double b, const std::vector<double>& cuts) {
  double lo = a;
  for (double x : cuts) {
    pieces.push_back(finite_piece(f, lo, x));
    lo = x;
  }
  pieces.push_back(finite_piece(f, lo, b));
}

}  // namespace

QuadResult integrate_interval(const Integrand& f, double a, double b,
                              const QuadSpec& spec, std::span<const double> breakpoints) {
  if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("NaN interval limit");
  if (a == b) return {0.0, 0.0, 0, true};
  if (a > b) {
    QuadResult r = integrate_interval(f, b, a, spec, breakpoints);
    r.value = -r.value;
    return r;
  }
  if (std::isinf(a)) throw std::invalid_argument("lower limit must be finite");
  std::vector<Piece> pieces;
  if (std::isinf(b)) {
    const auto cuts = sorted_inside(breakpoints, a, b);
    double lo = a;
    for (double x : cuts) {
      pieces.push_back(finite_piece(f, lo, x));
      lo = x;
    }
    pieces.push_back(tail_piece(f, lo, spec.decay_rate));
  } else {
    add_finite_pieces(pieces, f, a, b, sorted_inside(breakpoints, a, b));
  }
  return adaptive(pieces, spec);
}

QuadResult integrate_halfline(const Integrand& f, const QuadSpec& spec,
                              std::span<const double> breakpoints) {
  return integrate_interval(f, 0.0, std::numeric_limits<double>::infinity(), spec,
                            breakpoints);
}

QuadResult integrate_pv(const Integrand& f, double pole, double a, double b,
                        const QuadSpec& spec) {
  if (!(a < pole && pole < b))
    throw std::invalid_argument("integrate_pv: pole must lie inside (a, b)");
  if (std::isinf(a)) throw std::invalid_argument("integrate_pv: a must be finite");
  const double delta = std::isinf(b) ? pole - a : std::min(pole - a, b - pole);
  std::vector<Piece> pieces;
  pieces.push_back({[&f, pole](double t) {
                      // offsets snapped so that pole + s and pole - s are exact mirror images
                      const double s = (pole + t) - pole;
                      if (s == 0.0) return 0.0;
                      const double v = f(pole + s) + f(pole - s);
                      if (!std::isfinite(v)) throw EvaluationError(pole + s);
                      return v;
                    },
                    0.0, delta});
  if (pole - delta > a) pieces.push_back(finite_piece(f, a, pole - delta));
  if (std::isinf(b))
    pieces.push_back(tail_piece(f, pole + delta, spec.decay_rate));
  else if (pole + delta < b)
    pieces.push_back(finite_piece(f, pole + delta, b));
  return adaptive(pieces, spec);
}

}  // namespace vdw
