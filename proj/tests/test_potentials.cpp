#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vdw/potentials.hpp"
#include "vdw/random.hpp"
#include "vdw/samples.hpp"

using namespace vdw;

namespace {

// Trapezoid rule with 10^6 panels on [0, 4] of the free-space electric-chiral
// integrand for the toy pair at R = 10 along (1, 1, 1).
constexpr double kToyEcTrapezoid = 1.07810391720894418e-10;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

QuadSpec tight() {
  QuadSpec s;
  s.rel_tol = 1e-12;
  return s;
}

const GreenProvider& free_space() { return *free_space_provider(); }

struct Pair {
  Molecule a;
  Molecule b;
  Separation sep;
};

Pair random_pair(Rng& rng) {
  Molecule a = random_molecule(rng, 1 + static_cast<int>(rng.uniform() * 3), true);
  Molecule b = random_molecule(rng, 1 + static_cast<int>(rng.uniform() * 3), true);
  const Vec3 n = rng.unit_vector();
  const double R = rng.log_uniform(0.2, 50.0);
  return {a, b, Separation::along(n, R)};
}

Molecule toy_a() {
  Molecule m;
  m.transitions.push_back({1.0, Vec3(1, 0, 0), Vec3::Zero()});
  return m;
}

Molecule toy_b() {
  Molecule m;
  m.transitions.push_back({1.0, Vec3(0, 1, 0), Vec3(0, 0, 1)});
  return m;
}

}  // namespace

TEST_CASE("component labels") {
  CHECK(ComponentLabel::parse("EC") == ComponentLabel(Component::EC));
  CHECK(ComponentLabel::parse("TOTAL").str() == "TOTAL");
  const auto t = ComponentLabel::parse("emme");
  CHECK_FALSE(t.is_named());
  CHECK(t.str() == "emme");
  CHECK(t.tuple() == DualityTuple{Duality::e, Duality::m, Duality::m, Duality::e});
  CHECK_THROWS_AS(ComponentLabel::parse("ec"), std::invalid_argument);
  CHECK_THROWS_AS(ComponentLabel::parse("eemx"), std::invalid_argument);
  CHECK_THROWS_AS(ComponentLabel::parse(""), std::invalid_argument);

  CHECK(expand(Component::TOTAL).size() == 16);
  CHECK(expand(Component::CC).size() == 4);
  CHECK(expand(Component::EC).size() == 2);
  CHECK(expand(Component::EE).size() == 1);
  CHECK(expand(t).size() == 1);
  for (Component c : {Component::EE, Component::EM, Component::ME, Component::MM,
                      Component::EC, Component::CE, Component::MC, Component::CM,
                      Component::PC, Component::DC, Component::CC, Component::TOTAL})
    CHECK(ComponentLabel::parse(to_string(c)) == ComponentLabel(c));
}

TEST_CASE("sixteen tuples partition the total") {
  Rng rng(21);
  const Pair p = random_pair(rng);
  double sum = 0.0;
  for (const auto& t : expand(Component::TOTAL))
    sum += u_unified(p.a, p.b, p.sep, t, free_space(), tight()).value;
  const double total = u_named(p.a, p.b, p.sep, Component::TOTAL, free_space(), tight()).value;
  CHECK(rel(sum, total) < 1e-10);

  double named = 0.0;
  for (Component c : {Component::EE, Component::EM, Component::ME, Component::MM,
                      Component::EC, Component::CE, Component::MC, Component::CM,
                      Component::CC})
    named += u_named(p.a, p.b, p.sep, c, free_space(), tight()).value;
  CHECK(rel(named, total) < 1e-10);
}

TEST_CASE("isotropic electric pair attracts at all separations") {
  const Molecule m = isotropic_molecule(0.5, 1.0, 0.0);
  for (double R : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
    const auto u = u_unified(m, m, Separation::along(Vec3::UnitX(), R),
                             {Duality::e, Duality::e, Duality::e, Duality::e}, free_space(),
                             tight());
    CHECK(u.value < 0.0);
    CHECK(u.converged);
  }
}

TEST_CASE("a molecule without response gives zero for every tuple") {
  Rng rng(22);
  const Molecule a = random_molecule(rng, 2, true);
  const Molecule b;
  const Separation sep = Separation::along(rng.unit_vector(), 3.0);
  for (const auto& t : expand(Component::TOTAL))
    CHECK(u_unified(a, b, sep, t, free_space(), tight()).value == 0.0);
}

TEST_CASE("tuple sums agree with the direct formulas") {
  Rng rng(23);
  for (int s = 0; s < 10; ++s) {
    const Pair p = random_pair(rng);
    const auto ec = u_named(p.a, p.b, p.sep, Component::EC, free_space(), tight()).value;
    CHECK(rel(u_ec_direct(p.a, p.b, p.sep, free_space(), tight()).value, ec) < 1e-10);
    const auto mc = u_named(p.a, p.b, p.sep, Component::MC, free_space(), tight()).value;
    CHECK(rel(u_mc_direct(p.a, p.b, p.sep, free_space(), tight()).value, mc) < 1e-10);
    const auto pc = u_named(p.a, p.b, p.sep, Component::PC, free_space(), tight()).value;
    CHECK(rel(u_pc_direct(p.a, p.b, p.sep, free_space(), tight()).value, pc) < 1e-10);
    const auto mc0 = u_named(without_diamagnetism(p.a), p.b, p.sep, Component::MC,
                             free_space(), tight()).value;
    CHECK(rel(pc, mc0) < 1e-10);
    const auto dc = u_named(p.a, p.b, p.sep, Component::DC, free_space(), tight()).value;
    CHECK(rel(u_dc_direct(p.a, p.b, p.sep, free_space(), tight()).value, dc) < 1e-10);
    CHECK(rel(pc + dc, mc) < 1e-10);
    const auto cc = u_named(p.a, p.b, p.sep, Component::CC, free_space(), tight()).value;
    CHECK(rel(u_cc_direct(p.a, p.b, p.sep, free_space(), tight()).value, cc) < 1e-10);
  }
}

TEST_CASE("direct paths are linear in the magnetisability") {
  Rng rng(24);
  const Pair p = random_pair(rng);
  const double mc = u_mc_direct(p.a, p.b, p.sep, free_space(), tight()).value;
  const double pc = u_pc_direct(p.a, p.b, p.sep, free_space(), tight()).value;
  const double dc = u_dc_direct(p.a, p.b, p.sep, free_space(), tight()).value;
  CHECK(rel(pc + dc, mc) < 1e-12);
  CHECK(u_dc_direct(without_diamagnetism(p.a), p.b, p.sep, free_space(), tight()).value == 0.0);
}

TEST_CASE("free-space fast kernels agree with the provider path") {
  Rng rng(25);
  for (int s = 0; s < 20; ++s) {
    const Pair p = random_pair(rng);
    CHECK(rel(u_free_fast(p.a, p.b, p.sep, Component::EC, tight()).value,
              u_ec_direct(p.a, p.b, p.sep, free_space(), tight()).value) < 1e-10);
    CHECK(rel(u_free_fast(p.a, p.b, p.sep, Component::MC, tight()).value,
              u_mc_direct(p.a, p.b, p.sep, free_space(), tight()).value) < 1e-10);
    CHECK(rel(u_free_fast(p.a, p.b, p.sep, Component::PC, tight()).value,
              u_pc_direct(p.a, p.b, p.sep, free_space(), tight()).value) < 1e-10);
    CHECK(rel(u_free_fast(p.a, p.b, p.sep, Component::DC, tight()).value,
              u_dc_direct(p.a, p.b, p.sep, free_space(), tight()).value) < 1e-10);
    CHECK(rel(u_free_fast(p.a, p.b, p.sep, Component::CC, tight()).value,
              u_cc_direct(p.a, p.b, p.sep, free_space(), tight()).value) < 1e-10);
  }
  CHECK_THROWS_AS(u_free_fast(Molecule{}, Molecule{}, Separation::along(Vec3::UnitX(), 1.0),
                              Component::EE, tight()),
                  std::invalid_argument);
}

TEST_CASE("toy electric-chiral pair against the trapezoid oracle") {
  const Vec3 n = Vec3(1, 1, 1).normalized();
  const double oracle_value = oracle::trapezoid(
      [&](double k) { return oracle::ec_free_integrand(toy_a(), toy_b(), n, 10.0, k); }, 0.0,
      4.0, 1000000);
  CHECK(rel(oracle_value, kToyEcTrapezoid) < 1e-11);

  const Separation sep = Separation::along(n, 10.0);
  const auto direct = u_ec_direct(toy_a(), toy_b(), sep, free_space(), tight());
  CHECK(direct.converged);
  CHECK(rel(direct.value, kToyEcTrapezoid) < 1e-8);
  CHECK(rel(u_free_fast(toy_a(), toy_b(), sep, Component::EC, tight()).value,
            kToyEcTrapezoid) < 1e-8);
  CHECK(rel(u_named(toy_a(), toy_b(), sep, Component::EC, free_space(), tight()).value,
            kToyEcTrapezoid) < 1e-8);
}

TEST_CASE("isotropic pairs have no electric-chiral or magnetic-chiral potential") {
  const Molecule a = isotropic_molecule(0.8, 1.0, 0.6, -0.5);
  const Molecule b = isotropic_molecule(1.3, 0.7, 0.9, -0.2);
  Rng rng(26);
  for (int s = 0; s < 5; ++s) {
    const Separation sep = Separation::along(rng.unit_vector(), rng.log_uniform(0.1, 100.0));
    const double ee =
        std::abs(u_named(a, b, sep, Component::EE, free_space(), tight()).value);
    for (Component c : {Component::EC, Component::MC, Component::PC, Component::DC}) {
      CHECK(std::abs(u_named(a, b, sep, c, free_space(), tight()).value) <= 1e-12 * ee);
      CHECK(std::abs(u_free_fast(a, b, sep, c, tight()).value) <= 1e-12 * ee);
    }
  }
}

TEST_CASE("isotropic chiral pair follows the reduced kernel") {
  const Molecule a = isotropic_molecule(0.8, 1.0, 0.6);
  const Molecule b = isotropic_molecule(1.3, 0.7, 0.9);
  for (double R : {0.05, 0.7, 4.0, 60.0}) {
    const Separation sep = Separation::along(Vec3(0.3, -0.4, 0.2), R);
    const double reduced = u_cc_isotropic(a, b, R, tight()).value;
    CHECK(rel(u_named(a, b, sep, Component::CC, free_space(), tight()).value, reduced) < 1e-10);
    CHECK(rel(u_free_fast(a, b, sep, Component::CC, tight()).value, reduced) < 1e-10);
  }
  // independent check of the reduced kernel itself at R = 2
  const double chi_a_over_k = 2.0 * 1.0 * 0.6;  // 2 d m per unit xi, divided below
  const auto f = [&](double k) {
    const double ca = chi_a_over_k * k / (0.8 * 0.8 + k * k);
    const double cb = 2.0 * 0.7 * 0.9 * k / (1.3 * 1.3 + k * k);
    return oracle::cc_isotropic_integrand(ca, cb, 2.0, k);
  };
  const double brute = oracle::trapezoid(f, 0.0, 25.0, 1000000);
  CHECK(rel(u_cc_isotropic(a, b, 2.0, tight()).value, brute) < 1e-9);
}

TEST_CASE("enantiomers flip the chiral components") {
  Rng rng(27);
  const Pair p = random_pair(rng);
  const Molecule bm = enantiomer(p.b);
  const Molecule am = enantiomer(p.a);
  for (Component c : {Component::EC, Component::MC, Component::DC}) {
    const double u = u_named(p.a, p.b, p.sep, c, free_space(), tight()).value;
    const double v = u_named(p.a, bm, p.sep, c, free_space(), tight()).value;
    CHECK(rel(v, -u) < 1e-12);
  }
  const double cc = u_named(p.a, p.b, p.sep, Component::CC, free_space(), tight()).value;
  CHECK(rel(u_named(am, bm, p.sep, Component::CC, free_space(), tight()).value, cc) < 1e-12);
  CHECK(rel(u_named(p.a, bm, p.sep, Component::CC, free_space(), tight()).value, -cc) < 1e-12);
  CHECK(rel(u_named(am, p.b, p.sep, Component::CC, free_space(), tight()).value, -cc) < 1e-12);
}

TEST_CASE("swapping the molecules and the separation leaves the potential unchanged") {
  Rng rng(28);
  for (int s = 0; s < 5; ++s) {
    const Pair p = random_pair(rng);
    for (Component c : {Component::CC, Component::EE, Component::MM, Component::TOTAL}) {
      const double u = u_named(p.a, p.b, p.sep, c, free_space(), tight()).value;
      const double v = u_named(p.b, p.a, p.sep.swapped(), c, free_space(), tight()).value;
      CHECK(rel(v, u) < 1e-11);
    }
    const double ec = u_named(p.a, p.b, p.sep, Component::EC, free_space(), tight()).value;
    const double ce =
        u_named(p.b, p.a, p.sep.swapped(), Component::CE, free_space(), tight()).value;
    CHECK(rel(ce, ec) < 1e-11);
  }
}

TEST_CASE("total potential is invariant under joint duality rotations") {
  Rng rng(29);
  const double pi = std::numbers::pi;
  for (int s = 0; s < 5; ++s) {
    const Pair p = random_pair(rng);
    const double u = u_named(p.a, p.b, p.sep, Component::TOTAL, free_space(), tight()).value;
    for (double th : {pi / 7, pi / 4, pi / 2, 2.0}) {
      const MoleculeResponse a(p.a, {th}), b(p.b, {th});
      CHECK(rel(u_named(a, b, p.sep, Component::TOTAL, free_space(), tight()).value, u) < 1e-12);
    }
    const MoleculeResponse a(p.a, {pi / 2}), b(p.b, {pi / 2});
    const auto named = [&](const MoleculeResponse& x, const MoleculeResponse& y, Component c) {
      return u_named(x, y, p.sep, c, free_space(), tight()).value;
    };
    CHECK(rel(named(a, b, Component::EE), named(p.a, p.b, Component::MM)) < 1e-12);
    CHECK(rel(named(a, b, Component::MM), named(p.a, p.b, Component::EE)) < 1e-12);
    CHECK(rel(named(a, b, Component::EC), named(p.a, p.b, Component::MC)) < 1e-12);
    CHECK(rel(named(a, b, Component::MC), named(p.a, p.b, Component::EC)) < 1e-12);
  }
}

TEST_CASE("frequency grid") {
  Molecule a, b;
  a.transitions.push_back({0.5, Vec3::UnitX(), Vec3::Zero()});
  b.transitions.push_back({2.0, Vec3::UnitY(), Vec3::Zero()});
  const auto g = frequency_grid(a, b, 1.0);
  CHECK(g.decay_rate == 2.0);
  CHECK(std::is_sorted(g.breakpoints.begin(), g.breakpoints.end()));
  CHECK(std::find(g.breakpoints.begin(), g.breakpoints.end(), 0.5) != g.breakpoints.end());
  CHECK(std::find(g.breakpoints.begin(), g.breakpoints.end(), 2.0) != g.breakpoints.end());
  CHECK(g.breakpoints.back() == doctest::Approx(40.0));
}

TEST_CASE("separation grid") {
  const auto lin = separation_grid(1.0, 3.0, 5, false);
  CHECK(lin == std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});
  const auto lg = separation_grid(1.0, 100.0, 3, true);
  CHECK(lg.front() == 1.0);
  CHECK(lg.back() == 100.0);
  CHECK(lg[1] == doctest::Approx(10.0));
  CHECK_THROWS_AS(separation_grid(0.0, 1.0, 5, true), std::invalid_argument);
  CHECK_THROWS_AS(separation_grid(2.0, 1.0, 5, false), std::invalid_argument);
  CHECK_THROWS_AS(separation_grid(1.0, 2.0, 1, false), std::invalid_argument);
}

TEST_CASE("curves are independent of the thread count") {
  Rng rng(30);
  const Pair p = random_pair(rng);
  const auto r = separation_grid(0.5, 50.0, 13, true);
  const auto one = compute_curve(p.a, p.b, Vec3(1, 2, 3), Component::TOTAL, r, free_space(),
                                 tight(), 1);
  const auto four = compute_curve(p.a, p.b, Vec3(1, 2, 3), Component::TOTAL, r, free_space(),
                                  tight(), 4);
  CHECK(one.r_values == r);
  CHECK(one.u_values == four.u_values);
  CHECK(one.error_estimates == four.error_estimates);
  CHECK(one.converged == four.converged);
  const Separation s5 = Separation::along(Vec3(1, 2, 3), r[5]);
  CHECK(one.u_values[5] ==
        u_named(p.a, p.b, s5, Component::TOTAL, free_space(), tight()).value);
}
