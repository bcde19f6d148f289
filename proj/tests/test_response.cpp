#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "vdw/random.hpp"
#include "vdw/response.hpp"
#include "vdw/samples.hpp"

using namespace vdw;

namespace {

Molecule single(double omega, Vec3 d, Vec3 m) {
  Molecule mol;
  mol.transitions.push_back({omega, d, m});
  return mol;
}

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("single transition polarisability at xi = 1") {
  const auto rs = eval_response(single(1.0, Vec3(0, 0, 1), Vec3::Zero()), 1.0);
  Mat3 expected = Mat3::Zero();
  expected(2, 2) = 1.0;
  CHECK(max_abs(rs.alpha - expected) == 0.0);
  CHECK(max_abs(rs.chi_em) == 0.0);
  CHECK(max_abs(rs.beta) == 0.0);
}

TEST_CASE("single transition cross polarisabilities at xi = 1") {
  const auto rs = eval_response(single(1.0, Vec3(0, 0, 1), Vec3(0, 0, 1)), 1.0);
  CHECK(rs.chi_em(2, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rs.chi_me(2, 2) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(max_abs(rs.chi_em) == doctest::Approx(1.0));
}

TEST_CASE("responses vanish at infinite frequency") {
  Rng rng(3);
  const Molecule m = random_molecule(rng, 3, true);
  const auto rs = eval_response(m, 1e12);
  CHECK(max_abs(rs.alpha) < 1e-20);
  CHECK(max_abs(rs.beta - m.beta_dia) < 1e-20);
  CHECK(max_abs(rs.chi_em) < 1e-10);
  const auto inf = eval_response(m, std::numeric_limits<double>::infinity());
  CHECK(max_abs(inf.alpha) == 0.0);
  CHECK(max_abs(inf.chi_em) == 0.0);
  CHECK(max_abs(inf.beta - m.beta_dia) == 0.0);
}

TEST_CASE("eval_response matches the term-by-term sum and keeps its invariants") {
  Rng rng(11);
  for (int s = 0; s < 50; ++s) {
    const Molecule m = random_molecule(rng, 1 + s % 4, s % 2 == 0);
    const double xi = rng.log_uniform(1e-3, 1e3);
    const auto rs = eval_response(m, xi);
    CHECK(max_abs(rs.alpha - oracle::alpha(m, xi)) <= 1e-14 * (1 + max_abs(rs.alpha)));
    CHECK(max_abs(rs.beta - oracle::beta(m, xi)) <= 1e-14 * (1 + max_abs(rs.beta)));
    CHECK(max_abs(rs.chi_em - oracle::chi(m, xi)) <= 1e-14 * (1 + max_abs(rs.chi_em)));
    CHECK(max_abs(rs.chi_me + rs.chi_em.transpose()) == 0.0);
    CHECK(max_abs(rs.alpha - rs.alpha.transpose()) <= 1e-15 * max_abs(rs.alpha));
    Eigen::SelfAdjointEigenSolver<Mat3> es(rs.alpha);
    CHECK(es.eigenvalues().minCoeff() >= -1e-14 * max_abs(rs.alpha));
    CHECK(rs.alpha.allFinite());
    CHECK(lloyd_violation(rs) == 0.0);
  }
}

TEST_CASE("negative frequency is rejected") {
  CHECK_THROWS_AS(eval_response(Molecule{}, -1.0), std::invalid_argument);
}

TEST_CASE("static limits") {
  const auto s = static_limits(single(2.0, Vec3(1, 0, 0), Vec3::Zero()));
  CHECK(s.alpha0(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(max_abs(s.alpha0) == doctest::Approx(1.0));

  Molecule empty;
  empty.beta_dia = -Mat3::Identity();
  const auto e = static_limits(empty);
  CHECK(max_abs(e.alpha0) == 0.0);
  CHECK(max_abs(e.chi_prime) == 0.0);
  CHECK(max_abs(e.beta0 - empty.beta_dia) == 0.0);

  const auto c = static_limits(single(1.0, Vec3(0, 0, 1), Vec3(0, 0, 1)));
  CHECK(c.chi_prime(2, 2) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("chi_prime is the small-frequency slope of chi_em") {
  Rng rng(5);
  const Molecule m = random_molecule(rng, 3, false);
  const auto s = static_limits(m);
  const double k = 1e-6;
  CHECK(max_abs(eval_response(m, k).chi_em / k - s.chi_prime) <= 1e-9 * max_abs(s.chi_prime));
}

TEST_CASE("dual polarisability blocks") {
  Rng rng(9);
  const auto rs = eval_response(random_molecule(rng, 2, true), 0.7);
  CHECK(max_abs(dual_polarisability(rs, Duality::e, Duality::e) - rs.alpha) == 0.0);
  CHECK(max_abs(dual_polarisability(rs, Duality::m, Duality::m) - rs.beta) == 0.0);
  CHECK(max_abs(dual_polarisability(rs, Duality::m, Duality::e) +
                dual_polarisability(rs, Duality::e, Duality::m).transpose()) == 0.0);
}

TEST_CASE("duality rotation") {
  Rng rng(13);
  const auto rs = eval_response(random_molecule(rng, 2, true), 0.4);

  const auto id = duality_rotate(rs, {0.0});
  CHECK(max_abs(id.alpha - rs.alpha) == 0.0);
  CHECK(max_abs(id.chi_em - rs.chi_em) == 0.0);

  const auto q = duality_rotate(rs, {std::numbers::pi / 2});
  const double tol = 1e-15 * (max_abs(rs.alpha) + max_abs(rs.beta));
  CHECK(max_abs(q.alpha - rs.beta) <= tol);
  CHECK(max_abs(q.beta - rs.alpha) <= tol);
  CHECK(max_abs(q.chi_em + rs.chi_me) <= tol);
  CHECK(max_abs(q.chi_me + rs.chi_em) <= tol);

  // a full turn composed of two half turns is the identity
  const auto back = duality_rotate(duality_rotate(rs, {1.1}), {-1.1});
  CHECK(max_abs(back.beta - rs.beta) <= tol);
  CHECK(max_abs(back.chi_me - rs.chi_me) <= tol);
}

TEST_CASE("rotating a purely electric isotropic molecule breaks reciprocity") {
  const auto rs = eval_response(isotropic_molecule(1.0, 1.0, 0.0), 0.5);
  const double a = rs.alpha(0, 0);
  const auto q = duality_rotate(rs, {std::numbers::pi / 4});
  CHECK(q.chi_em(0, 0) == doctest::Approx(-a / 2));
  CHECK(q.chi_me(0, 0) == doctest::Approx(-a / 2));
  CHECK(lloyd_violation(q) > 0.1);
}

TEST_CASE("enantiomer and response parts") {
  Rng rng(17);
  const Molecule m = random_molecule(rng, 3, true);
  const double xi = 0.8;
  const auto rs = eval_response(m, xi);

  const auto en = eval_response(enantiomer(m), xi);
  CHECK(max_abs(en.chi_em + rs.chi_em) == 0.0);
  CHECK(max_abs(en.alpha - rs.alpha) == 0.0);
  CHECK(max_abs(en.beta - rs.beta) == 0.0);

  const auto e = eval_response(electric_part(m), xi);
  CHECK(max_abs(e.alpha - rs.alpha) == 0.0);
  CHECK(max_abs(e.beta) == 0.0);
  CHECK(max_abs(e.chi_em) == 0.0);

  const auto p = eval_response(paramagnetic_part(m), xi);
  const auto d = eval_response(diamagnetic_part(m), xi);
  CHECK(max_abs(p.alpha) == 0.0);
  CHECK(max_abs(p.chi_em) == 0.0);
  CHECK(max_abs(d.beta - m.beta_dia) == 0.0);
  CHECK(max_abs(p.beta + d.beta - rs.beta) <= 1e-15 * max_abs(rs.beta));

  const auto w = eval_response(without_diamagnetism(m), xi);
  CHECK(max_abs(w.beta - p.beta) == 0.0);
  CHECK(max_abs(w.chi_em - rs.chi_em) == 0.0);
}

TEST_CASE("transition frequency range") {
  Molecule m;
  m.transitions = {{0.7, Vec3::UnitX(), Vec3::Zero()}, {0.2, Vec3::UnitY(), Vec3::Zero()}};
  CHECK(min_transition_frequency(m) == 0.2);
  CHECK(max_transition_frequency(m) == 0.7);
}

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(Molecule{}));
  CHECK_NOTHROW(validate(isotropic_molecule(1.0, 1.0, 1.0, -2.0)));

  Molecule m = single(0.0, Vec3::UnitX(), Vec3::Zero());
  CHECK_THROWS_AS(validate(m), std::invalid_argument);
  m = single(1.0, Vec3(std::nan(""), 0, 0), Vec3::Zero());
  CHECK_THROWS_AS(validate(m), std::invalid_argument);
  m = single(1.0, Vec3::UnitX(), Vec3(0, std::numeric_limits<double>::infinity(), 0));
  CHECK_THROWS_AS(validate(m), std::invalid_argument);

  Molecule b;
  b.beta_dia(0, 1) = -0.1;
  CHECK_THROWS_AS(validate(b), std::invalid_argument);  // not symmetric
  b.beta_dia = Mat3::Identity();
  CHECK_THROWS_AS(validate(b), std::invalid_argument);  // positive
}
