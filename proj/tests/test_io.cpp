#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "vdw/molecule_io.hpp"
#include "vdw/potentials.hpp"
#include "vdw/random.hpp"
#include "vdw/samples.hpp"
#include "vdw/units.hpp"

using namespace vdw;

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string vec(const Vec3& v) { return "[" + g17(v.x()) + ", " + g17(v.y()) + ", " + g17(v.z()) + "]"; }

// Molecule file text with every quantity multiplied by the given unit sizes.
std::string molecule_text(const Molecule& m, const std::string& units, double w, double d,
                          double mu, double b) {
  std::string s = "{\"name\": \"" + m.name + "\", \"units\": \"" + units + "\", \"transitions\": [";
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const auto& t = m.transitions[i];
    if (i) s += ", ";
    s += "{\"omega\": " + g17(t.omega * w) + ", \"d\": " + vec(t.d * d) +
         ", \"m_imag\": " + vec(t.m_tilde * mu) + "}";
  }
  s += "], \"beta_dia\": [";
  for (int i = 0; i < 3; ++i) s += (i ? ", " : "") + vec(m.beta_dia.row(i).transpose() * b);
  return s + "]}";
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string message_of(std::string_view text) {
  try {
    parse_molecule(text, "m.json");
  } catch (const MoleculeFileError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("unit constants") {
  CHECK(bohr_radius_si() == doctest::Approx(5.29177210903e-11).epsilon(1e-10));
  for (auto f : {frequency_factor, length_factor, electric_dipole_factor,
                 magnetic_dipole_factor, magnetisability_factor})
    CHECK(f(UnitSystem::natural) == 1.0);
  CHECK(length_factor(UnitSystem::au) == 1.0);
  CHECK(length_factor(UnitSystem::SI) == doctest::Approx(1.0 / bohr_radius_si()));
  // one hartree / hbar is alpha c / a0, so the au frequency factor is the fine-structure constant
  CHECK(frequency_factor(UnitSystem::au) == doctest::Approx(1.0 / 137.035999084).epsilon(1e-9));
  CHECK(parse_unit_system("SI") == UnitSystem::SI);
  CHECK(to_string(UnitSystem::au) == "au");
  CHECK_THROWS_AS(parse_unit_system("cgs"), std::invalid_argument);
}

TEST_CASE("molecule files round-trip bit for bit") {
  Rng rng(41);
  for (int s = 0; s < 20; ++s) {
    Molecule m = random_molecule(rng, s % 4, s % 3 != 0);
    m.name = "mol" + std::to_string(s);
    const auto back = parse_molecule(serialize_molecule(m)).molecule;
    CHECK(back.name == m.name);
    REQUIRE(back.transitions.size() == m.transitions.size());
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
      CHECK(back.transitions[i].omega == m.transitions[i].omega);
      CHECK(back.transitions[i].d == m.transitions[i].d);
      CHECK(back.transitions[i].m_tilde == m.transitions[i].m_tilde);
    }
    CHECK(back.beta_dia == m.beta_dia);
    CHECK(serialize_molecule(back) == serialize_molecule(m));
  }

  const auto dir = std::filesystem::temp_directory_path() / "vdw_test_io";
  std::filesystem::create_directories(dir);
  Molecule m = isotropic_molecule(0.3, 1.0 / 3.0, 0.1, -0.7);
  m.name = "saved";
  save_molecule(m, dir / "m.json");
  const auto loaded = load_molecule(dir / "m.json");
  CHECK(loaded.units == UnitSystem::natural);
  CHECK(loaded.molecule.transitions[1].d == m.transitions[1].d);
  CHECK(loaded.molecule.beta_dia == m.beta_dia);
  std::filesystem::remove_all(dir);
}

TEST_CASE("SI and atomic-unit inputs describe the same molecule") {
  // SI size of one atomic unit of each quantity
  const double a0 = 4 * M_PI * si::eps0 * si::hbar * si::hbar / (si::m_e * si::e * si::e);
  const double w_au = si::hbar / (si::m_e * a0 * a0);
  const double d_au = si::e * a0;
  const double m_au = si::e * si::hbar / si::m_e;
  const double b_au = si::e * si::e * a0 * a0 / si::m_e;

  Molecule m;
  m.name = "x";
  m.transitions = {{0.35, Vec3(0.9, 0.35, 0.2), Vec3(0.15, 0.5, -0.3)},
                   {0.61, Vec3(-0.2, 0.4, 1.1), Vec3(0.05, -0.2, 0.3)}};
  m.beta_dia << -2.0, -0.3, -0.1, -0.3, -1.5, -0.2, -0.1, -0.2, -1.2;

  const auto au = parse_molecule(molecule_text(m, "au", 1, 1, 1, 1)).molecule;
  const auto si_mol = parse_molecule(molecule_text(m, "SI", w_au, d_au, m_au, b_au)).molecule;
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    CHECK(rel(si_mol.transitions[i].omega, au.transitions[i].omega) < 1e-12);
    for (int k = 0; k < 3; ++k) {
      CHECK(rel(si_mol.transitions[i].d[k], au.transitions[i].d[k]) < 1e-12);
      CHECK(rel(si_mol.transitions[i].m_tilde[k], au.transitions[i].m_tilde[k]) < 1e-12);
    }
  }
  CHECK(((si_mol.beta_dia - au.beta_dia).cwiseAbs().maxCoeff()) <
        1e-12 * au.beta_dia.cwiseAbs().maxCoeff());

  // and the potentials agree, with separations given in each file's length unit
  const auto r = separation_grid(1.0, 1000.0, 7, true);
  std::vector<double> r_si;
  for (double x : r) r_si.push_back(x * a0 * length_factor(UnitSystem::SI));
  QuadSpec spec;
  const auto u_au = compute_curve(au, au, Vec3(1, 2, 3), Component::TOTAL, r,
                                  *free_space_provider(), spec);
  const auto u_si = compute_curve(si_mol, si_mol, Vec3(1, 2, 3), Component::TOTAL, r_si,
                                  *free_space_provider(), spec);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(rel(u_si.u_values[i], u_au.u_values[i]) < 1e-12);
}

TEST_CASE("optional fields and empty molecules") {
  const auto m = parse_molecule(R"({"units": "natural", "transitions": []})").molecule;
  CHECK(m.transitions.empty());
  CHECK(m.beta_dia == Mat3::Zero());
  CHECK(m.name.empty());
}

TEST_CASE("schema violations name the field") {
  CHECK(message_of(R"({"transitions": []})").find("units") != std::string::npos);
  CHECK(message_of(R"({"units": "cgs", "transitions": []})").find("units") != std::string::npos);
  CHECK(message_of(R"({"units": "au"})").find("transitions") != std::string::npos);
  CHECK(message_of(R"({"units": "au", "transitions": [], "colour": 1})").find("colour") !=
        std::string::npos);
  const std::string bad_d = message_of(R"({"units": "au", "transitions": [
      {"omega": 1, "d": [1, 0, 0], "m_imag": [0, 0, 0]},
      {"omega": 1, "d": [1, 0], "m_imag": [0, 0, 0]}]})");
  CHECK(bad_d.find("transitions[1].d") != std::string::npos);
  CHECK(bad_d.find("m.json") != std::string::npos);
  CHECK(message_of(R"({"units": "au", "transitions": [{"omega": 1, "d": [1, 0, 0]}]})")
            .find("m_imag") != std::string::npos);
  CHECK(message_of(R"({"units": "au", "transitions": [{"omega": "1", "d": [1, 0, 0], "m_imag": [0, 0, 0]}]})")
            .find("omega") != std::string::npos);
  CHECK(message_of(R"({"units": "au", "transitions": [], "beta_dia": [[1, 0], [0, 1]]})")
            .find("beta_dia") != std::string::npos);
  CHECK_FALSE(message_of(R"({"units": "au", "transitions": [{"omega": 0, "d": [1, 0, 0], "m_imag": [0, 0, 0]}]})")
                  .empty());
  CHECK_FALSE(message_of(R"({"units": "au", "transitions": [], "beta_dia": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})")
                  .empty());
}

TEST_CASE("syntax errors report the position") {
  const std::string msg = message_of("{\n  \"units\": \"au\",\n  \"transitions\": [,]\n}");
  CHECK(msg.find("m.json") != std::string::npos);
  CHECK(msg.find("line 3") != std::string::npos);
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(load_molecule("/nonexistent/m.json"), MoleculeFileError);
}
