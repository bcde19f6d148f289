#include "vdw/molecule_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vdw {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& field,
                       const std::string& what) {
  throw MoleculeFileError(source + ": " + field + ": " + what);
}

double number(const json& j, const std::string& source, const std::string& field) {
  if (!j.is_number()) fail(source, field, "expected a number");
  return j.get<double>();
}

Vec3 vec3(const json& j, const std::string& source, const std::string& field) {
  if (!j.is_array() || j.size() != 3) fail(source, field, "expected an array of 3 numbers");
  Vec3 v;
  for (std::size_t i = 0; i < 3; ++i)
    v[static_cast<Eigen::Index>(i)] =
        number(j[i], source, field + "[" + std::to_string(i) + "]");
  return v;
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

}  // namespace

LoadedMolecule parse_molecule(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MoleculeFileError(source + ": " + e.what());
  }
  if (!doc.is_object()) fail(source, "<root>", "expected an object");
  for (const auto& [key, _] : doc.items())
    if (key != "name" && key != "units" && key != "transitions" && key != "beta_dia")
      fail(source, key, "unknown key");

  LoadedMolecule out;
  if (!doc.contains("units")) fail(source, "units", "missing");
  if (!doc["units"].is_string()) fail(source, "units", "expected a string");
  try {
    out.units = parse_unit_system(doc["units"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(source, "units", e.what());
  }
  Molecule& mol = out.molecule;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail(source, "name", "expected a string");
    mol.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("transitions")) fail(source, "transitions", "missing");
  const json& ts = doc["transitions"];
  if (!ts.is_array()) fail(source, "transitions", "expected an array");

  const double fw = frequency_factor(out.units);
  const double fd = electric_dipole_factor(out.units);
  const double fm = magnetic_dipole_factor(out.units);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string where = "transitions[" + std::to_string(i) + "]";
    const json& t = ts[i];
    if (!t.is_object()) fail(source, where, "expected an object");
    for (const auto& [key, _] : t.items())
      if (key != "omega" && key != "d" && key != "m_imag")
        fail(source, where + "." + key, "unknown key");
    for (const char* key : {"omega", "d", "m_imag"})
      if (!t.contains(key)) fail(source, where + "." + key, "missing");
    Transition tr;
    tr.omega = number(t["omega"], source, where + ".omega") * fw;
    tr.d = vec3(t["d"], source, where + ".d") * fd;
    tr.m_tilde = vec3(t["m_imag"], source, where + ".m_imag") * fm;
    mol.transitions.push_back(tr);
  }

  if (doc.contains("beta_dia")) {
    const json& b = doc["beta_dia"];
    if (!b.is_array() || b.size() != 3)
      fail(source, "beta_dia", "expected a 3x3 array");
    for (std::size_t i = 0; i < 3; ++i) {
      const Vec3 row = vec3(b[i], source, "beta_dia[" + std::to_string(i) + "]");
      mol.beta_dia.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    mol.beta_dia *= magnetisability_factor(out.units);
  }

  try {
    validate(mol);
  } catch (const std::invalid_argument& e) {
    throw MoleculeFileError(source + ": " + e.what());
  }
  return out;
}

LoadedMolecule load_molecule(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MoleculeFileError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_molecule(ss.str(), path.string());
}

std::string serialize_molecule(const Molecule& mol) {
  json doc;
  doc["name"] = mol.name;
  doc["units"] = "natural";
  json ts = json::array();
  for (const auto& t : mol.transitions)
    ts.push_back({{"omega", t.omega}, {"d", vec_json(t.d)}, {"m_imag", vec_json(t.m_tilde)}});
  doc["transitions"] = ts;
  json b = json::array();
  for (int i = 0; i < 3; ++i) b.push_back(vec_json(mol.beta_dia.row(i).transpose()));
  doc["beta_dia"] = b;
  return doc.dump(2) + "\n";
}

void save_molecule(const Molecule& mol, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MoleculeFileError(path.string() + ": cannot write file");
  out << serialize_molecule(mol);
}

}  // namespace vdw
