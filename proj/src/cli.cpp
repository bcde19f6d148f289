#include "vdw/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "vdw/asymptotics.hpp"
#include "vdw/molecule_io.hpp"
#include "vdw/table1.hpp"
#include "vdw/verify.hpp"

namespace vdw {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

// Input problems found after CLI11 parsing.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(std::string_view s, const std::string& what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw InputError(what + ": '" + std::string(s) + "' is not a number");
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::string_view s = text;
  for (;;) {
    const auto comma = s.find(',');
    out.push_back(parse_number(s.substr(0, comma), what));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

Vec3 parse_orientation(const std::string& text) {
  const auto v = parse_list(text, "--orientation");
  if (v.size() != 3) throw InputError("--orientation expects x,y,z");
  const Vec3 o(v[0], v[1], v[2]);
  if (!o.allFinite() || !(o.norm() > 0.0))
    throw InputError("--orientation must be a finite nonzero vector");
  return o.normalized();
}

LoadedMolecule load(const std::string& path) { return load_molecule(path); }

ComponentLabel parse_label(const std::string& text) {
  try {
    return ComponentLabel::parse(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

struct CurveOptions {
  std::string mol_a;
  std::string mol_b;
  std::string component = "TOTAL";
  double rmin = 0.0;
  double rmax = 0.0;
  int points = 50;
  bool log = false;
  std::string orientation = "0,0,1";
  int jobs = 1;
  std::string output;
};

struct PowerLawOptions {
  std::string mol_a;
  std::string mol_b;
  std::string input;
  std::string component = "TOTAL";
  std::string window = "retarded";
  int points = 12;
  std::string orientation = "0,0,1";
  int jobs = 1;
};

struct TableOptions {
  std::string mol_a;
  std::string mol_b;
  std::string rows = "all";
  std::string orientation = "1,2,3";
  int points = 9;
  int jobs = 1;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::string only;
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

int cmd_curve(const CurveOptions& o, std::ostream& out, std::ostream& err) {
  const LoadedMolecule a = load(o.mol_a);
  const LoadedMolecule b = load(o.mol_b);
  const ComponentLabel label = parse_label(o.component);
  if (!(o.rmin > 0.0) || !(o.rmax > o.rmin))
    throw InputError("separation range must satisfy 0 < rmin < rmax");
  if (o.points < 2) throw InputError("--points must be at least 2");
  const double lf = length_factor(a.units);
  const auto r = separation_grid(o.rmin * lf, o.rmax * lf, o.points, o.log);
  const auto curve = compute_curve(a.molecule, b.molecule, parse_orientation(o.orientation),
                                   label, r, *free_space_provider(), default_quad_spec(),
                                   o.jobs);
  write_output(o.output, curve_csv(curve), out);
  const auto bad = std::count(curve.converged.begin(), curve.converged.end(), false);
  if (bad > 0) {
    err << "warning: " << bad << " point(s) did not converge\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_powerlaw(const PowerLawOptions& o, std::ostream& out, std::ostream& err) {
  PotentialCurve curve;
  std::pair<double, double> window;
  const bool named_window = o.window == "retarded" || o.window == "nonretarded";
  if (!o.input.empty()) {
    std::ifstream f(o.input, std::ios::binary);
    if (!f) throw InputError("cannot open " + o.input);
    std::ostringstream ss;
    ss << f.rdbuf();
    try {
      curve = parse_curve_csv(ss.str());
    } catch (const std::invalid_argument& e) {
      throw InputError(o.input + ": " + e.what());
    }
    if (named_window)
      throw InputError("--window retarded|nonretarded needs molecules; give rmin,rmax");
    const auto w = parse_list(o.window, "--window");
    if (w.size() != 2 || !(w[0] > 0.0) || !(w[1] > w[0]))
      throw InputError("--window expects rmin,rmax with 0 < rmin < rmax");
    window = {w[0], w[1]};
  } else {
    if (o.mol_a.empty() || o.mol_b.empty())
      throw InputError("powerlaw needs --mol-a and --mol-b, or --input");
    const LoadedMolecule a = load(o.mol_a);
    const LoadedMolecule b = load(o.mol_b);
    if (o.window == "retarded") {
      window = retarded_window(a.molecule, b.molecule);
    } else if (o.window == "nonretarded") {
      window = nonretarded_window(a.molecule, b.molecule);
    } else {
      const auto w = parse_list(o.window, "--window");
      if (w.size() != 2 || !(w[0] > 0.0) || !(w[1] > w[0]))
        throw InputError("--window expects retarded, nonretarded or rmin,rmax");
      const double lf = length_factor(a.units);
      window = {w[0] * lf, w[1] * lf};
    }
    if (o.points < 5) throw InputError("--points must be at least 5 for a fit");
    const auto r = separation_grid(window.first, window.second, o.points, true);
    curve = compute_curve(a.molecule, b.molecule, parse_orientation(o.orientation),
                          parse_label(o.component), r, *free_space_provider(),
                          default_quad_spec(), o.jobs);
  }
  PowerLawFit fit;
  try {
    fit = fit_power_law(curve, window);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  char line[256];
  std::snprintf(line, sizeof line, "exponent: %.2f, sign: %s\n", fit.exponent,
                fit.sign > 0 ? "+" : "-");
  out << "component: " << curve.component.str() << "\n" << line;
  out << "residual: " << format_double(fit.residual) << "\n";
  out << "window: " << format_double(window.first) << "," << format_double(window.second)
      << " (" << fit.points << " points)\n";
  const auto bad = std::count(curve.converged.begin(), curve.converged.end(), false);
  if (bad > 0) {
    err << "warning: " << bad << " point(s) did not converge\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_table1(const TableOptions& o, std::ostream& out) {
  const std::string dir = data_directory();
  const LoadedMolecule a = load(o.mol_a.empty() ? dir + "/reference_a.json" : o.mol_a);
  const LoadedMolecule b = load(o.mol_b.empty() ? dir + "/reference_b.json" : o.mol_b);
  if (o.rows != "all" && o.rows != "chiral") throw InputError("--rows must be all or chiral");
  PowerLawTableOptions opt;
  opt.orientation = parse_orientation(o.orientation);
  opt.chiral_only = o.rows == "chiral";
  opt.points_per_window = o.points;
  opt.jobs = o.jobs;
  opt.spec = default_quad_spec();
  if (o.points < 5) throw InputError("--points must be at least 5");
  const auto rows = power_law_table(a.molecule, b.molecule, opt);
  out << format_power_law_table(rows);
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.passed(); });
  return ok ? kExitOk : kExitNumerical;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  std::optional<SuiteGroup> only;
  if (o.only == "denominators")
    only = SuiteGroup::denominators;
  else if (o.only == "contour")
    only = SuiteGroup::contour;
  else if (o.only == "crosspath")
    only = SuiteGroup::crosspath;
  else if (!o.only.empty())
    throw InputError("--only must be denominators, contour or crosspath");
  const auto report = run_suite(o.seed, only);
  out << report.format();
  return std::min(report.failures(), 125);
}

}  // namespace

std::string format_sci17(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, r.ptr);
}

std::string curve_csv(const PotentialCurve& c) {
  std::string s = "R,component,U,error,converged\n";
  const std::string name = c.component.str();
  for (std::size_t i = 0; i < c.r_values.size(); ++i) {
    s += format_sci17(c.r_values[i]) + ',' + name + ',' + format_sci17(c.u_values[i]) + ',' +
         format_sci17(c.error_estimates[i]) + ',' +
         (i < c.converged.size() && c.converged[i] ? "1" : "0") + '\n';
  }
  return s;
}

PotentialCurve parse_curve_csv(std::string_view text) {
  PotentialCurve c;
  std::size_t line_no = 0;
  bool header = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("R,", 0) == 0) continue;
    }
    std::vector<std::string_view> cols;
    for (;;) {
      const auto comma = line.find(',');
      cols.push_back(line.substr(0, comma));
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (cols.size() < 3)
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected R,component,U[,error,converged]");
    try {
      c.r_values.push_back(parse_number(cols[0], "R"));
      c.component = ComponentLabel::parse(cols[1]);
      c.u_values.push_back(parse_number(cols[2], "U"));
      c.error_estimates.push_back(cols.size() > 3 ? parse_number(cols[3], "error") : 0.0);
      c.converged.push_back(cols.size() > 4 ? cols[4] == "1" : true);
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (c.r_values.empty()) throw std::invalid_argument("no data rows");
  return c;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Van der Waals dispersion potentials between chiral molecules"};
  app.require_subcommand(1);

  CurveOptions curve;
  auto* c = app.add_subcommand("curve", "Potential U(R) on a separation grid, as CSV");
  c->add_option("--mol-a", curve.mol_a, "Molecule A file")->required();
  c->add_option("--mol-b", curve.mol_b, "Molecule B file")->required();
  c->add_option("--component", curve.component, "EE EM ME MM EC CE MC CM PC DC CC TOTAL or eeem...");
  c->add_option("--rmin", curve.rmin, "Smallest separation (length unit of molecule A)")->required();
  c->add_option("--rmax", curve.rmax, "Largest separation (length unit of molecule A)")->required();
  c->add_option("--points", curve.points, "Number of separations");
  c->add_flag("--log", curve.log, "Logarithmic spacing");
  c->add_option("--orientation", curve.orientation, "Direction of r_A - r_B as x,y,z");
  c->add_option("--jobs", curve.jobs, "Worker threads")->check(CLI::PositiveNumber);
  c->add_option("--output", curve.output, "Write CSV here instead of stdout");

  PowerLawOptions pl;
  auto* p = app.add_subcommand("powerlaw", "Fit U ~ R^n in a separation window");
  p->add_option("--mol-a", pl.mol_a, "Molecule A file");
  p->add_option("--mol-b", pl.mol_b, "Molecule B file");
  p->add_option("--input", pl.input, "Fit an existing curve CSV instead");
  p->add_option("--component", pl.component, "Component label");
  p->add_option("--window", pl.window, "retarded, nonretarded or rmin,rmax");
  p->add_option("--points", pl.points, "Points in the window");
  p->add_option("--orientation", pl.orientation, "Direction of r_A - r_B as x,y,z");
  p->add_option("--jobs", pl.jobs, "Worker threads")->check(CLI::PositiveNumber);

  TableOptions tb;
  auto* t = app.add_subcommand("table1", "Power laws of all response combinations");
  t->add_option("--mol-a", tb.mol_a, "Molecule A file (default: bundled reference)");
  t->add_option("--mol-b", tb.mol_b, "Molecule B file (default: bundled reference)");
  t->add_option("--rows", tb.rows, "all or chiral");
  t->add_option("--orientation", tb.orientation, "Direction of r_A - r_B as x,y,z");
  t->add_option("--points", tb.points, "Points per fit window");
  t->add_option("--jobs", tb.jobs, "Worker threads")->check(CLI::PositiveNumber);

  VerifyOptions vf;
  auto* v = app.add_subcommand("verify", "Run the identity and cross-path checks");
  v->add_option("--seed", vf.seed, "Seed for sampled configurations");
  v->add_option("--only", vf.only, "denominators, contour or crosspath");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (c->parsed()) return cmd_curve(curve, out, err);
    if (p->parsed()) return cmd_powerlaw(pl, out, err);
    if (t->parsed()) return cmd_table1(tb, out);
    if (v->parsed()) return cmd_verify(vf, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const MoleculeFileError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const EvaluationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInput;
}

}  // namespace vdw
