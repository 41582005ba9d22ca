#include "omega/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "omega/errors.hpp"
#include "omega/gravity.hpp"
#include "omega/identities.hpp"
#include "omega/lambertw.hpp"
#include "omega/poly.hpp"
#include "omega/quantum.hpp"
#include "omega/separation.hpp"
#include "omega/solver.hpp"

namespace omega::cli {

using json = nlohmann::ordered_json;

namespace {

struct Globals {
  bool json = false;
  bool csv = false;
  double tol = 1e-10;
};

class CertificateFailure : public Error {
 public:
  using Error::Error;
};

// One output record: command, inputs, results, version.
struct Record {
  std::string command;
  json inputs = json::object();
  json results = json::array();
  double tol;

  // Every numeric result carries its residual; the bound is re-checked here.
  void add(json result, double residual, double scale = 1) {
    const double bound = tol * std::max(1.0, std::abs(scale));
    if (!(std::abs(residual) <= bound)) {
      throw CertificateFailure(command + ": residual " + format_number(residual) + " exceeds bound " +
                               format_number(bound));
    }
    result["residual"] = residual;
    results.push_back(std::move(result));
  }

  static std::string format_number(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
  }
};

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string branch_path(std::initializer_list<int> branches) {
  std::string s;
  for (const int b : branches) {
    if (!s.empty()) s += ",";
    s += "W" + std::to_string(b);
  }
  return s;
}

void print_human_value(std::ostream& out, const json& v) {
  if (v.is_number_float()) {
    out << Record::format_number(v.get<double>());
  } else if (v.is_object() && v.contains("re") && v.contains("im")) {
    const double re = v["re"].get<double>(), im = v["im"].get<double>();
    out << Record::format_number(re) << (im < 0 ? " - " : " + ") << Record::format_number(std::abs(im)) << "i";
  } else if (v.is_array()) {
    out << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << ", ";
      print_human_value(out, v[i]);
    }
    out << "]";
  } else if (v.is_string()) {
    out << v.get<std::string>();
  } else {
    out << v.dump();
  }
}

void emit(const Record& r, const Globals& g, std::ostream& out) {
  if (g.json) {
    json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["results"] = r.results;
    j["version"] = kVersion;
    out << j.dump(2) << "\n";
    return;
  }
  out << r.command << "\n";
  for (std::size_t i = 0; i < r.results.size(); ++i) {
    out << "  [" << i << "]";
    for (const auto& [key, value] : r.results[i].items()) {
      out << " " << key << "=";
      print_human_value(out, value);
    }
    out << "\n";
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError("list", "bad number \"" + item + "\"");
    }
  }
  return out;
}

json roots_inputs_interval(Interval iv) { return json{iv.lo, iv.hi}; }

json root_json(const RootCertificate& r) {
  json j;
  j["value"] = r.x;
  j["multiplicity_hint"] = r.multiplicity_hint;
  j["bracket"] = json{r.bracket.lo, r.bracket.hi};
  j["branch_path"] = r.path;
  j["flags"] = r.flags;
  return j;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw CLI::ValidationError("grid", "expected lo:hi:step, got \"" + text + "\"");
  }
  double lo, hi, step;
  try {
    lo = std::stod(text.substr(0, first));
    hi = std::stod(text.substr(first + 1, second - first - 1));
    step = std::stod(text.substr(second + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("grid", "expected lo:hi:step, got \"" + text + "\"");
  }
  if (!(step > 0) || !(hi >= lo)) throw CLI::ValidationError("grid", "need step > 0 and hi >= lo");
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n > 1000000) throw CLI::ValidationError("grid", "too many grid points");
  std::vector<double> grid;
  for (long i = 0; i < n; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lambert W, generalized Omega functions and their physical applications", "omega"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_flag("--json", g.json, "Emit one JSON record");
  app.add_flag("--csv", g.csv, "Emit CSV rows (sweep modes)");
  app.add_option("--tol", g.tol, "Relative residual bound re-checked before printing")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", kVersion);

  // lambertw
  double lw_z = 0, lw_zi = 0;
  int lw_branch = 0;
  auto* lw = app.add_subcommand("lambertw", "Evaluate W_k(z)");
  lw->add_option("--z", lw_z, "Real part of the argument")->required();
  lw->add_option("--zi", lw_zi, "Imaginary part of the argument");
  lw->add_option("--branch", lw_branch, "Branch index k");

  // identity-check
  std::string id_kind = "product", id_z = "1,-1", id_zi, id_branches, id_fold_text;
  double id_a = std::exp(1.0), id_b = 1, id_alpha = std::sqrt(2.0);
  int id_fold = 0;
  auto* id = app.add_subcommand("identity-check", "Check an addition-law, product or tetration identity");
  id->add_option("--identity", id_kind, "addition | product | tetration")
      ->check(CLI::IsMember({"addition", "product", "tetration"}));
  id->add_option("--z", id_z, "Product arguments, real parts (comma separated)");
  id->add_option("--zi", id_zi, "Product arguments, imaginary parts");
  id->add_option("--branches", id_branches, "Branch index per product argument");
  id->add_option("--fold-branch", id_fold, "Branch for the intermediate W(f_j)");
  id->add_option("--a", id_a, "Addition law: first argument (real)");
  id->add_option("--b", id_b, "Addition law: second argument (real)");
  id->add_option("--alpha", id_alpha, "Tetration base (real)");

  // solve
  int sv_sign = -1;
  double sv_k = 1;
  std::string sv_P, sv_Q = "1";
  std::optional<double> sv_lo, sv_hi;
  auto* sv = app.add_subcommand("solve", "All real roots of e^{sign k x} = P(x)/Q(x)");
  sv->add_option("--sign", sv_sign, "Exponent sign, +1 or -1")->check(CLI::IsMember({-1, 1}));
  sv->add_option("--k", sv_k, "Rate k > 0")->required();
  sv->add_option("--P", sv_P, "Numerator coefficients, ascending")->required();
  sv->add_option("--Q", sv_Q, "Denominator coefficients, ascending");
  sv->add_option("--lo", sv_lo, "Interval start");
  sv->add_option("--hi", sv_hi, "Interval end");

  // separate
  SeparationProblem sp_p{1, 1, 1, 1, 1};
  int sp_b1 = 0, sp_b2 = 0;
  bool sp_rational = false, sp_extended = false;
  auto* sp = app.add_subcommand("separate", "Solve for the separation parameter epsilon");
  sp->add_option("--a", sp_p.a_o, "Scale a_o")->required();
  sp->add_option("--b", sp_p.b_o, "Scale b_o")->required();
  sp->add_option("--r1", sp_p.r1, "Root r1")->required();
  sp->add_option("--r2", sp_p.r2, "Root r2")->required();
  sp->add_option("--R", sp_p.R, "Scale R > 0")->required();
  sp->add_option("--branch1", sp_b1, "Branch of the first factor")->check(CLI::IsMember({0, -1}));
  sp->add_option("--branch2", sp_b2, "Branch of the second factor")->check(CLI::IsMember({0, -1}));
  sp->add_flag("--rational", sp_rational, "Use e^{-2Rx} = a_o(x-r1)/(b_o(x-r2))");
  sp->add_flag("--extended", sp_extended, "Search epsilon beyond (-1, 1), endpoints as limits");

  // demkov, special1, special2
  double dk_R = 1;
  auto* dk = app.add_subcommand("demkov", "Closed-form charge ratio and root");
  dk->add_option("--R", dk_R, "Separation R > 0")->required();
  double s1_r2 = 1, s1_b = 1, s1_R = 1;
  auto* s1 = app.add_subcommand("special1", "Exact solution with r1 = 1/b_o");
  s1->add_option("--r2", s1_r2)->required();
  s1->add_option("--b", s1_b)->required();
  s1->add_option("--R", s1_R)->required();
  double s2_r1 = 1, s2_b = 1, s2_R = 1;
  auto* s2 = app.add_subcommand("special2", "Exact solution with r2 = 1/a_o");
  s2->add_option("--r1", s2_r1)->required();
  s2->add_option("--b", s2_b)->required();
  s2->add_option("--R", s2_R)->required();

  // quantum
  WellSpec qw{1, 1, 1};
  std::string qw_grid;
  auto* qu = app.add_subcommand("quantum", "Bound states of the double delta well");
  qu->add_option("--q", qw.q, "Charge q > 0");
  qu->add_option("--lambda", qw.lambda, "Charge ratio lambda > 0");
  auto* qu_R = qu->add_option("--R", qw.R, "Separation R > 0");
  qu->add_option("--R-grid", qw_grid, "Sweep R over lo:hi:step")->excludes(qu_R);

  // gravity2map
  double g2_x = -2, g2_a = 0;
  bool g2_solve = false;
  auto* g2 = app.add_subcommand("gravity2map", "Map the two-body equation onto the canonical form");
  g2->add_option("--x", g2_x)->required();
  g2->add_option("--a", g2_a)->required();
  g2->add_flag("--solve", g2_solve, "Also solve for y");

  // gravity3
  std::string g3_m = "1,1,1", g3_grid, g3_conv = "decaying";
  ThreeBodySpec g3_spec;
  std::optional<double> g3_lo, g3_hi;
  auto* g3 = app.add_subcommand("gravity3", "Roots V of the three-body determining equation");
  g3->add_option("--m", g3_m, "Masses m1,m2,m3")->required();
  auto* g3_q = g3->add_option("--q", g3_spec.q, "Angle q (radians)");
  g3->add_option("--K", g3_spec.K, "Coupling K > 0")->required();
  g3->add_option("--R", g3_spec.R, "Scale R > 0")->required();
  g3->add_option("--q-grid", g3_grid, "Sweep q over lo:hi:step")->excludes(g3_q);
  g3->add_option("--convention", g3_conv, "decaying | printed")->check(CLI::IsMember({"decaying", "printed"}));
  g3->add_option("--lo", g3_lo, "Interval start");
  g3->add_option("--hi", g3_hi, "Interval end");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  SolverConfig config;
  config.certify_tol = std::min(config.certify_tol, g.tol);
  Record rec{"", json::object(), json::array(), g.tol};

  try {
    if (lw->parsed()) {
      rec.command = "lambertw";
      rec.inputs = json{{"z", complex_json({lw_z, lw_zi})}, {"branch", lw_branch}};
      const std::complex<double> z(lw_z, lw_zi);
      const BranchIndex k(lw_branch);
      const bool real_input = lw_zi == 0 && k.is_real() && detail::in_real_domain(lw_z, k);
      json r;
      if (real_input) {
        const double w = lambert_w(lw_z, k);
        r["value"] = w;
        r["branch_path"] = branch_path({lw_branch});
        r["flags"] = json::array();
        rec.add(std::move(r), std::abs(w_times_exp_w(w) - lw_z), std::abs(lw_z));
      } else {
        const std::complex<double> w = lambert_w(z, k);
        r["value"] = complex_json(w);
        r["branch_path"] = branch_path({lw_branch});
        r["flags"] = json::array({"complex"});
        rec.add(std::move(r), std::abs(w_times_exp_w(w) - z), std::abs(z));
      }
    } else if (id->parsed()) {
      rec.command = "identity-check";
      rec.inputs["identity"] = id_kind;
      if (id_kind == "addition") {
        rec.inputs["a"] = id_a;
        rec.inputs["b"] = id_b;
        const std::complex<double> lhs = lambert_w(std::complex<double>(id_a), kPrincipalBranch) +
                                         lambert_w(std::complex<double>(id_b), kPrincipalBranch);
        const std::complex<double> rhs = addition_law_rhs(id_a, id_b);
        rec.add(json{{"value", complex_json(rhs)}, {"direct", complex_json(lhs)}, {"branch_path", "W0"},
                     {"flags", json::array()}},
                std::abs(lhs - rhs), std::abs(lhs));
      } else if (id_kind == "tetration") {
        rec.inputs["alpha"] = id_alpha;
        const std::complex<double> h = tetration(id_alpha);
        // The tower limit satisfies alpha^H = H.
        const std::complex<double> self = std::pow(std::complex<double>(id_alpha), h);
        rec.add(json{{"value", complex_json(h)}, {"branch_path", "W0"}, {"flags", json::array()}},
                std::abs(self - h), std::abs(h));
      } else {
        const std::vector<double> re = parse_list(id_z);
        const std::vector<double> im = id_zi.empty() ? std::vector<double>(re.size(), 0.0) : parse_list(id_zi);
        const std::vector<double> br = id_branches.empty() ? std::vector<double>(re.size(), 0.0) : parse_list(id_branches);
        if (im.size() != re.size() || br.size() != re.size()) {
          throw CLI::ValidationError("identity-check", "--z, --zi and --branches must have equal length");
        }
        ProductArguments points;
        std::string path;
        json zs = json::array();
        for (std::size_t i = 0; i < re.size(); ++i) {
          points.push_back({{re[i], im[i]}, BranchIndex(static_cast<int>(br[i]))});
          zs.push_back(json{{"z", complex_json({re[i], im[i]})}, {"branch", static_cast<int>(br[i])}});
          path += (i ? "," : "") + std::string("W") + std::to_string(static_cast<int>(br[i]));
        }
        rec.inputs["points"] = zs;
        rec.inputs["fold_branch"] = id_fold;
        const std::complex<double> omega = omega_n_product(points, BranchIndex(id_fold));
        const std::complex<double> direct = direct_product(points);
        rec.add(json{{"value", complex_json(omega)}, {"direct", complex_json(direct)}, {"branch_path", path},
                     {"flags", json::array()}},
                std::abs(omega - direct), std::abs(direct));
      }
    } else if (sv->parsed()) {
      rec.command = "solve";
      TranscendentalEquation eq{sv_sign, sv_k, parse_polynomial(sv_P), parse_polynomial(sv_Q)};
      eq.validate();
      Interval iv = default_interval(eq);
      if (sv_lo) iv.lo = *sv_lo;
      if (sv_hi) iv.hi = *sv_hi;
      rec.inputs = json{{"sign", sv_sign}, {"k", sv_k}, {"P", to_string(eq.P)}, {"Q", to_string(eq.Q)},
                        {"interval", roots_inputs_interval(iv)}};
      for (const auto& r : solve_all(eq, iv, config)) rec.add(root_json(r), r.residual, r.scale);
    } else if (sp->parsed()) {
      rec.command = "separate";
      SeparationOptions o;
      o.branches = {BranchIndex(sp_b1), BranchIndex(sp_b2)};
      o.kind = sp_rational ? SeparationKind::Rational : SeparationKind::Quadratic;
      o.domain = sp_extended ? EpsilonDomain::Extended : EpsilonDomain::Open;
      rec.inputs = json{{"a_o", sp_p.a_o}, {"b_o", sp_p.b_o}, {"r1", sp_p.r1}, {"r2", sp_p.r2}, {"R", sp_p.R},
                        {"branch1", sp_b1}, {"branch2", sp_b2}, {"rational", sp_rational},
                        {"extended", sp_extended}};
      const SeparationOutcome outcome = separate(sp_p, o, config);
      for (const auto& s : outcome.solutions) {
        json flags = json::array({"decomposed"});
        if (s.epsilon_degenerate) flags.push_back("epsilon_degenerate");
        json r{{"value", s.x},
               {"epsilon", s.epsilon},
               {"scale_sign", s.scale_sign},
               {"z1", s.z1.real()},
               {"z2", s.z2.real()},
               {"split_residuals", json{s.split_residual_1, s.split_residual_2}},
               {"branch_path", branch_path({sp_b1, sp_b2})},
               {"flags", flags}};
        if (std::isfinite(s.epsilon_x_residual)) r["epsilon_x_residual"] = s.epsilon_x_residual;
        rec.add(std::move(r), s.equation_residual);
      }
      if (!outcome.decomposed) {
        for (const auto& n : outcome.numeric) {
          json r = root_json(n);
          r["flags"].push_back("not_decomposed");
          rec.add(std::move(r), n.residual, n.scale);
        }
      }
    } else if (dk->parsed()) {
      rec.command = "demkov";
      rec.inputs = json{{"R", dk_R}};
      const DemkovSolution d = demkov_lambda(dk_R);
      rec.add(json{{"value", d.x}, {"lambda", d.lambda}, {"branch_path", "W0"}, {"flags", json::array()}},
              d.residual);
    } else if (s1->parsed() || s2->parsed()) {
      const bool first = s1->parsed();
      rec.command = first ? "special1" : "special2";
      const SpecialSolution s = first ? special_solution_1(s1_r2, s1_b, s1_R) : special_solution_2(s2_r1, s2_b, s2_R);
      rec.inputs = first ? json{{"r2", s1_r2}, {"b_o", s1_b}, {"R", s1_R}} : json{{"r1", s2_r1}, {"b_o", s2_b}, {"R", s2_R}};
      rec.add(json{{"value", s.x}, {"a_o", s.a_o}, {"b_o", s.b_o}, {"r1", s.r1}, {"r2", s.r2},
                   {"branch_path", "closed-form"}, {"flags", json::array()}},
              s.residual);
    } else if (qu->parsed()) {
      rec.command = "quantum";
      const std::vector<double> Rs = qw_grid.empty() ? std::vector<double>{qw.R} : parse_grid(qw_grid);
      rec.inputs = json{{"q", qw.q}, {"lambda", qw.lambda}};
      if (qw_grid.empty()) rec.inputs["R"] = qw.R; else rec.inputs["R_grid"] = qw_grid;
      for (const double R : Rs) {
        WellSpec w = qw;
        w.R = R;
        for (const auto& s : d_general(w, config)) {
          json flags = json::array();
          if (s.at_continuum) flags.push_back("at_continuum");
          if (s.certificate.multiplicity_hint == 2) flags.push_back("double_root");
          rec.add(json{{"R", R}, {"value", s.d}, {"energy", s.energy}, {"determinant_residual", s.determinant_residual},
                       {"branch_path", s.certificate.path}, {"flags", flags}},
                  s.certificate.residual, s.certificate.scale);
        }
      }
      if (g.csv) {
        out << "R,d,E,residual,at_continuum\n";
        out << std::setprecision(17);
        for (const auto& r : rec.results) {
          out << r["R"].get<double>() << "," << r["value"].get<double>() << "," << r["energy"].get<double>() << ","
              << r["residual"].get<double>() << ","
              << (std::find(r["flags"].begin(), r["flags"].end(), "at_continuum") != r["flags"].end() ? 1 : 0)
              << "\n";
        }
        return kSuccess;
      }
    } else if (g2->parsed()) {
      rec.command = "gravity2map";
      rec.inputs = json{{"x", g2_x}, {"a", g2_a}};
      const TwoBodyMap m = two_body_roundtrip(g2_x, g2_a);
      json flags = json::array();
      if (!m.physical()) flags.push_back("unphysical_R");
      rec.add(json{{"lambda", m.lambda}, {"R", m.R}, {"branch_path", "map"}, {"flags", flags}}, 0.0);
      if (g2_solve) {
        for (const auto& s : two_body_solve(g2_x, g2_a, config)) {
          rec.add(json{{"value", s.y}, {"d", s.d}, {"canonical_residual", s.canonical_residual},
                       {"branch_path", "canonical"}, {"flags", json::array()}},
                  std::max(s.two_body_residual, s.canonical_residual));
        }
      }
    } else if (g3->parsed()) {
      rec.command = "gravity3";
      const std::vector<double> m = parse_list(g3_m);
      if (m.size() != 3) throw CLI::ValidationError("gravity3", "--m needs exactly three masses");
      g3_spec.m1 = m[0];
      g3_spec.m2 = m[1];
      g3_spec.m3 = m[2];
      g3_spec.convention = g3_conv == "decaying" ? ExponentConvention::Decaying : ExponentConvention::AsPrinted;
      const std::vector<double> qs = g3_grid.empty() ? std::vector<double>{g3_spec.q} : parse_grid(g3_grid);
      rec.inputs = json{{"m", m}, {"K", g3_spec.K}, {"R", g3_spec.R}, {"R_t", reduced_scale(g3_spec.K, g3_spec.R)},
                        {"convention", g3_conv}};
      if (g3_grid.empty()) rec.inputs["q"] = g3_spec.q; else rec.inputs["q_grid"] = g3_grid;
      for (const double q : qs) {
        ThreeBodySpec s = g3_spec;
        s.q = q;
        Interval iv = three_body_interval(s);
        if (g3_lo) iv.lo = *g3_lo;
        if (g3_hi) iv.hi = *g3_hi;
        for (const auto& r : three_body_solve(s, iv, config)) {
          json j = root_json(r);
          j["q"] = q;
          rec.add(std::move(j), r.residual, r.scale);
        }
      }
      if (g.csv) {
        out << "q,V,residual,flags\n";
        out << std::setprecision(17);
        for (const auto& r : rec.results) {
          std::string flags;
          for (const auto& f : r["flags"]) flags += (flags.empty() ? "" : ";") + f.get<std::string>();
          out << r["q"].get<double>() << "," << r["value"].get<double>() << "," << r["residual"].get<double>() << ","
              << flags << "\n";
        }
        return kSuccess;
      }
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const DegenerateError& e) {
    err << "degenerate: " << e.what() << "\n";
    return kDomain;
  } catch (const PoleCollisionError& e) {
    err << "pole collision: " << e.what() << "\n";
    return kDomain;
  } catch (const NoSolutionError& e) {
    err << "no solution: " << e.what() << "\n";
    return kNoSolution;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << "\n";
    return kNoSolution;
  } catch (const CertificateFailure& e) {
    err << "certificate: " << e.what() << "\n";
    return kNoSolution;
  }

  if (g.csv && !g.json) {
    err << "error: --csv applies to the quantum --R-grid and gravity3 --q-grid sweeps\n";
    return kUsage;
  }
  emit(rec, g, out);
  return kSuccess;
}

}  // namespace omega::cli
