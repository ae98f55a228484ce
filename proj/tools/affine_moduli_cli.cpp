// Command-line front end: analyze | catalog | act | stabilizer |
// torsion-bound | verify. Documents are read from --input and written to
// --out, with "-" meaning stdin/stdout. Exit codes are fixed for scripting:
//   0 success            4 unknown family or verify scope
//   1 verification fail  5 invalid parameters
//   2 parse error        6 singular matrix
//   3 non-finite input

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affine_moduli/affine_moduli.hpp"
#include "affine_moduli/verify.hpp"

namespace am = affine_moduli;

namespace {

std::string read_stream(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw am::ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_stream(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw am::Error("cannot open output file: " + path);
  out << text;
}

std::vector<double> parse_number_list(const std::string& csv) {
  std::vector<double> out;
  if (csv.empty()) return out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
        ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw am::BadParams("invalid number in list: '" + item + "'");
    }
  }
  return out;
}

std::string fmt(double v) { return am::detail::format_double(v); }

std::string fmt_matrix(const am::Mat& m, const std::string& indent) {
  std::string out;
  for (int i = 0; i < m.rows; ++i) {
    out += indent;
    for (int j = 0; j < m.cols; ++j) {
      if (j) out += " ";
      out += fmt(m(i, j));
    }
    out += "\n";
  }
  return out;
}

int run_analyze(const std::string& input, double tol) {
  const am::TensorDocument doc = am::parse(read_stream(input));
  const am::Christoffel g = am::to_christoffel(doc);
  std::string out;
  out += "schema: " + doc.schema_version + "\n";
  out += "m: " + std::to_string(doc.m) + "\n";
  for (const auto& [k, v] : doc.metadata) out += k + ": " + v + "\n";
  out += std::string("torsion-free: ") + (am::is_torsion_free(g, tol) ? "yes" : "no") + "\n";
  const am::TwoTensor rho = am::ricci(g);
  out += "ricci:\n" + fmt_matrix(rho.entries, "  ");
  const am::SymForm rho_s = am::symmetric_ricci(g);
  out += "symmetric ricci:\n" + fmt_matrix(rho_s.entries, "  ");
  const am::Signature sig = am::signature(rho_s);
  out += "signature (" + std::to_string(sig.p) + "," + std::to_string(sig.q) +
         ")   p = negative/timelike, q = positive/spacelike\n";
  if (sig.degenerate) out += "degenerate Ricci\n";
  const am::GenericityReport gen = am::generic_poly(g);
  out += "genericity polynomial: " + fmt(gen.poly_value) + "\n";
  out += std::string("generic: ") + (gen.generic ? "yes" : "no") + "\n";
  const am::StabilizerReport stab = am::stabilizer_lie_algebra(g);
  out += "stabilizer dim " + std::to_string(stab.lie_dimension) + "\n";
  out += "torsion order bound: " +
         std::to_string(am::torsion_order_bound(am::support_pattern(g, tol))) + "\n";
  std::cout << out;
  return 0;
}

int run_catalog(const std::string& name, const std::string& params_csv,
                const std::string& out_path) {
  const auto id = am::catalog::family_from_name(name);
  if (!id) throw am::UnknownFamily("unknown family '" + name + "'");
  std::vector<double> params = parse_number_list(params_csv);
  if (params.empty()) params = am::catalog::default_params(*id);
  const am::Christoffel g = am::catalog::build(*id, params);
  std::string params_str;
  for (size_t i = 0; i < params.size(); ++i)
    params_str += (i ? "," : "") + fmt(params[i]);
  am::TensorDocument doc =
      am::from_christoffel(g, {{"family", name}, {"params", params_str}});
  write_stream(out_path, am::emit(doc));
  return 0;
}

int run_act(const std::string& input, const std::string& matrix_csv,
            const std::string& out_path) {
  am::TensorDocument doc = am::parse(read_stream(input));
  const am::Christoffel g = am::to_christoffel(doc);
  const std::vector<double> vals = parse_number_list(matrix_csv);
  const int m = doc.m;
  if (static_cast<int>(vals.size()) != m * m)
    throw am::BadParams("act: expected " + std::to_string(m * m) +
                        " matrix entries, got " + std::to_string(vals.size()));
  am::Mat a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = vals[static_cast<size_t>(i) * m + j];
  const am::Christoffel moved = am::act(am::LinearMap(a), g);
  am::TensorDocument out = am::from_christoffel(moved, doc.metadata);
  out.metadata["transformed"] = "basis change applied; matrix " + matrix_csv;
  write_stream(out_path, am::emit(out));
  return 0;
}

int run_stabilizer(const std::string& input, double tol_rank) {
  const am::TensorDocument doc = am::parse(read_stream(input));
  const am::Christoffel g = am::to_christoffel(doc);
  const am::StabilizerReport rep = am::stabilizer_lie_algebra(g, tol_rank);
  std::string out = "stabilizer dim " + std::to_string(rep.lie_dimension) + "\n";
  out += "singular values:";
  for (double s : rep.singular_values) out += " " + fmt(s);
  out += "\n";
  for (size_t i = 0; i < rep.lie_basis.size(); ++i) {
    out += "basis element " + std::to_string(i) + ":\n";
    out += fmt_matrix(rep.lie_basis[i], "  ");
  }
  std::cout << out;
  return 0;
}

int run_torsion_bound(const std::string& input, double tol) {
  const am::TensorDocument doc = am::parse(read_stream(input));
  const am::Christoffel g = am::to_christoffel(doc);
  const am::SupportPattern pat = am::support_pattern(g, tol);
  int support = 0;
  for (auto b : pat.theta) support += b;
  std::cout << "support size: " << support << "\n";
  std::cout << "torsion order bound: " << am::torsion_order_bound(pat) << "\n";
  return 0;
}

int run_verify(const std::string& scope, std::uint64_t seed) {
  if (!am::verify::valid_scope(scope))
    throw am::UnknownFamily("unknown verify scope '" + scope + "'");
  const std::vector<am::verify::CriterionReport> reports =
      am::verify::run_verification(scope, seed);
  bool all_pass = true;
  for (const am::verify::CriterionReport& rep : reports) {
    for (const am::verify::CheckResult& c : rep.checks) {
      std::cout << (c.pass ? "  pass  " : "  FAIL  ") << rep.id << " " << c.name;
      if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
      std::cout << "\n";
      all_pass = all_pass && c.pass;
    }
    std::cout << (rep.pass() ? "PASS" : "FAIL") << " " << rep.id << ": " << rep.title
              << "\n";
  }
  std::cout << (all_pass ? "verification passed" : "verification FAILED") << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constant-coefficient affine connection toolkit"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string out_path = "-";
  std::string params;
  std::string name;
  std::string scope = "all";
  double tol = 1e-10;
  double tol_rank = 1e-8;
  std::uint64_t seed = 7;

  CLI::App* analyze = app.add_subcommand("analyze", "full report for a tensor document");
  analyze->add_option("--input,-i", input, "document path or '-'");
  analyze->add_option("--tol", tol, "support / torsion tolerance");

  CLI::App* cat = app.add_subcommand("catalog", "emit a named structure");
  cat->add_option("name", name, "family name")->required();
  cat->add_option("--params,-p", params, "comma-separated parameters");
  cat->add_option("--out,-o", out_path, "output path or '-'");

  CLI::App* act_cmd = app.add_subcommand("act", "apply a basis change");
  act_cmd->add_option("--input,-i", input, "document path or '-'");
  act_cmd->add_option("--params,-p", params, "matrix entries, row-major, comma-separated")
      ->required();
  act_cmd->add_option("--out,-o", out_path, "output path or '-'");

  CLI::App* stab = app.add_subcommand("stabilizer", "infinitesimal stabilizer report");
  stab->add_option("--input,-i", input, "document path or '-'");
  stab->add_option("--tol", tol_rank, "singular value rank tolerance");

  CLI::App* tb = app.add_subcommand("torsion-bound", "order bound from the support");
  tb->add_option("--input,-i", input, "document path or '-'");
  tb->add_option("--tol", tol, "support tolerance");

  CLI::App* ver = app.add_subcommand("verify", "run built-in verification checks");
  ver->add_option("scope", scope, "all | tensor | curvature | genericity | symmetry | catalog | cli");
  ver->add_option("--seed", seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(input, tol);
    if (cat->parsed()) return run_catalog(name, params, out_path);
    if (act_cmd->parsed()) return run_act(input, params, out_path);
    if (stab->parsed()) return run_stabilizer(input, tol_rank);
    if (tb->parsed()) return run_torsion_bound(input, tol);
    if (ver->parsed()) return run_verify(scope, seed);
  } catch (const am::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const am::NonFinite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const am::UnknownFamily& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const am::BadParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const am::ZeroParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const am::DegenerateRicci& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const am::SingularMap& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
