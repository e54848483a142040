#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "heckelab/json_io.hpp"
#include "heckelab/reports.hpp"

using namespace heckelab;

namespace {

void write_output(const nlohmann::json& j, const std::string& out) {
  std::string text = j.dump(2);
  if (out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open output path " + out);
    f << text << "\n";
  }
}

std::tuple<std::string, int> parse_type(const std::string& type) {
  if (type == "gl2") return {"gl", 2};
  if (type == "gl3") return {"gl", 3};
  if (type == "sl2") return {"sl", 2};
  throw std::invalid_argument("type must be one of gl2, sl2, gl3");
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

ProPWeyl parse_expr_token(const ProPAlgebra& A, const std::string& tok) {
  if (tok == "rho") {
    if (A.omega_gens().empty()) throw std::invalid_argument("no length-zero generator here");
    return A.omega_gens()[0];
  }
  if (tok.size() >= 2 && tok[0] == 's') {
    int k = std::stoi(tok.substr(1));
    int rank = A.datum().rank();
    int idx = k == 0 ? rank : k - 1;  // s0 is the affine node
    if (idx < 0 || idx >= A.num_saff())
      throw std::invalid_argument("no such simple affine reflection " + tok);
    return A.lift_saff(idx);
  }
  auto bracket = tok.find('[');
  if (bracket != std::string::npos && tok.back() == ']') {
    std::string head = tok.substr(0, bracket);
    std::string body = tok.substr(bracket + 1, tok.size() - bracket - 2);
    std::vector<int> nums;
    std::stringstream ss(body);
    std::string piece;
    while (std::getline(ss, piece, ',')) nums.push_back(std::stoi(trim(piece)));
    if (head == "t") {
      if (static_cast<int>(nums.size()) != A.n())
        throw std::invalid_argument("t[...] needs " + std::to_string(A.n()) + " coordinates");
      return A.translation(nums);
    }
    if (head == "u") {
      if (nums.empty() || nums[0] < 0 || nums[0] >= A.n())
        throw std::invalid_argument("u[i(,k)] needs a coordinate index");
      int power = nums.size() > 1 ? nums[1] : 1;
      std::vector<int> units(A.n(), 1);
      int zeta = A.unit_field()->unit_generator();
      int val = 1;
      int e = ((power % (A.q() - 1)) + (A.q() - 1)) % (A.q() - 1);
      for (int i = 0; i < e; ++i) val = A.unit_field()->mul(val, zeta);
      units[nums[0]] = val;
      if (A.det_one()) {
        if (nums[0] + 1 >= A.n()) throw std::invalid_argument("unit index out of range for sl");
        units[nums[0] + 1] = A.unit_field()->inv(val);
      }
      return A.unit_torus(units);
    }
  }
  throw std::invalid_argument("cannot parse token '" + tok + "'");
}

void print_element(const ProPAlgebra& A, const ProPAlgebra::Elt& e) {
  if (e.empty()) {
    std::cout << "0\n";
    return;
  }
  for (const auto& [w, c] : e) {
    std::cout << c.str() << " * tau[ perm=(";
    for (size_t i = 0; i < w.sigma.p.size(); ++i)
      std::cout << (i ? " " : "") << w.sigma.p[i];
    std::cout << ") v=(";
    for (size_t i = 0; i < w.val.size(); ++i) std::cout << (i ? "," : "") << w.val[i];
    std::cout << ") u=(";
    for (size_t i = 0; i < w.unit.size(); ++i) std::cout << (i ? "," : "") << w.unit[i];
    std::cout << ") len=" << A.length(w) << " ]\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heckelab: unipotent and pro-p Iwahori Hecke algebra checks"};
  app.require_subcommand(1);

  std::string suite_name = "all", group = "gl:2:3", coeff, out, module_path, type = "gl2";
  std::string expr;
  int p = 0, jobs = 1;
  uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--group", group, "finite group fam:n:q (default gl:2:3)");
    cmd->add_option("--p", p, "residue characteristic for the affine suites");
    cmd->add_option("--coeff", coeff, "coefficient field: fp:P, gf:Q or q");
    cmd->add_option("--seed", seed, "seed for sampled checks (default 0)");
    cmd->add_option("--jobs", jobs, "parallel checks (default 1)");
    cmd->add_option("--out", out, "write the JSON report to this path");
  };

  CLI::App* suite = app.add_subcommand("suite", "run a verification suite");
  suite->add_option("--name,name", suite_name, "suite name (default all)");
  add_common(suite);

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite (alias)");
  verify->add_option("--suite", suite_name, "suite name")->required();
  add_common(verify);

  CLI::App* oracle = app.add_subcommand("oracle", "dump the convolution-oracle structure constants");
  add_common(oracle);

  CLI::App* affine = app.add_subcommand("affine", "pro-p Iwahori Hecke algebra tools");
  CLI::App* affine_mul = affine->add_subcommand("mul", "multiply tau-basis elements");
  affine_mul->add_option("--type", type, "gl2, sl2 or gl3")->required();
  affine_mul->add_option("--p", p, "residue characteristic")->required();
  affine_mul->add_option("--coeff", coeff, "coefficient field");
  affine_mul->add_option("--expr", expr, "product, e.g. \"t[1,0] * s0 * s1\"")->required();
  CLI::App* affine_classify = affine->add_subcommand("classify", "supersingularity report");
  affine_classify->add_option("--module", module_path, "module JSON path")->required();
  affine_classify->add_option("--out", out, "write the report to this path");

  CLI::App* classify = app.add_subcommand("classify", "supersingularity report for a module");
  classify->add_option("--module", module_path, "module JSON path")->required();
  classify->add_option("--out", out, "write the report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (suite->parsed() || verify->parsed()) {
      SuiteConfig cfg;
      cfg.suite = suite_name == "finite" ? "finite-diagrams" : suite_name;
      cfg.group = group;
      cfg.p = p;
      cfg.coeff = coeff;
      cfg.seed = seed;
      cfg.jobs = jobs;
      Report rep = run_suite(cfg);
      write_output(rep.to_json(), out);
      return rep.failures() == 0 ? 0 : 1;
    }
    if (oracle->parsed()) {
      auto [fam, n, q] = parse_group(group);
      auto g = FiniteGroup::build(fam, n, q);
      HeckeAlgebra H(g, coeff.empty() ? Field::rationals() : Field::parse(coeff));
      write_output(algebra_to_json(H), out);
      return 0;
    }
    if (affine_mul->parsed()) {
      auto [fam, n] = parse_type(type);
      const Field* f = coeff.empty() ? Field::gf(p) : Field::parse(coeff);
      ProPAlgebra A(fam, n, p, f);
      ProPAlgebra::Elt acc = A.one();
      std::stringstream ss(expr);
      std::string tok;
      while (std::getline(ss, tok, '*')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        acc = A.mul(acc, A.tau(parse_expr_token(A, tok)));
      }
      print_element(A, acc);
      return 0;
    }
    if (affine_classify->parsed() || classify->parsed()) {
      std::ifstream in(module_path);
      if (!in) throw std::runtime_error("cannot read module file " + module_path);
      std::stringstream buf;
      buf << in.rdbuf();
      AffineModule m = affine_module_from_json(parse_json_document(buf.str()));
      SupersingularityReport rep = is_supersingular(m);
      nlohmann::json j;
      j["module_rank"] = m.rank();
      j["supersingular"] = rep.supersingular;
      nlohmann::json levis = nlohmann::json::array();
      for (const auto& line : rep.levis)
        levis.push_back({{"J", line.J},
                         {"theta_nilpotent", line.theta_nilpotent},
                         {"theta_star_nilpotent", line.theta_star_nilpotent}});
      j["levis"] = std::move(levis);
      write_output(j, out);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
