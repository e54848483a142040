#include "heckelab/json_io.hpp"

namespace heckelab {

namespace {

[[noreturn]] void bad_field(const std::string& name, const std::string& why) {
  throw std::runtime_error("parse error at field '" + name + "': " + why);
}

const json& need(const json& j, const std::string& name) {
  if (!j.contains(name)) bad_field(name, "missing");
  return j.at(name);
}

int need_int(const json& j, const std::string& name) {
  const json& v = need(j, name);
  if (!v.is_number_integer()) bad_field(name, "expected an integer");
  return v.get<int>();
}

std::string need_str(const json& j, const std::string& name) {
  const json& v = need(j, name);
  if (!v.is_string()) bad_field(name, "expected a string");
  return v.get<std::string>();
}

}  // namespace

std::string scalar_to_string(const Scalar& s) {
  return s.str();
}

Scalar scalar_from_string(const Field* f, const std::string& s) {
  if (f->is_rational()) {
    mpq_class r;
    if (r.set_str(s, 10) != 0) throw std::runtime_error("bad rational literal '" + s + "'");
    r.canonicalize();
    return Scalar::rational(r);
  }
  size_t pos = 0;
  int code = std::stoi(s, &pos);
  if (pos != s.size() || code < 0 || code >= f->order())
    throw std::runtime_error("bad " + f->name() + " code '" + s + "'");
  return Scalar::gf_code(f, code);
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_string(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const json& j, const Field* f, const std::string& field_name) {
  if (!j.is_array() || j.empty()) bad_field(field_name, "expected a non-empty array of rows");
  int rows = static_cast<int>(j.size());
  if (!j[0].is_array()) bad_field(field_name, "expected rows to be arrays");
  int cols = static_cast<int>(j[0].size());
  Mat m(f, rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      bad_field(field_name, "ragged matrix");
    for (int c = 0; c < cols; ++c) {
      if (!j[i][c].is_string()) bad_field(field_name, "entries must be coefficient strings");
      m.at(i, c) = scalar_from_string(f, j[i][c].get<std::string>());
    }
  }
  return m;
}

json algebra_to_json(const HeckeAlgebra& H) {
  const FiniteGroup& g = H.group();
  json j;
  j["kind"] = "unipotent-hecke-algebra";
  j["group"] = g.descriptor();
  j["coeff"] = H.coeff()->name() == "Q" ? "q" : ("gf:" + std::to_string(H.coeff()->order()));
  json basis = json::array();
  for (int b = 0; b < H.dim(); ++b) {
    const GroupElt& e = g.elt(H.basis_element(b));
    json entries = json::array();
    for (int i = 0; i < g.n() * g.n(); ++i) entries.push_back(static_cast<int>(e.m[i]));
    basis.push_back(std::move(entries));
  }
  j["basis"] = std::move(basis);
  json qs = json::object();
  json cs = json::array();
  for (int s = 0; s < g.datum().rank(); ++s) {
    qs[std::to_string(s)] = H.quadratic(s).q_s;
    for (const auto& [z, c] : H.quadratic(s).c) {
      const GroupElt& e = g.elt(z);
      json entries = json::array();
      for (int i = 0; i < g.n() * g.n(); ++i) entries.push_back(static_cast<int>(e.m[i]));
      cs.push_back(json{{"s", s}, {"z", entries}, {"value", c}});
    }
  }
  j["q"] = std::move(qs);
  j["c"] = std::move(cs);
  json table = json::array();
  for (int a = 0; a < H.dim(); ++a)
    for (int b = 0; b < H.dim(); ++b)
      for (const auto& [k, v] : H.mul_basis(a, b))
        table.push_back(json::array({a, b, k, scalar_to_string(v)}));
  j["table"] = std::move(table);
  return j;
}

AlgebraDump algebra_dump_from_json(const json& j) {
  AlgebraDump d;
  if (need_str(j, "kind") != "unipotent-hecke-algebra") bad_field("kind", "unexpected value");
  d.group = need_str(j, "group");
  d.coeff = need_str(j, "coeff");
  const json& basis = need(j, "basis");
  if (!basis.is_array()) bad_field("basis", "expected an array");
  for (const auto& row : basis) d.basis.push_back(row.get<std::vector<int>>());
  const json& qs = need(j, "q");
  if (!qs.is_object()) bad_field("q", "expected an object");
  for (auto it = qs.begin(); it != qs.end(); ++it)
    d.q_s[std::stoi(it.key())] = it.value().get<long long>();
  for (const auto& entry : need(j, "c")) {
    d.c.emplace_back(need_int(entry, "s"), need(entry, "z").get<std::vector<int>>(),
                     need(entry, "value").get<long long>());
  }
  for (const auto& t : need(j, "table")) {
    if (!t.is_array() || t.size() != 4) bad_field("table", "expected [a,b,k,coeff] rows");
    d.table.emplace_back(t[0].get<int>(), t[1].get<int>(), t[2].get<int>(),
                         t[3].get<std::string>());
  }
  return d;
}

json algebra_dump_to_json(const AlgebraDump& d) {
  json j;
  j["kind"] = "unipotent-hecke-algebra";
  j["group"] = d.group;
  j["coeff"] = d.coeff;
  json basis = json::array();
  for (const auto& b : d.basis) basis.push_back(b);
  j["basis"] = std::move(basis);
  json qs = json::object();
  for (const auto& [s, q] : d.q_s) qs[std::to_string(s)] = q;
  j["q"] = std::move(qs);
  json cs = json::array();
  for (const auto& [s, z, v] : d.c) cs.push_back(json{{"s", s}, {"z", z}, {"value", v}});
  j["c"] = std::move(cs);
  json table = json::array();
  for (const auto& [a, b, k, c] : d.table) table.push_back(json::array({a, b, k, c}));
  j["table"] = std::move(table);
  return j;
}

bool algebra_dump_consistent(const AlgebraDump& d) {
  // rebuild from the descriptor and compare dumps
  auto colon1 = d.group.find(':');
  auto colon2 = d.group.find(':', colon1 + 1);
  if (colon1 == std::string::npos || colon2 == std::string::npos) return false;
  std::string fam = d.group.substr(0, colon1);
  int n = std::stoi(d.group.substr(colon1 + 1, colon2 - colon1 - 1));
  int q = std::stoi(d.group.substr(colon2 + 1));
  auto g = FiniteGroup::build(fam, n, q);
  HeckeAlgebra H(g, Field::parse(d.coeff));
  return algebra_dump_from_json(algebra_to_json(H)) == d;
}

json root_datum_to_json(const RootDatum& d) {
  json j;
  j["type"] = cartan_name(d.type());
  j["rank"] = d.rank();
  json pairing = json::array();
  for (const auto& row : d.cartan_matrix()) pairing.push_back(row);
  j["pairing"] = std::move(pairing);
  return j;
}

json double_cosets_to_json(const FiniteGroup& g, const DoubleCosets& dc) {
  (void)g;
  json cells = json::object();
  for (size_t c = 0; c < dc.members.size(); ++c)
    cells[std::to_string(c)] = dc.members[c];
  return json{{"kind", "double-cosets"}, {"cells", cells}};
}

json hecke_module_to_json(const HeckeModule& m) {
  const HeckeAlgebra& A = m.algebra();
  json j;
  j["kind"] = "hecke-module";
  j["algebra_id"] = A.group().descriptor();
  j["coeff"] = A.coeff()->is_rational() ? "q" : ("gf:" + std::to_string(A.coeff()->order()));
  j["rank"] = m.rank();
  json gens = json::object();
  auto tg = A.group().torus_gens();
  for (size_t i = 0; i < tg.size(); ++i)
    gens["torus" + std::to_string(i)] = mat_to_json(m.torus_gen_act(static_cast<int>(i)));
  for (int s = 0; s < A.group().datum().rank(); ++s)
    gens["simple" + std::to_string(s)] = mat_to_json(m.simple_act(s));
  j["generators"] = std::move(gens);
  return j;
}

HeckeModule hecke_module_from_json(const json& j, const HeckeAlgebra& algebra) {
  if (need_str(j, "kind") != "hecke-module") bad_field("kind", "unexpected value");
  if (need_str(j, "algebra_id") != algebra.group().descriptor())
    bad_field("algebra_id", "does not match the supplied algebra");
  int rank = need_int(j, "rank");
  const json& gens = need(j, "generators");
  auto grab = [&](const std::string& name) {
    if (!gens.contains(name)) bad_field("generators." + name, "missing");
    Mat m = mat_from_json(gens.at(name), algebra.coeff(), "generators." + name);
    if (m.rows() != rank || m.cols() != rank)
      bad_field("generators." + name, "matrix size does not match rank");
    return m;
  };
  std::vector<Mat> torus, simples;
  for (size_t i = 0; i < algebra.group().torus_gens().size(); ++i)
    torus.push_back(grab("torus" + std::to_string(i)));
  for (int s = 0; s < algebra.group().datum().rank(); ++s)
    simples.push_back(grab("simple" + std::to_string(s)));
  return HeckeModule(&algebra, rank, std::move(torus), std::move(simples));
}

json affine_module_to_json(const AffineModule& m) {
  const ProPAlgebra& A = m.algebra();
  json j;
  j["kind"] = "affine-module";
  j["family"] = A.family();
  j["n"] = A.n();
  j["q"] = A.q();
  j["blocks"] = A.blocks();
  j["coeff"] = A.coeff()->is_rational() ? "q" : ("gf:" + std::to_string(A.coeff()->order()));
  j["rank"] = m.rank();
  json gens = json::object();
  for (size_t i = 0; i < A.unit_gens().size(); ++i)
    gens["unit" + std::to_string(i)] = mat_to_json(m.unit_act(static_cast<int>(i)));
  for (size_t i = 0; i < A.omega_gens().size(); ++i)
    gens["omega" + std::to_string(i)] = mat_to_json(m.omega_act(static_cast<int>(i)));
  for (int s = 0; s < A.num_saff(); ++s)
    gens["saff" + std::to_string(s)] = mat_to_json(m.saff_act(s));
  j["generators"] = std::move(gens);
  return j;
}

AffineModule affine_module_from_json(const json& j) {
  if (need_str(j, "kind") != "affine-module") bad_field("kind", "unexpected value");
  std::string fam = need_str(j, "family");
  int n = need_int(j, "n");
  int q = need_int(j, "q");
  std::vector<int> blocks;
  if (j.contains("blocks")) blocks = j.at("blocks").get<std::vector<int>>();
  const Field* f = Field::parse(need_str(j, "coeff"));
  const ProPAlgebra* A = ProPAlgebra::intern(fam, n, q, f, blocks);
  int rank = need_int(j, "rank");
  const json& gens = need(j, "generators");
  if (!gens.is_object()) bad_field("generators", "expected an object");
  auto grab = [&](const std::string& name) {
    if (!gens.contains(name)) bad_field("generators." + name, "missing");
    Mat m = mat_from_json(gens.at(name), f, "generators." + name);
    if (m.rows() != rank || m.cols() != rank)
      bad_field("generators." + name, "matrix size does not match rank");
    return m;
  };
  std::vector<Mat> units, omegas, saffs;
  for (size_t i = 0; i < A->unit_gens().size(); ++i)
    units.push_back(grab("unit" + std::to_string(i)));
  for (size_t i = 0; i < A->omega_gens().size(); ++i)
    omegas.push_back(grab("omega" + std::to_string(i)));
  for (int s = 0; s < A->num_saff(); ++s) saffs.push_back(grab("saff" + std::to_string(s)));
  return AffineModule(A, rank, std::move(units), std::move(omegas), std::move(saffs));
}

json parse_json_document(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error("parse error: malformed JSON document");
  return j;
}

}  // namespace heckelab
