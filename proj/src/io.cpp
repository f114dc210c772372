#include "sgk/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sgk::io {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

/// Location inside a document, used to prefix error messages.
struct Ctx {
  std::string file;
  std::string path;
  Ctx at(const std::string& key) const { return {file, path + "/" + key}; }
  Ctx at(std::size_t i) const { return {file, path + "/" + std::to_string(i)}; }
  [[noreturn]] void fail(Errc code, const std::string& msg) const {
    raise(code, file + ": " + (path.empty() ? "/" : path) + ": " + msg);
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    auto p = msg.find(": ", msg.find("parse error"));
    if (p != std::string::npos) msg = msg.substr(p + 2);
    raise(Errc::Parse, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

const json& field(const json& j, const char* key, const Ctx& c) {
  if (!j.is_object()) c.fail(Errc::InvalidInput, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) c.fail(Errc::InvalidInput, std::string("missing field '") + key + "'");
  return *it;
}

const json* optional_field(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& array(const json& j, const Ctx& c) {
  if (!j.is_array()) c.fail(Errc::InvalidInput, "expected an array");
  return j;
}

std::string str(const json& j, const Ctx& c) {
  if (!j.is_string()) c.fail(Errc::InvalidInput, "expected a string");
  return j.get<std::string>();
}

std::size_t count(const json& j, const Ctx& c) {
  if (!j.is_number_unsigned()) c.fail(Errc::InvalidInput, "expected a non-negative integer");
  return j.get<std::size_t>();
}

Scalar scalar(const json& j, const Ctx& c) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) c.fail(Errc::InvalidInput, "expected a scalar string such as \"1/2\" or \"1+2*i\"");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const Error& e) {
    c.fail(Errc::Parse, e.what());
  }
}

ScalarMatrix matrix(const json& j, const Ctx& c) {
  array(j, c);
  std::size_t rows = j.size(), cols = rows ? array(j[0], c.at(0)).size() : 0;
  ScalarMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = array(j[r], c.at(r));
    if (row.size() != cols) c.at(r).fail(Errc::DimensionMismatch, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
    for (std::size_t k = 0; k < cols; ++k) m(r, k) = scalar(row[k], c.at(r).at(k));
  }
  return m;
}

Parity parity(const json& j, const Ctx& c) {
  std::string s = str(j, c);
  if (s == "even" || s == "0") return Parity::Even;
  if (s == "odd" || s == "1") return Parity::Odd;
  c.fail(Errc::InvalidInput, "parity must be \"even\" or \"odd\", got '" + s + "'");
}

std::size_t basis_index(const LieSuperAlgebra& g, const json& j, const Ctx& c) {
  std::string name = str(j, c);
  auto i = g.basis().find(name);
  if (!i) c.fail(Errc::InvalidInput, "unknown basis element '" + name + "'");
  return *i;
}

Vec linear_combination(const LieSuperAlgebra& g, const json& j, const Ctx& c) {
  Vec v(g.dim());
  if (j.is_string()) {
    v[basis_index(g, j, c)] = Scalar(1);
    return v;
  }
  array(j, c);
  for (std::size_t k = 0; k < j.size(); ++k) {
    Ctx ck = c.at(k);
    std::size_t i = basis_index(g, field(j[k], "basis", ck), ck.at("basis"));
    v[i] += scalar(field(j[k], "coeff", ck), ck.at("coeff"));
  }
  return v;
}

FunctionExpr expr(const GroupModel& m, const json& j, const Ctx& c) {
  if (j.is_number_integer()) return FunctionExpr(Scalar(j.get<long>()));
  try {
    return m.parse(str(j, c));
  } catch (const Error& e) {
    c.fail(Errc::Parse, e.what());
  }
}

template <class F>
auto wrap(const Ctx& c, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    c.fail(e.code(), e.what());
  }
}

std::string resolve(const std::string& base_file, const std::string& ref) {
  fs::path p(ref);
  if (p.is_relative()) p = fs::path(base_file).parent_path() / p;
  std::error_code ec;
  fs::path canon = fs::weakly_canonical(p, ec);
  return (ec ? p : canon).lexically_normal().string();
}

std::string key_of(const std::string& path) { return resolve(".", fs::absolute(path).string()); }

HopfConventions conventions(const json& j, const Ctx& c) {
  HopfConventions h;
  if (!j.is_object()) c.fail(Errc::InvalidInput, "expected an object of boolean flags");
  for (auto it = j.begin(); it != j.end(); ++it) {
    Ctx ck = c.at(it.key());
    if (!it->is_boolean()) ck.fail(Errc::InvalidInput, "expected true or false");
    bool v = it->get<bool>();
    if (it.key() == "tensor_koszul") h.tensor_koszul = v;
    else if (it.key() == "antipode_negates") h.antipode_negates = v;
    else if (it.key() == "antipode_reorder_sign") h.antipode_reorder_sign = v;
    else if (it.key() == "flip_koszul") h.flip_koszul = v;
    else ck.fail(Errc::InvalidInput, "unknown convention flag");
  }
  return h;
}

AlgebraPtr algebra_from_json(const json& j, const Ctx& c, const LoadOptions& opts) {
  std::string label = j.contains("label") ? str(j["label"], c.at("label")) : fs::path(c.file).stem().string();
  const json& bj = array(field(j, "basis", c), c.at("basis"));
  std::vector<std::string> names;
  std::vector<Parity> pars;
  for (std::size_t k = 0; k < bj.size(); ++k) {
    Ctx ck = c.at("basis").at(k);
    names.push_back(str(field(bj[k], "name", ck), ck.at("name")));
    pars.push_back(parity(field(bj[k], "parity", ck), ck.at("parity")));
  }
  SuperBasis basis = wrap(c.at("basis"), [&] { return SuperBasis(names, pars); });
  LieSuperAlgebra shell(basis, {});

  std::vector<BracketEntry> entries;
  if (const json* br = optional_field(j, "brackets")) {
    Ctx cb = c.at("brackets");
    array(*br, cb);
    for (std::size_t k = 0; k < br->size(); ++k) {
      Ctx ck = cb.at(k);
      const json& e = (*br)[k];
      std::size_t l = basis_index(shell, field(e, "left", ck), ck.at("left"));
      std::size_t r = basis_index(shell, field(e, "right", ck), ck.at("right"));
      entries.push_back({l, r, linear_combination(shell, field(e, "result", ck), ck.at("result"))});
    }
  }

  std::optional<MatrixRealization> real;
  if (const json* mr = optional_field(j, "matrix_realization")) {
    Ctx cr = c.at("matrix_realization");
    std::size_t m = count(field(*mr, "m", cr), cr.at("m")), n = count(field(*mr, "n", cr), cr.at("n"));
    MatrixRealization r;
    r.index_parity.assign(m, Parity::Even);
    r.index_parity.resize(m + n, Parity::Odd);
    r.matrices.assign(basis.size(), ScalarMatrix());
    std::vector<bool> seen(basis.size(), false);
    const json& mats = array(field(*mr, "matrices", cr), cr.at("matrices"));
    for (std::size_t k = 0; k < mats.size(); ++k) {
      Ctx ck = cr.at("matrices").at(k);
      std::size_t i = basis_index(shell, field(mats[k], "basis", ck), ck.at("basis"));
      if (seen[i]) ck.fail(Errc::InvalidInput, "second matrix for '" + names[i] + "'");
      seen[i] = true;
      r.matrices[i] = matrix(field(mats[k], "matrix", ck), ck.at("matrix"));
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) cr.fail(Errc::InvalidInput, "no matrix for '" + names[i] + "'");
    real = std::move(r);
  }

  auto alg = wrap(c.at("brackets"), [&] {
    return std::make_shared<const LieSuperAlgebra>(basis, entries, real, label);
  });
  if (!opts.allow_invalid) {
    JacobiReport jr = check_jacobi(*alg);
    if (!jr.pass) {
      const auto& v = jr.violations.front();
      c.at("brackets").fail(Errc::InvalidInput, "Jacobi identity fails on (" + names[v.x] + "," + names[v.y] + "," + names[v.z] +
                                                    "): residual " + vec_to_string(v.residual, names));
    }
    if (alg->has_realization()) {
      auto mm = alg->realization_mismatches();
      if (!mm.empty())
        c.at("brackets").fail(Errc::InvalidInput, "bracket [" + names[mm[0].first] + "," + names[mm[0].second] +
                                                      "] disagrees with the matrix realization");
    }
  }
  return alg;
}

std::vector<std::string> rows_of(const json& j, const Ctx& c) {
  array(j, c);
  std::vector<std::string> rows;
  for (std::size_t k = 0; k < j.size(); ++k) rows.push_back(str(j[k], c.at(k)));
  return rows;
}

std::vector<GroupPoint> points(const json& j, const Ctx& c) {
  array(j, c);
  std::vector<GroupPoint> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(matrix(j[k], c.at(k)));
  return out;
}

json read_json(const std::string& path) { return parse_text(read_file(path), path); }

}  // namespace

AlgebraPtr parse_algebra(const std::string& text, const std::string& source, const LoadOptions& opts) {
  json j = parse_text(text, source);
  return algebra_from_json(j, Ctx{source, ""}, opts);
}

std::string document_kind(const std::string& path) {
  json j = read_json(path);
  if (!j.is_object()) raise(Errc::InvalidInput, path + ": expected a JSON object");
  if (j.contains("subgroup_pattern")) return "subpair";
  if (j.contains("table")) return "section";
  if (j.contains("group_map")) return "morphism";
  if (j.contains("pattern") || j.contains("pair")) return "pair";
  return "algebra";
}

AlgebraFile Loader::algebra(const std::string& path) {
  std::string key = key_of(path);
  auto it = algebras_.find(key);
  if (it != algebras_.end()) return it->second;
  json j = read_json(path);
  Ctx c{path, ""};
  AlgebraFile af;
  if (j.is_object() && !j.contains("basis") && j.contains("algebra")) {
    const json& a = j["algebra"];
    if (a.is_string()) af = algebra(resolve(path, a.get<std::string>()));
    else af.algebra = algebra_from_json(a, c.at("algebra"), opts_);
  } else {
    af.algebra = algebra_from_json(j, c, opts_);
  }
  if (const json* hc = optional_field(j, "hopf_conventions")) af.conventions = conventions(*hc, c.at("hopf_conventions"));
  algebras_[key] = af;
  return af;
}

PairPtr Loader::pair(const std::string& path) {
  std::string key = key_of(path);
  auto it = pairs_.find(key);
  if (it != pairs_.end()) return it->second;
  json j = read_json(path);
  Ctx c{path, ""};
  if (j.is_object() && j.contains("pair") && !j.contains("pattern")) {
    PairPtr p = pair(resolve(path, str(j["pair"], c.at("pair"))));
    pairs_[key] = p;
    return p;
  }
  const json& a = field(j, "algebra", c);
  AlgebraPtr alg = a.is_string() ? algebra(resolve(path, a.get<std::string>())).algebra
                                 : algebra_from_json(a, c.at("algebra"), opts_);
  std::vector<std::string> rows = rows_of(field(j, "pattern", c), c.at("pattern"));
  if (const json* n = optional_field(j, "n"))
    if (count(*n, c.at("n")) != rows.size()) c.at("n").fail(Errc::DimensionMismatch, "n does not match the pattern size");
  std::vector<std::size_t> blocks;
  if (const json* b = optional_field(j, "blocks")) {
    array(*b, c.at("blocks"));
    for (std::size_t k = 0; k < b->size(); ++k) blocks.push_back(count((*b)[k], c.at("blocks").at(k)));
  }
  std::string label = j.contains("label") ? str(j["label"], c.at("label")) : fs::path(path).stem().string();
  GroupModel model = wrap(c.at("pattern"), [&] { return GroupModel::from_rows(rows, alg, blocks, label); });

  AlphaRep alpha;
  const json* aj = optional_field(j, "alpha");
  if (!aj || (aj->is_string() && aj->get<std::string>() == "conjugation")) {
    alpha = wrap(c.at("alpha"), [&] { return AlphaRep::conjugation(model); });
  } else {
    Ctx ca = c.at("alpha");
    array(*aj, ca);
    std::size_t d = alg->dim();
    if (aj->size() != d) ca.fail(Errc::DimensionMismatch, "alpha needs " + std::to_string(d) + " rows");
    ExprMatrix m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
      const json& row = array((*aj)[r], ca.at(r));
      if (row.size() != d) ca.at(r).fail(Errc::DimensionMismatch, "alpha row needs " + std::to_string(d) + " entries");
      for (std::size_t k = 0; k < d; ++k) m(r, k) = expr(model, row[k], ca.at(r).at(k));
    }
    alpha = AlphaRep(std::move(m), false);
  }
  SampleSet samples;
  if (const json* s = optional_field(j, "samples")) samples.base = points(*s, c.at("samples"));
  if (const json* d = optional_field(j, "closure_depth")) samples.closure_depth = static_cast<int>(count(*d, c.at("closure_depth")));
  PairPtr p = wrap(c.at("samples"), [&] { return HCPair::make(std::move(model), std::move(alpha), samples, label); });
  pairs_[key] = p;
  return p;
}

SubpairFile Loader::subpair(const std::string& path) {
  json j = read_json(path);
  Ctx c{path, ""};
  PairPtr parent = j.contains("pair") ? pair(resolve(path, str(j["pair"], c.at("pair")))) : pair(path);
  const auto& g = parent->g();
  std::vector<std::string> rows = rows_of(field(j, "subgroup_pattern", c), c.at("subgroup_pattern"));
  std::vector<Vec> span;
  const json& sj = array(field(j, "subalgebra_span", c), c.at("subalgebra_span"));
  for (std::size_t k = 0; k < sj.size(); ++k) span.push_back(linear_combination(g, sj[k], c.at("subalgebra_span").at(k)));
  std::vector<GroupPoint> samples;
  if (const json* s = optional_field(j, "subgroup_samples")) samples = points(*s, c.at("subgroup_samples"));
  std::string label = j.contains("subgroup_label") ? str(j["subgroup_label"], c.at("subgroup_label")) : std::string("H");
  SubpairFile out;
  out.sub = wrap(c.at("subalgebra_span"), [&] { return std::make_shared<const HCSubpair>(parent, rows, span, samples, label); });
  const auto& model = parent->model();
  if (const json* inv = optional_field(j, "invariants")) {
    array(*inv, c.at("invariants"));
    for (std::size_t k = 0; k < inv->size(); ++k) out.data.invariants.push_back(expr(model, (*inv)[k], c.at("invariants").at(k)));
  }
  if (const json* bf = optional_field(j, "bundle_functions")) {
    Ctx cb = c.at("bundle_functions");
    array(*bf, cb);
    // Quotient basis vectors are named by the odd basis element they equal.
    std::map<std::string, std::uint16_t> qname;
    const auto& comp = out.sub->quotient().complement;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (std::size_t i = 0; i < g.dim(); ++i)
        if (comp[k][i] == Scalar(1)) qname[g.basis().name(i)] = static_cast<std::uint16_t>(k);
    for (std::size_t k = 0; k < bf->size(); ++k) {
      Ctx ck = cb.at(k);
      BundleFn b;
      b.degree = count(field((*bf)[k], "degree", ck), ck.at("degree"));
      const json& comps = array(field((*bf)[k], "components", ck), ck.at("components"));
      for (std::size_t t = 0; t < comps.size(); ++t) {
        Ctx ct = ck.at("components").at(t);
        const json& wj = array(field(comps[t], "word", ct), ct.at("word"));
        Word w;
        for (std::size_t l = 0; l < wj.size(); ++l) {
          std::string nm = str(wj[l], ct.at("word").at(l));
          auto it = qname.find(nm);
          if (it == qname.end()) ct.at("word").at(l).fail(Errc::InvalidInput, "'" + nm + "' is not a quotient basis vector");
          w.push_back(it->second);
        }
        int sign = wedge_sign(w);
        if (sign == 0) ct.at("word").fail(Errc::InvalidInput, "repeated letter");
        std::sort(w.begin(), w.end());
        if (w.size() != b.degree) ct.at("word").fail(Errc::InvalidInput, "word length differs from the degree");
        b.comps[w] += expr(model, field(comps[t], "expr", ct), ct.at("expr")).scaled(Scalar(sign));
      }
      out.data.bundles.push_back(std::move(b));
    }
  }
  return out;
}

Section Loader::section(const std::string& path) {
  json j = read_json(path);
  Ctx c{path, ""};
  PairPtr p = pair(resolve(path, str(field(j, "pair", c), c.at("pair"))));
  const auto& g = p->g();
  SectionTable t;
  const json& tj = array(field(j, "table", c), c.at("table"));
  for (std::size_t k = 0; k < tj.size(); ++k) {
    Ctx ck = c.at("table").at(k);
    const json& wj = array(field(tj[k], "word", ck), ck.at("word"));
    Word w;
    for (std::size_t l = 0; l < wj.size(); ++l) {
      std::size_t i = basis_index(g, wj[l], ck.at("word").at(l));
      if (!g.basis().is_odd(i)) ck.at("word").at(l).fail(Errc::InvalidInput, "'" + g.basis().name(i) + "' is not odd");
      w.push_back(static_cast<std::uint16_t>(i));
    }
    int sign = wedge_sign(w);
    if (sign == 0) ck.at("word").fail(Errc::InvalidInput, "repeated letter");
    std::sort(w.begin(), w.end());
    t[w] += expr(p->model(), field(tj[k], "expr", ck), ck.at("expr")).scaled(Scalar(sign));
  }
  return wrap(c, [&] { return Section(p, std::move(t)); });
}

HCMorphism Loader::morphism(const std::string& path) {
  json j = read_json(path);
  Ctx c{path, ""};
  PairPtr src = pair(resolve(path, str(field(j, "source", c), c.at("source"))));
  PairPtr tgt = pair(resolve(path, str(field(j, "target", c), c.at("target"))));
  std::string label = j.contains("label") ? str(j["label"], c.at("label")) : fs::path(path).stem().string();
  std::size_t n = tgt->model().n();
  ExprMatrix gm(n, n);
  {
    Ctx cg = c.at("group_map");
    const json& gj = field(j, "group_map", c);
    if (gj.is_string() && gj.get<std::string>() == "identity") {
      if (src->model().n() != n) cg.fail(Errc::DimensionMismatch, "identity group map needs equal matrix sizes");
      gm = src->model().symbolic_point();
    } else {
      array(gj, cg);
      if (gj.size() != n) cg.fail(Errc::DimensionMismatch, "group map needs " + std::to_string(n) + " rows");
      for (std::size_t r = 0; r < n; ++r) {
        const json& row = array(gj[r], cg.at(r));
        if (row.size() != n) cg.at(r).fail(Errc::DimensionMismatch, "group map row needs " + std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k) gm(r, k) = expr(src->model(), row[k], cg.at(r).at(k));
      }
    }
  }
  std::vector<FunctionExpr> detinv;
  if (const json* d = optional_field(j, "detinv")) {
    array(*d, c.at("detinv"));
    for (std::size_t k = 0; k < d->size(); ++k) detinv.push_back(expr(src->model(), (*d)[k], c.at("detinv").at(k)));
  }
  ScalarMatrix phi;
  const json& aj = field(j, "algebra_map", c);
  if (aj.is_string() && aj.get<std::string>() == "identity") {
    if (src->g().dim() != tgt->g().dim()) c.at("algebra_map").fail(Errc::DimensionMismatch, "identity needs equal dimensions");
    phi = ScalarMatrix::identity(src->g().dim());
  } else {
    phi = matrix(aj, c.at("algebra_map"));
  }
  return wrap(c, [&] { return HCMorphism(src, tgt, gm, detinv, phi, label); });
}

// ---------------------------------------------------------------- writers

namespace {

ojson matrix_json(const ScalarMatrix& m) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
    rows.push_back(row);
  }
  return rows;
}

ojson combination_json(const LieSuperAlgebra& g, const Vec& v) {
  ojson out = ojson::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.push_back({{"basis", g.basis().name(i)}, {"coeff", v[i].to_string()}});
  return out;
}

ojson algebra_object(const LieSuperAlgebra& g) {
  ojson j;
  j["label"] = g.label();
  ojson basis = ojson::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    basis.push_back({{"name", g.basis().name(i)}, {"parity", g.basis().is_odd(i) ? "odd" : "even"}});
  j["basis"] = basis;
  ojson br = ojson::array();
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = a; b < g.dim(); ++b) {
      const Vec& v = g.bracket_basis(a, b);
      if (is_zero(v)) continue;
      br.push_back({{"left", g.basis().name(a)}, {"right", g.basis().name(b)}, {"result", combination_json(g, v)}});
    }
  j["brackets"] = br;
  if (g.has_realization()) {
    const auto& r = g.realization();
    std::size_t m = 0;
    while (m < r.index_parity.size() && r.index_parity[m] == Parity::Even) ++m;
    ojson mats = ojson::array();
    for (std::size_t i = 0; i < g.dim(); ++i) mats.push_back({{"basis", g.basis().name(i)}, {"matrix", matrix_json(r.matrices[i])}});
    j["matrix_realization"] = {{"m", m}, {"n", r.index_parity.size() - m}, {"matrices", mats}};
  }
  return j;
}

}  // namespace

std::string algebra_to_json(const LieSuperAlgebra& g) { return algebra_object(g).dump(2) + "\n"; }

std::string pair_to_json(const HCPair& p, const std::string& algebra_ref) {
  const auto& m = p.model();
  ojson j;
  j["label"] = p.label();
  if (algebra_ref.empty()) j["algebra"] = algebra_object(p.g());
  else j["algebra"] = algebra_ref;
  j["n"] = m.n();
  j["pattern"] = m.pattern_rows();
  j["blocks"] = m.block_sizes();
  if (p.alpha().is_conjugation()) {
    j["alpha"] = "conjugation";
  } else {
    ojson rows = ojson::array();
    const auto& a = p.alpha().matrix();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      ojson row = ojson::array();
      for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(m.format(a(i, k)));
      rows.push_back(row);
    }
    j["alpha"] = rows;
  }
  ojson s = ojson::array();
  for (const auto& g : p.samples().base) s.push_back(matrix_json(g));
  j["samples"] = s;
  j["closure_depth"] = p.samples().closure_depth;
  return j.dump(2) + "\n";
}

std::string section_to_json(const Section& s, const std::string& pair_ref) {
  const auto& g = s.pair()->g();
  ojson j;
  j["pair"] = pair_ref;
  ojson t = ojson::array();
  for (const auto& [w, e] : s.table()) {
    ojson word = ojson::array();
    for (auto i : w) word.push_back(g.basis().name(i));
    t.push_back({{"word", word}, {"expr", s.pair()->model().format(e)}});
  }
  j["table"] = t;
  return j.dump(2) + "\n";
}

std::string uea_to_json(const UEAElement& u) {
  const auto& g = u.env()->algebra();
  ojson out = ojson::array();
  for (const auto& [w, c] : u.terms()) {
    ojson ev = ojson::array(), od = ojson::array();
    for (auto i : w) (g.basis().is_odd(i) ? od : ev).push_back(g.basis().name(i));
    out.push_back({{"even", ev}, {"odd", od}, {"coeff", c.to_string()}});
  }
  return out.dump();
}

}  // namespace sgk::io
