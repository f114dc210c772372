#include "sgk/homogeneous.hpp"

#include <algorithm>

namespace sgk {

namespace {

std::string point_str(const ScalarMatrix& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < g.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < g.cols(); ++j) s += (j ? "," : "") + g(i, j).to_string();
    s += "]";
  }
  return s + "]";
}

ExprMatrix to_expr(const ScalarMatrix& m) {
  ExprMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out(i, j) = FunctionExpr(m(i, j));
  return out;
}

ScalarMatrix columns(const std::vector<Vec>& vs, std::size_t n) {
  ScalarMatrix m(n, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = vs[j][i];
  return m;
}

std::vector<std::size_t> idx(const Word& w) { return std::vector<std::size_t>(w.begin(), w.end()); }

Word range_word(std::size_t from, std::size_t to) {
  Word w;
  for (std::size_t i = from; i < to; ++i) w.push_back(static_cast<std::uint16_t>(i));
  return w;
}

std::vector<Word> words_of_size(std::size_t n, std::size_t p) {
  std::vector<Word> out;
  for (const auto& w : subsets(range_word(0, n), static_cast<int>(p)))
    if (w.size() == p) out.push_back(w);
  return out;
}

std::vector<Vec> evens_first(const AlgebraPtr& g, std::vector<Vec> span, std::size_t* n_even) {
  std::stable_partition(span.begin(), span.end(), [&](const Vec& v) {
    auto p = g->vec_parity(v);
    return p && *p == Parity::Even;
  });
  *n_even = 0;
  for (const auto& v : span) {
    auto p = g->vec_parity(v);
    if (p && *p == Parity::Even) ++*n_even;
  }
  return span;
}

/// alpha(g^{-1}) as functions of g.
ExprMatrix alpha_inverse_symbolic(const HCPair& p) {
  auto inv = p.model().inversion();
  const ExprMatrix& a = p.alpha().matrix();
  ExprMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) out(i, j) = a(i, j).substitute(inv.images, inv.inverse_images);
  return out;
}

ExtElement ext_from_vec(const LieSuperAlgebra& g, const Vec& v) {
  ExtTerms t;
  for (std::size_t i = g.basis().n_even(); i < g.dim(); ++i)
    if (!v[i].is_zero()) t[Word{static_cast<std::uint16_t>(i)}] = v[i];
  return ExtElement(std::move(t));
}

Scalar ext_eval(const Section& s, const ExtElement& x, const std::vector<Scalar>& vals) {
  Scalar out;
  for (const auto& [w, c] : x.terms()) {
    auto it = s.table().find(w);
    if (it != s.table().end()) out += c * it->second.evaluate(vals);
  }
  return out;
}

std::vector<GroupPoint> with_identity(const GroupModel& m, const std::vector<GroupPoint>& pts) {
  std::vector<GroupPoint> out = pts;
  GroupPoint e = m.identity();
  if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- subpairs

HCSubpair::HCSubpair(PairPtr parent, std::vector<std::string> subgroup_rows, std::vector<Vec> span,
                     std::vector<GroupPoint> samples, std::string label)
    : parent_(std::move(parent)),
      label_(std::move(label)),
      rows_(std::move(subgroup_rows)),
      h_(parent_->algebra(), evens_first(parent_->algebra(), std::move(span), &n_even_span_)),
      samples_(std::move(samples)) {
  const auto& model = parent_->model();
  std::size_t n = model.n();
  if (rows_.size() != n) raise(Errc::DimensionMismatch, "subgroup pattern needs " + std::to_string(n) + " rows");
  for (const auto& r : rows_) {
    if (r.size() != n) raise(Errc::DimensionMismatch, "subgroup pattern row '" + r + "' has wrong length");
    for (char c : r) {
      if (c == '*') pattern_.push_back(EntryKind::Free);
      else if (c == '0') pattern_.push_back(EntryKind::Zero);
      else if (c == '1') pattern_.push_back(EntryKind::Unit);
      else raise(Errc::InvalidInput, std::string("subgroup pattern uses '") + c + "', expected '*', '0' or '1'");
    }
  }
  quotient_ = odd_quotient(SuperSubspace::odd_part(parent_->algebra()), SuperSubspace(parent_->algebra(), odd_span()));
  if (label_.empty()) label_ = "H<" + parent_->label();
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    std::string why;
    if (!in_subgroup(samples_[k], &why)) raise(Errc::InvalidInput, "subgroup sample " + std::to_string(k + 1) + ": " + why);
  }
  try {
    const auto& g = parent_->g();
    if (!g.has_realization()) raise(Errc::InvalidInput, "the algebra has no matrix realization");
    std::vector<std::string> names;
    std::vector<Parity> parities;
    std::vector<ScalarMatrix> mats;
    for (std::size_t j = 0; j < h_.dim(); ++j) {
      const Vec& v = h_.span()[j];
      std::optional<std::size_t> unit;
      std::size_t nz = 0;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) {
          ++nz;
          if (v[i] == Scalar(1)) unit = i;
        }
      names.push_back(nz == 1 && unit ? g.basis().name(*unit) : "h" + std::to_string(j + 1));
      parities.push_back(*g.vec_parity(v));
      mats.push_back(g.to_matrix(v));
    }
    if (auto w = h_.closure_witness())
      raise(Errc::InvalidInput, "span is not closed under the bracket: [" + names[w->first] + "," + names[w->second] + "]");
    auto alg = std::make_shared<const LieSuperAlgebra>(LieSuperAlgebra::from_matrix_basis(
        names, parities, mats, g.realization().index_parity, "h"));
    GroupModel sm(model.block_sizes(), pattern_, alg, label_);
    // Restricted action L alpha S with fixed entries replaced by their values.
    ExprMatrix pt = sm.symbolic_point();
    std::vector<std::optional<FunctionExpr>> fix(model.num_vars());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) fix[model.coord(i, j)] = pt(i, j);
    ScalarMatrix s = columns(h_.span(), g.dim());
    ExprMatrix a = to_expr(left_inverse(s)) * parent_->alpha().matrix() * to_expr(s);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j).substitute(fix, {});
    pair_ = HCPair::make(std::move(sm), AlphaRep(std::move(a), parent_->alpha().is_conjugation()),
                         SampleSet{samples_, 2}, label_);
  } catch (const Error& e) {
    pair_error_ = e.what();
  }
}

std::vector<Vec> HCSubpair::even_span() const {
  return std::vector<Vec>(h_.span().begin(), h_.span().begin() + static_cast<long>(n_even_span_));
}

std::vector<Vec> HCSubpair::odd_span() const {
  return std::vector<Vec>(h_.span().begin() + static_cast<long>(n_even_span_), h_.span().end());
}

std::vector<GroupPoint> HCSubpair::expanded_samples() const {
  std::vector<GroupPoint> out;
  auto push = [&](const GroupPoint& g) {
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  };
  const auto& m = parent_->model();
  for (const auto& g : samples_) push(g);
  push(m.identity());
  for (const auto& g : samples_) push(m.inv(g));
  for (const auto& a : samples_)
    for (const auto& b : samples_) push(a * b);
  return out;
}

bool HCSubpair::in_subgroup(const GroupPoint& g, std::string* why) const {
  const auto& m = parent_->model();
  if (!m.contains(g, why)) return false;
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j) {
      EntryKind k = subgroup_entry(i, j);
      if (k == EntryKind::Free) continue;
      Scalar want(k == EntryKind::Unit ? 1 : 0);
      if (g(i, j) != want) {
        if (why) *why = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is " + g(i, j).to_string() +
                        ", the subgroup fixes it to " + want.to_string();
        return false;
      }
    }
  return true;
}

PairPtr HCSubpair::as_pair() const {
  if (!pair_) raise(Errc::InvalidInput, "not a Harish-Chandra subpair: " + pair_error_);
  return pair_;
}

HCMorphism HCSubpair::inclusion() const {
  PairPtr hp = as_pair();
  return HCMorphism(hp, parent_, hp->model().symbolic_point(), {}, columns(h_.span(), parent_->g().dim()),
                    label_ + "->" + parent_->label());
}

Report subpair_check(const HCSubpair& sub) {
  Report rep("subpair");
  const auto& parent = *sub.parent();
  const auto& model = parent.model();
  const auto& g = parent.g();
  std::size_t n = model.n();

  if (auto w = sub.h().closure_witness()) {
    Vec b = g.bracket(sub.h().span()[w->first], sub.h().span()[w->second]);
    rep.add(false, "closure", "[" + vec_to_string(sub.h().span()[w->first], g.basis().names()) + "," +
                                  vec_to_string(sub.h().span()[w->second], g.basis().names()) + "] = " +
                                  vec_to_string(b, g.basis().names()) + " leaves h");
  } else {
    rep.add(true, "closure", "dim h = " + std::to_string(sub.h().dim()));
  }

  std::string bad;
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = 0; j < n && bad.empty(); ++j) {
      EntryKind p = model.entry(i, j), s = sub.subgroup_entry(i, j);
      if (p != EntryKind::Free && s != p) bad = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    }
  rep.add(bad.empty(), "pattern_contained", bad.empty() ? "H pattern refines G pattern" : bad + " is fixed in G but not in H");

  std::size_t free = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sub.subgroup_entry(i, j) == EntryKind::Free) ++free;
  std::string tangent;
  for (const auto& v : sub.even_span()) {
    ScalarMatrix x = g.to_matrix(v);
    for (std::size_t i = 0; i < n && tangent.empty(); ++i)
      for (std::size_t j = 0; j < n && tangent.empty(); ++j)
        if (sub.subgroup_entry(i, j) != EntryKind::Free && !x(i, j).is_zero())
          tangent = vec_to_string(v, g.basis().names()) + " moves fixed entry (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ")";
  }
  rep.add(tangent.empty(), "h0_tangent", tangent.empty() ? "h0 is tangent to H at e" : tangent);
  std::size_t h0 = sub.even_span().size();
  rep.add(h0 == free, "h0_dimension",
          "dim h0 = " + std::to_string(h0) + ", free entries of H = " + std::to_string(free));

  std::string why;
  bool samples_ok = true;
  for (const auto& h : sub.samples())
    if (!sub.in_subgroup(h, &why)) {
      samples_ok = false;
      why = point_str(h) + ": " + why;
      break;
    }
  rep.add(samples_ok, "samples_in_subgroup",
          samples_ok ? "samples=" + std::to_string(sub.samples().size()) : why);

  std::string alpha_bad;
  std::size_t cases = 0;
  for (const auto& h : sub.expanded_samples()) {
    ScalarMatrix a = parent.alpha().at(model, h);
    for (const auto& v : sub.h().span()) {
      ++cases;
      if (!sub.h().contains(a.apply(v))) {
        alpha_bad = "alpha(" + point_str(h) + ") sends " + vec_to_string(v, g.basis().names()) + " outside h";
        break;
      }
    }
    if (!alpha_bad.empty()) break;
  }
  rep.add(alpha_bad.empty(), "alpha_restriction",
          alpha_bad.empty() ? "cases=" + std::to_string(cases) : alpha_bad);
  if (!sub.has_pair()) rep.add(false, "pair", sub.pair_error());
  return rep;
}

// ---------------------------------------------------------------- isotropy

ScalarMatrix isotropy_matrix(const HCSubpair& sub, const GroupPoint& h) {
  const auto& parent = *sub.parent();
  const auto& model = parent.model();
  if (!sub.in_subgroup(h)) raise(Errc::InvalidInput, "isotropy: point " + point_str(h) + " is not in H");
  ScalarMatrix a = parent.alpha().at(model, model.inv(h));
  for (const auto& v : sub.odd_span())
    if (!sub.h().contains(a.apply(v)))
      raise(Errc::InvalidInput, "isotropy: Ad(h^-1) does not preserve h1 at h = " + point_str(h));
  const auto& q = sub.quotient();
  ScalarMatrix w = q.projection * a * columns(q.complement, parent.g().dim());
  return w.transpose();
}

IsotropyRep isotropy_rep(const HCSubpair& sub, const std::vector<GroupPoint>& h_samples) {
  const auto& parent = *sub.parent();
  const auto& q = sub.quotient();
  IsotropyRep rep;
  rep.quotient = q;
  ExprMatrix psi = (to_expr(q.projection) * alpha_inverse_symbolic(parent) * to_expr(columns(q.complement, parent.g().dim())))
                       .transpose();
  // Restrict to H: fixed entries become constants, and inverse determinants of blocks whose
  // H-determinant is a monomial become Laurent monomials.
  const auto& model = parent.model();
  std::size_t n = model.n();
  ExprMatrix pt(n, n);
  std::vector<std::optional<FunctionExpr>> images(model.num_vars());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      EntryKind k = sub.subgroup_entry(i, j);
      pt(i, j) = k == EntryKind::Free ? FunctionExpr::variable(model.coord(i, j)) : FunctionExpr(Scalar(k == EntryKind::Unit ? 1 : 0));
      if (k != EntryKind::Free) images[model.coord(i, j)] = pt(i, j);
    }
  for (std::size_t b = 0; b < model.num_blocks(); ++b) {
    std::size_t o = model.block_offset(b), sz = model.block_size(b);
    FunctionExpr d = det_expand(pt.block(o, o, sz, sz));
    if (d.is_single_term()) images[model.detinv_var(b)] = d.inverse();
  }
  rep.symbolic = ExprMatrix(psi.rows(), psi.cols());
  for (std::size_t i = 0; i < psi.rows(); ++i)
    for (std::size_t j = 0; j < psi.cols(); ++j) rep.symbolic(i, j) = psi(i, j).substitute(images, {});
  for (const auto& h : h_samples) {
    rep.points.push_back(h);
    rep.matrices.push_back(isotropy_matrix(sub, h));
  }
  return rep;
}

Report isotropy_check(const HCSubpair& sub) {
  Report rep("isotropy");
  const auto& parent = *sub.parent();
  const auto& model = parent.model();
  std::size_t q = sub.quotient().dim();
  std::vector<GroupPoint> pts;
  std::string why;
  try {
    pts = sub.expanded_samples();
    for (const auto& h : pts) isotropy_matrix(sub, h);
    rep.add(true, "preserves_h1", "points=" + std::to_string(pts.size()));
  } catch (const Error& e) {
    rep.add(false, "preserves_h1", e.what());
    return rep;
  }
  IsotropyRep iso = isotropy_rep(sub, pts);
  ScalarMatrix id = ScalarMatrix::identity(q);
  ScalarMatrix at_e = isotropy_matrix(sub, model.identity());
  rep.add(at_e == id, "identity", "psi(e) = " + point_str(at_e));

  std::size_t cases = 0;
  std::string hom;
  for (const auto& a : sub.samples())
    for (const auto& b : sub.samples()) {
      ++cases;
      ScalarMatrix l = isotropy_matrix(sub, a * b), r = isotropy_matrix(sub, a) * isotropy_matrix(sub, b);
      if (l != r && hom.empty())
        hom = "h1=" + point_str(a) + " h2=" + point_str(b) + ": " + point_str(l) + " vs " + point_str(r);
    }
  rep.add(hom.empty(), "homomorphism", hom.empty() ? "cases=" + std::to_string(cases) : hom);

  std::string sym;
  for (std::size_t k = 0; k < iso.points.size() && sym.empty(); ++k) {
    auto vals = model.values(iso.points[k]);
    for (std::size_t i = 0; i < q && sym.empty(); ++i)
      for (std::size_t j = 0; j < q && sym.empty(); ++j)
        if (iso.symbolic(i, j).evaluate(vals) != iso.matrices[k](i, j)) sym = "at " + point_str(iso.points[k]);
  }
  rep.add(sym.empty(), "symbolic_matches", sym.empty() ? "points=" + std::to_string(iso.points.size()) : sym);

  std::string sym_text = "[";
  for (std::size_t i = 0; i < q; ++i) {
    sym_text += i ? ",[" : "[";
    for (std::size_t j = 0; j < q; ++j) sym_text += (j ? "," : "") + model.format(iso.symbolic(i, j));
    sym_text += "]";
  }
  sym_text += "]";
  rep.add(true, "psi", "psi(h) = " + sym_text);
  for (const auto& h : sub.samples()) rep.add(true, "psi_value", "h=" + point_str(h) + " psi=" + point_str(isotropy_matrix(sub, h)));
  return rep;
}

Report split_homogeneous_check(const HCSubpair& sub) {
  Report rep("homogeneous");
  const auto& g = sub.parent()->g();
  Report sp = subpair_check(sub);
  const ReportLine* bad = sp.first_failure();
  rep.add(bad == nullptr, "subpair", bad ? bad->check + ": " + bad->detail : "valid Harish-Chandra subpair");

  auto w = odd_bracket_witness(g);
  bool split = !w;
  if (w) {
    Vec b = g.bracket_basis(w->first, w->second);
    rep.add(false, "criterion",
            "[" + g.basis().name(w->first) + "," + g.basis().name(w->second) + "] = " + vec_to_string(b, g.basis().names()));
  } else {
    rep.add(true, "criterion", "[g1,g1] = 0");
  }

  std::size_t g1 = g.basis().n_odd(), h1 = sub.odd_span().size(), q = sub.quotient().dim();
  rep.add(q == g1 - h1, "quotient_dimension",
          "dim g1/h1 = " + std::to_string(q) + " (dim g1 = " + std::to_string(g1) + ", dim h1 = " + std::to_string(h1) + ")");

  Report iso = isotropy_check(sub);
  for (const auto& l : iso.lines()) rep.add(l.pass, "isotropy." + l.check.substr(l.check.find('.') + 1), l.detail);

  bool valid = bad == nullptr && iso.ok();
  if (split && valid)
    rep.add(true, "verdict", "SPLIT: O_{G/H} = wedge of the psi-bundle on (g1/h1)*, rank " + std::to_string(q));
  else if (!split)
    rep.add(false, "verdict", "criterion inapplicable: [g1,g1] != 0");
  else
    rep.add(false, "verdict", "criterion inapplicable: invalid subpair");
  return rep;
}

// ---------------------------------------------------------------- bundles

BundleFn BundleFn::scaled(const FunctionExpr& c) const {
  BundleFn out{degree, {}};
  for (const auto& [w, f] : comps) {
    FunctionExpr t = f * c;
    if (!t.is_zero()) out.comps.emplace(w, std::move(t));
  }
  return out;
}

BundleFn bundle_wedge(const BundleFn& a, const BundleFn& b) {
  BundleFn out{a.degree + b.degree, {}};
  for (const auto& [j, fa] : a.comps)
    for (const auto& [k, fb] : b.comps) {
      Word jk = j;
      jk.insert(jk.end(), k.begin(), k.end());
      int s = wedge_sign(jk);
      if (s == 0) continue;
      std::sort(jk.begin(), jk.end());
      out.comps[jk] += (fa * fb).scaled(Scalar(s));
    }
  for (auto it = out.comps.begin(); it != out.comps.end();) it = it->second.is_zero() ? out.comps.erase(it) : std::next(it);
  return out;
}

ExprMatrix wedge_isotropy(const HCSubpair& sub, std::size_t p, std::vector<Word>* words) {
  IsotropyRep iso = isotropy_rep(sub, {});
  auto ws = words_of_size(sub.quotient().dim(), p);
  ExprMatrix out(ws.size(), ws.size());
  for (std::size_t a = 0; a < ws.size(); ++a)
    for (std::size_t b = 0; b < ws.size(); ++b) out(a, b) = det_expand(iso.symbolic.select(idx(ws[a]), idx(ws[b])));
  if (words) *words = ws;
  return out;
}

namespace {

void check_bundle(const HCSubpair& sub, const BundleFn& f) {
  for (const auto& [w, e] : f.comps) {
    if (w.size() != f.degree) raise(Errc::InvalidInput, "bundle function component has the wrong degree");
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] >= sub.quotient().dim() || (k > 0 && w[k - 1] >= w[k]))
        raise(Errc::InvalidInput, "bundle function component word must be increasing in quotient indices");
  }
}

}  // namespace

HomBundleFn as_hom_bundle_fn(const HCSubpair& sub, const BundleFn& f) {
  check_bundle(sub, f);
  std::vector<Word> ws;
  HomBundleFn out;
  out.theta = wedge_isotropy(sub, f.degree, &ws);
  for (const auto& w : ws) {
    auto it = f.comps.find(w);
    out.fn.push_back(it == f.comps.end() ? FunctionExpr() : it->second);
  }
  return out;
}

Report hom_bundle_fn_check(const HCSubpair& sub, const HomBundleFn& b, const std::string& label) {
  Report rep("bundle");
  const auto& model = sub.parent()->model();
  std::size_t r = b.fn.size();
  if (b.theta.rows() != r || b.theta.cols() != r) raise(Errc::DimensionMismatch, "representation does not match function size");
  std::size_t cases = 0;
  std::string witness;
  for (const auto& g : with_identity(model, sub.parent()->samples().base)) {
    auto gv = model.values(g);
    for (const auto& h : with_identity(model, sub.samples())) {
      auto hv = model.values(h);
      auto ghv = model.values(g * h);
      ++cases;
      for (std::size_t i = 0; i < r && witness.empty(); ++i) {
        Scalar lhs;
        for (std::size_t k = 0; k < r; ++k) lhs += b.theta(i, k).evaluate(hv) * b.fn[k].evaluate(ghv);
        Scalar rhs = b.fn[i].evaluate(gv);
        if (lhs != rhs)
          witness = "g=" + point_str(g) + " h=" + point_str(h) + " component " + std::to_string(i + 1) + ": " +
                    lhs.to_string() + " vs " + rhs.to_string();
      }
    }
  }
  rep.add(witness.empty(), "equivariance", label + " cases=" + std::to_string(cases) + (witness.empty() ? "" : " witness: " + witness));
  return rep;
}

Section section_from_bundle(const HCSubpair& sub, const BundleFn& f) {
  check_bundle(sub, f);
  const auto& parent = sub.parent();
  std::size_t p = f.degree;
  ExprMatrix proj = to_expr(sub.quotient().projection) * alpha_inverse_symbolic(*parent);
  Scalar sign((p * (p - 1) / 2) % 2 ? -1 : 1);
  SectionTable out;
  for (const auto& w : parent->odd_words()) {
    if (w.size() != p) continue;
    FunctionExpr e;
    for (const auto& [j, fj] : f.comps) {
      FunctionExpr m = det_expand(proj.select(idx(j), idx(w)));
      if (!m.is_zero()) e += m * fj;
    }
    if (!e.is_zero()) out.emplace(w, e.scaled(sign));
  }
  return Section(parent, std::move(out));
}

// ---------------------------------------------------------------- coset conditions

CosetProbe::CosetProbe(const HCSubpair& sub, int degree) : sub_(&sub) {
  PairPtr hp = sub.as_pair();
  const auto& parent = *sub.parent();
  const auto& model = parent.model();
  gs_ = with_identity(model, parent.samples().base);
  hs_ = with_identity(model, sub.samples());
  for (const auto& g : gs_) {
    g_vals_.push_back(model.values(g));
    std::vector<std::vector<Scalar>> row;
    for (const auto& h : hs_) row.push_back(model.values(g * h));
    gh_vals_.push_back(std::move(row));
  }
  ScalarMatrix s = columns(sub.h().span(), parent.g().dim());
  std::vector<Word> xs = pbw_basis(parent.g(), degree);
  std::vector<UEAElement> xe;
  for (const auto& x : xs) {
    xe.push_back(UEAElement::word(parent.env(), x));
    x_facs_.push_back(pbw_factorize(xe.back(), FactorSide::Right));
  }
  std::vector<Word> ys = pbw_basis(hp->g(), degree);
  for (std::size_t gi = 0; gi < gs_.size(); ++gi) {
    ScalarMatrix a = parent.alpha().at(model, gs_[gi]);
    for (const auto& y : ys) {
      UEAElement ay = parent.alpha_apply(a, map_uea(s, parent.env(), UEAElement::word(hp->env(), y)));
      for (std::size_t xi = 0; xi < xs.size(); ++xi) {
        if (static_cast<int>(xs[xi].size() + y.size()) > degree) continue;
        entries_.push_back({gi, xi, !y.empty(), "X=" + word_name(parent.g(), xs[xi]) + " Y=" + word_name(hp->g(), y),
                            pbw_factorize(xe[xi] * ay, FactorSide::Right)});
      }
    }
  }
}

CosetResult CosetProbe::check(const Section& f) const {
  check_same_pair(f.pair(), sub_->parent());
  SectionEvaluator ev(f);
  CosetResult r;
  std::map<std::pair<std::size_t, std::size_t>, Scalar> base;
  for (const auto& en : entries_) {
    Scalar rhs;
    if (!en.positive_y) {
      auto key = std::make_pair(en.g, en.x);
      auto it = base.find(key);
      if (it == base.end()) it = base.emplace(key, ev.eval_factored(x_facs_[en.x], g_vals_[en.g])).first;
      rhs = it->second;
    }
    for (std::size_t hi = 0; hi < hs_.size(); ++hi) {
      ++r.cases;
      Scalar lhs = ev.eval_factored(en.fac, gh_vals_[en.g][hi]);
      if (lhs != rhs) {
        r.member = false;
        r.witness = en.label + " g=" + point_str(gs_[en.g]) + " h=" + point_str(hs_[hi]) + ": " + lhs.to_string() +
                    " vs " + rhs.to_string();
        return r;
      }
    }
  }
  return r;
}

CosetResult coset_membership(const HCSubpair& sub, const Section& f, int degree) {
  return CosetProbe(sub, degree).check(f);
}

namespace {

struct WedgeSetup {
  std::vector<GroupPoint> gs, hs;
  std::vector<ScalarMatrix> alphas;
};

WedgeSetup wedge_setup(const HCSubpair& sub) {
  const auto& parent = *sub.parent();
  const auto& model = parent.model();
  WedgeSetup w;
  w.gs = with_identity(model, parent.samples().base);
  w.hs = with_identity(model, sub.samples());
  for (const auto& g : w.gs) w.alphas.push_back(parent.alpha().at(model, g));
  return w;
}

}  // namespace

CosetResult wedge_condition(const HCSubpair& sub, const Section& s) {
  check_same_pair(s.pair(), sub.parent());
  const auto& parent = *sub.parent();
  const auto& model = parent.model();
  const auto& g = parent.g();
  WedgeSetup ws = wedge_setup(sub);
  auto h1 = sub.odd_span();
  auto ywords = subsets(range_word(0, h1.size()));
  CosetResult r;
  for (std::size_t gi = 0; gi < ws.gs.size(); ++gi) {
    auto gv = model.values(ws.gs[gi]);
    std::vector<ExtElement> ady;
    for (const auto& v : h1) ady.push_back(ext_from_vec(g, ws.alphas[gi].apply(v)));
    for (const auto& yw : ywords) {
      ExtElement y = ExtElement::wedge({});
      for (auto k : yw) y = ext_mul(y, ady[k]);
      for (const auto& xw : parent.odd_words()) {
        ExtElement arg = ext_mul(ExtElement::wedge(xw), y);
        Scalar rhs = yw.empty() ? ext_eval(s, ExtElement::wedge(xw), gv) : Scalar();
        for (const auto& h : ws.hs) {
          ++r.cases;
          Scalar lhs = ext_eval(s, arg, model.values(ws.gs[gi] * h));
          if (lhs != rhs) {
            std::string yn;
            for (auto k : yw) yn += (yn.empty() ? "" : "^") + vec_to_string(h1[k], g.basis().names());
            r.member = false;
            r.witness = "X=" + word_name(g, xw) + " Y=" + (yn.empty() ? "1" : yn) + " g=" + point_str(ws.gs[gi]) +
                        " h=" + point_str(h) + ": " + lhs.to_string() + " vs " + rhs.to_string();
            return r;
          }
        }
      }
    }
  }
  return r;
}

CosetResult adapted_condition(const HCSubpair& sub, const Section& s) {
  check_same_pair(s.pair(), sub.parent());
  const auto& parent = *sub.parent();
  const auto& model = parent.model();
  const auto& g = parent.g();
  WedgeSetup ws = wedge_setup(sub);
  std::vector<Vec> basis = sub.odd_span();
  std::size_t k = basis.size();
  for (const auto& c : sub.quotient().complement) basis.push_back(c);
  auto words = subsets(range_word(0, basis.size()));
  CosetResult r;
  for (std::size_t gi = 0; gi < ws.gs.size(); ++gi) {
    auto gv = model.values(ws.gs[gi]);
    std::vector<ExtElement> adb;
    for (const auto& v : basis) adb.push_back(ext_from_vec(g, ws.alphas[gi].apply(v)));
    for (const auto& w : words) {
      ExtElement x = ExtElement::wedge({});
      for (auto i : w) x = ext_mul(x, adb[i]);
      bool meets_h1 = std::any_of(w.begin(), w.end(), [&](std::uint16_t i) { return i < k; });
      Scalar rhs = meets_h1 ? Scalar() : ext_eval(s, x, gv);
      for (const auto& h : ws.hs) {
        ++r.cases;
        Scalar lhs = ext_eval(s, x, model.values(ws.gs[gi] * h));
        if (lhs != rhs) {
          std::string xn;
          for (auto i : w) xn += (xn.empty() ? "" : "^") + vec_to_string(basis[i], g.basis().names());
          r.member = false;
          r.witness = "X=" + (xn.empty() ? "1" : xn) + " g=" + point_str(ws.gs[gi]) + " h=" + point_str(h) + ": " +
                      lhs.to_string() + " vs " + rhs.to_string();
          return r;
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------- coset suite

Section random_coset_member(const HCSubpair& sub, const CosetData& data, std::mt19937_64& rng) {
  auto coeff = [&]() {
    long c = static_cast<long>(rng() % 7) - 3;
    FunctionExpr e{Scalar(c == 0 ? 1 : c)};
    if (!data.invariants.empty()) {
      const FunctionExpr& inv = data.invariants[rng() % data.invariants.size()];
      long d = static_cast<long>(rng() % 7) - 3;
      e += inv.pow(1 + static_cast<int>(rng() % 2)).scaled(Scalar(d));
    }
    return e;
  };
  Section s(sub.parent(), {{Word{}, coeff()}});
  for (const auto& b : data.bundles)
    if (rng() % 3 != 0) s += section_from_bundle(sub, b.scaled(coeff()));
  return s;
}

Report coset_suite(const HCSubpair& sub, const CosetData& data, std::uint64_t seed, int pairs, int degree) {
  Report rep("coset");
  const auto& parent = sub.parent();
  const auto& model = parent->model();
  std::mt19937_64 rng(seed);
  CosetProbe probe(sub, degree);
  std::string label = "degree<=" + std::to_string(degree);

  Section unit(parent, {{Word{}, FunctionExpr(Scalar(1))}});
  auto u = probe.check(unit);
  rep.add(u.member, "unit_member", u.member ? label + " cases=" + std::to_string(u.cases) : u.witness);

  for (std::size_t k = 0; k < data.invariants.size(); ++k) {
    Section s(parent, {{Word{}, data.invariants[k]}});
    auto r = probe.check(s);
    rep.add(r.member, "invariant_member", model.format(data.invariants[k]) + (r.member ? "" : " witness: " + r.witness));
  }
  for (std::size_t k = 0; k < data.bundles.size(); ++k) {
    const auto& b = data.bundles[k];
    std::string name = "bundle " + std::to_string(k + 1) + " (degree " + std::to_string(b.degree) + ")";
    Report eq = hom_bundle_fn_check(sub, as_hom_bundle_fn(sub, b), name);
    for (const auto& l : eq.lines()) rep.add(l.pass, "bundle_equivariance", l.detail);
    Section s = section_from_bundle(sub, b);
    auto r = probe.check(s);
    rep.add(r.member, "bundle_section_member",
            name + " entries=" + std::to_string(s.table().size()) + (r.member ? "" : " witness: " + r.witness));
  }

  // Products of bundle sections come from wedges of bundle functions.
  std::size_t wcases = 0;
  std::string wbad;
  for (const auto& a : data.bundles)
    for (const auto& b : data.bundles) {
      ++wcases;
      Section l = section_from_bundle(sub, bundle_wedge(a, b));
      Section r = section_mul(section_from_bundle(sub, a), section_from_bundle(sub, b));
      if (l.table() != r.table() && wbad.empty()) wbad = l.to_string() + " vs " + r.to_string();
    }
  rep.add(wbad.empty(), "bundle_wedge_multiplicative", "cases=" + std::to_string(wcases) + (wbad.empty() ? "" : " witness: " + wbad));

  std::vector<Section> pool;
  for (int k = 0; k < 8; ++k) pool.push_back(random_coset_member(sub, data, rng));
  std::size_t mcases = 0;
  std::string mbad;
  for (const auto& s : pool) {
    auto r = probe.check(s);
    mcases += r.cases;
    if (!r.member && mbad.empty()) mbad = s.to_string() + ": " + r.witness;
  }
  rep.add(mbad.empty(), "members", "members=" + std::to_string(pool.size()) + " cases=" + std::to_string(mcases) +
                                       (mbad.empty() ? "" : " witness: " + mbad));

  // Violators: a non-invariant coordinate function, and bundle sections scaled by it.
  std::vector<Section> violators;
  for (std::size_t i = 0; i < model.n() && violators.empty(); ++i)
    for (std::size_t j = 0; j < model.n() && violators.empty(); ++j) {
      if (model.entry(i, j) != EntryKind::Free) continue;
      FunctionExpr x = FunctionExpr::variable(model.coord(i, j));
      Section s(parent, {{Word{}, x}});
      if (!probe.check(s).member) {
        violators.push_back(s);
        for (const auto& b : data.bundles)
          if (b.degree > 0) violators.push_back(section_from_bundle(sub, b.scaled(x)));
      }
    }
  std::size_t vcaught = 0;
  std::string vbad;
  for (const auto& s : violators) {
    if (!probe.check(s).member) ++vcaught;
    else if (vbad.empty()) vbad = s.to_string() + " passed";
  }
  rep.add(!violators.empty() && vbad.empty(), "violators_rejected",
          "rejected " + std::to_string(vcaught) + "/" + std::to_string(violators.size()) + (vbad.empty() ? "" : " witness: " + vbad));

  std::size_t ccases = 0;
  std::string cbad;
  for (int k = 0; k < pairs; ++k) {
    const Section& a = pool[rng() % pool.size()];
    const Section& b = pool[rng() % pool.size()];
    ++ccases;
    auto r = probe.check(section_mul(a, b));
    if (!r.member && cbad.empty()) cbad = a.to_string() + " * " + b.to_string() + ": " + r.witness;
  }
  rep.add(cbad.empty(), "closed_under_product", "pairs=" + std::to_string(ccases) + (cbad.empty() ? "" : " witness: " + cbad));

  std::size_t gcases = 0;
  std::string gbad;
  for (const auto& s : pool) {
    std::size_t top = 0;
    for (const auto& [w, e] : s.table()) top = std::max(top, w.size());
    for (std::size_t p = 0; p <= top; ++p) {
      ++gcases;
      auto r = probe.check(s.grading_part(p));
      if (!r.member && gbad.empty()) gbad = "degree " + std::to_string(p) + " part of " + s.to_string() + ": " + r.witness;
    }
  }
  rep.add(gbad.empty(), "grading_components", "cases=" + std::to_string(gcases) + (gbad.empty() ? "" : " witness: " + gbad));

  if (auto w = odd_bracket_witness(parent->g())) {
    rep.add(false, "condition_equivalence", "requires [g1,g1] = 0; [" + parent->g().basis().name(w->first) + "," +
                                                parent->g().basis().name(w->second) + "] != 0");
    return rep;
  }
  std::vector<Section> tested = pool;
  tested.insert(tested.end(), violators.begin(), violators.end());
  for (int k = 0; k < 4; ++k) tested.push_back(random_section(parent, rng));
  std::string ebad;
  std::size_t agree_members = 0;
  for (const auto& s : tested) {
    bool a = probe.check(s).member, b = wedge_condition(sub, s).member, c = adapted_condition(sub, s).member;
    if (a && b && c) ++agree_members;
    if ((a != b || a != c) && ebad.empty())
      ebad = s.to_string() + ": U(g) form " + (a ? "member" : "not member") + ", wedge form " + (b ? "member" : "not member") +
             ", adapted form " + (c ? "member" : "not member");
  }
  rep.add(ebad.empty(), "condition_equivalence",
          "sections=" + std::to_string(tested.size()) + " members=" + std::to_string(agree_members) +
              (ebad.empty() ? "" : " witness: " + ebad));
  return rep;
}

}  // namespace sgk
