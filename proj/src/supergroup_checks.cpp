#include <sstream>

#include "sgk/supergroup.hpp"

namespace sgk {

namespace {

// Sign s in [D_X, D_Y] = s D_[X,Y] for right-invariant derivations, and s' in the analogous
// relation for field_apply; both come out as -1 because f -> d/dt f((1+tX)g) reverses brackets.
constexpr int kRivBracketSign = -1;
constexpr int kFieldBracketSign = -1;

std::string point_str(const GroupPoint& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < g.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < g.cols(); ++j) s += (j ? "," : "") + g(i, j).to_string();
    s += "]";
  }
  return s + "]";
}

struct Mono {
  Word word;
  UEAElement elem;
};

std::vector<Mono> monomials(const PairPtr& p, int degree) {
  std::vector<Mono> out;
  for (const auto& w : pbw_basis(p->g(), degree)) out.push_back({w, UEAElement::word(p->env(), w)});
  return out;
}

std::string mono_name(const PairPtr& p, const Word& w) { return word_name(p->g(), w); }

struct Points {
  std::vector<GroupPoint> pts;
  std::vector<ScalarMatrix> alpha;
  std::vector<std::vector<Scalar>> values;
};

Points make_points(const PairPtr& pair, const std::vector<GroupPoint>& pts) {
  Points p;
  for (const auto& g : pts) {
    p.pts.push_back(g);
    p.alpha.push_back(pair->alpha().at(pair->model(), g));
    p.values.push_back(pair->model().values(g));
  }
  return p;
}

std::vector<GroupPoint> base_or_identity(const PairPtr& pair, const SampleSet& s) {
  if (s.base.empty()) return {pair->model().identity()};
  return s.base;
}

std::string cases_detail(const std::string& label, std::size_t cases) {
  return label + " cases=" + std::to_string(cases);
}

/// Records the first failure of a check together with the number of cases run.
struct Tally {
  std::size_t cases = 0;
  std::string witness;
  bool ok() const { return witness.empty(); }
  void fail(const std::string& w) {
    if (witness.empty()) witness = w;
  }
  void emit(Report& rep, const std::string& check, const std::string& label) const {
    std::string d = cases_detail(label, cases);
    if (!ok()) d += " witness: " + witness;
    rep.add(ok(), check, d);
  }
};

std::vector<Section> probe_sections(const PairPtr& pair, std::mt19937_64& rng, std::size_t random_count) {
  std::vector<Section> out = basis_sections(pair);
  for (std::size_t k = 0; k < random_count; ++k) out.push_back(random_section(pair, rng));
  return out;
}

bool sections_equal(const Section& a, const Section& b) { return a.table() == b.table(); }

}  // namespace

// ---------------------------------------------------------------- group axioms

Report group_axiom_check(const PairPtr& pair, const SampleSet& samples, int degree) {
  Report rep("group");
  const auto& model = pair->model();
  const auto& env = pair->env();
  std::vector<Section> sections = basis_sections(pair);
  std::vector<SectionEvaluator> evs;
  for (const auto& s : sections) evs.emplace_back(s);
  auto mons = monomials(pair, degree);
  Points base = make_points(pair, base_or_identity(pair, samples));
  Points all = make_points(pair, samples.expanded(model));
  GroupPoint e = model.identity();
  auto e_vals = model.values(e);
  ScalarMatrix alpha_e = pair->alpha().at(model, e);
  std::string label = pair->label() + " degree<=" + std::to_string(degree) + " sections=" + std::to_string(sections.size());

  // Compares f(u1)(p1) and f(u2)(p2) over all probe sections.
  auto compare = [&](const UEAElement& u1, const std::vector<Scalar>& v1, const UEAElement& u2,
                     const std::vector<Scalar>& v2, std::string* which) {
    Factorization f1 = pbw_factorize(u1, FactorSide::Right);
    Factorization f2 = pbw_factorize(u2, FactorSide::Right);
    for (std::size_t s = 0; s < evs.size(); ++s) {
      Scalar a = evs[s].eval_factored(f1, v1), b = evs[s].eval_factored(f2, v2);
      if (a != b) {
        *which = "section " + sections[s].to_string() + " gives " + a.to_string() + " vs " + b.to_string();
        return false;
      }
    }
    return true;
  };

  // mu o (mu x id) = mu o (id x mu):
  //   f(X alpha(a)Y alpha(ab)Z)(abc) = f(X alpha(a)(Y alpha(b)Z))(abc)
  Tally assoc;
  for (const auto& x : mons)
    for (const auto& y : mons)
      for (const auto& z : mons) {
        if (static_cast<int>(x.word.size() + y.word.size() + z.word.size()) > degree) continue;
        for (std::size_t a = 0; a < base.pts.size(); ++a)
          for (std::size_t b = 0; b < base.pts.size(); ++b) {
            GroupPoint ab = base.pts[a] * base.pts[b];
            ScalarMatrix alpha_ab = pair->alpha().at(model, ab);
            UEAElement ay = pair->alpha_apply(base.alpha[a], y.elem);
            UEAElement lhs = x.elem * ay * pair->alpha_apply(alpha_ab, z.elem);
            UEAElement rhs = x.elem * pair->alpha_apply(base.alpha[a], y.elem * pair->alpha_apply(base.alpha[b], z.elem));
            for (std::size_t c = 0; c < base.pts.size(); ++c) {
              ++assoc.cases;
              auto vals = model.values(ab * base.pts[c]);
              std::string which;
              if (!compare(lhs, vals, rhs, vals, &which))
                assoc.fail("X=" + mono_name(pair, x.word) + " Y=" + mono_name(pair, y.word) + " Z=" + mono_name(pair, z.word) +
                           " a=" + point_str(base.pts[a]) + " b=" + point_str(base.pts[b]) + " c=" +
                           point_str(base.pts[c]) + " " + which);
            }
          }
      }
  assoc.emit(rep, "associativity", label);

  // Unit laws: mu*(f)(1 (x) X)(e, g) = f(X)(g) = mu*(f)(X (x) 1)(g, e).
  Tally unit_left, unit_right;
  UEAElement one = UEAElement::one(env);
  for (const auto& x : mons)
    for (std::size_t i = 0; i < all.pts.size(); ++i) {
      std::string which;
      ++unit_left.cases;
      if (!compare(pair->alpha_apply(alpha_e, x.elem), model.values(e * all.pts[i]), x.elem, all.values[i], &which))
        unit_left.fail("X=" + mono_name(pair, x.word) + " g=" + point_str(all.pts[i]) + " " + which);
      ++unit_right.cases;
      if (!compare(x.elem * pair->alpha_apply(all.alpha[i], one), model.values(all.pts[i] * e), x.elem, all.values[i], &which))
        unit_right.fail("X=" + mono_name(pair, x.word) + " g=" + point_str(all.pts[i]) + " " + which);
    }
  unit_left.emit(rep, "unit_left", label);
  unit_right.emit(rep, "unit_right", label);
  {
    bool ok = true;
    std::string w;
    for (std::size_t s = 0; s < sections.size() && ok; ++s)
      if (eps_star(sections[s]) != evs[s].eval_values(one, e_vals)) {
        ok = false;
        w = sections[s].to_string();
      }
    rep.add(ok, "counit_pullback", cases_detail(label, sections.size()) + (ok ? "" : " witness: " + w));
  }

  // Inverse laws, pulled back along g -> (g, g^{-1}) and g -> (g^{-1}, g):
  //   sum f(u' alpha(g)(alpha(g^{-1}) S u''))(g g^{-1}) = eps(u) f(1)(e)
  //   sum f(alpha(g^{-1})(S u') alpha(g^{-1}) u'')(g^{-1} g) = eps(u) f(1)(e)
  Tally inv_right, inv_left;
  for (const auto& x : mons) {
    TensorElement d = coproduct(x.elem);
    Scalar eps = counit(x.elem);
    for (std::size_t i = 0; i < all.pts.size(); ++i) {
      const GroupPoint& g = all.pts[i];
      GroupPoint gi = model.inv(g);
      ScalarMatrix agi = pair->alpha().at(model, gi);
      UEAElement r(env), l(env);
      for (const auto& [key, c] : d.terms()) {
        UEAElement u1 = UEAElement::word(env, key[0]), u2 = UEAElement::word(env, key[1]);
        r += c * (u1 * pair->alpha_apply(all.alpha[i], pair->alpha_apply(agi, antipode(u2))));
        l += c * (pair->alpha_apply(agi, antipode(u1)) * pair->alpha_apply(agi, u2));
      }
      Factorization fr = pbw_factorize(r, FactorSide::Right), fl = pbw_factorize(l, FactorSide::Right);
      auto vr = model.values(g * gi), vl = model.values(gi * g);
      for (std::size_t s = 0; s < evs.size(); ++s) {
        Scalar expect = eps * evs[s].eval_values(one, e_vals);
        ++inv_right.cases;
        ++inv_left.cases;
        Scalar a = evs[s].eval_factored(fr, vr), b = evs[s].eval_factored(fl, vl);
        if (a != expect)
          inv_right.fail("u=" + mono_name(pair, x.word) + " g=" + point_str(g) + " section " + sections[s].to_string() +
                         " gives " + a.to_string() + " expected " + expect.to_string());
        if (b != expect)
          inv_left.fail("u=" + mono_name(pair, x.word) + " g=" + point_str(g) + " section " + sections[s].to_string() +
                        " gives " + b.to_string() + " expected " + expect.to_string());
      }
    }
  }
  inv_right.emit(rep, "inverse_right", label);
  inv_left.emit(rep, "inverse_left", label);

  // Symbolic pullback tables against the pointwise formulas.
  PairPtr p2 = pair->power(2);
  Tally mu_tab;
  {
    std::vector<Section> mus;
    std::vector<SectionEvaluator> mu_evs;
    for (const auto& s : sections) mus.push_back(mu_star(s));
    for (const auto& s : mus) mu_evs.emplace_back(s);
    for (const auto& x : mons)
      for (const auto& y : mons) {
        if (static_cast<int>(x.word.size() + y.word.size()) > degree) continue;
        Factorization ft = pbw_factorize(pair->embed_tensor({x.elem, y.elem}), FactorSide::Right);
        for (std::size_t a = 0; a < base.pts.size(); ++a) {
          Factorization ff = pbw_factorize(x.elem * pair->alpha_apply(base.alpha[a], y.elem), FactorSide::Right);
          for (std::size_t b = 0; b < base.pts.size(); ++b) {
            auto v2 = p2->model().values(model.block_diag({base.pts[a], base.pts[b]}));
            auto v = model.values(base.pts[a] * base.pts[b]);
            for (std::size_t s = 0; s < sections.size(); ++s) {
              ++mu_tab.cases;
              Scalar t = mu_evs[s].eval_factored(ft, v2), f = evs[s].eval_factored(ff, v);
              if (t != f)
                mu_tab.fail("X=" + mono_name(pair, x.word) + " Y=" + mono_name(pair, y.word) + " g=" + point_str(base.pts[a]) +
                            " h=" + point_str(base.pts[b]) + " section " + sections[s].to_string() + " table " +
                            t.to_string() + " formula " + f.to_string());
            }
          }
        }
      }
  }
  mu_tab.emit(rep, "mu_star_table", label);

  Tally iota_tab;
  {
    std::vector<Section> ios;
    std::vector<SectionEvaluator> io_evs;
    for (const auto& s : sections) ios.push_back(iota_star(s));
    for (const auto& s : ios) io_evs.emplace_back(s);
    for (const auto& x : mons) {
      Factorization ft = pbw_factorize(x.elem, FactorSide::Right);
      for (std::size_t i = 0; i < all.pts.size(); ++i) {
        GroupPoint gi = model.inv(all.pts[i]);
        Factorization ff =
            pbw_factorize(pair->alpha_apply(pair->alpha().at(model, gi), antipode(x.elem)), FactorSide::Right);
        auto vi = model.values(gi);
        for (std::size_t s = 0; s < sections.size(); ++s) {
          ++iota_tab.cases;
          Scalar t = io_evs[s].eval_factored(ft, all.values[i]), f = evs[s].eval_factored(ff, vi);
          if (t != f)
            iota_tab.fail("X=" + mono_name(pair, x.word) + " g=" + point_str(all.pts[i]) + " section " +
                          sections[s].to_string() + " table " + t.to_string() + " formula " + f.to_string());
        }
      }
    }
  }
  iota_tab.emit(rep, "iota_star_table", label);

  // mu* and iota* are algebra morphisms.
  Tally mu_mul, iota_mul;
  std::mt19937_64 rng(20240601);
  for (int k = 0; k < 8; ++k) {
    Section f1 = random_section(pair, rng), f2 = random_section(pair, rng);
    ++mu_mul.cases;
    ++iota_mul.cases;
    if (!sections_equal(mu_star(section_mul(f1, f2)), section_mul(mu_star(f1), mu_star(f2))))
      mu_mul.fail("f1=" + f1.to_string() + " f2=" + f2.to_string());
    if (!sections_equal(iota_star(section_mul(f1, f2)), section_mul(iota_star(f1), iota_star(f2))))
      iota_mul.fail("f1=" + f1.to_string() + " f2=" + f2.to_string());
  }
  mu_mul.emit(rep, "mu_star_multiplicative", pair->label());
  iota_mul.emit(rep, "iota_star_multiplicative", pair->label());
  return rep;
}

// ---------------------------------------------------------------- pair validity

Report check_pair(const PairPtr& pair, const SampleSet& samples) {
  Report rep("pair");
  const auto& model = pair->model();
  const auto& g = pair->g();
  std::size_t d = g.dim();
  Points all = make_points(pair, samples.expanded(model));
  Points base = make_points(pair, base_or_identity(pair, samples));

  Tally parity, restrict_ad, hom, identity;
  for (std::size_t k = 0; k < all.pts.size(); ++k) {
    const auto& a = all.alpha[k];
    ScalarMatrix ad = ad_matrix(model, all.pts[k]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        ++parity.cases;
        if (g.parity(i) != g.parity(j) && !a(i, j).is_zero())
          parity.fail("g=" + point_str(all.pts[k]) + " entry (" + g.basis().name(i) + "," + g.basis().name(j) + ")");
        if (g.basis().is_odd(j)) continue;
        ++restrict_ad.cases;
        if (a(i, j) != ad(i, j))
          restrict_ad.fail("g=" + point_str(all.pts[k]) + " column " + g.basis().name(j) + " row " + g.basis().name(i) +
                           ": " + a(i, j).to_string() + " vs Ad " + ad(i, j).to_string());
      }
  }
  ++identity.cases;
  if (pair->alpha().at(model, model.identity()) != ScalarMatrix::identity(d)) identity.fail("alpha(e) != id");
  for (std::size_t a = 0; a < base.pts.size(); ++a)
    for (std::size_t b = 0; b < all.pts.size(); ++b) {
      ++hom.cases;
      if (pair->alpha().at(model, base.pts[a] * all.pts[b]) != base.alpha[a] * all.alpha[b])
        hom.fail("g=" + point_str(base.pts[a]) + " h=" + point_str(all.pts[b]));
    }
  // (d alpha)_e(Y) = ad(Y) for even Y.
  Tally diff;
  GroupPoint e = model.identity();
  for (std::size_t y = 0; y < g.basis().n_even(); ++y) {
    auto jet = pair->alpha().at_jet(model, jet_point(e, g.to_matrix(g.unit(y))));
    for (std::size_t j = 0; j < d; ++j) {
      const Vec& br = g.bracket_basis(y, j);
      for (std::size_t i = 0; i < d; ++i) {
        ++diff.cases;
        if (jet(i, j).deriv() != br[i])
          diff.fail("Y=" + g.basis().name(y) + " on " + g.basis().name(j) + " coefficient of " + g.basis().name(i) + ": " +
                    jet(i, j).deriv().to_string() + " vs ad " + br[i].to_string());
      }
    }
  }
  std::string label = pair->label() + " samples=" + std::to_string(all.pts.size());
  parity.emit(rep, "alpha_parity", label);
  restrict_ad.emit(rep, "alpha_restricts_to_ad", label);
  identity.emit(rep, "alpha_identity", label);
  hom.emit(rep, "alpha_homomorphism", label);
  diff.emit(rep, "alpha_differential", label);
  return rep;
}

// ---------------------------------------------------------------- field calculus

Report field_calculus_check(const PairPtr& pair, const SampleSet& samples, std::uint64_t seed, int cases) {
  Report rep("fields");
  const auto& model = pair->model();
  const auto& g = pair->g();
  std::size_t d = g.dim(), ne = g.basis().n_even();
  std::mt19937_64 rng(seed);

  // [D_X, D_Y] = s D_[X,Y] on coordinate functions.
  Tally riv;
  std::vector<FunctionExpr> coords;
  for (std::size_t i = 0; i < model.n(); ++i)
    for (std::size_t j = 0; j < model.n(); ++j)
      if (model.entry(i, j) == EntryKind::Free) coords.push_back(FunctionExpr::variable(model.coord(i, j)));
  for (std::size_t b = 0; b < model.num_blocks(); ++b) coords.push_back(FunctionExpr::variable(model.detinv_var(b)));
  for (std::size_t x = 0; x < ne; ++x)
    for (std::size_t y = 0; y < ne; ++y)
      for (const auto& f : coords) {
        ++riv.cases;
        FunctionExpr lhs = riv_derive(model, g.unit(x), riv_derive(model, g.unit(y), f)) -
                           riv_derive(model, g.unit(y), riv_derive(model, g.unit(x), f));
        FunctionExpr rhs = riv_derive(model, g.bracket_basis(x, y), f).scaled(Scalar(kRivBracketSign));
        if (lhs != rhs) riv.fail(g.basis().name(x) + "," + g.basis().name(y) + " on " + model.format(f));
      }
  riv.emit(rep, "riv_bracket_sign", pair->label() + " s=" + std::to_string(kRivBracketSign));

  // field_X field_Y - (-1)^{p(X)p(Y)} field_Y field_X = s' field_[X,Y].
  Tally br;
  std::vector<Section> probes = probe_sections(pair, rng, 4);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (const auto& f : probes) {
        ++br.cases;
        Vec vx = g.unit(x), vy = g.unit(y);
        int k = koszul(g.parity(x), g.parity(y));
        Section lhs = field_apply(vx, field_apply(vy, f)) - field_apply(vy, field_apply(vx, f)).scaled(Scalar(k));
        Section rhs = field_apply(g.bracket_basis(x, y), f).scaled(Scalar(kFieldBracketSign));
        if (!sections_equal(lhs, rhs)) br.fail(g.basis().name(x) + "," + g.basis().name(y) + " on " + f.to_string());
      }
  br.emit(rep, "field_bracket_sign", pair->label() + " s'=" + std::to_string(kFieldBracketSign));

  // Super-Leibniz, and the same identity for the variant without the Koszul sign.
  Tally leib;
  std::size_t unsigned_failures = 0;
  std::string unsigned_witness;
  for (int c = 0; c < cases; ++c) {
    std::size_t x = static_cast<std::size_t>(rng() % d);
    Parity p1 = rng() % 2 ? Parity::Odd : Parity::Even, p2 = rng() % 2 ? Parity::Odd : Parity::Even;
    Section f1 = random_section(pair, rng, p1), f2 = random_section(pair, rng, p2);
    Vec vx = g.unit(x);
    int s = koszul(g.parity(x), p1);
    ++leib.cases;
    Section lhs = field_apply(vx, section_mul(f1, f2));
    Section rhs = section_mul(field_apply(vx, f1), f2) + section_mul(f1, field_apply(vx, f2)).scaled(Scalar(s));
    if (!sections_equal(lhs, rhs)) leib.fail("X=" + g.basis().name(x) + " f1=" + f1.to_string() + " f2=" + f2.to_string());
    Section ulhs = field_apply(vx, section_mul(f1, f2), false);
    Section urhs = section_mul(field_apply(vx, f1, false), f2) + section_mul(f1, field_apply(vx, f2, false)).scaled(Scalar(s));
    if (!sections_equal(ulhs, urhs)) {
      if (unsigned_failures++ == 0) unsigned_witness = "X=" + g.basis().name(x) + " f1=" + f1.to_string() + " f2=" + f2.to_string();
    }
  }
  leib.emit(rep, "super_leibniz", pair->label() + " seed=" + std::to_string(seed));
  if (g.basis().n_odd() < 2) {
    // With one odd coordinate theta every term where the two variants differ carries theta^2.
    rep.add(true, "leibniz_unsigned_variant", pair->label() + " vacuous: fewer than two odd generators");
  } else {
    rep.add(unsigned_failures > 0, "leibniz_unsigned_variant",
            pair->label() + " rejected in " + std::to_string(unsigned_failures) + "/" + std::to_string(cases) + " cases" +
                (unsigned_witness.empty() ? "" : " first: " + unsigned_witness));
  }

  // Ad_G from translations against conjugation.
  Tally ad;
  for (const auto& pt : samples.expanded(model)) {
    ++ad.cases;
    ScalarMatrix a = ad_from_translations(pair, pt), b = ad_matrix(model, pt);
    if (a != b) ad.fail("g=" + point_str(pt));
  }
  ad.emit(rep, "ad_routes", pair->label());

  // pr_1*(f)(X (x) Y)(g1, g2) = eps(Y) f(X)(g1), pr_2*(f)(X (x) Y)(g1, g2) = eps(X) f(Y)(g2).
  Tally proj;
  PairPtr p2 = pair->power(2);
  auto mons = monomials(pair, 2);
  auto base = base_or_identity(pair, samples);
  if (base.size() > 3) base.resize(3);
  for (int k = 0; k < 3; ++k) {
    Section f = random_section(pair, rng);
    SectionEvaluator ev(f);
    for (std::size_t factor = 0; factor < 2; ++factor) {
      SectionEvaluator pe(pr_star(f, factor));
      for (const auto& x : mons)
        for (const auto& y : mons) {
          if (x.word.size() + y.word.size() > 2) continue;
          Factorization ft = pbw_factorize(pair->embed_tensor({x.elem, y.elem}), FactorSide::Right);
          for (const auto& a : base)
            for (const auto& b : base) {
              ++proj.cases;
              Scalar lhs = pe.eval_factored(ft, p2->model().values(model.block_diag({a, b})));
              Scalar rhs = factor == 0 ? counit(y.elem) * ev.eval(x.elem, a) : counit(x.elem) * ev.eval(y.elem, b);
              if (lhs != rhs)
                proj.fail("factor " + std::to_string(factor + 1) + " X=" + mono_name(pair, x.word) + " Y=" +
                          mono_name(pair, y.word) + " f=" + f.to_string());
            }
        }
    }
  }
  proj.emit(rep, "projection_factor", pair->label());
  return rep;
}

// ---------------------------------------------------------------- split criterion

Report split_check_algebra(const LieSuperAlgebra& g) {
  Report rep("split");
  auto w = odd_bracket_witness(g);
  if (w)
    rep.add(false, "criterion",
            g.label() + " [g1,g1] != 0 witness [" + g.basis().name(w->first) + "," + g.basis().name(w->second) +
                "] = " + vec_to_string(g.bracket_basis(w->first, w->second), g.basis().names()));
  else
    rep.add(true, "criterion", g.label() + " [g1,g1] = 0 SPLIT");

  auto alg = std::make_shared<const LieSuperAlgebra>(g);
  EnvelopePtr env = make_envelope(alg);
  Word odd;
  for (std::size_t i = g.basis().n_even(); i < g.dim(); ++i) odd.push_back(static_cast<std::uint16_t>(i));
  auto words = subsets(odd, 4);

  // gamma is a coalgebra morphism: Delta(gamma(w)) = (gamma (x) gamma)(Delta_ext(w)).
  Tally coalg;
  for (const auto& w1 : words) {
    ++coalg.cases;
    TensorElement lhs = coproduct(gamma_word(env, w1));
    TensorElement rhs(env, 2);
    for (const auto& [key, c] : ext_coproduct(ExtElement::wedge(w1)).terms) {
      UEAElement a = gamma_word(env, key.first), b = gamma_word(env, key.second);
      rhs.add_product({&a, &b}, c);
    }
    if (lhs != rhs) coalg.fail("w=" + word_name(g, w1));
  }
  coalg.emit(rep, "gamma_coalgebra", g.label() + " r<=4");

  // gamma(w1 ^ w2) = gamma(w1) gamma(w2); holds exactly when [g1,g1] = 0.
  Tally alg_mor;
  for (const auto& w1 : words)
    for (const auto& w2 : words) {
      if (w1.size() + w2.size() > 4) continue;
      ++alg_mor.cases;
      ExtElement wedge = ext_mul(ExtElement::wedge(w1), ExtElement::wedge(w2));
      if (gamma(env, wedge) != gamma_word(env, w1) * gamma_word(env, w2))
        alg_mor.fail("(" + word_name(g, w1) + ", " + word_name(g, w2) + ")");
    }
  alg_mor.emit(rep, "gamma_multiplicative", g.label() + " r<=4");
  return rep;
}

Report split_check(const PairPtr& pair, const SampleSet& samples) {
  Report rep = split_check_algebra(pair->g());
  const auto& model = pair->model();
  const auto& g = pair->g();
  auto base = base_or_identity(pair, samples);
  PairPtr p2 = pair->power(2);

  // mu* keeps homogeneous sections of degree p inside degree p: checked on the table and on
  // the pointwise formula for odd words w1, w2 with |w1| + |w2| != p.
  Tally grading;
  std::vector<Section> probes = basis_sections(pair);
  for (const auto& f : probes) {
    if (!grading.ok()) break;
    std::size_t p = f.table().begin()->first.size();
    Section m = mu_star(f);
    for (const auto& [w, e] : m.table()) {
      ++grading.cases;
      if (w.size() != p) {
        grading.fail("f=" + f.to_string() + " mu* has component at " + word_name(p2->g(), w) + " of degree " +
                     std::to_string(w.size()));
        break;
      }
    }
    SectionEvaluator ev(f);
    for (const auto& w1 : pair->odd_words())
      for (const auto& w2 : pair->odd_words()) {
        if (w1.size() + w2.size() == p) continue;
        UEAElement x = gamma_word(pair->env(), w1), y = gamma_word(pair->env(), w2);
        for (const auto& a : base) {
          UEAElement u = x * pair->alpha_apply(pair->alpha().at(model, a), y);
          Factorization fac = pbw_factorize(u, FactorSide::Right);
          for (const auto& b : base) {
            ++grading.cases;
            Scalar v = ev.eval_factored(fac, model.values(a * b));
            if (!v.is_zero())
              grading.fail("f=" + f.to_string() + " mu*(f)(" + word_name(g, w1) + " (x) " + word_name(g, w2) + ")(" +
                           point_str(a) + ", " + point_str(b) + ") = " + v.to_string());
          }
        }
      }
  }
  grading.emit(rep, "grading_preserved", pair->label());
  return rep;
}

// ---------------------------------------------------------------- morphisms

Report morphism_check(const HCMorphism& m, const SampleSet& samples, int degree) {
  Report rep("morphism");
  const HCPair& src = *m.source();
  const HCPair& tgt = *m.target();
  const auto& gs = src.g();
  const auto& gt = tgt.g();
  const auto& phi = m.algebra_map();
  std::string label = m.label();

  Tally parity, bracket;
  for (std::size_t j = 0; j < gs.dim(); ++j)
    for (std::size_t i = 0; i < gt.dim(); ++i) {
      ++parity.cases;
      if (gs.parity(j) != gt.parity(i) && !phi(i, j).is_zero())
        parity.fail(gs.basis().name(j) + " -> " + gt.basis().name(i));
    }
  auto phi_vec = [&](const Vec& v) { return phi.apply(v); };
  for (std::size_t x = 0; x < gs.dim(); ++x)
    for (std::size_t y = 0; y < gs.dim(); ++y) {
      ++bracket.cases;
      if (phi_vec(gs.bracket_basis(x, y)) != gt.bracket(phi_vec(gs.unit(x)), phi_vec(gs.unit(y))))
        bracket.fail("[" + gs.basis().name(x) + "," + gs.basis().name(y) + "]");
    }
  parity.emit(rep, "algebra_parity", label);
  bracket.emit(rep, "algebra_bracket", label);

  // (d Phi)_e = phi on g0.
  Tally diff;
  const auto& sm = src.model();
  const auto& tm = tgt.model();
  GroupPoint e = sm.identity();
  for (std::size_t x = 0; x < gs.basis().n_even(); ++x) {
    auto vals = sm.jet_values(jet_point(e, gs.to_matrix(gs.unit(x))));
    ScalarMatrix deriv(tm.n(), tm.n());
    for (std::size_t i = 0; i < tm.n(); ++i)
      for (std::size_t j = 0; j < tm.n(); ++j) deriv(i, j) = m.group_map()(i, j).evaluate(vals).deriv();
    ++diff.cases;
    if (deriv != gt.to_matrix(phi_vec(gs.unit(x)))) diff.fail("X=" + gs.basis().name(x));
  }
  diff.emit(rep, "differential", label);

  auto pts = samples.expanded(sm);
  auto base = base_or_identity(m.source(), samples);
  Tally hom, member, equiv;
  for (const auto& g : pts) {
    GroupPoint pg = m.apply_group(g);
    ++member.cases;
    std::string why;
    if (!tm.contains(pg, &why)) {
      member.fail("g=" + point_str(g) + " " + why);
      continue;
    }
    ++equiv.cases;
    if (phi * src.alpha().at(sm, g) != tgt.alpha().at(tm, pg) * phi) equiv.fail("g=" + point_str(g));
    for (const auto& h : base) {
      ++hom.cases;
      if (m.apply_group(g * h) != pg * m.apply_group(h)) hom.fail("g=" + point_str(g) + " h=" + point_str(h));
    }
  }
  member.emit(rep, "group_map_lands", label);
  hom.emit(rep, "group_homomorphism", label);
  equiv.emit(rep, "equivariance", label);
  if (!member.ok()) return rep;

  // Psi*(f)(X)(g) = f(phi X)(Phi g), and Psi o mu_G = mu_H o (Psi x Psi) on pullbacks.
  auto mons = monomials(m.source(), degree);
  Tally table, mu;
  std::vector<Section> probes = basis_sections(m.target());
  if (base.size() > 3) base.resize(3);
  for (const auto& f : probes) {
    Section pf = hcp_morphism_apply(m, f);
    SectionEvaluator ef(f), epf(pf);
    for (const auto& x : mons) {
      UEAElement px = m.apply_uea(x.elem);
      for (const auto& g : base) {
        ++table.cases;
        GroupPoint pg = m.apply_group(g);
        if (epf.eval(x.elem, g) != ef.eval(px, pg))
          table.fail("f=" + f.to_string() + " X=" + mono_name(m.source(), x.word) + " g=" + point_str(g));
      }
      for (const auto& y : mons) {
        if (static_cast<int>(x.word.size() + y.word.size()) > degree) continue;
        UEAElement py = m.apply_uea(y.elem);
        for (const auto& g : base)
          for (const auto& h : base) {
            ++mu.cases;
            GroupPoint pg = m.apply_group(g), ph = m.apply_group(h);
            Scalar lhs = mu_star_formula(pf, x.elem, y.elem, g, h);
            Scalar rhs = mu_star_formula(f, px, py, pg, ph);
            if (lhs != rhs)
              mu.fail("f=" + f.to_string() + " X=" + mono_name(m.source(), x.word) + " Y=" + mono_name(m.source(), y.word));
          }
      }
    }
  }
  table.emit(rep, "pullback_table", label + " degree<=" + std::to_string(degree));
  mu.emit(rep, "multiplication_compatible", label + " degree<=" + std::to_string(degree));
  return rep;
}

UniquenessResult morphism_uniqueness(const HCMorphism& a, const HCMorphism& b, const SampleSet& samples, int degree) {
  if (a.source() != b.source() || a.target() != b.target()) raise(Errc::ParentMismatch, "morphisms connect different pairs");
  UniquenessResult r;
  auto pts = samples.expanded(a.source()->model());
  r.premise_holds = a.algebra_map() == b.algebra_map();
  for (const auto& g : pts)
    if (a.apply_group(g) != b.apply_group(g)) r.premise_holds = false;

  r.pullbacks_agree = true;
  auto mons = monomials(a.source(), degree);
  for (const auto& f : basis_sections(a.target())) {
    SectionEvaluator ea(hcp_morphism_apply(a, f)), eb(hcp_morphism_apply(b, f));
    for (const auto& x : mons)
      for (const auto& g : pts) {
        int deg = static_cast<int>(x.word.size());
        if (r.witness_degree >= 0 && deg >= r.witness_degree) continue;
        Scalar va = ea.eval(x.elem, g), vb = eb.eval(x.elem, g);
        if (va != vb) {
          r.pullbacks_agree = false;
          r.witness_degree = deg;
          r.witness = "f=" + f.to_string() + " X=" + mono_name(a.source(), x.word) + " g=" + point_str(g) + ": " +
                      va.to_string() + " vs " + vb.to_string();
        }
      }
  }
  return r;
}

Report morphism_uniqueness_check(const HCMorphism& a, const HCMorphism& b, const SampleSet& samples, int degree) {
  Report rep("uniqueness");
  UniquenessResult r = morphism_uniqueness(a, b, samples, degree);
  std::string label = a.label() + " vs " + b.label() + " degree<=" + std::to_string(degree);
  rep.add(r.premise_holds, "same_reduced_data", label);
  rep.add(r.pullbacks_agree, "pullbacks_agree",
          label + (r.pullbacks_agree ? "" : " witness at degree " + std::to_string(r.witness_degree) + ": " + r.witness));
  rep.add(!r.premise_holds || r.pullbacks_agree, "determined_by_reduced_data", label);
  return rep;
}

// ---------------------------------------------------------------- iterated fields

Report iterated_field_check(const PairPtr& pair, const SampleSet& samples, std::uint64_t seed, int max_q) {
  Report rep("fields");
  const auto& model = pair->model();
  const auto& g = pair->g();
  std::mt19937_64 rng(seed);
  auto pts = samples.expanded(model);
  auto mons = monomials(pair, 1);
  GroupPoint e = model.identity();
  ScalarMatrix alpha_e = pair->alpha().at(model, e);
  Tally t;
  for (int q = 1; q <= max_q; ++q)
    for (int c = 0; c < 12; ++c) {
      Parity pf = rng() % 2 ? Parity::Odd : Parity::Even;
      Section f = random_section(pair, rng, pf);
      std::vector<std::size_t> ys;
      for (int k = 0; k < q; ++k) ys.push_back(static_cast<std::size_t>(rng() % g.dim()));
      const auto& u = mons[rng() % mons.size()];
      const GroupPoint& h = pts[rng() % pts.size()];
      // Left side: Y_1(Y_2(...(Y_q f))).
      Section lhs_sec = f;
      for (int k = q - 1; k >= 0; --k) lhs_sec = field_apply(g.unit(ys[k]), lhs_sec);
      Scalar lhs = section_eval(lhs_sec, u.elem, h);
      // Right side: (mu^q)* f on Y_q (x) ... (x) Y_1 (x) u at (e, ..., e, h), i.e.
      // f(Y_q alpha(e)(Y_{q-1} alpha(e)(... Y_1 alpha(e)(u))))(e...e h).
      UEAElement acc = u.elem;
      GroupPoint point = h;
      for (int k = 0; k < q; ++k) {
        acc = UEAElement::generator(pair->env(), ys[k]) * pair->alpha_apply(alpha_e, acc);
        point = e * point;
      }
      Scalar rhs = section_eval(f, acc, point);
      // Sign (-1)^{A(Y^q)} (-1)^{p(f) p(Y^q)}, A(Y^q) = sum_{k<q} p(Y_k) p(Y_{k+1} ... Y_q).
      long a = 0, total = 0;
      for (int k = 0; k < q; ++k) {
        long tail = 0;
        for (int j = k + 1; j < q; ++j) tail += bit(g.parity(ys[j]));
        a += bit(g.parity(ys[k])) * tail;
        total += bit(g.parity(ys[k]));
      }
      rhs = Scalar(sign_pow(a + bit(pf) * total)) * rhs;
      ++t.cases;
      if (lhs != rhs) {
        std::string names;
        for (auto y : ys) names += g.basis().name(y) + " ";
        t.fail("q=" + std::to_string(q) + " Y=" + names + "u=" + mono_name(pair, u.word) + " f=" + f.to_string() + " " +
               lhs.to_string() + " vs " + rhs.to_string());
      }
    }
  t.emit(rep, "iterated_fields", pair->label() + " q<=" + std::to_string(max_q));
  return rep;
}

}  // namespace sgk
