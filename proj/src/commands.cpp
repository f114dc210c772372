#include "sgk/commands.hpp"

#include <functional>
#include <map>

#include "sgk/fixtures.hpp"
#include "sgk/io.hpp"

namespace sgk {

namespace {

int bound(const RunConfig& c, int fallback) { return c.degree > 0 ? c.degree : fallback; }

SampleSet samples_of(const RunConfig& c, const PairPtr& p) {
  SampleSet s = p->samples();
  if (c.closure_depth >= 0) s.closure_depth = c.closure_depth;
  return s;
}

void need_inputs(const RunConfig& c, std::size_t min, std::size_t max, const std::string& what) {
  if (c.inputs.size() < min || c.inputs.size() > max)
    raise(Errc::InvalidInput, c.command + " expects " + what + ", got " + std::to_string(c.inputs.size()) + " input(s)");
}

std::string triple_name(const LieSuperAlgebra& g, std::size_t x, std::size_t y, std::size_t z) {
  return "(" + g.basis().name(x) + "," + g.basis().name(y) + "," + g.basis().name(z) + ")";
}

Report jacobi_report(const LieSuperAlgebra& g) {
  Report rep("jacobi");
  JacobiReport jr = check_jacobi(g);
  std::string tag = g.label() + " dim=" + std::to_string(g.basis().n_even()) + "|" + std::to_string(g.basis().n_odd());
  if (jr.pass) {
    rep.add(true, "identity", tag + " triples=" + std::to_string(g.dim() * g.dim() * g.dim()));
  } else {
    const auto& v = jr.violations.front();
    rep.add(false, "identity", tag + " violations=" + std::to_string(jr.violations.size()) + " witness: " +
                                   triple_name(g, v.x, v.y, v.z) + " residual " + vec_to_string(v.residual, g.basis().names()));
  }
  if (g.has_realization()) {
    auto mm = g.realization_mismatches();
    rep.add(mm.empty(), "realization",
            mm.empty() ? tag + " brackets are supercommutators of the realization"
                       : "[" + g.basis().name(mm[0].first) + "," + g.basis().name(mm[0].second) + "] disagrees with the realization");
  }
  return rep;
}

std::string point_text(const ScalarMatrix& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < g.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < g.cols(); ++j) s += (j ? "," : "") + g(i, j).to_string();
    s += "]";
  }
  return s + "]";
}

Report demo_cp12(const RunConfig& c) {
  Report rep("demo");
  AlgebraPtr g = fixtures::cp12_algebra();
  std::string pattern;
  for (const auto& r : fixtures::cp12_algebra_rows()) pattern += (pattern.empty() ? "" : ",") + r;
  std::string evens, odds;
  for (std::size_t i = 0; i < g->dim(); ++i) (g->basis().is_odd(i) ? odds : evens) += " " + g->basis().name(i);
  rep.add(true, "algebra", "g' spanned by the supermatrix pattern [" + pattern + "] (rows 1,2 even, row 3 odd): dim " +
                               std::to_string(g->basis().n_even()) + "|" + std::to_string(g->basis().n_odd()) + ", even" + evens +
                               ", odd" + odds);
  std::string consts;
  std::size_t nonzero = 0;
  for (std::size_t a = 0; a < g->dim(); ++a)
    for (std::size_t b = a; b < g->dim(); ++b) {
      const Vec& v = g->bracket_basis(a, b);
      if (is_zero(v)) continue;
      ++nonzero;
      consts += (consts.empty() ? "" : "; ") + std::string("[") + g->basis().name(a) + "," + g->basis().name(b) +
                "] = " + vec_to_string(v, g->basis().names());
    }
  rep.add(true, "structure_constants", std::to_string(nonzero) + " nonzero: " + consts);
  rep.merge(jacobi_report(*g));
  rep.merge(split_check_algebra(*g));

  PairPtr pair = fixtures::cp12_pair();
  rep.merge(check_pair(pair, pair->samples()));
  std::vector<Vec> span;
  for (const auto& n : fixtures::cp12_subalgebra_names()) span.push_back(pair->g().unit(pair->g().basis().index_of(n)));
  HCSubpair sub(pair, fixtures::cp12_subgroup_rows(), span, fixtures::cp12_subgroup_samples(), "P'");
  rep.merge(subpair_check(sub));

  std::string bad, ts;
  for (const Scalar& t : {Scalar(2), Scalar(3), Scalar(-1), Scalar(1) / Scalar(2), Scalar(5)}) {
    ScalarMatrix psi = isotropy_matrix(sub, fixtures::diag({t, Scalar(1), Scalar(1)}));
    ts += (ts.empty() ? "" : ",") + t.to_string();
    if (psi.rows() != 1 || psi(0, 0) != t) bad = "psi(diag(" + t.to_string() + ",1,1)) = " + point_text(psi);
  }
  rep.add(bad.empty(), "psi_character", bad.empty() ? "psi(diag(t,1,1)) = t on the 1-dim quotient dual, t in {" + ts + "}" : bad);

  const auto& model = pair->model();
  FunctionExpr inv = model.parse("x21*x11^-1");
  BundleFn one{0, {{Word{}, FunctionExpr(Scalar(1))}}};
  BundleFn f{1, {{Word{0}, model.parse("x33*x11^-1")}}};
  rep.merge(hom_bundle_fn_check(sub, as_hom_bundle_fn(sub, f), "F = x33/x11 under psi"));
  Section sf = section_from_bundle(sub, f);
  std::size_t e31 = pair->g().basis().index_of("e31"), e32 = pair->g().basis().index_of("e32");
  Section expected(pair, {{Word{static_cast<std::uint16_t>(e31)}, FunctionExpr(Scalar(1))},
                          {Word{static_cast<std::uint16_t>(e32)}, inv}});
  std::string mismatch;
  for (const auto& p : pair->samples().expanded(model)) {
    auto vals = model.values(p);
    for (const auto& w : pair->odd_words())
      if (sf.entry(w).evaluate(vals) != expected.entry(w).evaluate(vals) && mismatch.empty())
        mismatch = "at " + point_text(p) + " word " + word_name(pair->g(), w);
  }
  rep.add(mismatch.empty(), "bundle_section",
          mismatch.empty() ? "s_F = " + expected.to_string() + " on all expanded samples" : mismatch);
  rep.merge(coset_suite(sub, CosetData{{inv}, {one, f}}, c.seed, c.pairs, bound(c, 2)));
  rep.merge(split_homogeneous_check(sub));
  return rep;
}

using Handler = std::function<Report(const RunConfig&)>;

const std::map<std::string, std::pair<std::string, Handler>>& handlers() {
  static const std::map<std::string, std::pair<std::string, Handler>> table{
      {"check-jacobi",
       {"ALGEBRA...  graded Jacobi identity and realization consistency",
        [](const RunConfig& c) {
          need_inputs(c, 1, 64, "algebra files");
          io::Loader ld({c.allow_invalid});
          Report rep;
          for (const auto& in : c.inputs) rep.merge(jacobi_report(*ld.algebra(in).algebra));
          return rep;
        }}},
      {"check-hopf",
       {"ALGEBRA...  Hopf axioms of U(g) on PBW monomials (--degree, default 3)",
        [](const RunConfig& c) {
          need_inputs(c, 1, 64, "algebra files");
          io::Loader ld({c.allow_invalid});
          Report rep;
          for (const auto& in : c.inputs) {
            auto af = ld.algebra(in);
            rep.merge(hopf_axiom_check(make_envelope(af.algebra), bound(c, 3), af.conventions));
          }
          return rep;
        }}},
      {"check-group-axioms",
       {"PAIR...  pair data, supergroup axioms and field calculus (--degree, default 2)",
        [](const RunConfig& c) {
          need_inputs(c, 1, 64, "pair files");
          io::Loader ld({c.allow_invalid});
          Report rep;
          for (const auto& in : c.inputs) {
            PairPtr p = ld.pair(in);
            SampleSet s = samples_of(c, p);
            rep.merge(check_pair(p, s));
            rep.merge(group_axiom_check(p, s, bound(c, 2)));
            rep.merge(field_calculus_check(p, s, c.seed, 100));
            rep.merge(iterated_field_check(p, s, c.seed, 3));
          }
          return rep;
        }}},
      {"split-check",
       {"ALGEBRA|PAIR|SUBPAIR...  splitting criterion [g1,g1] = 0 and its consequences",
        [](const RunConfig& c) {
          need_inputs(c, 1, 64, "algebra, pair or subpair files");
          io::Loader ld({c.allow_invalid});
          Report rep;
          for (const auto& in : c.inputs) {
            std::string kind = io::document_kind(in);
            if (kind == "subpair") {
              rep.merge(split_homogeneous_check(*ld.subpair(in).sub));
            } else if (kind == "pair") {
              PairPtr p = ld.pair(in);
              rep.merge(split_check(p, samples_of(c, p)));
            } else {
              rep.merge(split_check_algebra(*ld.algebra(in).algebra));
            }
          }
          return rep;
        }}},
      {"coset-check",
       {"SUBPAIR [SECTION...]  membership in O_{G/H}, closure and the wedge conditions (--degree, default 2)",
        [](const RunConfig& c) {
          need_inputs(c, 1, 64, "a subpair file and optional section files");
          io::Loader ld({c.allow_invalid});
          auto sf = ld.subpair(c.inputs[0]);
          Report rep = subpair_check(*sf.sub);
          CosetProbe probe(*sf.sub, bound(c, 2));
          for (std::size_t k = 1; k < c.inputs.size(); ++k) {
            Section s = ld.section(c.inputs[k]);
            auto r = probe.check(s);
            Report one("coset");
            one.add(r.member, "section", c.inputs[k] + (r.member ? " member cases=" + std::to_string(r.cases) : " witness: " + r.witness));
            rep.merge(one);
          }
          rep.merge(coset_suite(*sf.sub, sf.data, c.seed, c.pairs, bound(c, 2)));
          return rep;
        }}},
      {"isotropy-rep",
       {"SUBPAIR...  isotropy representation psi on (g1/h1)* at the subgroup samples",
        [](const RunConfig& c) {
          need_inputs(c, 1, 64, "subpair files");
          io::Loader ld({c.allow_invalid});
          Report rep;
          for (const auto& in : c.inputs) rep.merge(isotropy_check(*ld.subpair(in).sub));
          return rep;
        }}},
      {"morphism-check",
       {"MORPHISM [MORPHISM]  morphism axioms; with two inputs also uniqueness from (Phi, phi) (--degree, default 2)",
        [](const RunConfig& c) {
          need_inputs(c, 1, 2, "one or two morphism files");
          io::Loader ld({c.allow_invalid});
          HCMorphism a = ld.morphism(c.inputs[0]);
          SampleSet s = samples_of(c, a.source());
          Report rep = morphism_check(a, s, bound(c, 2));
          if (c.inputs.size() == 2) {
            HCMorphism b = ld.morphism(c.inputs[1]);
            rep.merge(morphism_check(b, s, bound(c, 2)));
            rep.merge(morphism_uniqueness_check(a, b, s, bound(c, 2)));
          }
          return rep;
        }}},
      {"demo-cp12",
       {"(no inputs)  the CP^{1|2} example end to end",
        [](const RunConfig& c) {
          need_inputs(c, 0, 0, "no inputs");
          return demo_cp12(c);
        }}},
  };
  return table;
}

}  // namespace

Report run_command(const RunConfig& config) {
  if (config.degree < 0) raise(Errc::InvalidInput, "--degree must be at least 1");
  if (config.pairs < 1) raise(Errc::InvalidInput, "--pairs must be at least 1");
  auto it = handlers().find(config.command);
  if (it == handlers().end()) raise(Errc::InvalidInput, "unknown command '" + config.command + "'");
  return it->second.second(config);
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, h] : handlers()) v.push_back(k);
    return v;
  }();
  return names;
}

std::string command_help() {
  std::string s;
  for (const auto& [k, h] : handlers()) s += "  " + k + " " + h.first + "\n";
  return s;
}

}  // namespace sgk
