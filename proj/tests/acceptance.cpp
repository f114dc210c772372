// Acceptance run: one PASS/FAIL line per criterion. Usage: acceptance <sgk-cli> <fixtures-dir>
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <string>

#include "sgk/commands.hpp"
#include "sgk/fixtures.hpp"
#include "sgk/homogeneous.hpp"
#include "sgk/io.hpp"

using namespace sgk;

namespace {

std::string g_fixtures;

std::string fixture(const std::string& name) { return g_fixtures + "/" + name; }

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

bool line_passes(const Report& r, const std::string& check) {
  bool seen = false;
  for (const auto& l : r.lines())
    if (l.check == check) {
      if (!l.pass) return false;
      seen = true;
    }
  return seen;
}

bool line_fails(const Report& r, const std::string& check) {
  for (const auto& l : r.lines())
    if (l.check == check && !l.pass) return true;
  return false;
}

Word odd_letters(const LieSuperAlgebra& g) {
  Word w;
  for (std::size_t i = g.basis().n_even(); i < g.dim(); ++i) w.push_back(static_cast<std::uint16_t>(i));
  return w;
}

std::vector<Word> subsets(const Word& letters, std::size_t max_len) {
  std::vector<Word> out;
  for (std::uint32_t m = 0; m < (1u << letters.size()); ++m) {
    Word w;
    for (std::size_t k = 0; k < letters.size(); ++k)
      if (m & (1u << k)) w.push_back(letters[k]);
    if (w.size() <= max_len) out.push_back(w);
  }
  return out;
}

int inversion_sign(const std::vector<int>& seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

std::vector<GroupPoint> gl11_points() {
  auto q = [](long a, long b = 1) { return Scalar::ratio(a, b); };
  return {fixtures::diag({q(2), q(3)}), fixtures::diag({q(-1), q(5)}), fixtures::diag({q(1, 2), q(7)})};
}

Outcome criterion1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg;
  cfg.command = "demo-cp12";
  Report r = run_command(cfg);
  double dt = seconds_since(t0);
  o.require(r.ok(), "demo-cp12 has FAIL lines");
  o.require(line_passes(r, "split.criterion"), "[g1,g1] = 0 not confirmed");
  o.require(line_passes(r, "subpair.closure") && line_passes(r, "subpair.h0_tangent"), "subpair not validated");
  bool verdict = false;
  for (const auto& l : r.lines())
    if (l.check == "homogeneous.verdict") verdict = l.pass && l.detail.rfind("SPLIT", 0) == 0;
  o.require(verdict, "no SPLIT verdict");

  PairPtr p = fixtures::cp12_pair();
  std::vector<Vec> span;
  for (const auto& n : fixtures::cp12_subalgebra_names()) span.push_back(p->g().unit(p->g().basis().index_of(n)));
  HCSubpair sub(p, fixtures::cp12_subgroup_rows(), span, fixtures::cp12_subgroup_samples());
  o.require(sub.quotient().dim() == 1, "quotient is not 1-dimensional");
  for (long t : {2L, 3L, -1L, 7L}) {
    Scalar s(t);
    GroupPoint h = fixtures::diag({s, Scalar(1), Scalar(1)});
    ScalarMatrix psi = isotropy_matrix(sub, h);
    // Coefficient of E31 in h^{-1} E31 h by plain matrix products.
    ScalarMatrix e(3, 3);
    e(2, 0) = Scalar(1);
    ScalarMatrix c = inverse(h) * e * h;
    o.require(psi.rows() == 1 && psi(0, 0) == s && c(2, 0) == s, "psi(diag(t,1,1)) != t at t=" + std::to_string(t));
  }
  o.require(dt < 5.0, "runtime " + std::to_string(dt) + " s");
  if (o.pass) o.detail = "SPLIT, psi(diag(t,1,1)) = t, " + std::to_string(r.pass_count()) + " checks in " + std::to_string(dt).substr(0, 4) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  Report gl = split_check_algebra(*fixtures::gl_algebra(1, 1));
  const ReportLine* f = gl.first_failure();
  o.require(f && f->check == "split.criterion" && f->detail.find("[e12,e21]") != std::string::npos, "gl(1|1) witness missing");
  // Direct: [e12,e21] computed from the structure constants is nonzero.
  AlgebraPtr g = fixtures::gl_algebra(1, 1);
  o.require(!is_zero(g->bracket_basis(g->basis().index_of("e12"), g->basis().index_of("e21"))), "gl(1|1) odd bracket vanishes");
  for (std::size_t n : {1, 2, 3}) o.require(split_check(fixtures::abelian_pair(n), SampleSet{}).ok(), "C^{0|n} not split");
  PairPtr cp = fixtures::cp12_pair();
  o.require(split_check(cp, SampleSet{cp->samples().base, 0}).ok(), "G' pair not split");
  AlgebraPtr c = fixtures::cp12_algebra();
  for (auto i : odd_letters(*c))
    for (auto j : odd_letters(*c)) o.require(is_zero(c->bracket_basis(i, j)), "g' has a nonzero odd bracket");
  if (o.pass) o.detail = "gl(1|1): " + f->detail + "; abelian and G' split";
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  EnvelopePtr gl = make_envelope(fixtures::gl_algebra(1, 1));
  Report a = hopf_axiom_check(gl, 3);
  Report b = hopf_axiom_check(make_envelope(fixtures::abelian_odd_algebra(3)), 4);
  o.require(a.ok(), "gl(1|1) Hopf suite fails");
  o.require(b.ok(), "C^{0|3} Hopf suite fails");
  for (const char* c : {"hopf.coassociativity", "hopf.counit_left", "hopf.antipode_left", "hopf.cocommutativity"})
    o.require(line_passes(a, c) && line_passes(b, c), std::string("missing ") + c);
  std::size_t caught = 0;
  auto muts = fixtures::hopf_mutations();
  for (const auto& [name, conv] : muts)
    if (!hopf_axiom_check(gl, 3, conv).ok()) ++caught;
  io::LoadOptions lo;
  lo.allow_invalid = true;
  for (const char* f : {"gl11_hopf_antipode_negates.json", "gl11_hopf_antipode_reorder_sign.json", "gl11_hopf_flip_koszul.json",
                        "gl11_hopf_tensor_koszul.json"}) {
    io::AlgebraFile af = io::Loader(lo).algebra(fixture(f));
    o.require(!hopf_axiom_check(make_envelope(af.algebra), 3, af.conventions).ok(), std::string("mutation passes: ") + f);
  }
  o.require(caught == muts.size(), "a mutation passes");
  double dt = seconds_since(t0);
  o.require(dt < 30.0, "runtime " + std::to_string(dt) + " s");
  if (o.pass)
    o.detail = std::to_string(a.lines().size() + b.lines().size()) + " checks, " + std::to_string(caught) + "/" + std::to_string(muts.size()) +
               " mutations caught in " + std::to_string(dt).substr(0, 4) + " s";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::size_t cases = 0;
  for (AlgebraPtr g : {fixtures::abelian_odd_algebra(3), fixtures::gl_algebra(2, 1), fixtures::gl_algebra(2, 2)}) {
    EnvelopePtr env = make_envelope(g);
    Word odd = odd_letters(*g);
    std::mt19937_64 rng(5);
    for (std::size_t r = 1; r <= 5 && r <= odd.size(); ++r)
      for (int rep = 0; rep < 6; ++rep) {
        Word letters = odd;
        std::shuffle(letters.begin(), letters.end(), rng);
        letters.resize(r);
        TensorElement expected(env, 2);
        for (std::uint32_t m = 0; m < (1u << r); ++m) {
          Word a, b;
          std::vector<int> ka, kb;
          for (std::size_t k = 0; k < r; ++k) {
            ((m >> k) & 1 ? a : b).push_back(letters[k]);
            ((m >> k) & 1 ? ka : kb).push_back(static_cast<int>(k));
          }
          ka.insert(ka.end(), kb.begin(), kb.end());
          UEAElement ua = UEAElement::word(env, a), ub = UEAElement::word(env, b);
          expected.add_product({&ua, &ub}, Scalar(inversion_sign(ka)));
        }
        ++cases;
        o.require(coproduct(UEAElement::word(env, letters)) == expected, "mismatch on " + g->label() + " r=" + std::to_string(r));
      }
  }
  if (o.pass) o.detail = std::to_string(cases) + " products of r <= 5 distinct odd generators";
  return o;
}

Outcome criterion5() {
  Outcome o;
  PairPtr gl = fixtures::gl_pair(1, 1);
  SampleSet s{gl11_points(), 2};
  std::size_t n = s.expanded(gl->model()).size();
  o.require(n >= 6, "fewer than 6 samples");
  Report a = group_axiom_check(gl, s, 2);
  o.require(a.ok(), "gl(1|1) axioms fail");
  PairPtr ab = fixtures::abelian_pair(2);
  Report b = group_axiom_check(ab, SampleSet{{ab->model().identity()}, 2}, 2);
  o.require(b.ok(), "C^{0|2} axioms fail");
  for (const char* c : {"group.associativity", "group.unit_left", "group.unit_right", "group.inverse_left", "group.inverse_right"})
    o.require(line_passes(a, c) && line_passes(b, c), std::string("missing ") + c);
  Report broken = group_axiom_check(fixtures::gl11_broken_alpha(), s, 2);
  o.require(line_fails(broken, "group.associativity"), "broken alpha passes associativity");
  if (o.pass) o.detail = "gl(1|1) on " + std::to_string(n) + " samples, C^{0|2} on its single point; broken alpha rejected";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::string witness;
  for (AlgebraPtr g : {fixtures::gl_algebra(1, 1), fixtures::gl_algebra(2, 1), fixtures::cp12_algebra(), fixtures::abelian_odd_algebra(1),
                       fixtures::abelian_odd_algebra(2), fixtures::abelian_odd_algebra(3)}) {
    EnvelopePtr env = make_envelope(g);
    Word odd = odd_letters(*g);
    std::vector<Word> words = subsets(odd, 4);
    for (const Word& w : words) {
      ExtTensor dw = ext_coproduct(ExtElement::wedge(w));
      TensorElement rhs(env, 2);
      for (const auto& [key, c] : dw.terms) {
        UEAElement a = gamma_word(env, key.first), b = gamma_word(env, key.second);
        rhs.add_product({&a, &b}, c);
      }
      o.require(coproduct(gamma_word(env, w)) == rhs, "gamma not a coalgebra map on " + g->label());
    }
    bool split = !odd_bracket_witness(*g).has_value();
    bool multiplicative = true;
    std::string first;
    for (const Word& a : words)
      for (const Word& b : words) {
        if (a.size() + b.size() > 4 || !multiplicative) continue;
        if (gamma(env, ext_mul(ExtElement::wedge(a), ExtElement::wedge(b))) != gamma_word(env, a) * gamma_word(env, b)) {
          multiplicative = false;
          first = word_name(*g, a) + " , " + word_name(*g, b);
        }
      }
    o.require(multiplicative == split, "dichotomy fails on " + g->label());
    if (g->label() == fixtures::gl_algebra(1, 1)->label() && !multiplicative) witness = first;
  }
  o.require(!witness.empty(), "no gl(1|1) violating pair");
  if (o.pass) o.detail = "coalgebra map on 6 fixtures; gl(1|1) violating pair (" + witness + ")";
  return o;
}

Outcome criterion7() {
  Outcome o;
  PairPtr p = fixtures::gl_pair(1, 1);
  SampleSet s{gl11_points(), 1};
  GroupPoint k1 = fixtures::diag({Scalar(2), Scalar(3)}), k2 = fixtures::diag({Scalar(-1), Scalar(5)});
  HCMorphism direct = HCMorphism::conjugation(p, p->model().mul(k1, k2));
  HCMorphism composed = HCMorphism::conjugation(p, k1).after(HCMorphism::conjugation(p, k2));
  UniquenessResult same = morphism_uniqueness(direct, composed, s, 3);
  o.require(same.premise_holds && same.pullbacks_agree, "equal (Phi, phi) but pullbacks differ: " + same.witness);
  io::Loader loader;
  HCMorphism id = loader.morphism(fixture("gl11_identity.json"));
  HCMorphism id2 = loader.morphism(fixture("gl11_identity_explicit.json"));
  UniquenessResult files = morphism_uniqueness(id, id2, s, 3);
  o.require(files.premise_holds && files.pullbacks_agree, "identity files disagree: " + files.witness);
  HCMorphism pert = loader.morphism(fixture("gl11_identity_perturbed.json"));
  UniquenessResult diff = morphism_uniqueness(id, pert, s, 3);
  o.require(!diff.pullbacks_agree && diff.witness_degree == 1, "perturbation not detected at degree 1");
  if (o.pass) o.detail = "pullbacks agree to degree 3; perturbation found at degree 1: " + diff.witness;
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t routes = 0;
  for (PairPtr p : {fixtures::gl_pair(1, 1), fixtures::abelian_pair(2), fixtures::abelian_pair(3)}) {
    bool trivial = p->g().basis().n_even() == 0;
    SampleSet s{trivial ? std::vector<GroupPoint>{p->model().identity()} : gl11_points(), 2};
    Report r = field_calculus_check(p, s, 11, 100);
    o.require(line_passes(r, "fields.super_leibniz"), "super-Leibniz fails on " + p->label());
    o.require(line_passes(r, "fields.field_bracket_sign") && line_passes(r, "fields.riv_bracket_sign"), "bracket sign fails on " + p->label());
    o.require(line_passes(r, "fields.ad_routes"), "Ad routes fail on " + p->label());
    for (const auto& g : s.expanded(p->model())) {
      ++routes;
      o.require(ad_from_translations(p, g) == ad_matrix(p->model(), g), "Ad routes differ on " + p->label());
    }
  }
  PairPtr cp = fixtures::cp12_pair();
  for (const auto& g : cp->samples().base) {
    ++routes;
    o.require(ad_from_translations(cp, g) == ad_matrix(cp->model(), g), "Ad routes differ on G'");
  }
  if (o.pass) o.detail = "100 seeded Leibniz cases per pair, sign -1, Ad routes agree on " + std::to_string(routes) + " samples";
  return o;
}

Outcome criterion9() {
  Outcome o;
  io::Loader loader;
  io::SubpairFile f = loader.subpair(fixture("cp12_subpair.json"));
  Report r = coset_suite(*f.sub, f.data, 9, 50);
  o.require(line_passes(r, "coset.closed_under_product"), "closure fails");
  o.require(line_passes(r, "coset.condition_equivalence"), "condition equivalence fails");
  std::mt19937_64 rng(9);
  std::size_t products = 0;
  for (int k = 0; k < 50; ++k) {
    Section a = random_coset_member(*f.sub, f.data, rng), b = random_coset_member(*f.sub, f.data, rng);
    Section ab = section_mul(a, b);
    ++products;
    o.require(coset_membership(*f.sub, ab).member, "product leaves O_{G/H}");
    o.require(wedge_condition(*f.sub, ab).member && adapted_condition(*f.sub, ab).member, "wedge conditions disagree");
  }
  Section bad = loader.section(fixture("cp12_section_violator.json"));
  o.require(!coset_membership(*f.sub, bad).member && !wedge_condition(*f.sub, bad).member && !adapted_condition(*f.sub, bad).member,
            "violator accepted");
  if (o.pass) o.detail = std::to_string(products) + " products stay in O_{G/H}; three membership conditions agree";
  return o;
}

std::string capture(const std::string& cmd) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  return out;
}

Outcome criterion10(const std::string& cli) {
  Outcome o;
  std::vector<std::string> runs = {
      "check-group-axioms " + fixture("gl11_pair.json") + " " + fixture("abelian2_pair.json") + " --seed 7",
      "coset-check " + fixture("cp12_subpair.json") + " " + fixture("cp12_section_member.json") + " --seed 7 --pairs 20",
      "demo-cp12 --seed 3",
  };
  for (const auto& args : runs) {
    std::string a = capture("'" + cli + "' " + args + " 2>&1"), b = capture("'" + cli + "' " + args + " 2>&1");
    o.require(!a.empty() && a.find("PASS") != std::string::npos, "no report from: " + args);
    o.require(a == b, "reports differ: " + args);
  }
  if (o.pass) o.detail = std::to_string(runs.size()) + " commands byte-identical across two runs";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <sgk-cli> <fixtures-dir>\n";
    return 2;
  }
  g_fixtures = argv[2];
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cp12_reproduction", criterion1},   {"split_criterion", criterion2},   {"hopf_suite", criterion3},
      {"shuffle_oracle", criterion4},      {"supergroup_axioms", criterion5}, {"gamma_dichotomy", criterion6},
      {"morphism_uniqueness", criterion7}, {"field_calculus", criterion8},    {"coset_algebra", criterion9},
      {"determinism", [&] { return criterion10(argv[1]); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << " " << o.detail << std::endl;
  }
  return failed ? 1 : 0;
}
