#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "sgk/fixtures.hpp"
#include "sgk/homogeneous.hpp"
#include "sgk/io.hpp"

using namespace sgk;

namespace {

Scalar q(long a, long b = 1) { return Scalar::ratio(a, b); }

std::string fixture(const std::string& name) { return std::string(SGK_FIXTURES) + "/" + name; }

HCSubpair cp12_subpair() {
  PairPtr p = fixtures::cp12_pair();
  std::vector<Vec> span;
  for (const auto& n : fixtures::cp12_subalgebra_names()) span.push_back(p->g().unit(p->g().basis().index_of(n)));
  return HCSubpair(p, fixtures::cp12_subgroup_rows(), span, fixtures::cp12_subgroup_samples(), "P'");
}

bool has_failure(const Report& r, const std::string& check) {
  for (const auto& l : r.lines())
    if (l.check == check && !l.pass) return true;
  return false;
}

}  // namespace

TEST_CASE("CP^{1|2} subpair is valid") {
  HCSubpair sub = cp12_subpair();
  Report r = subpair_check(sub);
  if (!r.ok()) MESSAGE(r.text());
  CHECK(r.ok());
  CHECK(sub.quotient().dim() == 1);
  CHECK(sub.h().dim() == 5);
  CHECK(sub.in_subgroup(fixtures::matrix({{1, 1, 0}, {0, 2, 0}, {0, 0, 3}})));
  std::string why;
  CHECK_FALSE(sub.in_subgroup(fixtures::matrix({{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}), &why));
  CHECK_FALSE(why.empty());
  CHECK(sub.has_pair());
}

TEST_CASE("improper and trivial subpairs are valid, non-closed span is rejected") {
  io::Loader loader;
  CHECK(subpair_check(*loader.subpair(fixture("gl11_improper_subpair.json")).sub).ok());
  CHECK(subpair_check(*loader.subpair(fixture("gl11_trivial_subpair.json")).sub).ok());
  CHECK(loader.subpair(fixture("gl11_improper_subpair.json")).sub->quotient().dim() == 0);
  CHECK(loader.subpair(fixture("gl11_trivial_subpair.json")).sub->quotient().dim() == 2);
  Report r = subpair_check(*loader.subpair(fixture("cp12_subpair_not_closed.json")).sub);
  CHECK(has_failure(r, "subpair.closure"));
}

TEST_CASE("isotropy representation of P' is h11/h33") {
  HCSubpair sub = cp12_subpair();
  std::size_t e31 = sub.parent()->g().basis().index_of("e31");
  for (const auto& h : sub.expanded_samples()) {
    // Coefficient of E31 in h^{-1} E31 h, computed with plain matrices.
    ScalarMatrix e(3, 3);
    e(2, 0) = q(1);
    ScalarMatrix conj = inverse(h) * e * h;
    ScalarMatrix psi = isotropy_matrix(sub, h);
    REQUIRE(psi.rows() == 1);
    CHECK(psi(0, 0) == conj(2, 0));
    CHECK(psi(0, 0) == h(0, 0) / h(2, 2));
  }
  CHECK(isotropy_matrix(sub, fixtures::diag({q(5), q(1), q(1)}))(0, 0) == q(5));
  CHECK(sub.quotient().projection.apply(sub.parent()->g().unit(e31)) == Vec{q(1)});

  IsotropyRep rep = isotropy_rep(sub, sub.expanded_samples());
  REQUIRE(rep.symbolic.rows() == 1);
  const GroupModel& m = sub.parent()->model();
  CHECK(rep.symbolic(0, 0) == FunctionExpr::variable(m.coord(0, 0)) * FunctionExpr::variable(m.coord(2, 2)).inverse());
  CHECK(isotropy_check(sub).ok());
}

TEST_CASE("isotropy representation is a homomorphism") {
  HCSubpair sub = cp12_subpair();
  auto pts = sub.expanded_samples();
  const GroupModel& m = sub.parent()->model();
  CHECK(isotropy_matrix(sub, m.identity()) == ScalarMatrix::identity(1));
  for (const auto& a : pts)
    for (const auto& b : pts) CHECK(isotropy_matrix(sub, m.mul(a, b)) == isotropy_matrix(sub, a) * isotropy_matrix(sub, b));
}

TEST_CASE("split verdicts for homogeneous spaces") {
  HCSubpair sub = cp12_subpair();
  Report r = split_homogeneous_check(sub);
  CHECK(r.ok());
  bool split = false;
  for (const auto& l : r.lines())
    if (l.check == "homogeneous.verdict") split = l.pass && l.detail.find("SPLIT") == 0;
  CHECK(split);
  io::Loader loader;
  CHECK(has_failure(split_homogeneous_check(*loader.subpair(fixture("gl11_improper_subpair.json")).sub), "homogeneous.criterion"));
  CHECK(has_failure(split_homogeneous_check(*loader.subpair(fixture("cp12_subpair_not_closed.json")).sub), "homogeneous.verdict"));
}

TEST_CASE("equivariant bundle functions") {
  HCSubpair sub = cp12_subpair();
  const GroupModel& m = sub.parent()->model();
  HomBundleFn trivial{ExprMatrix(1, 1, FunctionExpr(q(1))), {FunctionExpr(q(1))}};
  CHECK(hom_bundle_fn_check(sub, trivial, "constant").ok());
  HomBundleFn twisted{isotropy_rep(sub, {}).symbolic, {FunctionExpr(q(1))}};
  CHECK_FALSE(hom_bundle_fn_check(sub, twisted, "constant, psi").ok());
  BundleFn one{0, {{{}, FunctionExpr(q(1))}}};
  CHECK(hom_bundle_fn_check(sub, as_hom_bundle_fn(sub, one), "degree 0").ok());
  BundleFn lin{1, {{{0}, FunctionExpr::variable(m.coord(2, 2)) * FunctionExpr::variable(m.coord(0, 0)).inverse()}}};
  CHECK(hom_bundle_fn_check(sub, as_hom_bundle_fn(sub, lin), "degree 1").ok());
  BundleFn wrong{1, {{{0}, FunctionExpr(q(1))}}};
  CHECK_FALSE(hom_bundle_fn_check(sub, as_hom_bundle_fn(sub, wrong), "degree 1 constant").ok());
  CHECK(bundle_wedge(lin, lin).comps.empty());
  CHECK(bundle_wedge(one, lin).comps.size() == 1);
}

TEST_CASE("sections from bundle functions are coset members") {
  HCSubpair sub = cp12_subpair();
  const GroupModel& m = sub.parent()->model();
  BundleFn lin{1, {{{0}, FunctionExpr::variable(m.coord(2, 2)) * FunctionExpr::variable(m.coord(0, 0)).inverse()}}};
  Section s = section_from_bundle(sub, lin);
  CHECK(s.table().size() == 2);
  CHECK(coset_membership(sub, s).member);
  BundleFn wrong{1, {{{0}, FunctionExpr(q(1))}}};
  CHECK_FALSE(coset_membership(sub, section_from_bundle(sub, wrong)).member);
}

TEST_CASE("coset membership of shipped sections") {
  io::Loader loader;
  auto file = loader.subpair(fixture("cp12_subpair.json"));
  Section member = loader.section(fixture("cp12_section_member.json"));
  Section violator = loader.section(fixture("cp12_section_violator.json"));
  CHECK(coset_membership(*file.sub, member).member);
  CosetResult bad = coset_membership(*file.sub, violator);
  CHECK_FALSE(bad.member);
  CHECK_FALSE(bad.witness.empty());
  PairPtr p = file.sub->parent();
  CHECK(coset_membership(*file.sub, Section(p, {{{}, FunctionExpr(q(1))}})).member);
  const GroupModel& m = p->model();
  Section inv(p, {{{}, FunctionExpr::variable(m.coord(1, 0)) * FunctionExpr::variable(m.coord(0, 0)).inverse()}});
  CHECK(coset_membership(*file.sub, inv).member);
  Section x11(p, {{{}, FunctionExpr::variable(m.coord(0, 0))}});
  CHECK_FALSE(coset_membership(*file.sub, x11).member);
}

TEST_CASE("coset members are closed under products and the three conditions agree") {
  io::Loader loader;
  auto file = loader.subpair(fixture("cp12_subpair.json"));
  const HCSubpair& sub = *file.sub;
  std::mt19937_64 rng(61);
  std::vector<Section> members;
  for (int k = 0; k < 4; ++k) members.push_back(random_coset_member(sub, file.data, rng));
  for (const auto& a : members) {
    CHECK(coset_membership(sub, a).member);
    for (const auto& b : members) CHECK(coset_membership(sub, section_mul(a, b)).member);
  }
  std::vector<Section> probes = members;
  probes.push_back(loader.section(fixture("cp12_section_violator.json")));
  const GroupModel& m = sub.parent()->model();
  probes.push_back(Section(sub.parent(), {{{}, FunctionExpr::variable(m.coord(0, 1))}}));
  for (const auto& s : probes) {
    bool c = coset_membership(sub, s).member;
    CHECK(wedge_condition(sub, s).member == c);
    CHECK(adapted_condition(sub, s).member == c);
  }
}

TEST_CASE("coset suite on CP^{1|2}") {
  io::Loader loader;
  auto file = loader.subpair(fixture("cp12_subpair.json"));
  Report r = coset_suite(*file.sub, file.data, 1, 10);
  if (!r.ok()) MESSAGE(r.text());
  CHECK(r.ok());
}
