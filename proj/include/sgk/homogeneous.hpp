#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgk/supergroup.hpp"

namespace sgk {

/// Harish-Chandra subpair (H, h) of a pair (G, g): H is cut out of G's pattern by extra
/// fixed entries, h is a homogeneous span in g.
class HCSubpair {
 public:
  HCSubpair(PairPtr parent, std::vector<std::string> subgroup_rows, std::vector<Vec> span,
            std::vector<GroupPoint> samples, std::string label = {});

  const PairPtr& parent() const { return parent_; }
  const std::string& label() const { return label_; }
  const std::vector<std::string>& subgroup_rows() const { return rows_; }
  EntryKind subgroup_entry(std::size_t i, std::size_t j) const { return pattern_[i * parent_->model().n() + j]; }
  /// Span with even vectors first.
  const SuperSubspace& h() const { return h_; }
  std::vector<Vec> even_span() const;
  std::vector<Vec> odd_span() const;
  const OddQuotient& quotient() const { return quotient_; }

  const std::vector<GroupPoint>& samples() const { return samples_; }
  std::vector<GroupPoint> expanded_samples() const;
  bool in_subgroup(const GroupPoint& g, std::string* why = nullptr) const;

  /// (H, h) as a pair in its own right; throws Errc::InvalidInput when the data is not a subpair.
  PairPtr as_pair() const;
  bool has_pair() const { return pair_ != nullptr; }
  const std::string& pair_error() const { return pair_error_; }
  /// Inclusion (H, h) -> (G, g).
  HCMorphism inclusion() const;

 private:
  PairPtr parent_;
  std::string label_;
  std::vector<std::string> rows_;
  std::vector<EntryKind> pattern_;
  std::size_t n_even_span_ = 0;  // set while h_ is built
  SuperSubspace h_;
  OddQuotient quotient_;
  std::vector<GroupPoint> samples_;
  PairPtr pair_;
  std::string pair_error_;
};

/// Bracket closure, tangency of h0 to H, sample membership, alpha(H) h = h.
Report subpair_check(const HCSubpair& sub);

/// Isotropy representation on (g1/h1)*: psi(h)(v)(X + h1) = v(Ad(h^{-1}) X + h1). In the dual
/// basis of the quotient complement its matrix is (pi Ad(h^{-1}) C)^T.
struct IsotropyRep {
  OddQuotient quotient;
  ExprMatrix symbolic;  // as functions of the subgroup point
  std::vector<GroupPoint> points;
  std::vector<ScalarMatrix> matrices;
};
ScalarMatrix isotropy_matrix(const HCSubpair& sub, const GroupPoint& h);
IsotropyRep isotropy_rep(const HCSubpair& sub, const std::vector<GroupPoint>& h_samples);
Report isotropy_check(const HCSubpair& sub);

/// Split verdict for G/H together with the bundle data (quotient rank, psi on samples).
Report split_homogeneous_check(const HCSubpair& sub);

/// Element of F_G (x) wedge^p (g1/h1)*: components on increasing index words of the quotient basis.
struct BundleFn {
  std::size_t degree = 0;
  std::map<Word, FunctionExpr> comps;
  BundleFn scaled(const FunctionExpr& c) const;
};
BundleFn bundle_wedge(const BundleFn& a, const BundleFn& b);
/// wedge^p psi as a symbolic matrix over quotient words of length p.
ExprMatrix wedge_isotropy(const HCSubpair& sub, std::size_t p, std::vector<Word>* words = nullptr);

/// Function with values in a representation theta of H; equivariance theta(h) F(gh) = F(g).
struct HomBundleFn {
  ExprMatrix theta;
  std::vector<FunctionExpr> fn;
};
HomBundleFn as_hom_bundle_fn(const HCSubpair& sub, const BundleFn& f);
Report hom_bundle_fn_check(const HCSubpair& sub, const HomBundleFn& b, const std::string& label);

/// Section of O_G from a bundle function through Psi_V and the injection
/// Hom(wedge(g1/h1), F) -> Hom(wedge g1, F):
///   s[w](g) = (-1)^{p(p-1)/2} sum_J det((pi Ad(g^{-1}))[J, w]) F_J(g).
Section section_from_bundle(const HCSubpair& sub, const BundleFn& f);

struct CosetResult {
  bool member = true;
  std::string witness;
  std::size_t cases = 0;
};

/// Membership in O_{G/H}: f(X Ad(g)(Y))(gh) is 0 for Y of positive degree and f(X)(g) for Y = 1,
/// over PBW monomials X of U(g), Y of U(h) with deg X + deg Y <= degree, and sample pairs.
class CosetProbe {
 public:
  CosetProbe(const HCSubpair& sub, int degree);
  CosetResult check(const Section& f) const;

 private:
  struct Entry {
    std::size_t g;
    std::size_t x;
    bool positive_y;
    std::string label;
    Factorization fac;
  };
  const HCSubpair* sub_;
  std::vector<GroupPoint> gs_, hs_;
  std::vector<std::vector<Scalar>> g_vals_;
  std::vector<std::vector<std::vector<Scalar>>> gh_vals_;
  std::vector<Factorization> x_facs_;
  std::vector<Entry> entries_;
};

CosetResult coset_membership(const HCSubpair& sub, const Section& f, int degree = 2);
/// Same condition on wedge arguments: s(X ^ Ad(g)Y)(gh) over words X of g1 and Y of h1.
CosetResult wedge_condition(const HCSubpair& sub, const Section& s);
/// Adapted-basis form: s(Ad(g)X)(gh) = 0 when X meets h1, = s(Ad(g)X)(g) otherwise.
CosetResult adapted_condition(const HCSubpair& sub, const Section& s);

/// Functions used to generate coset members: H-invariant functions and bundle functions.
struct CosetData {
  std::vector<FunctionExpr> invariants;
  std::vector<BundleFn> bundles;
};
Section random_coset_member(const HCSubpair& sub, const CosetData& data, std::mt19937_64& rng);
/// Members, violators, closure under products, grading components, and agreement of the
/// three membership conditions.
Report coset_suite(const HCSubpair& sub, const CosetData& data, std::uint64_t seed, int pairs, int degree = 2);

}  // namespace sgk
