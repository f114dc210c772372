#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "sgk/envelope.hpp"
#include "sgk/groupmodel.hpp"
#include "sgk/report.hpp"

namespace sgk {

class HCPair;
using PairPtr = std::shared_ptr<const HCPair>;

/// Harish-Chandra pair: group model G, algebra g with g0 = Lie G, action alpha of G on g.
class HCPair : public std::enable_shared_from_this<HCPair> {
 public:
  HCPair(GroupModel model, AlphaRep alpha, SampleSet samples = {}, std::string label = {});
  static PairPtr make(GroupModel model, AlphaRep alpha, SampleSet samples = {}, std::string label = {});
  /// Pair with the conjugation action.
  static PairPtr make_conjugation(GroupModel model, SampleSet samples = {}, std::string label = {});

  const std::string& label() const { return label_; }
  const GroupModel& model() const { return model_; }
  const AlgebraPtr& algebra() const { return model_.algebra(); }
  const LieSuperAlgebra& g() const { return *model_.algebra(); }
  const EnvelopePtr& env() const { return env_; }
  const AlphaRep& alpha() const { return alpha_; }
  const SampleSet& samples() const { return samples_; }

  /// Odd basis indices and all increasing words in them.
  Word odd_letters() const;
  const std::vector<Word>& odd_words() const { return odd_words_; }
  bool is_odd_word(const Word& w) const;

  /// k-fold product pair (G^k, g^k), cached so repeated calls share one object.
  PairPtr power(std::size_t k) const;
  /// Image of u_1 (x) ... (x) u_k in U(g^k) as the product of the copies, in order.
  UEAElement embed_tensor(const std::vector<UEAElement>& factors) const;
  /// Splits a word of the k-fold power algebra into per-copy words of this algebra.
  std::vector<Word> split_power_word(const Word& w, std::size_t k) const;
  /// Base-algebra index of copy `copy` in the power pair of arity k.
  std::size_t power_index(std::size_t i, std::size_t copy, std::size_t k) const { return g().power_index(i, copy, k); }

  /// Symbolic minor det(alpha(g)[rows, cols]) for odd index words of equal length.
  const FunctionExpr& alpha_minor(const Word& rows, const Word& cols) const;
  /// Numeric action of alpha(g) on U(g) (as an algebra automorphism).
  UEAElement alpha_apply(const ScalarMatrix& alpha_g, const UEAElement& u) const;

 private:
  std::string label_;
  GroupModel model_;
  AlphaRep alpha_;
  SampleSet samples_;
  EnvelopePtr env_;
  std::vector<Word> odd_words_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, PairPtr> powers_;
  mutable std::map<std::pair<Word, Word>, FunctionExpr> minors_;
};

/// Numeric image of an algebra-linear map (matrix on basis coordinates) extended
/// multiplicatively to the enveloping algebras.
UEAElement map_uea(const ScalarMatrix& phi, const EnvelopePtr& target, const UEAElement& u);

/// Section of the structure sheaf as a table over odd words: f(gamma(w)) = table[w], extended to
/// all of U(g) through the right U(g0)-module structure f(u Z) = Z^R f(u), Z^R the
/// right-invariant field of Z in g0.
using SectionTable = std::map<Word, FunctionExpr>;

class Section {
 public:
  Section() = default;
  Section(PairPtr pair, SectionTable table);

  const PairPtr& pair() const { return pair_; }
  const SectionTable& table() const { return table_; }
  FunctionExpr entry(const Word& w) const;
  /// Parity if homogeneous (word-length parity); zero counts as even.
  std::optional<Parity> parity() const;
  Section parity_part(Parity p) const;
  Section grading_part(std::size_t degree) const;

  Section& operator+=(const Section& o);
  Section& operator-=(const Section& o);
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(Section a, const Section& b) { return a -= b; }
  Section scaled(const Scalar& c) const;
  Section scaled(const FunctionExpr& c) const;

  std::string to_string() const;

 private:
  PairPtr pair_;
  SectionTable table_;
};

void check_same_pair(const PairPtr& a, const PairPtr& b);

/// Evaluates a section on elements of U(g), caching derivative chains.
class SectionEvaluator {
 public:
  explicit SectionEvaluator(const Section& f) : f_(f) {}
  /// f(u) as a function on G.
  FunctionExpr apply(const UEAElement& u);
  Scalar eval(const UEAElement& u, const GroupPoint& g);
  Scalar eval_values(const UEAElement& u, const std::vector<Scalar>& values);
  /// Same on an element already factored with FactorSide::Right.
  Scalar eval_factored(const Factorization& fac, const std::vector<Scalar>& values);

 private:
  const FunctionExpr& chain(const Word& odd, const Word& even);
  Section f_;
  std::map<std::pair<Word, Word>, FunctionExpr> cache_;
};

Scalar section_eval(const Section& f, const UEAElement& u, const GroupPoint& g);
/// f1 * f2 = Mult o (f1 (x) f2) o Delta on tables (exterior coproduct with Koszul signs).
Section section_mul(const Section& f1, const Section& f2);
Section grading_project(const Section& f, std::size_t p);

/// Field of a homogeneous X in g on a section:
/// field_X(f)(u) = (-1)^{p(X)p(f)} f(X u), applied to each parity component.
/// With koszul_sign = false the sign is dropped (used to show that variant fails).
Section field_apply(const Vec& x, const Section& f, bool koszul_sign = true);

/// Pullback under multiplication, as a table over the product pair.
Section mu_star(const Section& f);
/// mu*(f)(X (x) Y)(g, h) = f(X alpha(g)(Y))(gh), evaluated directly.
Scalar mu_star_formula(const Section& f, const UEAElement& x, const UEAElement& y, const GroupPoint& g, const GroupPoint& h);
/// Pullback under inversion, as a table: iota*(f)(X)(g) = f(alpha(g^{-1})(S X))(g^{-1}).
Section iota_star(const Section& f);
Scalar iota_star_formula(const Section& f, const UEAElement& x, const GroupPoint& g);
/// Pullback under the unit: f(1)(e).
Scalar eps_star(const Section& f);

enum class Side { Left, Right };
/// Left: f(alpha(g) u)(g h). Right: f(u)(h g).
Section translate(Side side, const GroupPoint& g, const Section& f);
/// (d omega_g)_e computed from pullbacks of coordinate and odd indicator sections under
/// omega_g = conjugation by g; compare with ad_matrix.
ScalarMatrix ad_from_translations(const PairPtr& pair, const GroupPoint& g);

/// Pullback of a section on the first/second factor of G x G.
Section pr_star(const Section& f, std::size_t factor);

/// Sections used to probe axioms: one per (odd word, coordinate function) with coordinate
/// functions 1, free x_ij and detinv_b.
std::vector<Section> basis_sections(const PairPtr& pair);
/// Seeded random section with small integer polynomial entries.
Section random_section(const PairPtr& pair, std::mt19937_64& rng, std::optional<Parity> parity = std::nullopt,
                       int max_terms = 3, int max_degree = 2);

/// Associativity, unit, inverse axioms on samples and low-degree monomials, plus
/// consistency of the symbolic pullback tables with the pointwise formulas.
Report group_axiom_check(const PairPtr& pair, const SampleSet& samples, int degree);
/// Validity of the pair data (alpha parity, restriction to Ad, differential, homomorphism).
Report check_pair(const PairPtr& pair, const SampleSet& samples);
/// Right-invariant field calculus: bracket signs, super-Leibniz, compatibility, Ad routes.
Report field_calculus_check(const PairPtr& pair, const SampleSet& samples, std::uint64_t seed, int cases);
/// A supergroup is split iff [g1, g1] = 0. When split, mu* preserves the Z-grading.
Report split_check(const PairPtr& pair, const SampleSet& samples);
Report split_check_algebra(const LieSuperAlgebra& g);

/// Morphism of pairs: group map Phi (target-sized matrix of functions of the source
/// coordinates, plus the target inverse block determinants) and algebra map phi.
class HCMorphism {
 public:
  HCMorphism(PairPtr source, PairPtr target, ExprMatrix group_map, std::vector<FunctionExpr> detinv_images,
             ScalarMatrix algebra_map, std::string label = {});
  static HCMorphism identity(const PairPtr& pair);
  /// Phi(g) = k g k^{-1}, phi = alpha(k).
  static HCMorphism conjugation(const PairPtr& pair, const GroupPoint& k);
  /// this o first
  HCMorphism after(const HCMorphism& first) const;

  const PairPtr& source() const { return source_; }
  const PairPtr& target() const { return target_; }
  const ExprMatrix& group_map() const { return group_map_; }
  const std::vector<FunctionExpr>& detinv_images() const { return detinv_; }
  const ScalarMatrix& algebra_map() const { return phi_; }
  const std::string& label() const { return label_; }
  HCMorphism with_algebra_map(ScalarMatrix phi, std::string label) const;

  GroupPoint apply_group(const GroupPoint& g) const;
  UEAElement apply_uea(const UEAElement& u) const { return map_uea(phi_, target_->env(), u); }
  /// Images of the target variables as functions on the source.
  std::vector<std::optional<FunctionExpr>> substitution() const;

 private:
  PairPtr source_, target_;
  ExprMatrix group_map_;
  std::vector<FunctionExpr> detinv_;
  ScalarMatrix phi_;
  std::string label_;
};

Section hcp_morphism_apply(const HCMorphism& m, const Section& f);
Report morphism_check(const HCMorphism& m, const SampleSet& samples, int degree);

struct UniquenessResult {
  bool premise_holds = false;  // equal group maps on samples and equal algebra maps
  bool pullbacks_agree = false;
  std::string witness;         // first disagreement
  int witness_degree = -1;
};
UniquenessResult morphism_uniqueness(const HCMorphism& a, const HCMorphism& b, const SampleSet& samples, int degree);
Report morphism_uniqueness_check(const HCMorphism& a, const HCMorphism& b, const SampleSet& samples, int degree);

/// Iterated-field identity: Y_1(Y_2(...Y_q f)) evaluated at u equals the signed value of
/// (mu^q)* f on Y_q (x) ... (x) Y_1 (x) u at (e, ..., e, h).
Report iterated_field_check(const PairPtr& pair, const SampleSet& samples, std::uint64_t seed, int max_q);

std::string word_name(const LieSuperAlgebra& g, const Word& w);

}  // namespace sgk
