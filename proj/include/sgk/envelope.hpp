#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "sgk/liesuper.hpp"
#include "sgk/report.hpp"

namespace sgk {

/// Sequence of basis indices. As a PBW monomial it is non-decreasing with no repeated odd index;
/// since even indices precede odd ones this means "evens sorted, then odds strictly increasing".
using Word = std::vector<std::uint16_t>;
using Terms = std::map<Word, Scalar>;

void add_term(Terms& t, const Word& w, const Scalar& c);

/// Universal enveloping algebra U(g) of a fixed algebra, with normal-form caches.
class Envelope : public std::enable_shared_from_this<Envelope> {
 public:
  explicit Envelope(AlgebraPtr algebra);

  const LieSuperAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  std::size_t dim() const { return algebra_->dim(); }

  bool is_pbw(const Word& w) const;
  Parity word_parity(const Word& w) const;
  /// PBW normal form of an arbitrary word (leftmost-violation rewriting, memoized).
  const Terms& normal_form(const Word& w) const;
  /// Same, choosing the rewrite position at random at every step (no memo).
  Terms normal_form_randomized(const Word& w, std::mt19937_64& rng) const;

  /// Cached symmetrization of an odd word (strictly increasing odd indices).
  const Terms& gamma_word(const Word& odd_word) const;

 private:
  Terms rewrite_at(const Word& w, std::size_t k, const std::function<Terms(const Word&)>& recurse) const;
  std::size_t first_violation(const Word& w) const;

  AlgebraPtr algebra_;
  mutable std::mutex mutex_;
  mutable std::map<Word, Terms> nf_cache_;
  mutable std::map<Word, Terms> gamma_cache_;
};

using EnvelopePtr = std::shared_ptr<const Envelope>;
EnvelopePtr make_envelope(AlgebraPtr algebra);

class UEAElement {
 public:
  UEAElement() = default;
  explicit UEAElement(EnvelopePtr env) : env_(std::move(env)) {}
  UEAElement(EnvelopePtr env, Terms normal_terms);

  static UEAElement one(EnvelopePtr env);
  static UEAElement generator(EnvelopePtr env, std::size_t i);
  static UEAElement from_vec(EnvelopePtr env, const Vec& v);
  /// Normal form of c * w for an arbitrary word w.
  static UEAElement word(EnvelopePtr env, const Word& w, const Scalar& c = Scalar(1));

  const EnvelopePtr& env() const { return env_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Word& w) const;
  std::size_t degree() const;
  /// Parity if homogeneous (zero is even), nullopt otherwise.
  std::optional<Parity> parity() const;

  UEAElement& operator+=(const UEAElement& o);
  UEAElement& operator-=(const UEAElement& o);
  friend UEAElement operator+(UEAElement a, const UEAElement& b) { return a += b; }
  friend UEAElement operator-(UEAElement a, const UEAElement& b) { return a -= b; }
  friend UEAElement operator*(const UEAElement& a, const UEAElement& b);
  friend UEAElement operator*(const Scalar& s, UEAElement a);
  friend bool operator==(const UEAElement& a, const UEAElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const UEAElement& a, const UEAElement& b) { return !(a == b); }

  std::string to_string() const;

 private:
  EnvelopePtr env_;
  Terms terms_;
};

void check_same_env(const EnvelopePtr& a, const EnvelopePtr& b);
/// All PBW monomials of degree <= max_degree, ordered by degree then lexicographically.
std::vector<Word> pbw_basis(const LieSuperAlgebra& g, int max_degree);

/// Sign conventions of the Hopf structure. The defaults are the correct super conventions;
/// flipping a flag gives a deliberately broken variant used to confirm the checks have teeth.
struct HopfConventions {
  bool tensor_koszul = true;          // (a(x)b)(c(x)d) = (-1)^{p(b)p(c)} ac (x) bd
  bool antipode_negates = true;       // S(x) = -x on generators
  bool antipode_reorder_sign = true;  // S(xy) = (-1)^{p(x)p(y)} S(y)S(x)
  bool flip_koszul = true;            // T(a(x)b) = (-1)^{p(a)p(b)} b(x)a
};

/// Element of the k-fold tensor power of U(g), terms keyed by tuples of PBW monomials.
class TensorElement {
 public:
  TensorElement() = default;
  TensorElement(EnvelopePtr env, std::size_t arity) : env_(std::move(env)), arity_(arity) {}

  const EnvelopePtr& env() const { return env_; }
  std::size_t arity() const { return arity_; }
  const std::map<std::vector<Word>, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const std::vector<Word>& key, const Scalar& c);
  /// Adds c * (u_1 (x) ... (x) u_k).
  void add_product(const std::vector<const UEAElement*>& factors, const Scalar& c);
  TensorElement& operator+=(const TensorElement& o);
  TensorElement& operator-=(const TensorElement& o);
  friend bool operator==(const TensorElement& a, const TensorElement& b) { return a.arity_ == b.arity_ && a.terms_ == b.terms_; }
  friend bool operator!=(const TensorElement& a, const TensorElement& b) { return !(a == b); }

  std::string to_string() const;

 private:
  EnvelopePtr env_;
  std::size_t arity_ = 0;
  std::map<std::vector<Word>, Scalar> terms_;
};

TensorElement tensor_mul(const TensorElement& a, const TensorElement& b, const HopfConventions& conv = {});

/// Coproduct as the multiplicative extension of x -> x(x)1 + 1(x)x.
TensorElement coproduct(const UEAElement& u, const HopfConventions& conv = {});
/// Closed-form coproduct of a product of distinct odd generators (in the given order):
/// sum over subsets S of sign * x_S (x) x_{S^c}, sign from the Koszul rule on odd letters.
TensorElement coproduct_shuffle_oracle(EnvelopePtr env, const Word& odd_letters);
UEAElement antipode(const UEAElement& u, const HopfConventions& conv = {});
Scalar counit(const UEAElement& u);
/// Super flip on a 2-fold tensor.
TensorElement flip(const TensorElement& t, const HopfConventions& conv = {});
/// Multiplication U(x)U -> U.
UEAElement multiply(const TensorElement& t);
/// Applies a linear map to the given tensor slot (the map must be even).
TensorElement apply_slot(const TensorElement& t, std::size_t slot, const std::function<UEAElement(const UEAElement&)>& f);
/// Replaces slot by the coproduct of that slot (arity grows by one).
TensorElement coproduct_slot(const TensorElement& t, std::size_t slot, const HopfConventions& conv = {});
/// Applies the counit in the given slot (arity shrinks by one).
TensorElement counit_slot(const TensorElement& t, std::size_t slot);

Report hopf_axiom_check(EnvelopePtr env, int max_degree, const HopfConventions& conv = {}, const std::string& label = {});

// Exterior algebra on odd basis indices (any index set; words strictly increasing).
using ExtTerms = std::map<Word, Scalar>;

class ExtElement {
 public:
  ExtElement() = default;
  explicit ExtElement(ExtTerms t);
  /// Wedge of the letters in the given order (sign from sorting, zero if repeated).
  static ExtElement wedge(const Word& letters, const Scalar& c = Scalar(1));
  const ExtTerms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ExtElement& operator+=(const ExtElement& o);
  friend ExtElement operator+(ExtElement a, const ExtElement& b) { return a += b; }
  friend bool operator==(const ExtElement& a, const ExtElement& b) { return a.terms_ == b.terms_; }

 private:
  ExtTerms terms_;
};

struct ExtTensor {
  std::map<std::pair<Word, Word>, Scalar> terms;
  void add(const Word& a, const Word& b, const Scalar& c);
  friend bool operator==(const ExtTensor& a, const ExtTensor& b) { return a.terms == b.terms; }
};

ExtElement ext_mul(const ExtElement& a, const ExtElement& b);
/// Coproduct of the exterior algebra as multiplicative extension of x -> x(x)1 + 1(x)x.
ExtTensor ext_coproduct(const ExtElement& a);
/// Sorting sign of an arbitrary letter sequence; 0 if a letter repeats.
int wedge_sign(const Word& letters);

/// Graded symmetrization (1/r!) sum_sigma sign(sigma) x_sigma(1)...x_sigma(r) into U(g).
UEAElement gamma(EnvelopePtr env, const ExtElement& w);
UEAElement gamma_word(EnvelopePtr env, const Word& odd_word);

/// Factorization through U(g0) (x) gamma(wedge g1):
///   Left:  a = sum_w u_w * gamma(w)    Right: a = sum_w gamma(w) * u_w
/// with u_w in U(g0) (even PBW monomials only).
enum class FactorSide { Left, Right };
using Factorization = std::map<Word, UEAElement>;
Factorization pbw_factorize(const UEAElement& a, FactorSide side = FactorSide::Left);
UEAElement pbw_reconstruct(EnvelopePtr env, const Factorization& f, FactorSide side);

/// Isomorphism F (x) wedge(V*) -> Hom(wedge V, F) on a monomial h * xi*_{j1..jk}:
/// the functional taking xi_{j1..jk} to (-1)^{k(k-1)/2} h and other basis words to zero.
template <class Coeff>
std::map<Word, Coeff> psi_v_iso(const Coeff& h, const Word& dual_word) {
  for (std::size_t i = 1; i < dual_word.size(); ++i)
    if (dual_word[i - 1] >= dual_word[i]) raise(Errc::InvalidInput, "dual word must be strictly increasing");
  long k = static_cast<long>(dual_word.size());
  Coeff v = h;
  if (sign_pow(k * (k - 1) / 2) < 0) v = -v;
  return {{dual_word, v}};
}

/// Product in Hom(wedge V, F) dual to the exterior coproduct, with the super sign
/// (f1 f2)(w) = sum (-1)^{p(f2) p(w')} f1(w') f2(w'') over Delta(w) = sum w' (x) w''.
/// Components are homogeneous by word length, so p(f2) is the length parity of w''.
template <class Coeff>
std::map<Word, Coeff> hom_product(const std::map<Word, Coeff>& f1, const std::map<Word, Coeff>& f2,
                                  const std::vector<Word>& words) {
  std::map<Word, Coeff> out;
  for (const auto& w : words) {
    ExtTensor d = ext_coproduct(ExtElement::wedge(w));
    Coeff acc{};
    bool any = false;
    for (const auto& [key, c] : d.terms) {
      auto i1 = f1.find(key.first);
      auto i2 = f2.find(key.second);
      if (i1 == f1.end() || i2 == f2.end()) continue;
      int s = sign_pow(static_cast<long>(key.second.size() * key.first.size()));
      Coeff term = i1->second * i2->second;
      Scalar k = c * Scalar(s);
      acc += Coeff(k) * term;
      any = true;
    }
    if (any && !acc.is_zero()) out[w] = acc;
  }
  return out;
}

/// All strictly increasing subsets of the given letters, ordered by size then lexicographically.
std::vector<Word> subsets(const Word& letters, int max_size = -1);

}  // namespace sgk
