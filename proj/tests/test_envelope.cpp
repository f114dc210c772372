#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "sgk/envelope.hpp"
#include "sgk/fixtures.hpp"

using namespace sgk;

namespace {

Scalar q(long a, long b = 1) { return Scalar::ratio(a, b); }

struct Gl11 {
  AlgebraPtr g = fixtures::gl_algebra(1, 1);
  EnvelopePtr env = make_envelope(g);
  std::uint16_t e11 = idx("e11"), e22 = idx("e22"), e12 = idx("e12"), e21 = idx("e21");
  std::uint16_t idx(const char* n) const { return static_cast<std::uint16_t>(g->basis().index_of(n)); }
  UEAElement w(const Word& word, const Scalar& c = Scalar(1)) const { return UEAElement::word(env, word, c); }
};

int inversion_parity(const std::vector<int>& seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

// Signed shuffle sum over all splittings of the letter positions, built from scratch.
TensorElement shuffle_sum(const EnvelopePtr& env, const Word& letters) {
  TensorElement out(env, 2);
  std::size_t r = letters.size();
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    Word a, b;
    std::vector<int> ka, lb;
    for (std::size_t k = 0; k < r; ++k) {
      if (mask & (1u << k)) {
        a.push_back(letters[k]);
        ka.push_back(static_cast<int>(k));
      } else {
        b.push_back(letters[k]);
        lb.push_back(static_cast<int>(k));
      }
    }
    std::vector<int> seq = ka;
    seq.insert(seq.end(), lb.begin(), lb.end());
    UEAElement ua = UEAElement::word(env, a), ub = UEAElement::word(env, b);
    out.add_product({&ua, &ub}, Scalar(inversion_parity(seq)));
  }
  return out;
}

std::string word_name_for_test(const LieSuperAlgebra& g, const Word& w) {
  std::string s;
  for (auto i : w) s += (s.empty() ? "" : "^") + g.basis().name(i);
  return s.empty() ? "1" : s;
}

UEAElement random_element(const EnvelopePtr& env, std::mt19937_64& rng, int max_degree) {
  UEAElement u(env);
  int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    Word w;
    int len = static_cast<int>(rng() % (max_degree + 1));
    for (int k = 0; k < len; ++k) w.push_back(static_cast<std::uint16_t>(rng() % env->dim()));
    u += UEAElement::word(env, w, Scalar(static_cast<long>(rng() % 7) - 3));
  }
  return u;
}

}  // namespace

TEST_CASE("PBW normal form examples") {
  Gl11 t;
  UEAElement expected = t.w({t.e11}) + t.w({t.e22}) - t.w({t.e12, t.e21});
  CHECK(t.w({t.e21, t.e12}) == expected);
  CHECK(t.w({t.e11, t.e11}).terms() == Terms{{Word{t.e11, t.e11}, q(1)}});
  EnvelopePtr ab = make_envelope(fixtures::abelian_odd_algebra(1));
  CHECK(UEAElement::word(ab, Word{0, 0}).is_zero());
  // odd square through x x = 1/2 [x, x]: [e12, e12] = 0 in gl(1|1)
  CHECK(t.w({t.e12, t.e12}).is_zero());
}

TEST_CASE("multiplication examples") {
  Gl11 t;
  UEAElement one = UEAElement::one(t.env);
  UEAElement b = t.w({t.e22, t.e12}, q(3)) + t.w({t.e11});
  CHECK(one * b == b);
  CHECK(b * one == b);
  CHECK(t.w({t.e12}) * t.w({t.e21}) == t.w({t.e12, t.e21}));
  CHECK(t.w({t.e21}) * t.w({t.e12}) == t.w({t.e21, t.e12}));
  EnvelopePtr other = make_envelope(fixtures::gl_algebra(1, 1));
  CHECK_THROWS_AS(t.w({t.e12}) * UEAElement::one(other), Error);
}

TEST_CASE("PBW confluence under random rewrite order") {
  for (AlgebraPtr g : {fixtures::gl_algebra(1, 1), fixtures::gl_algebra(2, 1)}) {
    EnvelopePtr env = make_envelope(g);
    std::mt19937_64 rng(17);
    for (int k = 0; k < 150; ++k) {
      Word w;
      int len = 1 + static_cast<int>(rng() % 5);
      for (int i = 0; i < len; ++i) w.push_back(static_cast<std::uint16_t>(rng() % g->dim()));
      CHECK(env->normal_form_randomized(w, rng) == env->normal_form(w));
    }
  }
}

TEST_CASE("multiplication is associative") {
  Gl11 t;
  std::mt19937_64 rng(2);
  for (int k = 0; k < 60; ++k) {
    UEAElement a = random_element(t.env, rng, 2), b = random_element(t.env, rng, 2), c = random_element(t.env, rng, 2);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("coproduct examples") {
  Gl11 t;
  UEAElement one = UEAElement::one(t.env);
  TensorElement d1(t.env, 2);
  d1.add({Word{}, Word{}}, q(1));
  CHECK(coproduct(one) == d1);

  UEAElement x = t.w({t.e11});
  TensorElement dx(t.env, 2);
  dx.add_product({&x, &one}, q(1));
  dx.add_product({&one, &x}, q(1));
  CHECK(coproduct(x) == dx);

  // X1 X2 (x) 1 + X1 (x) X2 - X2 (x) X1 + 1 (x) X1 X2
  UEAElement x1 = t.w({t.e12}), x2 = t.w({t.e21}), x12 = t.w({t.e12, t.e21});
  TensorElement d2(t.env, 2);
  d2.add_product({&x12, &one}, q(1));
  d2.add_product({&x1, &x2}, q(1));
  d2.add_product({&x2, &x1}, q(-1));
  d2.add_product({&one, &x12}, q(1));
  CHECK(coproduct(x12) == d2);
}

TEST_CASE("coproduct equals the signed shuffle sum on distinct odd generators") {
  AlgebraPtr g = fixtures::abelian_odd_algebra(3);
  AlgebraPtr gl = fixtures::gl_algebra(2, 1);
  for (AlgebraPtr a : {g, gl}) {
    EnvelopePtr env = make_envelope(a);
    Word odd;
    for (std::size_t i = a->basis().n_even(); i < a->dim(); ++i) odd.push_back(static_cast<std::uint16_t>(i));
    for (std::uint32_t mask = 1; mask < (1u << odd.size()); ++mask) {
      Word letters;
      for (std::size_t k = 0; k < odd.size(); ++k)
        if (mask & (1u << k)) letters.push_back(odd[k]);
      // every ordering of the chosen letters, r <= 4 here
      std::sort(letters.begin(), letters.end());
      do {
        TensorElement lhs = coproduct(UEAElement::word(env, letters));
        CHECK(lhs == shuffle_sum(env, letters));
        CHECK(lhs == coproduct_shuffle_oracle(env, letters));
      } while (std::next_permutation(letters.begin(), letters.end()));
    }
  }
  EnvelopePtr env = make_envelope(gl);
  CHECK_THROWS_AS(coproduct_shuffle_oracle(env, Word{0}), Error);
}

TEST_CASE("coproduct with five distinct odd generators") {
  // gl(1|2) has four odd generators; gl(2|2) is used for r = 5.
  AlgebraPtr g = fixtures::gl_algebra(2, 2);
  EnvelopePtr env = make_envelope(g);
  Word odd;
  for (std::size_t i = g->basis().n_even(); i < g->dim(); ++i) odd.push_back(static_cast<std::uint16_t>(i));
  REQUIRE(odd.size() >= 5);
  std::mt19937_64 rng(23);
  for (int k = 0; k < 6; ++k) {
    Word letters(odd.begin(), odd.end());
    std::shuffle(letters.begin(), letters.end(), rng);
    letters.resize(5);
    CHECK(coproduct(UEAElement::word(env, letters)) == shuffle_sum(env, letters));
  }
}

TEST_CASE("coproduct is multiplicative") {
  Gl11 t;
  std::mt19937_64 rng(9);
  for (int k = 0; k < 40; ++k) {
    UEAElement a = random_element(t.env, rng, 3), b = random_element(t.env, rng, 3);
    CHECK(coproduct(a * b) == tensor_mul(coproduct(a), coproduct(b)));
  }
}

TEST_CASE("antipode and counit examples") {
  Gl11 t;
  UEAElement one = UEAElement::one(t.env);
  CHECK(antipode(one) == one);
  for (std::uint16_t i : {t.e11, t.e22, t.e12, t.e21}) CHECK(antipode(t.w({i})) == q(-1) * t.w({i}));
  // S(XY) = (-1)^{1*1} S(Y) S(X) = -(-Y)(-X) = -YX
  CHECK(antipode(t.w({t.e12, t.e21})) == q(-1) * t.w({t.e21, t.e12}));
  CHECK(antipode(antipode(t.w({t.e12, t.e21, t.e11}))) == t.w({t.e12, t.e21, t.e11}));
  CHECK(counit(one) == q(1));
  CHECK(counit(t.w({t.e12})) == q(0));
  CHECK(counit(q(2) * one + q(3) * t.w({t.e12, t.e21})) == q(2));
}

TEST_CASE("gamma examples") {
  Gl11 t;
  CHECK(gamma(t.env, ExtElement::wedge({})) == UEAElement::one(t.env));
  CHECK(gamma(t.env, ExtElement::wedge({t.e12})) == t.w({t.e12}));
  UEAElement expected = q(1, 2) * (t.w({t.e12, t.e21}) - t.w({t.e21, t.e12}));
  CHECK(gamma(t.env, ExtElement::wedge({t.e12, t.e21})) == expected);
  CHECK(gamma_word(t.env, Word{t.e12, t.e21}) == expected);
}

TEST_CASE("gamma of r letters matches the signed average over permutations") {
  AlgebraPtr g = fixtures::gl_algebra(2, 1);
  EnvelopePtr env = make_envelope(g);
  Word odd;
  for (std::size_t i = g->basis().n_even(); i < g->dim(); ++i) odd.push_back(static_cast<std::uint16_t>(i));
  for (std::size_t r = 1; r <= 3; ++r) {
    Word w(odd.begin(), odd.begin() + static_cast<long>(r));
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    UEAElement sum(env);
    long fact = 0;
    do {
      Word p;
      for (int k : perm) p.push_back(w[static_cast<std::size_t>(k)]);
      sum += UEAElement::word(env, p, Scalar(inversion_parity(perm)));
      ++fact;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(gamma_word(env, w) == Scalar::ratio(1, fact) * sum);
  }
}

TEST_CASE("gamma is a coalgebra morphism") {
  for (AlgebraPtr g : {fixtures::gl_algebra(1, 1), fixtures::gl_algebra(2, 1), fixtures::abelian_odd_algebra(3)}) {
    EnvelopePtr env = make_envelope(g);
    Word odd;
    for (std::size_t i = g->basis().n_even(); i < g->dim(); ++i) odd.push_back(static_cast<std::uint16_t>(i));
    for (const Word& w : subsets(odd, 4)) {
      ExtTensor dw = ext_coproduct(ExtElement::wedge(w));
      TensorElement rhs(env, 2);
      for (const auto& [key, c] : dw.terms) {
        UEAElement a = gamma_word(env, key.first), b = gamma_word(env, key.second);
        rhs.add_product({&a, &b}, c);
      }
      CHECK(coproduct(gamma_word(env, w)) == rhs);
    }
  }
}

TEST_CASE("gamma is multiplicative exactly when odd brackets vanish") {
  auto multiplicative = [](AlgebraPtr g, std::string* witness) {
    EnvelopePtr env = make_envelope(g);
    Word odd;
    for (std::size_t i = g->basis().n_even(); i < g->dim(); ++i) odd.push_back(static_cast<std::uint16_t>(i));
    for (const Word& a : subsets(odd, 4))
      for (const Word& b : subsets(odd, 4)) {
        if (a.size() + b.size() > 4) continue;
        UEAElement lhs = gamma(env, ext_mul(ExtElement::wedge(a), ExtElement::wedge(b)));
        if (lhs != gamma_word(env, a) * gamma_word(env, b)) {
          *witness = word_name_for_test(*g, a) + " , " + word_name_for_test(*g, b);
          return false;
        }
      }
    return true;
  };
  std::string w;
  CHECK(multiplicative(fixtures::abelian_odd_algebra(3), &w));
  CHECK(multiplicative(fixtures::cp12_algebra(), &w));
  CHECK_FALSE(multiplicative(fixtures::gl_algebra(1, 1), &w));
  MESSAGE("gl(1|1) violating pair: " << w);
  CHECK_FALSE(w.empty());
}

TEST_CASE("PBW factorization") {
  Gl11 t;
  Factorization f = pbw_factorize(t.w({t.e11}));
  CHECK(f.size() == 1);
  CHECK(f.at(Word{}) == t.w({t.e11}));
  Factorization fx = pbw_factorize(t.w({t.e12}));
  CHECK(fx.size() == 1);
  CHECK(fx.at(Word{t.e12}) == UEAElement::one(t.env));
  // gamma(e12 ^ e21) = e12 e21 - 1/2 (e11 + e22)
  Factorization f2 = pbw_factorize(t.w({t.e12, t.e21}));
  CHECK(f2.size() == 2);
  CHECK(f2.at(Word{t.e12, t.e21}) == UEAElement::one(t.env));
  CHECK(f2.at(Word{}) == q(1, 2) * (t.w({t.e11}) + t.w({t.e22})));
  CHECK(gamma_word(t.env, Word{t.e12, t.e21}) == t.w({t.e12, t.e21}) - q(1, 2) * (t.w({t.e11}) + t.w({t.e22})));
}

TEST_CASE("PBW factorization round trip") {
  for (AlgebraPtr g : {fixtures::gl_algebra(1, 1), fixtures::gl_algebra(2, 1)}) {
    EnvelopePtr env = make_envelope(g);
    std::mt19937_64 rng(31);
    for (int k = 0; k < 40; ++k) {
      UEAElement u = random_element(env, rng, 4);
      for (FactorSide side : {FactorSide::Left, FactorSide::Right}) {
        Factorization f = pbw_factorize(u, side);
        for (const auto& [w, c] : f)
          for (const auto& [m, s] : c.terms())
            for (auto i : m) CHECK_FALSE(g->basis().is_odd(i));
        CHECK(pbw_reconstruct(env, f, side) == u);
      }
    }
  }
}

TEST_CASE("exterior algebra") {
  CHECK(ext_mul(ExtElement::wedge({3}), ExtElement::wedge({3})).is_zero());
  ExtElement a = ext_mul(ExtElement::wedge({1}), ExtElement::wedge({2}));
  ExtElement b = ext_mul(ExtElement::wedge({2}), ExtElement::wedge({1}));
  CHECK(a + b == ExtElement());
  CHECK(a.terms() == ExtTerms{{Word{1, 2}, q(1)}});
  CHECK(wedge_sign(Word{2, 1}) == -1);
  CHECK(wedge_sign(Word{1, 1}) == 0);

  ExtTensor d = ext_coproduct(ExtElement::wedge({1, 2}));
  ExtTensor expected;
  expected.add(Word{1, 2}, Word{}, q(1));
  expected.add(Word{1}, Word{2}, q(1));
  expected.add(Word{2}, Word{1}, q(-1));
  expected.add(Word{}, Word{1, 2}, q(1));
  CHECK(d == expected);
}

TEST_CASE("exterior coproduct is multiplicative") {
  // Delta(a ^ b) = Delta(a) Delta(b) with the Koszul sign of word lengths.
  Word letters{1, 2, 3, 4};
  for (const Word& a : subsets(letters, 2))
    for (const Word& b : subsets(letters, 2)) {
      ExtElement ab = ext_mul(ExtElement::wedge(a), ExtElement::wedge(b));
      ExtTensor lhs;
      for (const auto& [w, c] : ab.terms())
        for (const auto& [k, v] : ext_coproduct(ExtElement::wedge(w)).terms) lhs.add(k.first, k.second, c * v);
      ExtTensor rhs;
      for (const auto& [ka, ca] : ext_coproduct(ExtElement::wedge(a)).terms)
        for (const auto& [kb, cb] : ext_coproduct(ExtElement::wedge(b)).terms) {
          int s = sign_pow(static_cast<long>(ka.second.size() * kb.first.size()));
          ExtElement l = ext_mul(ExtElement::wedge(ka.first), ExtElement::wedge(kb.first));
          ExtElement r = ext_mul(ExtElement::wedge(ka.second), ExtElement::wedge(kb.second));
          for (const auto& [wl, cl] : l.terms())
            for (const auto& [wr, cr] : r.terms()) rhs.add(wl, wr, ca * cb * cl * cr * Scalar(s));
        }
      CHECK(lhs == rhs);
    }
}

TEST_CASE("Psi_V signs and multiplicativity") {
  CHECK(psi_v_iso(q(5), Word{}).at(Word{}) == q(5));
  CHECK(psi_v_iso(q(5), Word{2}).at(Word{2}) == q(5));
  CHECK(psi_v_iso(q(5), Word{1, 2}).at(Word{1, 2}) == q(-5));
  CHECK(psi_v_iso(q(1), Word{1, 2, 3}).at(Word{1, 2, 3}) == q(-1));
  CHECK(psi_v_iso(q(1), Word{1, 2, 3, 4}).at(Word{1, 2, 3, 4}) == q(1));
  CHECK_THROWS_AS(psi_v_iso(q(1), Word{2, 1}), Error);

  Word letters{1, 2, 3};
  std::vector<Word> words = subsets(letters);
  for (const Word& a : words)
    for (const Word& b : words) {
      ExtElement ab = ext_mul(ExtElement::wedge(a), ExtElement::wedge(b));
      std::map<Word, Scalar> lhs;
      for (const auto& [w, c] : ab.terms())
        for (const auto& [k, v] : psi_v_iso(c, w)) lhs[k] += v;
      std::erase_if(lhs, [](const auto& kv) { return kv.second.is_zero(); });
      CHECK(lhs == hom_product(psi_v_iso(q(1), a), psi_v_iso(q(1), b), words));
    }
}

TEST_CASE("Hopf axioms on gl(1|1) to degree 3 and C^{0|3} to degree 4") {
  Report r = hopf_axiom_check(make_envelope(fixtures::gl_algebra(1, 1)), 3);
  CHECK(r.ok());
  CHECK(r.lines().size() >= 7);
  Report a = hopf_axiom_check(make_envelope(fixtures::abelian_odd_algebra(3)), 4);
  CHECK(a.ok());
}

TEST_CASE("every single-sign Hopf mutation fails") {
  EnvelopePtr env = make_envelope(fixtures::gl_algebra(1, 1));
  auto muts = fixtures::hopf_mutations();
  CHECK(muts.size() == 4);
  for (const auto& [name, conv] : muts) {
    CAPTURE(name);
    Report r = hopf_axiom_check(env, 3, conv);
    CHECK_FALSE(r.ok());
  }
  HopfConventions wrong_antipode;
  wrong_antipode.antipode_negates = false;
  Report r = hopf_axiom_check(env, 3, wrong_antipode);
  bool antipode_failed = false;
  for (const auto& l : r.lines())
    if (!l.pass && l.check.find("antipode_left") != std::string::npos) antipode_failed = true;
  CHECK(antipode_failed);
}

TEST_CASE("super-cocommutativity on gl(2|1)") {
  EnvelopePtr env = make_envelope(fixtures::gl_algebra(2, 1));
  for (const Word& w : pbw_basis(env->algebra(), 2)) {
    TensorElement d = coproduct(UEAElement(env, Terms{{w, q(1)}}));
    CHECK(flip(d) == d);
  }
}
