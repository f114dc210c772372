#include "sgk/envelope.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sgk {

void add_term(Terms& t, const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

namespace {

void add_scaled(Terms& acc, const Terms& src, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [w, v] : src) add_term(acc, w, v * c);
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

}  // namespace

Envelope::Envelope(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) raise(Errc::InvalidInput, "envelope requires an algebra");
  if (algebra_->dim() > 0xFFFF) raise(Errc::InvalidInput, "algebra too large");
}

EnvelopePtr make_envelope(AlgebraPtr algebra) { return std::make_shared<const Envelope>(std::move(algebra)); }

bool Envelope::is_pbw(const Word& w) const { return first_violation(w) == w.size(); }

Parity Envelope::word_parity(const Word& w) const {
  int b = 0;
  for (auto i : w) b += bit(algebra_->parity(i));
  return parity_of_bit(b);
}

std::size_t Envelope::first_violation(const Word& w) const {
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    if (w[k] >= dim() || w[k + 1] >= dim()) raise(Errc::InvalidInput, "word references unknown basis index");
    if (w[k] > w[k + 1]) return k;
    if (w[k] == w[k + 1] && algebra_->parity(w[k]) == Parity::Odd) return k;
  }
  if (!w.empty() && w.back() >= dim()) raise(Errc::InvalidInput, "word references unknown basis index");
  return w.size();
}

Terms Envelope::rewrite_at(const Word& w, std::size_t k, const std::function<Terms(const Word&)>& recurse) const {
  std::size_t a = w[k], b = w[k + 1];
  Terms out;
  auto contracted = [&](std::size_t c) {
    Word x(w.begin(), w.begin() + static_cast<long>(k));
    x.push_back(static_cast<std::uint16_t>(c));
    x.insert(x.end(), w.begin() + static_cast<long>(k) + 2, w.end());
    return x;
  };
  const Vec& br = algebra_->bracket_basis(a, b);
  if (a == b) {
    // x x = 1/2 [x, x] for odd x
    for (std::size_t c = 0; c < br.size(); ++c)
      if (!br[c].is_zero()) add_scaled(out, recurse(contracted(c)), br[c] * Scalar::ratio(1, 2));
    return out;
  }
  // x y = (-1)^{p(x)p(y)} y x + [x, y]
  Word swapped = w;
  std::swap(swapped[k], swapped[k + 1]);
  add_scaled(out, recurse(swapped), Scalar(koszul(algebra_->parity(a), algebra_->parity(b))));
  for (std::size_t c = 0; c < br.size(); ++c)
    if (!br[c].is_zero()) add_scaled(out, recurse(contracted(c)), br[c]);
  return out;
}

const Terms& Envelope::normal_form(const Word& w) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = nf_cache_.find(w);
    if (it != nf_cache_.end()) return it->second;
  }
  Terms result;
  std::size_t k = first_violation(w);
  if (k == w.size())
    result[w] = Scalar(1);
  else
    result = rewrite_at(w, k, [this](const Word& x) { return normal_form(x); });
  std::lock_guard<std::mutex> lock(mutex_);
  return nf_cache_.emplace(w, std::move(result)).first->second;
}

Terms Envelope::normal_form_randomized(const Word& w, std::mt19937_64& rng) const {
  std::vector<std::size_t> viol;
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (w[k] > w[k + 1] || (w[k] == w[k + 1] && algebra_->parity(w[k]) == Parity::Odd)) viol.push_back(k);
  if (viol.empty()) return Terms{{w, Scalar(1)}};
  std::size_t k = viol[rng() % viol.size()];
  return rewrite_at(w, k, [this, &rng](const Word& x) { return normal_form_randomized(x, rng); });
}

const Terms& Envelope::gamma_word(const Word& odd_word) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = gamma_cache_.find(odd_word);
    if (it != gamma_cache_.end()) return it->second;
  }
  for (std::size_t k = 0; k < odd_word.size(); ++k) {
    if (odd_word[k] >= dim() || algebra_->parity(odd_word[k]) != Parity::Odd)
      raise(Errc::InvalidInput, "symmetrization word must consist of odd basis indices");
    if (k > 0 && odd_word[k - 1] >= odd_word[k]) raise(Errc::InvalidInput, "symmetrization word must be strictly increasing");
  }
  std::vector<int> perm(odd_word.size());
  std::iota(perm.begin(), perm.end(), 0);
  Terms acc;
  long count = 0;
  do {
    Word x;
    for (int p : perm) x.push_back(odd_word[static_cast<std::size_t>(p)]);
    add_scaled(acc, normal_form(x), Scalar(inversion_sign(perm)));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  Terms result;
  add_scaled(result, acc, Scalar::ratio(1, count));
  std::lock_guard<std::mutex> lock(mutex_);
  return gamma_cache_.emplace(odd_word, std::move(result)).first->second;
}

void check_same_env(const EnvelopePtr& a, const EnvelopePtr& b) {
  if (a && b && a != b && a->algebra_ptr() != b->algebra_ptr())
    raise(Errc::ParentMismatch, "elements belong to different enveloping algebras");
}

UEAElement::UEAElement(EnvelopePtr env, Terms normal_terms) : env_(std::move(env)), terms_(std::move(normal_terms)) {}

UEAElement UEAElement::one(EnvelopePtr env) { return UEAElement(std::move(env), Terms{{Word{}, Scalar(1)}}); }

UEAElement UEAElement::generator(EnvelopePtr env, std::size_t i) {
  if (i >= env->dim()) raise(Errc::InvalidInput, "generator index out of range");
  return UEAElement(std::move(env), Terms{{Word{static_cast<std::uint16_t>(i)}, Scalar(1)}});
}

UEAElement UEAElement::from_vec(EnvelopePtr env, const Vec& v) {
  if (v.size() != env->dim()) raise(Errc::DimensionMismatch, "vector length does not match algebra");
  Terms t;
  for (std::size_t i = 0; i < v.size(); ++i) add_term(t, Word{static_cast<std::uint16_t>(i)}, v[i]);
  return UEAElement(std::move(env), std::move(t));
}

UEAElement UEAElement::word(EnvelopePtr env, const Word& w, const Scalar& c) {
  Terms t;
  add_scaled(t, env->normal_form(w), c);
  return UEAElement(std::move(env), std::move(t));
}

Scalar UEAElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar() : it->second;
}

std::size_t UEAElement::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.size());
  return d;
}

std::optional<Parity> UEAElement::parity() const {
  bool even = false, odd = false;
  for (const auto& [w, c] : terms_) (env_->word_parity(w) == Parity::Odd ? odd : even) = true;
  if (even && odd) return std::nullopt;
  return odd ? Parity::Odd : Parity::Even;
}

UEAElement& UEAElement::operator+=(const UEAElement& o) {
  if (!env_) env_ = o.env_;
  check_same_env(env_, o.env_);
  for (const auto& [w, c] : o.terms_) add_term(terms_, w, c);
  return *this;
}

UEAElement& UEAElement::operator-=(const UEAElement& o) {
  if (!env_) env_ = o.env_;
  check_same_env(env_, o.env_);
  for (const auto& [w, c] : o.terms_) add_term(terms_, w, -c);
  return *this;
}

UEAElement operator*(const UEAElement& a, const UEAElement& b) {
  check_same_env(a.env_, b.env_);
  EnvelopePtr env = a.env_ ? a.env_ : b.env_;
  Terms out;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) add_scaled(out, env->normal_form(concat(wa, wb)), ca * cb);
  return UEAElement(env, std::move(out));
}

UEAElement operator*(const Scalar& s, UEAElement a) {
  Terms out;
  add_scaled(out, a.terms_, s);
  a.terms_ = std::move(out);
  return a;
}

std::string UEAElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    for (auto i : w) os << "*" << env_->algebra().basis().name(i);
  }
  return os.str();
}

std::vector<Word> pbw_basis(const LieSuperAlgebra& g, int max_degree) {
  std::size_t ne = g.basis().n_even(), n = g.dim();
  std::vector<Word> out;
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<Word> level;
    // Recursive generation of non-decreasing words with odd letters not repeated.
    std::function<void(Word&, std::size_t)> rec = [&](Word& w, std::size_t start) {
      if (static_cast<int>(w.size()) == d) {
        level.push_back(w);
        return;
      }
      for (std::size_t i = start; i < n; ++i) {
        w.push_back(static_cast<std::uint16_t>(i));
        rec(w, i < ne ? i : i + 1);
        w.pop_back();
      }
    };
    Word w;
    rec(w, 0);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// ---------------------------------------------------------------- tensors

void TensorElement::add(const std::vector<Word>& key, const Scalar& c) {
  if (key.size() != arity_) raise(Errc::DimensionMismatch, "tensor key has wrong arity");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void TensorElement::add_product(const std::vector<const UEAElement*>& factors, const Scalar& c) {
  if (factors.size() != arity_) raise(Errc::DimensionMismatch, "tensor product has wrong arity");
  std::vector<Word> key(arity_);
  std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t slot, const Scalar& acc) {
    if (slot == arity_) {
      add(key, acc);
      return;
    }
    for (const auto& [w, v] : factors[slot]->terms()) {
      key[slot] = w;
      rec(slot + 1, acc * v);
    }
  };
  if (!c.is_zero()) rec(0, c);
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  if (!env_) {
    env_ = o.env_;
    arity_ = o.arity_;
  }
  if (o.arity_ != arity_) raise(Errc::DimensionMismatch, "tensor arity mismatch");
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
  if (!env_) {
    env_ = o.env_;
    arity_ = o.arity_;
  }
  if (o.arity_ != arity_) raise(Errc::DimensionMismatch, "tensor arity mismatch");
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

std::string TensorElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    for (std::size_t s = 0; s < key.size(); ++s) {
      os << (s == 0 ? " " : " (x) ");
      if (key[s].empty()) os << "1";
      for (std::size_t t = 0; t < key[s].size(); ++t)
        os << (t ? "*" : "") << env_->algebra().basis().name(key[s][t]);
    }
  }
  return os.str();
}

TensorElement tensor_mul(const TensorElement& a, const TensorElement& b, const HopfConventions& conv) {
  if (a.arity() != b.arity()) raise(Errc::DimensionMismatch, "tensor arity mismatch");
  check_same_env(a.env(), b.env());
  const EnvelopePtr& env = a.env();
  std::size_t k = a.arity();
  TensorElement out(env, k);
  std::vector<UEAElement> prods(k);
  std::vector<const UEAElement*> ptrs(k);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      int sign = 1;
      if (conv.tensor_koszul)
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < i; ++j) sign *= koszul(env->word_parity(ka[i]), env->word_parity(kb[j]));
      for (std::size_t i = 0; i < k; ++i) {
        prods[i] = UEAElement(env, env->normal_form(concat(ka[i], kb[i])));
        ptrs[i] = &prods[i];
      }
      out.add_product(ptrs, ca * cb * Scalar(sign));
    }
  return out;
}

TensorElement coproduct(const UEAElement& u, const HopfConventions& conv) {
  const EnvelopePtr& env = u.env();
  TensorElement out(env, 2);
  for (const auto& [w, c] : u.terms()) {
    TensorElement acc(env, 2);
    acc.add({Word{}, Word{}}, Scalar(1));
    for (auto letter : w) {
      TensorElement d(env, 2);
      d.add({Word{letter}, Word{}}, Scalar(1));
      d.add({Word{}, Word{letter}}, Scalar(1));
      acc = tensor_mul(acc, d, conv);
    }
    for (const auto& [k, v] : acc.terms()) out.add(k, v * c);
  }
  return out;
}

TensorElement coproduct_shuffle_oracle(EnvelopePtr env, const Word& letters) {
  for (auto l : letters)
    if (l >= env->dim() || env->algebra().parity(l) != Parity::Odd)
      raise(Errc::InvalidInput, "shuffle oracle requires odd letters");
  TensorElement out(env, 2);
  std::size_t r = letters.size();
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    Word left, right;
    std::vector<int> seq_left, seq_right;
    for (std::size_t k = 0; k < r; ++k) {
      if (mask & (1u << k)) {
        left.push_back(letters[k]);
        seq_left.push_back(static_cast<int>(k) + 1);
      } else {
        right.push_back(letters[k]);
        seq_right.push_back(static_cast<int>(k) + 1);
      }
    }
    int s = shuffle_sign(seq_left, seq_right);
    UEAElement l = UEAElement::word(env, left), rr = UEAElement::word(env, right);
    out.add_product({&l, &rr}, Scalar(s));
  }
  return out;
}

namespace {

UEAElement antipode_word(const EnvelopePtr& env, const Word& w, const HopfConventions& conv) {
  if (w.empty()) return UEAElement::one(env);
  Word rest(w.begin() + 1, w.end());
  UEAElement sx = UEAElement::generator(env, w[0]);
  if (conv.antipode_negates) sx = Scalar(-1) * sx;
  int sign = conv.antipode_reorder_sign ? koszul(env->algebra().parity(w[0]), env->word_parity(rest)) : 1;
  return Scalar(sign) * (antipode_word(env, rest, conv) * sx);
}

}  // namespace

UEAElement antipode(const UEAElement& u, const HopfConventions& conv) {
  UEAElement out(u.env());
  for (const auto& [w, c] : u.terms()) out += c * antipode_word(u.env(), w, conv);
  return out;
}

Scalar counit(const UEAElement& u) { return u.coefficient(Word{}); }

TensorElement flip(const TensorElement& t, const HopfConventions& conv) {
  if (t.arity() != 2) raise(Errc::DimensionMismatch, "flip needs a 2-fold tensor");
  TensorElement out(t.env(), 2);
  for (const auto& [k, c] : t.terms()) {
    int s = conv.flip_koszul ? koszul(t.env()->word_parity(k[0]), t.env()->word_parity(k[1])) : 1;
    out.add({k[1], k[0]}, c * Scalar(s));
  }
  return out;
}

UEAElement multiply(const TensorElement& t) {
  if (t.arity() != 2) raise(Errc::DimensionMismatch, "multiply needs a 2-fold tensor");
  Terms out;
  for (const auto& [k, c] : t.terms()) add_scaled(out, t.env()->normal_form(concat(k[0], k[1])), c);
  return UEAElement(t.env(), std::move(out));
}

TensorElement apply_slot(const TensorElement& t, std::size_t slot, const std::function<UEAElement(const UEAElement&)>& f) {
  TensorElement out(t.env(), t.arity());
  std::vector<UEAElement> parts(t.arity());
  std::vector<const UEAElement*> ptrs(t.arity());
  for (const auto& [k, c] : t.terms()) {
    for (std::size_t s = 0; s < k.size(); ++s) {
      parts[s] = s == slot ? f(UEAElement(t.env(), Terms{{k[s], Scalar(1)}})) : UEAElement(t.env(), Terms{{k[s], Scalar(1)}});
      ptrs[s] = &parts[s];
    }
    out.add_product(ptrs, c);
  }
  return out;
}

TensorElement coproduct_slot(const TensorElement& t, std::size_t slot, const HopfConventions& conv) {
  TensorElement out(t.env(), t.arity() + 1);
  for (const auto& [k, c] : t.terms()) {
    TensorElement d = coproduct(UEAElement(t.env(), Terms{{k[slot], Scalar(1)}}), conv);
    for (const auto& [dk, dc] : d.terms()) {
      std::vector<Word> key(k.begin(), k.begin() + static_cast<long>(slot));
      key.push_back(dk[0]);
      key.push_back(dk[1]);
      key.insert(key.end(), k.begin() + static_cast<long>(slot) + 1, k.end());
      out.add(key, c * dc);
    }
  }
  return out;
}

TensorElement counit_slot(const TensorElement& t, std::size_t slot) {
  TensorElement out(t.env(), t.arity() - 1);
  for (const auto& [k, c] : t.terms()) {
    if (!k[slot].empty()) continue;
    std::vector<Word> key = k;
    key.erase(key.begin() + static_cast<long>(slot));
    out.add(key, c);
  }
  return out;
}

Report hopf_axiom_check(EnvelopePtr env, int max_degree, const HopfConventions& conv, const std::string& label) {
  Report rep("hopf");
  const auto& g = env->algebra();
  std::vector<Word> basis = pbw_basis(g, max_degree);
  std::string tag = (label.empty() ? g.label() : label) + " degree<=" + std::to_string(max_degree);
  auto names = [&](const Word& w) {
    std::string s;
    for (auto i : w) s += (s.empty() ? "" : "*") + g.basis().name(i);
    return s.empty() ? std::string("1") : s;
  };
  struct Tally {
    std::size_t n = 0;
    std::string witness;
  };
  Tally coassoc, counit_l, counit_r, anti_l, anti_r, cocomm, invol, hom;
  auto fail = [](Tally& t, const std::string& w) {
    if (t.witness.empty()) t.witness = w;
  };
  for (const auto& w : basis) {
    UEAElement m(env, Terms{{w, Scalar(1)}});
    TensorElement d = coproduct(m, conv);
    ++coassoc.n;
    if (coproduct_slot(d, 0, conv) != coproduct_slot(d, 1, conv)) fail(coassoc, names(w));
    TensorElement as_one(env, 1);
    as_one.add({w}, Scalar(1));
    ++counit_l.n;
    if (counit_slot(d, 0) != as_one) fail(counit_l, names(w));
    ++counit_r.n;
    if (counit_slot(d, 1) != as_one) fail(counit_r, names(w));
    auto s = [&](const UEAElement& u) { return antipode(u, conv); };
    UEAElement unit_eps = counit(m) * UEAElement::one(env);
    ++anti_l.n;
    if (multiply(apply_slot(d, 0, s)) != unit_eps) fail(anti_l, names(w));
    ++anti_r.n;
    if (multiply(apply_slot(d, 1, s)) != unit_eps) fail(anti_r, names(w));
    ++cocomm.n;
    if (flip(d, conv) != d) fail(cocomm, names(w));
    ++invol.n;
    if (antipode(antipode(m, conv), conv) != m) fail(invol, names(w));
  }
  // Coproduct respects products of monomials whose degrees sum to at most max_degree.
  for (const auto& a : basis)
    for (const auto& b : basis) {
      if (static_cast<int>(a.size() + b.size()) > max_degree || a.empty() || b.empty()) continue;
      UEAElement ua(env, Terms{{a, Scalar(1)}}), ub(env, Terms{{b, Scalar(1)}});
      ++hom.n;
      if (coproduct(ua * ub, conv) != tensor_mul(coproduct(ua, conv), coproduct(ub, conv), conv))
        fail(hom, names(a) + "|" + names(b));
    }
  auto emit = [&](const char* check, const Tally& t) {
    std::string detail = tag + " cases=" + std::to_string(t.n);
    if (!t.witness.empty()) detail += " witness=" + t.witness;
    rep.add(t.witness.empty(), check, detail);
  };
  emit("coassociativity", coassoc);
  emit("counit_left", counit_l);
  emit("counit_right", counit_r);
  emit("antipode_left", anti_l);
  emit("antipode_right", anti_r);
  emit("cocommutativity", cocomm);
  emit("antipode_involution", invol);
  emit("coproduct_multiplicative", hom);
  return rep;
}

// ---------------------------------------------------------------- exterior algebra

int wedge_sign(const Word& letters) {
  for (std::size_t a = 0; a < letters.size(); ++a)
    for (std::size_t b = a + 1; b < letters.size(); ++b)
      if (letters[a] == letters[b]) return 0;
  std::vector<int> seq(letters.begin(), letters.end());
  return inversion_sign(seq);
}

ExtElement::ExtElement(ExtTerms t) {
  for (auto& [w, c] : t) add_term(terms_, w, c);
  for (const auto& [w, c] : terms_)
    for (std::size_t k = 1; k < w.size(); ++k)
      if (w[k - 1] >= w[k]) raise(Errc::InvalidInput, "exterior word must be strictly increasing");
}

ExtElement ExtElement::wedge(const Word& letters, const Scalar& c) {
  ExtElement e;
  int s = wedge_sign(letters);
  if (s == 0) return e;
  Word sorted = letters;
  std::sort(sorted.begin(), sorted.end());
  add_term(e.terms_, sorted, c * Scalar(s));
  return e;
}

ExtElement& ExtElement::operator+=(const ExtElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(terms_, w, c);
  return *this;
}

void ExtTensor::add(const Word& a, const Word& b, const Scalar& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(a, b);
  auto [it, inserted] = terms.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

ExtElement ext_mul(const ExtElement& a, const ExtElement& b) {
  ExtElement out;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) out += ExtElement::wedge(concat(wa, wb), ca * cb);
  return out;
}

ExtTensor ext_coproduct(const ExtElement& a) {
  ExtTensor out;
  for (const auto& [w, c] : a.terms()) {
    ExtTensor acc;
    acc.add({}, {}, Scalar(1));
    for (auto letter : w) {
      ExtTensor next;
      for (const auto& [key, v] : acc.terms) {
        // (a(x)b)(x(x)1) = (-1)^{|b|} (a^x)(x)b ; (a(x)b)(1(x)x) = a(x)(b^x)
        int s1 = wedge_sign(concat(key.first, Word{letter}));
        if (s1 != 0) {
          Word l = key.first;
          l.push_back(letter);
          std::sort(l.begin(), l.end());
          next.add(l, key.second, v * Scalar(s1 * sign_pow(static_cast<long>(key.second.size()))));
        }
        int s2 = wedge_sign(concat(key.second, Word{letter}));
        if (s2 != 0) {
          Word r = key.second;
          r.push_back(letter);
          std::sort(r.begin(), r.end());
          next.add(key.first, r, v * Scalar(s2));
        }
      }
      acc = std::move(next);
    }
    for (const auto& [key, v] : acc.terms) out.add(key.first, key.second, v * c);
  }
  return out;
}

UEAElement gamma_word(EnvelopePtr env, const Word& odd_word) {
  const Terms& t = env->gamma_word(odd_word);
  return UEAElement(std::move(env), t);
}

UEAElement gamma(EnvelopePtr env, const ExtElement& w) {
  UEAElement out(env);
  for (const auto& [word, c] : w.terms()) out += c * gamma_word(env, word);
  return out;
}

Factorization pbw_factorize(const UEAElement& a, FactorSide side) {
  const EnvelopePtr& env = a.env();
  std::size_t ne = env->algebra().basis().n_even();
  UEAElement rem = a;
  Factorization out;
  while (!rem.is_zero()) {
    // Highest-degree term; ties broken by the largest word for determinism.
    const Word* top = nullptr;
    Scalar c;
    for (const auto& [w, v] : rem.terms())
      if (!top || w.size() >= top->size()) {
        top = &w;
        c = v;
      }
    Word w = *top;
    auto split = std::find_if(w.begin(), w.end(), [&](std::uint16_t i) { return i >= ne; });
    Word even(w.begin(), split), odd(split, w.end());
    UEAElement e(env, Terms{{even, c}});
    UEAElement g = gamma_word(env, odd);
    auto [it, inserted] = out.try_emplace(odd, e);
    if (!inserted) it->second += e;
    rem -= side == FactorSide::Left ? e * g : g * e;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

UEAElement pbw_reconstruct(EnvelopePtr env, const Factorization& f, FactorSide side) {
  UEAElement out(env);
  for (const auto& [w, u] : f) {
    UEAElement g = gamma_word(env, w);
    out += side == FactorSide::Left ? u * g : g * u;
  }
  return out;
}

std::vector<Word> subsets(const Word& letters, int max_size) {
  std::vector<Word> out;
  std::size_t r = letters.size();
  int lim = max_size < 0 ? static_cast<int>(r) : std::min(max_size, static_cast<int>(r));
  for (int k = 0; k <= lim; ++k) {
    std::vector<int> pick(r, 0);
    std::fill(pick.end() - k, pick.end(), 1);
    std::vector<Word> level;
    do {
      Word w;
      for (std::size_t i = 0; i < r; ++i)
        if (pick[i]) w.push_back(letters[i]);
      level.push_back(w);
    } while (std::next_permutation(pick.begin(), pick.end()));
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace sgk
