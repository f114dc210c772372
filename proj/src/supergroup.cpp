#include "sgk/supergroup.hpp"

#include <algorithm>
#include <sstream>

namespace sgk {

std::string word_name(const LieSuperAlgebra& g, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (auto i : w) s += (s.empty() ? "" : "*") + g.basis().name(i);
  return s;
}

// ---------------------------------------------------------------- pairs

HCPair::HCPair(GroupModel model, AlphaRep alpha, SampleSet samples, std::string label)
    : label_(std::move(label)), model_(std::move(model)), alpha_(std::move(alpha)), samples_(std::move(samples)) {
  std::size_t d = model_.algebra()->dim();
  if (alpha_.matrix().rows() != d || alpha_.matrix().cols() != d)
    raise(Errc::DimensionMismatch, "alpha must be a dim(g) x dim(g) matrix");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (alpha_.matrix()(i, j).var_bound() > model_.num_vars())
        raise(Errc::InvalidInput, "alpha uses variables outside the group model");
  env_ = make_envelope(model_.algebra());
  odd_words_ = subsets(odd_letters());
  for (const auto& g : samples_.base) model_.point(g);
  if (label_.empty()) label_ = model_.label();
}

PairPtr HCPair::make(GroupModel model, AlphaRep alpha, SampleSet samples, std::string label) {
  return std::make_shared<const HCPair>(std::move(model), std::move(alpha), std::move(samples), std::move(label));
}

PairPtr HCPair::make_conjugation(GroupModel model, SampleSet samples, std::string label) {
  AlphaRep a = AlphaRep::conjugation(model);
  return make(std::move(model), std::move(a), std::move(samples), std::move(label));
}

Word HCPair::odd_letters() const {
  Word w;
  for (std::size_t i = g().basis().n_even(); i < g().dim(); ++i) w.push_back(static_cast<std::uint16_t>(i));
  return w;
}

bool HCPair::is_odd_word(const Word& w) const {
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] >= g().dim() || !g().basis().is_odd(w[k])) return false;
    if (k > 0 && w[k - 1] >= w[k]) return false;
  }
  return true;
}

PairPtr HCPair::power(std::size_t k) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = powers_.find(k);
  if (it != powers_.end()) return it->second;
  auto alg = std::make_shared<const LieSuperAlgebra>(g().direct_power(k));
  GroupModel pm = model_.power(k, alg);
  std::size_t d = g().dim();
  ExprMatrix a(d * k, d * k);
  for (std::size_t c = 0; c < k; ++c) {
    auto vmap = model_.power_var_map(c, k);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        a(g().power_index(i, c, k), g().power_index(j, c, k)) = alpha_.matrix()(i, j).rename(vmap);
  }
  PairPtr p = make(std::move(pm), AlphaRep(std::move(a), alpha_.is_conjugation()), {}, label_ + "^" + std::to_string(k));
  powers_.emplace(k, p);
  return p;
}

UEAElement HCPair::embed_tensor(const std::vector<UEAElement>& factors) const {
  std::size_t k = factors.size();
  PairPtr p = power(k);
  UEAElement out = UEAElement::one(p->env());
  for (std::size_t c = 0; c < k; ++c) {
    check_same_env(factors[c].env(), env_);
    UEAElement mapped(p->env());
    for (const auto& [w, coef] : factors[c].terms()) {
      Word m;
      for (auto i : w) m.push_back(static_cast<std::uint16_t>(g().power_index(i, c, k)));
      mapped += UEAElement::word(p->env(), m, coef);
    }
    out = out * mapped;
  }
  return out;
}

std::vector<Word> HCPair::split_power_word(const Word& w, std::size_t k) const {
  std::size_t ne = g().basis().n_even(), no = g().basis().n_odd();
  std::vector<Word> parts(k);
  for (auto idx : w) {
    std::size_t c, base;
    if (idx < k * ne) {
      c = idx / ne;
      base = idx % ne;
    } else {
      std::size_t rel = idx - k * ne;
      c = rel / no;
      base = ne + rel % no;
    }
    if (c >= k) raise(Errc::DimensionMismatch, "index outside the power algebra");
    parts[c].push_back(static_cast<std::uint16_t>(base));
  }
  return parts;
}

const FunctionExpr& HCPair::alpha_minor(const Word& rows, const Word& cols) const {
  if (rows.size() != cols.size()) raise(Errc::DimensionMismatch, "minor needs equal-length index words");
  auto key = std::make_pair(rows, cols);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = minors_.find(key);
    if (it != minors_.end()) return it->second;
  }
  std::vector<std::size_t> r(rows.begin(), rows.end()), c(cols.begin(), cols.end());
  FunctionExpr m = minor_det(alpha_.matrix(), r, c);
  std::lock_guard<std::mutex> lock(mutex_);
  return minors_.emplace(key, std::move(m)).first->second;
}

UEAElement map_uea(const ScalarMatrix& phi, const EnvelopePtr& target, const UEAElement& u) {
  std::size_t src = u.env()->dim();
  if (phi.cols() != src || phi.rows() != target->dim()) raise(Errc::DimensionMismatch, "algebra map has wrong shape");
  std::vector<UEAElement> images;
  images.reserve(src);
  for (std::size_t i = 0; i < src; ++i) {
    Vec col(phi.rows());
    for (std::size_t r = 0; r < phi.rows(); ++r) col[r] = phi(r, i);
    images.push_back(UEAElement::from_vec(target, col));
  }
  UEAElement out(target);
  for (const auto& [w, c] : u.terms()) {
    UEAElement t = UEAElement::one(target);
    for (auto i : w) t = t * images[i];
    out += c * t;
  }
  return out;
}

UEAElement HCPair::alpha_apply(const ScalarMatrix& alpha_g, const UEAElement& u) const { return map_uea(alpha_g, env_, u); }

// ---------------------------------------------------------------- sections

Section::Section(PairPtr pair, SectionTable table) : pair_(std::move(pair)) {
  if (!pair_) raise(Errc::InvalidInput, "section needs a pair");
  for (auto& [w, e] : table) {
    if (!pair_->is_odd_word(w)) raise(Errc::InvalidInput, "section table word is not an increasing odd word");
    if (e.var_bound() > pair_->model().num_vars()) raise(Errc::InvalidInput, "section entry uses variables outside the model");
    if (!e.is_zero()) table_.emplace(w, std::move(e));
  }
}

FunctionExpr Section::entry(const Word& w) const {
  auto it = table_.find(w);
  return it == table_.end() ? FunctionExpr() : it->second;
}

std::optional<Parity> Section::parity() const {
  bool even = false, odd = false;
  for (const auto& [w, e] : table_) (w.size() % 2 ? odd : even) = true;
  if (even && odd) return std::nullopt;
  return odd ? Parity::Odd : Parity::Even;
}

Section Section::parity_part(Parity p) const {
  SectionTable t;
  for (const auto& [w, e] : table_)
    if (static_cast<int>(w.size() % 2) == bit(p)) t.emplace(w, e);
  return Section(pair_, std::move(t));
}

Section Section::grading_part(std::size_t degree) const {
  SectionTable t;
  for (const auto& [w, e] : table_)
    if (w.size() == degree) t.emplace(w, e);
  return Section(pair_, std::move(t));
}

void check_same_pair(const PairPtr& a, const PairPtr& b) {
  if (a != b) raise(Errc::ParentMismatch, "sections belong to different pairs");
}

Section& Section::operator+=(const Section& o) {
  if (!pair_) pair_ = o.pair_;
  check_same_pair(pair_, o.pair_);
  for (const auto& [w, e] : o.table_) {
    FunctionExpr s = entry(w) + e;
    if (s.is_zero())
      table_.erase(w);
    else
      table_[w] = std::move(s);
  }
  return *this;
}

Section& Section::operator-=(const Section& o) { return *this += o.scaled(Scalar(-1)); }

Section Section::scaled(const Scalar& c) const {
  SectionTable t;
  for (const auto& [w, e] : table_) t.emplace(w, e.scaled(c));
  return Section(pair_, std::move(t));
}

Section Section::scaled(const FunctionExpr& c) const {
  SectionTable t;
  for (const auto& [w, e] : table_) t.emplace(w, c * e);
  return Section(pair_, std::move(t));
}

std::string Section::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [w, e] : table_) {
    os << (first ? "" : ", ") << "[" << word_name(pair_->g(), w) << "]: " << pair_->model().format(e);
    first = false;
  }
  os << "}";
  return os.str();
}

const FunctionExpr& SectionEvaluator::chain(const Word& odd, const Word& even) {
  auto key = std::make_pair(odd, even);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  FunctionExpr r;
  if (even.empty()) {
    r = f_.entry(odd);
  } else {
    // f(gamma(w) Z_1 ... Z_k) = Z_k^R (f(gamma(w) Z_1 ... Z_{k-1}))
    Word prefix(even.begin(), even.end() - 1);
    FunctionExpr inner = chain(odd, prefix);
    const auto& pair = *f_.pair();
    r = riv_derive(pair.model(), pair.g().unit(even.back()), inner);
  }
  return cache_.emplace(key, std::move(r)).first->second;
}

FunctionExpr SectionEvaluator::apply(const UEAElement& u) {
  check_same_env(u.env(), f_.pair()->env());
  Factorization fac = pbw_factorize(u, FactorSide::Right);
  FunctionExpr out;
  for (const auto& [odd, part] : fac)
    for (const auto& [even, c] : part.terms()) out += chain(odd, even).scaled(c);
  return out;
}

Scalar SectionEvaluator::eval_values(const UEAElement& u, const std::vector<Scalar>& values) {
  check_same_env(u.env(), f_.pair()->env());
  return eval_factored(pbw_factorize(u, FactorSide::Right), values);
}

Scalar SectionEvaluator::eval_factored(const Factorization& fac, const std::vector<Scalar>& values) {
  Scalar out;
  for (const auto& [odd, part] : fac)
    for (const auto& [even, c] : part.terms()) {
      const FunctionExpr& e = chain(odd, even);
      if (!e.is_zero()) out += c * e.evaluate(values);
    }
  return out;
}

Scalar SectionEvaluator::eval(const UEAElement& u, const GroupPoint& g) {
  return eval_values(u, f_.pair()->model().values(g));
}

Scalar section_eval(const Section& f, const UEAElement& u, const GroupPoint& g) {
  SectionEvaluator ev(f);
  return ev.eval(u, g);
}

Section section_mul(const Section& f1, const Section& f2) {
  check_same_pair(f1.pair(), f2.pair());
  auto t = hom_product<FunctionExpr>(f1.table(), f2.table(), f1.pair()->odd_words());
  return Section(f1.pair(), SectionTable(t.begin(), t.end()));
}

Section grading_project(const Section& f, std::size_t p) { return f.grading_part(p); }

Section field_apply(const Vec& x, const Section& f, bool koszul_sign) {
  const auto& pair = f.pair();
  auto px = pair->g().vec_parity(x);
  if (!px) raise(Errc::InvalidInput, "field of a non-homogeneous algebra element");
  UEAElement ux = UEAElement::from_vec(pair->env(), x);
  SectionTable out;
  for (Parity pc : {Parity::Even, Parity::Odd}) {
    Section part = f.parity_part(pc);
    if (part.table().empty()) continue;
    SectionEvaluator ev(part);
    int s = koszul_sign ? koszul(*px, pc) : 1;
    for (const auto& w : pair->odd_words()) {
      FunctionExpr v = ev.apply(ux * gamma_word(pair->env(), w));
      if (v.is_zero()) continue;
      out[w] += v.scaled(Scalar(s));
    }
  }
  return Section(pair, std::move(out));
}

// ---------------------------------------------------------------- pullbacks

namespace {

/// Substitution sending base coordinates to the entries of the product of the k copies' blocks
/// (copies `first` and `second` of the power pair).
GroupModel::Substitution product_substitution(const GroupModel& base, std::size_t k, std::size_t first, std::size_t second) {
  std::size_t n = base.n();
  ExprMatrix x = base.symbolic_point();
  auto m1 = base.power_var_map(first, k), m2 = base.power_var_map(second, k);
  GroupModel::Substitution s;
  s.images.resize(base.num_vars());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FunctionExpr e;
      for (std::size_t t = 0; t < n; ++t) e += x(i, t).rename(m1) * x(t, j).rename(m2);
      s.images[base.coord(i, j)] = e;
    }
  for (std::size_t b = 0; b < base.num_blocks(); ++b) {
    auto v = base.detinv_var(b);
    s.images[v] = FunctionExpr::variable(m1[v]) * FunctionExpr::variable(m2[v]);
  }
  return s;
}

std::vector<Word> odd_subsets_of_size(const HCPair& p, std::size_t size) {
  std::vector<Word> out;
  for (const auto& w : p.odd_words())
    if (w.size() == size) out.push_back(w);
  return out;
}

}  // namespace

Section mu_star(const Section& f) {
  const HCPair& p = *f.pair();
  PairPtr p2 = p.power(2);
  auto sub = product_substitution(p.model(), 2, 0, 1);
  auto m0 = p.model().power_var_map(0, 2);
  SectionEvaluator ev(f);
  SectionTable out;
  for (const auto& w : p2->odd_words()) {
    auto parts = p.split_power_word(w, 2);
    const Word& w1 = parts[0];
    const Word& w2 = parts[1];
    FunctionExpr entry;
    UEAElement g1 = gamma_word(p.env(), w1);
    for (const auto& v : odd_subsets_of_size(p, w2.size())) {
      const FunctionExpr& minor = p.alpha_minor(v, w2);
      if (minor.is_zero()) continue;
      FunctionExpr val = ev.apply(g1 * gamma_word(p.env(), v));
      if (val.is_zero()) continue;
      entry += minor.rename(m0) * val.substitute(sub.images, sub.inverse_images);
    }
    if (!entry.is_zero()) out.emplace(w, std::move(entry));
  }
  return Section(p2, std::move(out));
}

Scalar mu_star_formula(const Section& f, const UEAElement& x, const UEAElement& y, const GroupPoint& g, const GroupPoint& h) {
  const HCPair& p = *f.pair();
  UEAElement u = x * p.alpha_apply(p.alpha().at(p.model(), g), y);
  return section_eval(f, u, g * h);
}

Section iota_star(const Section& f) {
  const HCPair& p = *f.pair();
  auto inv = p.model().inversion();
  SectionTable out;
  for (const auto& w : p.odd_words()) {
    UEAElement s = antipode(gamma_word(p.env(), w));
    Factorization fac = pbw_factorize(s, FactorSide::Right);
    FunctionExpr entry;
    for (const auto& [v, part] : fac) {
      if (part.terms().size() != 1 || !part.terms().begin()->first.empty())
        raise(Errc::InvalidInput, "antipode of a symmetrized odd word left the odd part");
      Scalar cv = part.terms().begin()->second;
      // alpha(g^{-1}) gamma(v) = sum_{v'} det(A(g^{-1})[v', v]) gamma(v')
      for (const auto& vp : odd_subsets_of_size(p, v.size())) {
        const FunctionExpr& minor = p.alpha_minor(vp, v);
        FunctionExpr fv = f.entry(vp);
        if (minor.is_zero() || fv.is_zero()) continue;
        entry += (minor.substitute(inv.images, inv.inverse_images) * fv.substitute(inv.images, inv.inverse_images)).scaled(cv);
      }
    }
    if (!entry.is_zero()) out.emplace(w, std::move(entry));
  }
  return Section(f.pair(), std::move(out));
}

Scalar iota_star_formula(const Section& f, const UEAElement& x, const GroupPoint& g) {
  const HCPair& p = *f.pair();
  GroupPoint gi = p.model().inv(g);
  UEAElement u = p.alpha_apply(p.alpha().at(p.model(), gi), antipode(x));
  return section_eval(f, u, gi);
}

Scalar eps_star(const Section& f) {
  return f.entry(Word{}).evaluate(f.pair()->model().values(f.pair()->model().identity()));
}

Section translate(Side side, const GroupPoint& g, const Section& f) {
  const HCPair& p = *f.pair();
  SectionTable out;
  if (side == Side::Right) {
    auto sub = p.model().right_mult(g);
    for (const auto& [w, e] : f.table()) {
      FunctionExpr t = e.substitute(sub.images, sub.inverse_images);
      if (!t.is_zero()) out.emplace(w, std::move(t));
    }
    return Section(f.pair(), std::move(out));
  }
  auto sub = p.model().left_mult(g);
  ScalarMatrix a = p.alpha().at(p.model(), g);
  for (const auto& w : p.odd_words()) {
    FunctionExpr entry;
    for (const auto& v : odd_subsets_of_size(p, w.size())) {
      FunctionExpr fv = f.entry(v);
      if (fv.is_zero()) continue;
      Scalar minor = det_expand(a.select(std::vector<std::size_t>(v.begin(), v.end()), std::vector<std::size_t>(w.begin(), w.end())));
      if (minor.is_zero()) continue;
      entry += fv.substitute(sub.images, sub.inverse_images).scaled(minor);
    }
    if (!entry.is_zero()) out.emplace(w, std::move(entry));
  }
  return Section(f.pair(), std::move(out));
}

ScalarMatrix ad_from_translations(const PairPtr& pair, const GroupPoint& g) {
  const auto& model = pair->model();
  const auto& alg = pair->g();
  GroupPoint gi = model.inv(g);
  GroupPoint e = model.identity();
  std::size_t d = alg.dim(), n = model.n(), ne = alg.basis().n_even();
  ScalarMatrix out(d, d);
  auto omega = [&](const Section& f) { return translate(Side::Left, g, translate(Side::Right, gi, f)); };
  // Even part: derivatives of pulled-back coordinate functions give the matrix of (d omega)(X).
  std::vector<ScalarMatrix> images(ne, ScalarMatrix(n, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (model.entry(a, b) != EntryKind::Free) continue;
      Section coord(pair, {{Word{}, FunctionExpr::variable(model.coord(a, b))}});
      SectionEvaluator ev(omega(coord));
      for (std::size_t j = 0; j < ne; ++j) images[j](a, b) = ev.eval(UEAElement::generator(pair->env(), j), e);
    }
  for (std::size_t j = 0; j < ne; ++j) {
    Vec c = alg.from_matrix(images[j]);
    for (std::size_t i = 0; i < d; ++i) out(i, j) = c[i];
  }
  // Odd part: indicator sections of single odd letters read off the coefficients.
  for (std::size_t k = ne; k < d; ++k) {
    Section ind(pair, {{Word{static_cast<std::uint16_t>(k)}, FunctionExpr(Scalar(1))}});
    SectionEvaluator ev(omega(ind));
    for (std::size_t j = ne; j < d; ++j) out(k, j) = ev.eval(UEAElement::generator(pair->env(), j), e);
  }
  return out;
}

Section pr_star(const Section& f, std::size_t factor) {
  if (factor > 1) raise(Errc::InvalidInput, "projection factor must be 0 or 1");
  const HCPair& p = *f.pair();
  PairPtr p2 = p.power(2);
  auto vmap = p.model().power_var_map(factor, 2);
  SectionTable out;
  for (const auto& w : p2->odd_words()) {
    auto parts = p.split_power_word(w, 2);
    if (!parts[1 - factor].empty()) continue;
    FunctionExpr e = f.entry(parts[factor]);
    if (!e.is_zero()) out.emplace(w, e.rename(vmap));
  }
  return Section(p2, std::move(out));
}

std::vector<Section> basis_sections(const PairPtr& pair) {
  const auto& model = pair->model();
  std::vector<FunctionExpr> coords{FunctionExpr(Scalar(1))};
  for (std::size_t i = 0; i < model.n(); ++i)
    for (std::size_t j = 0; j < model.n(); ++j)
      if (model.entry(i, j) == EntryKind::Free) coords.push_back(FunctionExpr::variable(model.coord(i, j)));
  for (std::size_t b = 0; b < model.num_blocks(); ++b) coords.push_back(FunctionExpr::variable(model.detinv_var(b)));
  std::vector<Section> out;
  for (const auto& w : pair->odd_words())
    for (const auto& c : coords) out.emplace_back(pair, SectionTable{{w, c}});
  return out;
}

Section random_section(const PairPtr& pair, std::mt19937_64& rng, std::optional<Parity> parity, int max_terms, int max_degree) {
  const auto& model = pair->model();
  std::vector<FunctionExpr::Var> free;
  for (std::size_t i = 0; i < model.n(); ++i)
    for (std::size_t j = 0; j < model.n(); ++j)
      if (model.entry(i, j) == EntryKind::Free) free.push_back(model.coord(i, j));
  auto rand_poly = [&]() {
    FunctionExpr e;
    int terms = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms));
    for (int t = 0; t < terms; ++t) {
      long c = static_cast<long>(rng() % 7) - 3;
      if (c == 0) c = 1;
      FunctionExpr m{Scalar(c)};
      if (!free.empty()) {
        int deg = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
        for (int k = 0; k < deg; ++k) m = m * FunctionExpr::variable(free[rng() % free.size()]);
      }
      e += m;
    }
    return e;
  };
  std::vector<Word> words;
  for (const auto& w : pair->odd_words())
    if (!parity || static_cast<int>(w.size() % 2) == bit(*parity)) words.push_back(w);
  SectionTable t;
  for (const auto& w : words)
    if (rng() % 2 == 0) t[w] = rand_poly();
  if (t.empty() && !words.empty()) t[words[rng() % words.size()]] = rand_poly();
  return Section(pair, std::move(t));
}

// ---------------------------------------------------------------- morphisms

HCMorphism::HCMorphism(PairPtr source, PairPtr target, ExprMatrix group_map, std::vector<FunctionExpr> detinv_images,
                       ScalarMatrix algebra_map, std::string label)
    : source_(std::move(source)), target_(std::move(target)), group_map_(std::move(group_map)),
      detinv_(std::move(detinv_images)), phi_(std::move(algebra_map)), label_(std::move(label)) {
  const auto& tm = target_->model();
  const auto& sm = source_->model();
  if (group_map_.rows() != tm.n() || group_map_.cols() != tm.n()) raise(Errc::DimensionMismatch, "group map has wrong size");
  if (phi_.rows() != target_->g().dim() || phi_.cols() != source_->g().dim())
    raise(Errc::DimensionMismatch, "algebra map has wrong shape");
  for (std::size_t i = 0; i < tm.n(); ++i)
    for (std::size_t j = 0; j < tm.n(); ++j)
      if (group_map_(i, j).var_bound() > sm.num_vars()) raise(Errc::InvalidInput, "group map uses variables outside the source model");
  if (detinv_.empty()) {
    for (std::size_t b = 0; b < tm.num_blocks(); ++b) {
      std::size_t o = tm.block_offset(b), s = tm.block_size(b);
      FunctionExpr d = det_expand(group_map_.block(o, o, s, s));
      std::optional<FunctionExpr> img;
      for (std::size_t sb = 0; sb < sm.num_blocks() && !img; ++sb)
        if (d == sm.symbolic_det(sb)) img = FunctionExpr::variable(sm.detinv_var(sb));
      if (!img && d.is_single_term()) img = d.inverse();
      if (!img) raise(Errc::InvalidInput, "cannot derive the inverse determinant image of target block " + std::to_string(b + 1));
      detinv_.push_back(*img);
    }
  }
  if (detinv_.size() != tm.num_blocks()) raise(Errc::DimensionMismatch, "one inverse determinant image per target block required");
  if (label_.empty()) label_ = source_->label() + "->" + target_->label();
}

HCMorphism HCMorphism::identity(const PairPtr& pair) {
  const auto& m = pair->model();
  std::vector<FunctionExpr> d;
  for (std::size_t b = 0; b < m.num_blocks(); ++b) d.push_back(FunctionExpr::variable(m.detinv_var(b)));
  return HCMorphism(pair, pair, m.symbolic_point(), d, ScalarMatrix::identity(pair->g().dim()), "id");
}

HCMorphism HCMorphism::conjugation(const PairPtr& pair, const GroupPoint& k) {
  const auto& m = pair->model();
  m.point(k);
  ScalarMatrix ki = m.inv(k);
  std::size_t n = m.n();
  ExprMatrix kk(n, n), kki(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      kk(i, j) = FunctionExpr(k(i, j));
      kki(i, j) = FunctionExpr(ki(i, j));
    }
  ExprMatrix gm = kk * m.symbolic_point() * kki;
  return HCMorphism(pair, pair, gm, {}, pair->alpha().at(m, k), "conj");
}

std::vector<std::optional<FunctionExpr>> HCMorphism::substitution() const {
  const auto& tm = target_->model();
  std::vector<std::optional<FunctionExpr>> images(tm.num_vars());
  for (std::size_t i = 0; i < tm.n(); ++i)
    for (std::size_t j = 0; j < tm.n(); ++j) images[tm.coord(i, j)] = group_map_(i, j);
  for (std::size_t b = 0; b < tm.num_blocks(); ++b) images[tm.detinv_var(b)] = detinv_[b];
  return images;
}

HCMorphism HCMorphism::after(const HCMorphism& first) const {
  check_same_pair(first.target_, source_);
  auto sub = first.substitution();
  ExprMatrix gm(group_map_.rows(), group_map_.cols());
  for (std::size_t i = 0; i < gm.rows(); ++i)
    for (std::size_t j = 0; j < gm.cols(); ++j) gm(i, j) = group_map_(i, j).substitute(sub);
  std::vector<FunctionExpr> d;
  for (const auto& e : detinv_) d.push_back(e.substitute(sub));
  return HCMorphism(first.source_, target_, gm, d, phi_ * first.phi_, label_ + "o" + first.label_);
}

HCMorphism HCMorphism::with_algebra_map(ScalarMatrix phi, std::string label) const {
  return HCMorphism(source_, target_, group_map_, detinv_, std::move(phi), std::move(label));
}

GroupPoint HCMorphism::apply_group(const GroupPoint& g) const {
  auto v = source_->model().values(g);
  ScalarMatrix out(group_map_.rows(), group_map_.cols());
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = group_map_(i, j).evaluate(v);
  return out;
}

Section hcp_morphism_apply(const HCMorphism& m, const Section& f) {
  check_same_pair(f.pair(), m.target());
  const HCPair& src = *m.source();
  const HCPair& tgt = *m.target();
  auto sub = m.substitution();
  std::map<Word, FunctionExpr> pulled;
  for (const auto& [v, e] : f.table()) pulled.emplace(v, e.substitute(sub));
  SectionTable out;
  for (const auto& w : src.odd_words()) {
    FunctionExpr entry;
    for (const auto& [v, e] : pulled) {
      if (v.size() != w.size() || e.is_zero()) continue;
      // phi(gamma(w)) = sum_v det(phi[v, w]) gamma(v)
      Scalar minor = det_expand(m.algebra_map().select(std::vector<std::size_t>(v.begin(), v.end()),
                                                       std::vector<std::size_t>(w.begin(), w.end())));
      if (!minor.is_zero()) entry += e.scaled(minor);
    }
    if (!entry.is_zero()) out.emplace(w, std::move(entry));
  }
  (void)tgt;
  return Section(m.source(), std::move(out));
}

}  // namespace sgk
