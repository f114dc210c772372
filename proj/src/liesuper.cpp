#include "sgk/liesuper.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sgk {

const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec axpy(const Scalar& a, const Vec& x, Vec y) {
  if (x.size() != y.size()) raise(Errc::DimensionMismatch, "vector size mismatch");
  if (a.is_zero()) return y;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (!x[k].is_zero()) y[k] += a * x[k];
  return y;
}

std::string vec_to_string(const Vec& v, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (v[k].is_one())
      os << names[k];
    else
      os << "(" << v[k] << ")*" << names[k];
  }
  if (first) os << "0";
  return os.str();
}

SuperBasis::SuperBasis(std::vector<std::string> names, std::vector<Parity> parities)
    : names_(std::move(names)), parities_(std::move(parities)) {
  if (names_.size() != parities_.size()) raise(Errc::DimensionMismatch, "basis names/parities length mismatch");
  std::set<std::string> seen;
  bool odd_seen = false;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) raise(Errc::InvalidInput, "empty basis name");
    if (!seen.insert(names_[i]).second) raise(Errc::InvalidInput, "duplicate basis name '" + names_[i] + "'");
    if (parities_[i] == Parity::Odd) {
      odd_seen = true;
    } else {
      if (odd_seen) raise(Errc::InvalidInput, "even basis element '" + names_[i] + "' listed after an odd one");
      ++n_even_;
    }
  }
}

std::optional<std::size_t> SuperBasis::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t SuperBasis::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) raise(Errc::InvalidInput, "unknown basis element '" + name + "'");
  return *i;
}

std::optional<Parity> matrix_parity(const ScalarMatrix& m, const std::vector<Parity>& ip) {
  bool even = false, odd = false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      if (ip[i] == ip[j])
        even = true;
      else
        odd = true;
    }
  if (even && odd) return std::nullopt;
  return odd ? Parity::Odd : Parity::Even;
}

ScalarMatrix supercommutator(const ScalarMatrix& x, Parity px, const ScalarMatrix& y, Parity py) {
  ScalarMatrix xy = x * y;
  ScalarMatrix yx = y * x;
  return koszul(px, py) < 0 ? xy + yx : xy - yx;
}

LieSuperAlgebra::LieSuperAlgebra(SuperBasis basis, const std::vector<BracketEntry>& entries,
                                 std::optional<MatrixRealization> realization, std::string label)
    : label_(std::move(label)), basis_(std::move(basis)), realization_(std::move(realization)) {
  std::size_t n = dim();
  table_.assign(n * n, Vec(n));
  std::vector<char> set(n * n, 0);
  auto name = [&](std::size_t i) { return basis_.name(i); };
  for (const auto& e : entries) {
    if (e.left >= n || e.right >= n) raise(Errc::InvalidInput, "bracket entry references unknown basis index");
    if (e.result.size() != n) raise(Errc::DimensionMismatch, "bracket result has wrong length");
    Parity expected = parity(e.left) + parity(e.right);
    auto rp = vec_parity(e.result);
    if (!rp || (*rp != expected && !is_zero(e.result)))
      raise(Errc::InvalidInput, "bracket [" + name(e.left) + "," + name(e.right) + "] has wrong parity");
    int s = -koszul(parity(e.left), parity(e.right));
    Vec mirrored = e.result;
    for (auto& c : mirrored) c *= Scalar(s);
    std::size_t a = e.left * n + e.right, b = e.right * n + e.left;
    if (set[a] && table_[a] != e.result)
      raise(Errc::InvalidInput, "conflicting bracket entries for [" + name(e.left) + "," + name(e.right) + "]");
    if (set[b] && table_[b] != mirrored)
      raise(Errc::InvalidInput, "bracket [" + name(e.left) + "," + name(e.right) + "] violates super-antisymmetry");
    if (e.left == e.right && mirrored != e.result)
      raise(Errc::InvalidInput, "bracket [" + name(e.left) + "," + name(e.right) + "] violates super-antisymmetry");
    table_[a] = e.result;
    table_[b] = mirrored;
    set[a] = set[b] = 1;
  }
  if (realization_) {
    if (realization_->matrices.size() != n) raise(Errc::DimensionMismatch, "realization must list one matrix per basis element");
    std::size_t m = realization_->matrix_size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& mat = realization_->matrices[i];
      if (mat.rows() != m || mat.cols() != m) raise(Errc::DimensionMismatch, "realization matrix has wrong size");
      auto p = matrix_parity(mat, realization_->index_parity);
      if (!p || (*p != parity(i) && !(mat == ScalarMatrix(m, m))))
        raise(Errc::InvalidInput, "realization matrix of '" + name(i) + "' has wrong parity");
    }
    ScalarMatrix cols(m * m, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m * m; ++k) cols(k, j) = realization_->matrices[j].data()[k];
    extractor_ = left_inverse(cols);
  }
}

LieSuperAlgebra LieSuperAlgebra::from_matrix_basis(std::vector<std::string> names, std::vector<Parity> parities,
                                                   std::vector<ScalarMatrix> matrices,
                                                   std::vector<Parity> index_parity, std::string label) {
  if (names.size() != parities.size() || names.size() != matrices.size())
    raise(Errc::DimensionMismatch, "matrix basis: names/parities/matrices length mismatch");
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (parities[i] == Parity::Even) order.push_back(i);
  for (std::size_t i = 0; i < names.size(); ++i)
    if (parities[i] == Parity::Odd) order.push_back(i);
  std::vector<std::string> n2;
  std::vector<Parity> p2;
  std::vector<ScalarMatrix> m2;
  for (std::size_t i : order) {
    n2.push_back(names[i]);
    p2.push_back(parities[i]);
    m2.push_back(matrices[i]);
  }
  MatrixRealization real{std::move(index_parity), m2};
  // Construct without brackets first to validate the realization and get the extractor.
  LieSuperAlgebra probe(SuperBasis(n2, p2), {}, real, label);
  std::vector<BracketEntry> entries;
  for (std::size_t i = 0; i < n2.size(); ++i)
    for (std::size_t j = i; j < n2.size(); ++j) {
      ScalarMatrix c = supercommutator(m2[i], p2[i], m2[j], p2[j]);
      auto v = probe.try_from_matrix(c);
      if (!v) raise(Errc::InvalidInput, "matrix span is not closed: [" + n2[i] + "," + n2[j] + "] leaves the span");
      if (!is_zero(*v)) entries.push_back({i, j, *v});
    }
  return LieSuperAlgebra(SuperBasis(n2, p2), entries, real, std::move(label));
}

Vec LieSuperAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim() || y.size() != dim()) raise(Errc::DimensionMismatch, "bracket argument has wrong length");
  Vec r(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j].is_zero()) continue;
      r = axpy(x[i] * y[j], bracket_basis(i, j), std::move(r));
    }
  }
  return r;
}

Vec LieSuperAlgebra::unit(std::size_t i) const {
  Vec v(dim());
  v.at(i) = 1;
  return v;
}

std::optional<Parity> LieSuperAlgebra::vec_parity(const Vec& v) const {
  bool even = false, odd = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    (parity(i) == Parity::Odd ? odd : even) = true;
  }
  if (even && odd) return std::nullopt;
  return odd ? Parity::Odd : Parity::Even;
}

const MatrixRealization& LieSuperAlgebra::realization() const {
  if (!realization_) raise(Errc::InvalidInput, "algebra '" + label_ + "' has no matrix realization");
  return *realization_;
}

ScalarMatrix LieSuperAlgebra::to_matrix(const Vec& v) const {
  const auto& r = realization();
  std::size_t m = r.matrix_size();
  ScalarMatrix out(m, m);
  for (std::size_t i = 0; i < dim(); ++i)
    if (!v.at(i).is_zero()) out += r.matrices[i].scaled(v[i]);
  return out;
}

const ScalarMatrix& LieSuperAlgebra::coordinate_extractor() const {
  if (!extractor_) raise(Errc::InvalidInput, "algebra '" + label_ + "' has no matrix realization");
  return *extractor_;
}

std::optional<Vec> LieSuperAlgebra::try_from_matrix(const ScalarMatrix& m) const {
  const auto& l = coordinate_extractor();
  if (m.rows() * m.cols() != l.cols()) raise(Errc::DimensionMismatch, "matrix size does not match realization");
  Vec v = l.apply(m.data());
  if (to_matrix(v) != m) return std::nullopt;
  return v;
}

Vec LieSuperAlgebra::from_matrix(const ScalarMatrix& m) const {
  auto v = try_from_matrix(m);
  if (!v) raise(Errc::InvalidInput, "matrix lies outside the realized span of '" + label_ + "'");
  return *v;
}

std::vector<std::pair<std::size_t, std::size_t>> LieSuperAlgebra::realization_mismatches() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& r = realization();
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j) {
      ScalarMatrix c = supercommutator(r.matrices[i], parity(i), r.matrices[j], parity(j));
      if (to_matrix(bracket_basis(i, j)) != c) out.emplace_back(i, j);
    }
  return out;
}

std::size_t LieSuperAlgebra::power_index(std::size_t i, std::size_t copy, std::size_t k) const {
  std::size_t ne = basis_.n_even(), no = basis_.n_odd();
  if (i < ne) return copy * ne + i;
  return k * ne + copy * no + (i - ne);
}

LieSuperAlgebra LieSuperAlgebra::direct_power(std::size_t k) const {
  std::size_t n = dim();
  std::vector<std::string> names(n * k);
  std::vector<Parity> pars(n * k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t g = power_index(i, c, k);
      names[g] = basis_.name(i) + "@" + std::to_string(c + 1);
      pars[g] = parity(i);
    }
  std::vector<BracketEntry> entries;
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const Vec& b = bracket_basis(i, j);
        if (is_zero(b)) continue;
        Vec r(n * k);
        for (std::size_t t = 0; t < n; ++t) r[power_index(t, c, k)] = b[t];
        entries.push_back({power_index(i, c, k), power_index(j, c, k), r});
      }
  std::optional<MatrixRealization> real;
  if (realization_) {
    std::size_t m = realization_->matrix_size();
    MatrixRealization rr;
    for (std::size_t c = 0; c < k; ++c)
      rr.index_parity.insert(rr.index_parity.end(), realization_->index_parity.begin(), realization_->index_parity.end());
    rr.matrices.assign(n * k, ScalarMatrix(m * k, m * k));
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t i = 0; i < n; ++i) {
        ScalarMatrix& big = rr.matrices[power_index(i, c, k)];
        const ScalarMatrix& small = realization_->matrices[i];
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b) big(c * m + a, c * m + b) = small(a, b);
      }
    real = std::move(rr);
  }
  std::string lbl = label_ + "^" + std::to_string(k);
  return LieSuperAlgebra(SuperBasis(names, pars), entries, std::move(real), lbl);
}

JacobiReport check_jacobi(const LieSuperAlgebra& g) {
  JacobiReport rep;
  std::size_t n = g.dim();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        Parity px = g.parity(x), py = g.parity(y), pz = g.parity(z);
        Vec t1 = g.bracket(g.unit(x), g.bracket_basis(y, z));
        Vec t2 = g.bracket(g.unit(y), g.bracket_basis(z, x));
        Vec t3 = g.bracket(g.unit(z), g.bracket_basis(x, y));
        Vec r = g.zero();
        r = axpy(Scalar(koszul(px, pz)), t1, std::move(r));
        r = axpy(Scalar(koszul(py, px)), t2, std::move(r));
        r = axpy(Scalar(koszul(pz, py)), t3, std::move(r));
        if (!is_zero(r)) {
          rep.pass = false;
          rep.violations.push_back({x, y, z, r});
        }
      }
  return rep;
}

std::optional<std::pair<std::size_t, std::size_t>> odd_bracket_witness(const LieSuperAlgebra& g) {
  for (std::size_t i = g.basis().n_even(); i < g.dim(); ++i)
    for (std::size_t j = i; j < g.dim(); ++j)
      if (!is_zero(g.bracket_basis(i, j))) return std::make_pair(i, j);
  return std::nullopt;
}

SuperSubspace::SuperSubspace(AlgebraPtr parent, std::vector<Vec> span) : parent_(std::move(parent)), span_(std::move(span)) {
  std::size_t n = parent_->dim();
  for (const auto& v : span_) {
    if (v.size() != n) raise(Errc::DimensionMismatch, "subspace vector has wrong length");
    if (!parent_->vec_parity(v)) raise(Errc::InvalidInput, "subspace vector is not homogeneous");
  }
  if (!span_.empty()) {
    ScalarMatrix m(n, span_.size());
    for (std::size_t j = 0; j < span_.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) m(i, j) = span_[j][i];
    if (rank(m) != span_.size()) raise(Errc::InvalidInput, "subspace spanning vectors are linearly dependent");
  }
}

SuperSubspace SuperSubspace::odd_part(AlgebraPtr parent) {
  std::vector<Vec> s;
  for (std::size_t i = parent->basis().n_even(); i < parent->dim(); ++i) s.push_back(parent->unit(i));
  return SuperSubspace(std::move(parent), std::move(s));
}

SuperSubspace SuperSubspace::even_part(AlgebraPtr parent) {
  std::vector<Vec> s;
  for (std::size_t i = 0; i < parent->basis().n_even(); ++i) s.push_back(parent->unit(i));
  return SuperSubspace(std::move(parent), std::move(s));
}

std::optional<Vec> SuperSubspace::coordinates(const Vec& v) const {
  std::size_t n = parent_->dim();
  ScalarMatrix m(n, span_.size());
  for (std::size_t j = 0; j < span_.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = span_[j][i];
  auto x = solve(m, v);
  if (!x) return std::nullopt;
  return x;
}

bool SuperSubspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

std::optional<std::pair<std::size_t, std::size_t>> SuperSubspace::closure_witness() const {
  for (std::size_t i = 0; i < span_.size(); ++i)
    for (std::size_t j = i; j < span_.size(); ++j)
      if (!contains(parent_->bracket(span_[i], span_[j]))) return std::make_pair(i, j);
  return std::nullopt;
}

OddQuotient odd_quotient(const SuperSubspace& g1, const SuperSubspace& h1) {
  const auto& alg = *g1.parent();
  std::size_t n = alg.dim();
  for (const auto& v : h1.span())
    if (!g1.contains(v)) raise(Errc::InvalidInput, "odd quotient: subspace is not contained in g1");
  // Extend a basis of h1 greedily by g1 spanning vectors.
  std::vector<Vec> basis = h1.span();
  OddQuotient q;
  for (const auto& v : g1.span()) {
    std::vector<Vec> trial = basis;
    trial.push_back(v);
    ScalarMatrix m(n, trial.size());
    for (std::size_t j = 0; j < trial.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) m(i, j) = trial[j][i];
    if (rank(m) == trial.size()) {
      basis = std::move(trial);
      q.complement.push_back(v);
    }
  }
  // Coordinates w.r.t. [h1 basis, complement] of the odd basis vectors of g.
  std::size_t d = basis.size(), h = h1.dim();
  ScalarMatrix b(n, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < n; ++i) b(i, j) = basis[j][i];
  q.projection = ScalarMatrix(q.complement.size(), n);
  for (std::size_t i = alg.basis().n_even(); i < n; ++i) {
    auto x = solve(b, alg.unit(i));
    if (!x) continue;  // odd basis vector outside g1 (g1 is a proper subspace); projected to zero
    for (std::size_t k = 0; k < q.complement.size(); ++k) q.projection(k, i) = (*x)[h + k];
  }
  return q;
}

}  // namespace sgk
