#include "sgk/groupmodel.hpp"

#include <algorithm>

namespace sgk {

using Var = FunctionExpr::Var;

GroupModel::GroupModel(std::vector<std::size_t> block_sizes, std::vector<EntryKind> pattern, AlgebraPtr algebra,
                       std::string label)
    : label_(std::move(label)), block_sizes_(std::move(block_sizes)), pattern_(std::move(pattern)), algebra_(std::move(algebra)) {
  if (!algebra_) raise(Errc::InvalidInput, "group model needs an algebra");
  for (std::size_t s : block_sizes_) {
    if (s == 0) raise(Errc::InvalidInput, "empty diagonal block");
    block_offsets_.push_back(n_);
    n_ += s;
  }
  if (pattern_.size() != n_ * n_) raise(Errc::DimensionMismatch, "pattern size does not match block sizes");
  std::vector<std::size_t> block_of(n_);
  for (std::size_t b = 0; b < block_sizes_.size(); ++b)
    for (std::size_t k = 0; k < block_sizes_[b]; ++k) block_of[block_offsets_[b] + k] = b;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (block_of[i] != block_of[j] && entry(i, j) != EntryKind::Zero)
        raise(Errc::InvalidInput, "pattern entry outside the diagonal blocks must be zero");
  const auto& real = algebra_->realization();
  if (real.matrix_size() != n_) raise(Errc::DimensionMismatch, "algebra realization size does not match the group model");
  std::size_t free_count = static_cast<std::size_t>(std::count(pattern_.begin(), pattern_.end(), EntryKind::Free));
  std::size_t ne = algebra_->basis().n_even();
  for (std::size_t a = 0; a < ne; ++a) {
    const auto& m = real.matrices[a];
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (entry(i, j) != EntryKind::Free && !m(i, j).is_zero())
          raise(Errc::InvalidInput, "even element '" + algebra_->basis().name(a) + "' is not tangent to the group pattern");
  }
  if (free_count != ne)
    raise(Errc::InvalidInput, "even part has dimension " + std::to_string(ne) + " but the group pattern has " +
                                  std::to_string(free_count) + " free entries");
}

GroupModel GroupModel::from_rows(const std::vector<std::string>& rows, AlgebraPtr algebra,
                                 std::vector<std::size_t> block_sizes, std::string label) {
  std::size_t n = rows.size();
  std::vector<EntryKind> pat;
  for (const auto& r : rows) {
    if (r.size() != n) raise(Errc::InvalidInput, "pattern must be square");
    for (char c : r) {
      if (c == '*')
        pat.push_back(EntryKind::Free);
      else if (c == '0')
        pat.push_back(EntryKind::Zero);
      else if (c == '1')
        pat.push_back(EntryKind::Unit);
      else
        raise(Errc::Parse, std::string("pattern character '") + c + "' is not one of * 0 1");
    }
  }
  if (block_sizes.empty()) block_sizes = {n};
  return GroupModel(std::move(block_sizes), std::move(pat), std::move(algebra), std::move(label));
}

std::vector<std::string> GroupModel::pattern_rows() const {
  std::vector<std::string> rows(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      EntryKind k = entry(i, j);
      rows[i].push_back(k == EntryKind::Free ? '*' : k == EntryKind::Zero ? '0' : '1');
    }
  return rows;
}

GroupPoint GroupModel::identity() const { return ScalarMatrix::identity(n_); }

bool GroupModel::contains(const ScalarMatrix& g, std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (g.rows() != n_ || g.cols() != n_) return fail("wrong matrix size");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      EntryKind k = entry(i, j);
      if (k == EntryKind::Zero && !g(i, j).is_zero())
        return fail("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") must be 0");
      if (k == EntryKind::Unit && !g(i, j).is_one())
        return fail("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") must be 1");
    }
  for (std::size_t b = 0; b < num_blocks(); ++b) {
    std::size_t o = block_offset(b), s = block_size(b);
    if (det_eliminate(g.block(o, o, s, s)).is_zero()) return fail("block " + std::to_string(b + 1) + " is singular");
  }
  return true;
}

GroupPoint GroupModel::point(const ScalarMatrix& g) const {
  std::string why;
  if (!contains(g, &why)) raise(Errc::InvalidInput, "point is not in group '" + label_ + "': " + why);
  return g;
}

GroupPoint GroupModel::inv(const GroupPoint& a) const { return point(inverse(a)); }

std::vector<Scalar> GroupModel::values(const GroupPoint& g) const {
  if (g.rows() != n_ || g.cols() != n_) raise(Errc::DimensionMismatch, "point has wrong size");
  std::vector<Scalar> v(g.data());
  for (std::size_t b = 0; b < num_blocks(); ++b) {
    std::size_t o = block_offset(b), s = block_size(b);
    Scalar d = det_eliminate(g.block(o, o, s, s));
    if (d.is_zero()) raise(Errc::Degenerate, "singular block in group point");
    v.push_back(d.inverse());
  }
  return v;
}

std::vector<Jet1> GroupModel::jet_values(const JetMatrix& g) const {
  if (g.rows() != n_ || g.cols() != n_) raise(Errc::DimensionMismatch, "jet point has wrong size");
  std::vector<Jet1> v(g.data());
  for (std::size_t b = 0; b < num_blocks(); ++b) {
    std::size_t o = block_offset(b), s = block_size(b);
    v.push_back(det_expand(g.block(o, o, s, s)).inverse());
  }
  return v;
}

ExprMatrix GroupModel::symbolic_point() const {
  ExprMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      EntryKind k = entry(i, j);
      if (k == EntryKind::Free)
        m(i, j) = FunctionExpr::variable(coord(i, j));
      else if (k == EntryKind::Unit)
        m(i, j) = FunctionExpr(Scalar(1));
    }
  return m;
}

FunctionExpr GroupModel::symbolic_det(std::size_t b) const {
  std::size_t o = block_offset(b), s = block_size(b);
  return det_expand(symbolic_point().block(o, o, s, s));
}

ExprMatrix GroupModel::symbolic_inverse() const {
  ExprMatrix p = symbolic_point();
  ExprMatrix inv(n_, n_);
  for (std::size_t b = 0; b < num_blocks(); ++b) {
    std::size_t o = block_offset(b), s = block_size(b);
    ExprMatrix blk = p.block(o, o, s, s);
    FunctionExpr dinv = FunctionExpr::variable(detinv_var(b));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        // adj(X)_{ij} = (-1)^{i+j} det(X without row j and column i)
        FunctionExpr cof;
        if (s == 1) {
          cof = FunctionExpr(Scalar(1));
        } else {
          std::vector<std::size_t> rows, cols;
          for (std::size_t k = 0; k < s; ++k) {
            if (k != j) rows.push_back(k);
            if (k != i) cols.push_back(k);
          }
          cof = det_expand(blk.select(rows, cols));
          if ((i + j) % 2) cof = -cof;
        }
        inv(o + i, o + j) = cof * dinv;
      }
  }
  return inv;
}

GroupModel::Substitution GroupModel::left_mult(const GroupPoint& g0) const {
  point(g0);
  Substitution s;
  s.images.resize(num_vars());
  ExprMatrix x = symbolic_point();
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      FunctionExpr e;
      for (std::size_t k = 0; k < n_; ++k)
        if (!g0(i, k).is_zero()) e += x(k, j).scaled(g0(i, k));
      s.images[coord(i, j)] = e;
    }
  auto v = values(g0);
  for (std::size_t b = 0; b < num_blocks(); ++b)
    s.images[detinv_var(b)] = FunctionExpr::variable(detinv_var(b)).scaled(v[n_ * n_ + b]);
  return s;
}

GroupModel::Substitution GroupModel::right_mult(const GroupPoint& g0) const {
  point(g0);
  Substitution s;
  s.images.resize(num_vars());
  ExprMatrix x = symbolic_point();
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      FunctionExpr e;
      for (std::size_t k = 0; k < n_; ++k)
        if (!g0(k, j).is_zero()) e += x(i, k).scaled(g0(k, j));
      s.images[coord(i, j)] = e;
    }
  auto v = values(g0);
  for (std::size_t b = 0; b < num_blocks(); ++b)
    s.images[detinv_var(b)] = FunctionExpr::variable(detinv_var(b)).scaled(v[n_ * n_ + b]);
  return s;
}

GroupModel::Substitution GroupModel::inversion() const {
  Substitution s;
  s.images.resize(num_vars());
  s.inverse_images.resize(num_vars());
  ExprMatrix inv = symbolic_inverse();
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) s.images[coord(i, j)] = inv(i, j);
  for (std::size_t b = 0; b < num_blocks(); ++b) {
    s.images[detinv_var(b)] = symbolic_det(b);
    s.inverse_images[detinv_var(b)] = FunctionExpr::variable(detinv_var(b));
  }
  return s;
}

Var GroupModel::power_var(Var v, std::size_t copy, std::size_t k) const {
  std::size_t big = n_ * k;
  if (v < n_ * n_) {
    std::size_t i = v / n_, j = v % n_;
    return static_cast<Var>((copy * n_ + i) * big + copy * n_ + j);
  }
  std::size_t b = v - n_ * n_;
  if (b >= num_blocks()) raise(Errc::DimensionMismatch, "variable outside the model");
  return static_cast<Var>(big * big + copy * num_blocks() + b);
}

std::vector<Var> GroupModel::power_var_map(std::size_t copy, std::size_t k) const {
  std::vector<Var> m(num_vars());
  for (Var v = 0; v < num_vars(); ++v) m[v] = power_var(v, copy, k);
  return m;
}

GroupModel GroupModel::power(std::size_t k, AlgebraPtr power_algebra) const {
  std::size_t big = n_ * k;
  std::vector<EntryKind> pat(big * big, EntryKind::Zero);
  std::vector<std::size_t> blocks;
  for (std::size_t c = 0; c < k; ++c) {
    blocks.insert(blocks.end(), block_sizes_.begin(), block_sizes_.end());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) pat[(c * n_ + i) * big + c * n_ + j] = entry(i, j);
  }
  return GroupModel(std::move(blocks), std::move(pat), std::move(power_algebra), label_ + "^" + std::to_string(k));
}

GroupPoint GroupModel::block_diag(const std::vector<GroupPoint>& parts) const {
  std::size_t k = parts.size();
  ScalarMatrix m(n_ * k, n_ * k);
  for (std::size_t c = 0; c < k; ++c) {
    point(parts[c]);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(c * n_ + i, c * n_ + j) = parts[c](i, j);
  }
  return m;
}

FunctionExpr GroupModel::parse(std::string_view text) const { return FunctionExpr::parse(text, n_, num_blocks()); }

std::vector<GroupPoint> SampleSet::expanded(const GroupModel& model) const {
  std::vector<GroupPoint> out;
  auto push = [&](const GroupPoint& g) {
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  };
  for (const auto& g : base) push(model.point(g));
  if (closure_depth >= 1) push(model.identity());
  if (closure_depth >= 2) {
    for (const auto& g : base) push(model.inv(g));
    for (const auto& a : base)
      for (const auto& b : base) push(a * b);
  }
  return out;
}

AlphaRep AlphaRep::conjugation(const GroupModel& model) {
  const auto& alg = *model.algebra();
  const auto& real = alg.realization();
  const ScalarMatrix& l = alg.coordinate_extractor();
  ExprMatrix p = model.symbolic_point();
  ExprMatrix q = model.symbolic_inverse();
  std::size_t d = alg.dim(), n = model.n();
  ExprMatrix out(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    ExprMatrix b(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!real.matrices[j](r, c).is_zero()) b(r, c) = FunctionExpr(real.matrices[j](r, c));
    ExprMatrix m = p * b * q;
    for (std::size_t i = 0; i < d; ++i) {
      FunctionExpr e;
      for (std::size_t k = 0; k < n * n; ++k)
        if (!l(i, k).is_zero()) e += m.data()[k].scaled(l(i, k));
      out(i, j) = e;
    }
  }
  return AlphaRep(std::move(out), true);
}

ScalarMatrix AlphaRep::at(const GroupModel& model, const GroupPoint& g) const {
  auto v = model.values(g);
  ScalarMatrix out(m_.rows(), m_.cols());
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = 0; j < m_.cols(); ++j) out(i, j) = m_(i, j).evaluate(v);
  return out;
}

Matrix<Jet1> AlphaRep::at_jet(const GroupModel& model, const JetMatrix& g) const {
  auto v = model.jet_values(g);
  Matrix<Jet1> out(m_.rows(), m_.cols());
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = 0; j < m_.cols(); ++j) out(i, j) = m_(i, j).evaluate(v);
  return out;
}

Vec ad_g(const GroupModel& model, const GroupPoint& g, const Vec& x) {
  const auto& alg = *model.algebra();
  ScalarMatrix m = g * alg.to_matrix(x) * model.inv(g);
  auto v = alg.try_from_matrix(m);
  if (!v) raise(Errc::InvalidInput, "conjugate leaves the realized span: inconsistent group model");
  return *v;
}

ScalarMatrix ad_matrix(const GroupModel& model, const GroupPoint& g) {
  const auto& alg = *model.algebra();
  ScalarMatrix out(alg.dim(), alg.dim());
  for (std::size_t j = 0; j < alg.dim(); ++j) {
    Vec c = ad_g(model, g, alg.unit(j));
    for (std::size_t i = 0; i < alg.dim(); ++i) out(i, j) = c[i];
  }
  return out;
}

FunctionExpr riv_derive_matrix(const GroupModel& model, const ScalarMatrix& x, const FunctionExpr& f) {
  std::size_t n = model.n();
  if (x.rows() != n || x.cols() != n) raise(Errc::DimensionMismatch, "field matrix has wrong size");
  ExprMatrix p = model.symbolic_point();
  std::vector<bool> used(model.num_vars(), false);
  for (const auto& [m, c] : f.terms())
    for (const auto& [v, e] : m) {
      if (v >= model.num_vars()) raise(Errc::DimensionMismatch, "expression uses a variable outside the model");
      used[v] = true;
    }
  FunctionExpr out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Var v = model.coord(i, j);
      if (!used[v]) continue;
      FunctionExpr dv;  // d/dt ((1 + tX) g)_ij = sum_k X_ik g_kj
      for (std::size_t k = 0; k < n; ++k)
        if (!x(i, k).is_zero()) dv += p(k, j).scaled(x(i, k));
      if (!dv.is_zero()) out += f.partial(v) * dv;
    }
  for (std::size_t b = 0; b < model.num_blocks(); ++b) {
    Var v = model.detinv_var(b);
    if (!used[v]) continue;
    std::size_t o = model.block_offset(b);
    Scalar tr;
    for (std::size_t k = 0; k < model.block_size(b); ++k) tr += x(o + k, o + k);
    // d/dt det((1 + tX) g)^{-1} = -tr(X) det(g)^{-1}
    if (!tr.is_zero()) out += f.partial(v) * FunctionExpr::variable(v).scaled(-tr);
  }
  return out;
}

FunctionExpr riv_derive(const GroupModel& model, const Vec& x, const FunctionExpr& f) {
  auto p = model.algebra()->vec_parity(x);
  if (!p || *p != Parity::Even) raise(Errc::InvalidInput, "right-invariant derivation needs an even algebra element");
  return riv_derive_matrix(model, model.algebra()->to_matrix(x), f);
}

Jet1 jet_eval(const GroupModel& model, const FunctionExpr& f, const JetMatrix& g) { return f.evaluate(model.jet_values(g)); }

JetMatrix jet_point(const GroupPoint& g, const ScalarMatrix& x) {
  if (g.rows() != x.rows() || g.cols() != x.cols()) raise(Errc::DimensionMismatch, "jet point shape mismatch");
  JetMatrix m(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) m(i, j) = Jet1(g(i, j), x(i, j));
  return m;
}

}  // namespace sgk
