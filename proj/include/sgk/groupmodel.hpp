#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgk/function_expr.hpp"
#include "sgk/liesuper.hpp"

namespace sgk {

enum class EntryKind : std::uint8_t { Free, Zero, Unit };

using GroupPoint = ScalarMatrix;
using JetMatrix = Matrix<Jet1>;
using ExprMatrix = Matrix<FunctionExpr>;

/// Matrix group given by an entry pattern (free / fixed zero / fixed one) inside a block
/// diagonal of invertible blocks. Its Lie algebra is the even part of `algebra`, which must
/// carry a matrix realization of the same size.
class GroupModel {
 public:
  GroupModel(std::vector<std::size_t> block_sizes, std::vector<EntryKind> pattern, AlgebraPtr algebra,
             std::string label = {});
  /// Rows of '*' (free), '0' and '1'. Without block sizes the whole matrix is one block.
  static GroupModel from_rows(const std::vector<std::string>& rows, AlgebraPtr algebra,
                              std::vector<std::size_t> block_sizes = {}, std::string label = {});

  const std::string& label() const { return label_; }
  std::size_t n() const { return n_; }
  std::size_t num_blocks() const { return block_sizes_.size(); }
  std::size_t block_size(std::size_t b) const { return block_sizes_.at(b); }
  std::size_t block_offset(std::size_t b) const { return block_offsets_.at(b); }
  const std::vector<std::size_t>& block_sizes() const { return block_sizes_; }
  std::size_t num_vars() const { return n_ * n_ + block_sizes_.size(); }
  EntryKind entry(std::size_t i, std::size_t j) const { return pattern_[i * n_ + j]; }
  const std::vector<EntryKind>& pattern() const { return pattern_; }
  std::vector<std::string> pattern_rows() const;
  const AlgebraPtr& algebra() const { return algebra_; }

  FunctionExpr::Var coord(std::size_t i, std::size_t j) const { return static_cast<FunctionExpr::Var>(i * n_ + j); }
  FunctionExpr::Var detinv_var(std::size_t b) const { return static_cast<FunctionExpr::Var>(n_ * n_ + b); }

  GroupPoint identity() const;
  bool contains(const ScalarMatrix& g, std::string* why = nullptr) const;
  /// Validated copy of g; throws Errc::InvalidInput if g is not in the group.
  GroupPoint point(const ScalarMatrix& g) const;
  /// Product and inverse, revalidated against the pattern.
  GroupPoint mul(const GroupPoint& a, const GroupPoint& b) const { return point(a * b); }
  GroupPoint inv(const GroupPoint& a) const;

  /// Values of all variables at g (coordinates, then inverse block determinants).
  std::vector<Scalar> values(const GroupPoint& g) const;
  std::vector<Jet1> jet_values(const JetMatrix& g) const;
  template <class T>
  T eval(const FunctionExpr& f, const std::vector<T>& vals) const { return f.evaluate(vals); }
  Scalar eval(const FunctionExpr& f, const GroupPoint& g) const { return f.evaluate(values(g)); }

  ExprMatrix symbolic_point() const;
  ExprMatrix symbolic_inverse() const;
  FunctionExpr symbolic_det(std::size_t b) const;

  /// Variable images realizing g -> g0*g (left), g -> g*g0 (right) and g -> g^{-1}.
  struct Substitution {
    std::vector<std::optional<FunctionExpr>> images;
    std::vector<std::optional<FunctionExpr>> inverse_images;
  };
  Substitution left_mult(const GroupPoint& g0) const;
  Substitution right_mult(const GroupPoint& g0) const;
  Substitution inversion() const;

  /// k-fold product group, block diagonal with the algebra's direct power.
  GroupModel power(std::size_t k, AlgebraPtr power_algebra) const;
  /// Variable of the k-fold product corresponding to variable v of copy `copy`.
  FunctionExpr::Var power_var(FunctionExpr::Var v, std::size_t copy, std::size_t k) const;
  std::vector<FunctionExpr::Var> power_var_map(std::size_t copy, std::size_t k) const;
  GroupPoint block_diag(const std::vector<GroupPoint>& parts) const;

  std::string format(const FunctionExpr& f) const { return f.to_string(n_, num_blocks()); }
  FunctionExpr parse(std::string_view text) const;

 private:
  std::string label_;
  std::size_t n_ = 0;
  std::vector<std::size_t> block_sizes_, block_offsets_;
  std::vector<EntryKind> pattern_;
  AlgebraPtr algebra_;
};

/// Sample points with a closure depth: depth 1 adds the identity, depth 2 adds inverses and
/// pairwise products of the base points.
struct SampleSet {
  std::vector<GroupPoint> base;
  int closure_depth = 2;
  std::vector<GroupPoint> expanded(const GroupModel& model) const;
};

/// Action of the group on the algebra, as a dim x dim matrix of functions of g.
class AlphaRep {
 public:
  AlphaRep() = default;
  AlphaRep(ExprMatrix m, bool conjugation) : m_(std::move(m)), conjugation_(conjugation) {}
  /// alpha(g) = coordinates of g B_j g^{-1} for each realization matrix B_j.
  static AlphaRep conjugation(const GroupModel& model);

  const ExprMatrix& matrix() const { return m_; }
  bool is_conjugation() const { return conjugation_; }
  ScalarMatrix at(const GroupModel& model, const GroupPoint& g) const;
  Matrix<Jet1> at_jet(const GroupModel& model, const JetMatrix& g) const;

 private:
  ExprMatrix m_;
  bool conjugation_ = false;
};

/// Coordinates of g X g^{-1} for X in the realized algebra.
Vec ad_g(const GroupModel& model, const GroupPoint& g, const Vec& x);
ScalarMatrix ad_matrix(const GroupModel& model, const GroupPoint& g);

/// Right-invariant vector field of an even algebra element: (X f)(g) = d/dt f((1 + tX) g).
FunctionExpr riv_derive(const GroupModel& model, const Vec& x, const FunctionExpr& f);
/// Same for a matrix X of the model's size.
FunctionExpr riv_derive_matrix(const GroupModel& model, const ScalarMatrix& x, const FunctionExpr& f);

Jet1 jet_eval(const GroupModel& model, const FunctionExpr& f, const JetMatrix& g);
/// g + eps * X as a jet matrix.
JetMatrix jet_point(const GroupPoint& g, const ScalarMatrix& x);

}  // namespace sgk
