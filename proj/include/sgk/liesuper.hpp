#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sgk/matrix.hpp"

namespace sgk {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline int bit(Parity p) { return static_cast<int>(p); }
inline Parity parity_of_bit(int b) { return (b & 1) ? Parity::Odd : Parity::Even; }
inline Parity operator+(Parity a, Parity b) { return parity_of_bit(bit(a) + bit(b)); }
/// (-1)^(p(a) p(b))
inline int koszul(Parity a, Parity b) { return (bit(a) & bit(b)) ? -1 : 1; }
const char* parity_name(Parity p);

using Vec = std::vector<Scalar>;

bool is_zero(const Vec& v);
Vec axpy(const Scalar& a, const Vec& x, Vec y);  // y + a*x
std::string vec_to_string(const Vec& v, const std::vector<std::string>& names);

/// Named homogeneous basis; even elements always precede odd ones.
class SuperBasis {
 public:
  SuperBasis() = default;
  SuperBasis(std::vector<std::string> names, std::vector<Parity> parities);

  std::size_t size() const { return names_.size(); }
  std::size_t n_even() const { return n_even_; }
  std::size_t n_odd() const { return names_.size() - n_even_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  Parity parity(std::size_t i) const { return parities_.at(i); }
  bool is_odd(std::size_t i) const { return parities_.at(i) == Parity::Odd; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::vector<Parity> parities_;
  std::size_t n_even_ = 0;
};

/// Supermatrix realization: one matrix per basis element; index_parity grades rows/columns.
struct MatrixRealization {
  std::vector<Parity> index_parity;
  std::vector<ScalarMatrix> matrices;
  std::size_t matrix_size() const { return index_parity.size(); }
};

/// Parity of a matrix w.r.t. the row/column grading, or nullopt if mixed. Zero is even.
std::optional<Parity> matrix_parity(const ScalarMatrix& m, const std::vector<Parity>& index_parity);
ScalarMatrix supercommutator(const ScalarMatrix& x, Parity px, const ScalarMatrix& y, Parity py);

struct BracketEntry {
  std::size_t left;
  std::size_t right;
  Vec result;
};

class LieSuperAlgebra {
 public:
  /// Entries not listed are zero; entries with left > right are mirrored by super-antisymmetry
  /// and must agree with any explicit (right, left) entry.
  LieSuperAlgebra(SuperBasis basis, const std::vector<BracketEntry>& entries,
                  std::optional<MatrixRealization> realization = std::nullopt, std::string label = {});

  /// Brackets computed as supercommutators of the given matrices. The basis is reordered
  /// (stably) so that even elements come first.
  static LieSuperAlgebra from_matrix_basis(std::vector<std::string> names, std::vector<Parity> parities,
                                           std::vector<ScalarMatrix> matrices, std::vector<Parity> index_parity,
                                           std::string label = {});

  const std::string& label() const { return label_; }
  const SuperBasis& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  Parity parity(std::size_t i) const { return basis_.parity(i); }

  const Vec& bracket_basis(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  Vec bracket(const Vec& x, const Vec& y) const;
  Vec unit(std::size_t i) const;
  Vec zero() const { return Vec(dim()); }
  /// Parity of a homogeneous vector; zero counts as even; nullopt when mixed.
  std::optional<Parity> vec_parity(const Vec& v) const;

  bool has_realization() const { return realization_.has_value(); }
  const MatrixRealization& realization() const;
  ScalarMatrix to_matrix(const Vec& v) const;
  /// Basis coordinates of a matrix in the realized span, nullopt if outside.
  std::optional<Vec> try_from_matrix(const ScalarMatrix& m) const;
  Vec from_matrix(const ScalarMatrix& m) const;
  /// L with L * vec(B_j) = e_j, for extracting coordinates linearly (also of symbolic matrices).
  const ScalarMatrix& coordinate_extractor() const;

  /// Pairs (i, j) where the stored brackets disagree with the realization's supercommutators.
  std::vector<std::pair<std::size_t, std::size_t>> realization_mismatches() const;

  /// Direct sum of k copies. Copy c of basis element x is named "x@c" (c from 1); all even
  /// elements of all copies precede all odd ones.
  LieSuperAlgebra direct_power(std::size_t k) const;
  /// Index of basis element i of copy c (0-based) inside direct_power(k).
  std::size_t power_index(std::size_t i, std::size_t copy, std::size_t k) const;

 private:
  std::string label_;
  SuperBasis basis_;
  std::vector<Vec> table_;
  std::optional<MatrixRealization> realization_;
  std::optional<ScalarMatrix> extractor_;
};

using AlgebraPtr = std::shared_ptr<const LieSuperAlgebra>;

struct JacobiViolation {
  std::size_t x, y, z;
  Vec residual;
};

struct JacobiReport {
  bool pass = true;
  std::vector<JacobiViolation> violations;
};

/// Graded Jacobi identity on all basis triples:
/// (-1)^{p(x)p(z)}[x,[y,z]] + (-1)^{p(y)p(x)}[y,[z,x]] + (-1)^{p(z)p(y)}[z,[x,y]] = 0.
JacobiReport check_jacobi(const LieSuperAlgebra& g);

/// A pair of odd basis elements with nonzero bracket, if any.
std::optional<std::pair<std::size_t, std::size_t>> odd_bracket_witness(const LieSuperAlgebra& g);

/// Span of homogeneous vectors in an algebra.
class SuperSubspace {
 public:
  SuperSubspace(AlgebraPtr parent, std::vector<Vec> span);
  /// The odd part g_1 of the whole algebra.
  static SuperSubspace odd_part(AlgebraPtr parent);
  static SuperSubspace even_part(AlgebraPtr parent);

  const AlgebraPtr& parent() const { return parent_; }
  const std::vector<Vec>& span() const { return span_; }
  std::size_t dim() const { return span_.size(); }
  bool contains(const Vec& v) const;
  /// Coordinates of v in the span basis; nullopt if v is outside.
  std::optional<Vec> coordinates(const Vec& v) const;
  /// Whether the span is closed under the bracket.
  std::optional<std::pair<std::size_t, std::size_t>> closure_witness() const;

 private:
  AlgebraPtr parent_;
  std::vector<Vec> span_;
};

/// Complement basis of h1 inside g1 (basis vectors of g) and the projection g -> g1/h1.
struct OddQuotient {
  std::vector<Vec> complement;
  ScalarMatrix projection;  // dim(quotient) x dim(g); kills h1 and g0, sends complement[i] to e_i
  std::size_t dim() const { return complement.size(); }
};

OddQuotient odd_quotient(const SuperSubspace& g1, const SuperSubspace& h1);

}  // namespace sgk
