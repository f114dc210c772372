#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sgk/exactnum.hpp"

namespace sgk {

/// Function on a matrix group model, kept as a Laurent polynomial in the coordinates
/// x_ij (variable i*n + j) and the inverse block determinants detinv_b (variable n*n + b).
/// The normal form is a map from sorted (variable, exponent) lists to nonzero coefficients,
/// so equal expressions compare equal structurally.
class FunctionExpr {
 public:
  using Var = std::uint32_t;
  using Mono = std::vector<std::pair<Var, int>>;
  using TermMap = std::map<Mono, Scalar>;

  FunctionExpr() = default;
  explicit FunctionExpr(const Scalar& c);
  static FunctionExpr variable(Var v, int exponent = 1);
  static FunctionExpr term(Mono m, const Scalar& c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<Scalar> constant_value() const;
  bool is_single_term() const { return terms_.size() == 1; }
  /// Largest variable index used plus one.
  Var var_bound() const;
  bool uses_negative_powers() const;

  FunctionExpr& operator+=(const FunctionExpr& o);
  FunctionExpr& operator-=(const FunctionExpr& o);
  FunctionExpr& operator*=(const FunctionExpr& o) { return *this = *this * o; }
  friend FunctionExpr operator+(FunctionExpr a, const FunctionExpr& b) { return a += b; }
  friend FunctionExpr operator-(FunctionExpr a, const FunctionExpr& b) { return a -= b; }
  friend FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b);
  FunctionExpr operator-() const;
  friend bool operator==(const FunctionExpr& a, const FunctionExpr& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const FunctionExpr& a, const FunctionExpr& b) { return !(a == b); }

  FunctionExpr scaled(const Scalar& c) const;
  /// Inverse of a single-term expression; throws Errc::Degenerate otherwise.
  FunctionExpr inverse() const;
  FunctionExpr pow(int e) const;
  FunctionExpr partial(Var v) const;

  /// Replaces variables by expressions. images[v] == nullopt keeps v. Negative powers use
  /// inverse_images[v] when given, otherwise require a single-term image.
  FunctionExpr substitute(const std::vector<std::optional<FunctionExpr>>& images,
                          const std::vector<std::optional<FunctionExpr>>& inverse_images = {}) const;
  /// Renames variables (map must be total on used variables).
  FunctionExpr rename(const std::vector<Var>& map) const;

  /// Evaluation with variable values; negative powers divide (throws on zero).
  template <class T>
  T evaluate(const std::vector<T>& values) const;

  /// Text with coordinates named for an n x n model with the given number of blocks.
  std::string to_string(std::size_t n, std::size_t n_blocks) const;
  /// Parses sums/products/quotients/powers of integers, i, x<r><c>, x[r,c], detinv,
  /// detinv[b], det, det[b] (1-based indices). Division only by single-term expressions.
  static FunctionExpr parse(std::string_view text, std::size_t n, std::size_t n_blocks);

 private:
  void add_term(const Mono& m, const Scalar& c);
  TermMap terms_;
};

template <class T>
T FunctionExpr::evaluate(const std::vector<T>& values) const {
  T acc;
  for (const auto& [mono, c] : terms_) {
    T t(c);
    for (const auto& [v, e] : mono) {
      if (v >= values.size()) raise(Errc::DimensionMismatch, "expression uses a variable outside the model");
      const T& x = values[v];
      if (e > 0) {
        for (int k = 0; k < e; ++k) t *= x;
      } else {
        T inv = x.inverse();
        for (int k = 0; k < -e; ++k) t *= inv;
      }
    }
    acc += t;
  }
  return acc;
}

}  // namespace sgk
