#pragma once

#include <string>
#include <vector>

#include "sgk/supergroup.hpp"

namespace sgk::fixtures {

/// gl(m|n) on the elementary matrices e_ij, named "e<i><j>".
AlgebraPtr gl_algebra(std::size_t m, std::size_t n);
/// Abelian purely odd algebra C^{0|n}, realized by the odd matrices E_{1,1+k} of size 1+n.
AlgebraPtr abelian_odd_algebra(std::size_t n);
/// Span of the elementary matrices at the '*' entries of a square pattern, graded by index parity.
AlgebraPtr algebra_from_pattern(const std::vector<std::string>& rows, const std::vector<Parity>& index_parity,
                                const std::string& label);
/// Supermatrix pattern of g' (rows 1-2 even, row 3 odd).
std::vector<std::string> cp12_algebra_rows();
/// Lie algebra of the group G' used for CP^{1|2}: even e11, e12, e21, e22, e33; odd e31, e32.
AlgebraPtr cp12_algebra();
/// gl(1|1) with [e12, e21] changed to e11 + 2 e22 (fails Jacobi).
AlgebraPtr gl11_perturbed_jacobi();

/// GL(m) x GL(n) acting by conjugation on gl(m|n).
PairPtr gl_pair(std::size_t m, std::size_t n);
/// Trivial group with C^{0|n}.
PairPtr abelian_pair(std::size_t n);
/// gl(1|1) pair whose alpha sends e12 to (x11 + x22 - 1) e12, not a homomorphism.
PairPtr gl11_broken_alpha();
/// (G', g') with G' = GL(2) x GL(1).
PairPtr cp12_pair();

/// P' inside G': upper triangular 2x2 block times GL(1); p' = span(e11, e12, e22, e33, e32).
std::vector<std::string> cp12_subgroup_rows();
std::vector<std::string> cp12_subalgebra_names();
std::vector<GroupPoint> cp12_subgroup_samples();

GroupPoint diag(const std::vector<Scalar>& d);
GroupPoint matrix(const std::vector<std::vector<long>>& rows);

/// Single-flag mutations of the Hopf sign conventions, with a short name each.
std::vector<std::pair<std::string, HopfConventions>> hopf_mutations();

}  // namespace sgk::fixtures
