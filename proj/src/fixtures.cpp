#include "sgk/fixtures.hpp"

namespace sgk::fixtures {

namespace {

ScalarMatrix unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  ScalarMatrix m(n, n);
  m(i, j) = Scalar(1);
  return m;
}

std::string elem_name(std::size_t i, std::size_t j) { return "e" + std::to_string(i + 1) + std::to_string(j + 1); }

SampleSet with_samples(std::vector<GroupPoint> base) {
  SampleSet s;
  s.base = std::move(base);
  s.closure_depth = 2;
  return s;
}

}  // namespace

GroupPoint diag(const std::vector<Scalar>& d) {
  ScalarMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

GroupPoint matrix(const std::vector<std::vector<long>>& rows) {
  ScalarMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = Scalar(rows[i][j]);
  return m;
}

AlgebraPtr gl_algebra(std::size_t m, std::size_t n) {
  std::size_t size = m + n;
  std::vector<Parity> index(size);
  for (std::size_t i = 0; i < size; ++i) index[i] = i < m ? Parity::Even : Parity::Odd;
  std::vector<std::string> names;
  std::vector<Parity> parities;
  std::vector<ScalarMatrix> mats;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      names.push_back(elem_name(i, j));
      parities.push_back(index[i] == index[j] ? Parity::Even : Parity::Odd);
      mats.push_back(unit_matrix(size, i, j));
    }
  std::string label = "gl(" + std::to_string(m) + "|" + std::to_string(n) + ")";
  return std::make_shared<const LieSuperAlgebra>(LieSuperAlgebra::from_matrix_basis(names, parities, mats, index, label));
}

AlgebraPtr abelian_odd_algebra(std::size_t n) {
  std::vector<Parity> index(1 + n, Parity::Odd);
  index[0] = Parity::Even;
  std::vector<std::string> names;
  std::vector<ScalarMatrix> mats;
  for (std::size_t k = 0; k < n; ++k) {
    names.push_back("xi" + std::to_string(k + 1));
    mats.push_back(unit_matrix(1 + n, 0, 1 + k));
  }
  std::vector<Parity> parities(n, Parity::Odd);
  return std::make_shared<const LieSuperAlgebra>(
      LieSuperAlgebra::from_matrix_basis(names, parities, mats, index, "C^{0|" + std::to_string(n) + "}"));
}

AlgebraPtr algebra_from_pattern(const std::vector<std::string>& rows, const std::vector<Parity>& index_parity,
                                const std::string& label) {
  std::size_t n = rows.size();
  if (index_parity.size() != n) raise(Errc::DimensionMismatch, "one index parity per pattern row required");
  std::vector<std::string> names;
  std::vector<Parity> parities;
  std::vector<ScalarMatrix> mats;
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) raise(Errc::DimensionMismatch, "pattern must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] != '*') continue;
      names.push_back(elem_name(i, j));
      parities.push_back(index_parity[i] == index_parity[j] ? Parity::Even : Parity::Odd);
      mats.push_back(unit_matrix(n, i, j));
    }
  }
  return std::make_shared<const LieSuperAlgebra>(LieSuperAlgebra::from_matrix_basis(names, parities, mats, index_parity, label));
}

std::vector<std::string> cp12_algebra_rows() { return {"**0", "**0", "***"}; }

AlgebraPtr cp12_algebra() {
  return algebra_from_pattern(cp12_algebra_rows(), {Parity::Even, Parity::Even, Parity::Odd}, "g'");
}

AlgebraPtr gl11_perturbed_jacobi() {
  AlgebraPtr g = gl_algebra(1, 1);
  std::vector<BracketEntry> entries;
  std::size_t e11 = g->basis().index_of("e11"), e22 = g->basis().index_of("e22");
  std::size_t e12 = g->basis().index_of("e12"), e21 = g->basis().index_of("e21");
  for (std::size_t i = 0; i < g->dim(); ++i)
    for (std::size_t j = i; j < g->dim(); ++j) {
      Vec r = g->bracket_basis(i, j);
      if ((i == e12 && j == e21) || (i == e21 && j == e12)) {
        r = g->zero();
        r[e11] = Scalar(1);
        r[e22] = Scalar(2);
      }
      if (!is_zero(r)) entries.push_back({i, j, r});
    }
  return std::make_shared<const LieSuperAlgebra>(LieSuperAlgebra(g->basis(), entries, std::nullopt, "gl(1|1) perturbed"));
}

PairPtr gl_pair(std::size_t m, std::size_t n) {
  AlgebraPtr g = gl_algebra(m, n);
  std::size_t size = m + n;
  std::vector<std::string> rows(size, std::string(size, '0'));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if ((i < m) == (j < m)) rows[i][j] = '*';
  std::vector<std::size_t> blocks;
  if (m) blocks.push_back(m);
  if (n) blocks.push_back(n);
  GroupModel model = GroupModel::from_rows(rows, g, blocks, g->label());
  std::vector<GroupPoint> base;
  if (m == 1 && n == 1) {
    base = {diag({2, 3}), diag({1, 2}), diag({-1, 1}), diag({Scalar::ratio(1, 2), 5}), diag({Scalar::imag_unit(), 1}),
            diag({3, Scalar::ratio(-1, 3)})};
  } else if (m == 2 && n == 1) {
    base = {matrix({{1, 1, 0}, {0, 1, 0}, {0, 0, 2}}), matrix({{2, 0, 0}, {1, 1, 0}, {0, 0, 1}}),
            matrix({{1, 2, 0}, {1, 3, 0}, {0, 0, -1}}), matrix({{3, 0, 0}, {0, 1, 0}, {0, 0, 3}})};
  } else if (m == 2 && n == 0) {
    base = {matrix({{1, 1}, {0, 1}}), matrix({{2, 0}, {1, 1}}), matrix({{1, 2}, {1, 3}}), matrix({{3, 0}, {0, 1}})};
  } else {
    std::vector<Scalar> d(size, Scalar(1));
    d[0] = Scalar(2);
    base = {diag(d)};
    d[size - 1] = Scalar(3);
    base.push_back(diag(d));
  }
  return HCPair::make_conjugation(std::move(model), with_samples(std::move(base)), g->label());
}

PairPtr abelian_pair(std::size_t n) {
  AlgebraPtr g = abelian_odd_algebra(n);
  std::vector<std::string> rows(1 + n, std::string(1 + n, '0'));
  for (std::size_t i = 0; i <= n; ++i) rows[i][i] = '1';
  GroupModel model = GroupModel::from_rows(rows, g, {}, g->label());
  return HCPair::make_conjugation(std::move(model), with_samples({}), g->label());
}

PairPtr gl11_broken_alpha() {
  PairPtr good = gl_pair(1, 1);
  const auto& model = good->model();
  ExprMatrix a = good->alpha().matrix();
  std::size_t e12 = good->g().basis().index_of("e12");
  a(e12, e12) = model.parse("x11 + x22 - 1");
  return HCPair::make(model, AlphaRep(std::move(a), false), good->samples(), "gl(1|1) broken alpha");
}

PairPtr cp12_pair() {
  AlgebraPtr g = cp12_algebra();
  GroupModel model = GroupModel::from_rows({"**0", "**0", "00*"}, g, {2, 1}, "G'");
  std::vector<GroupPoint> base{matrix({{1, 0, 0}, {1, 1, 0}, {0, 0, 2}}), matrix({{2, 0, 0}, {3, 1, 0}, {0, 0, 1}}),
                               matrix({{1, 1, 0}, {1, 2, 0}, {0, 0, -1}}), matrix({{3, 0, 0}, {0, 1, 0}, {0, 0, 3}}),
                               matrix({{1, 2, 0}, {0, 1, 0}, {0, 0, 1}}), matrix({{2, 1, 0}, {1, 1, 0}, {0, 0, 5}})};
  return HCPair::make_conjugation(std::move(model), with_samples(std::move(base)), "G'");
}

std::vector<std::string> cp12_subgroup_rows() { return {"**0", "0*0", "00*"}; }

std::vector<std::string> cp12_subalgebra_names() { return {"e11", "e12", "e22", "e33", "e32"}; }

std::vector<GroupPoint> cp12_subgroup_samples() {
  return {diag({2, 1, 1}), matrix({{1, 1, 0}, {0, 2, 0}, {0, 0, 3}}), matrix({{-1, 2, 0}, {0, 1, 0}, {0, 0, 1}}),
          diag({1, 3, -2})};
}

std::vector<std::pair<std::string, HopfConventions>> hopf_mutations() {
  std::vector<std::pair<std::string, HopfConventions>> out;
  HopfConventions c;
  c.tensor_koszul = false;
  out.emplace_back("tensor_koszul", c);
  c = {};
  c.antipode_negates = false;
  out.emplace_back("antipode_negates", c);
  c = {};
  c.antipode_reorder_sign = false;
  out.emplace_back("antipode_reorder_sign", c);
  c = {};
  c.flip_koszul = false;
  out.emplace_back("flip_koszul", c);
  return out;
}

}  // namespace sgk::fixtures
