#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <functional>
#include <fstream>
#include <random>

#include "json.hpp"
#include "sgk/fixtures.hpp"
#include "sgk/io.hpp"

using namespace sgk;

namespace {

std::string fixture(const std::string& name) { return std::string(SGK_FIXTURES) + "/" + name; }

Errc load_error(const std::function<void()>& f, std::string* what = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (what) *what = e.what();
    return e.code();
  }
  FAIL("expected an error");
  return Errc{};
}

bool same_brackets(const LieSuperAlgebra& a, const LieSuperAlgebra& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.basis().name(i) != b.basis().name(i) || a.parity(i) != b.parity(i)) return false;
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a.bracket_basis(i, j) != b.bracket_basis(i, j)) return false;
  }
  return true;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / ("sgk_io_" + std::to_string(std::random_device{}()))) {
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("shipped algebras load and match the built-in models") {
  io::Loader loader;
  CHECK(same_brackets(*loader.algebra(fixture("gl11.json")).algebra, *fixtures::gl_algebra(1, 1)));
  CHECK(same_brackets(*loader.algebra(fixture("gl21.json")).algebra, *fixtures::gl_algebra(2, 1)));
  CHECK(same_brackets(*loader.algebra(fixture("cp12_algebra.json")).algebra, *fixtures::cp12_algebra()));
  CHECK(same_brackets(*loader.algebra(fixture("abelian3.json")).algebra, *fixtures::abelian_odd_algebra(3)));
}

TEST_CASE("shared references resolve to one object") {
  io::Loader loader;
  PairPtr p = loader.pair(fixture("cp12_pair.json"));
  auto sub = loader.subpair(fixture("cp12_subpair.json"));
  CHECK(sub.sub->parent() == p);
  CHECK(loader.algebra(fixture("cp12_pair.json")).algebra == p->algebra());
}

TEST_CASE("syntax errors carry file, line and column") {
  std::string what;
  CHECK(load_error([] { io::Loader().algebra(fixture("gl11_truncated.json")); }, &what) == Errc::Parse);
  CHECK(what.find("gl11_truncated.json:48:12:") != std::string::npos);
  CHECK(load_error([] { io::parse_algebra("{\n  \"basis\": [,]\n}", "mem"); }, &what) == Errc::Parse);
  CHECK(what.find("mem:2:") == 0);
}

TEST_CASE("semantic errors carry the JSON path") {
  std::string what;
  CHECK(load_error([] { io::Loader().algebra(fixture("gl11_antisymmetry.json")); }, &what) == Errc::InvalidInput);
  CHECK(what.find("/brackets") != std::string::npos);
  CHECK(load_error([] { io::Loader().algebra(fixture("gl11_perturbed_jacobi.json")); }, &what) == Errc::InvalidInput);
  CHECK(what.find("Jacobi") != std::string::npos);
  CHECK(load_error([] { io::parse_algebra(R"({"basis": [{"name": "a", "parity": "sideways"}]})", "mem"); }, &what) ==
        Errc::InvalidInput);
  CHECK(what.find("/basis/0") != std::string::npos);
  CHECK(load_error([] { io::parse_algebra(R"({"basis": [{"name": "a", "parity": "even"}, {"name": "a", "parity": "odd"}]})", "m"); }) ==
        Errc::InvalidInput);
  CHECK(load_error([] { io::Loader().algebra(fixture("no_such_file.json")); }) == Errc::Io);
}

TEST_CASE("mutation fixtures load only when allowed") {
  io::LoadOptions opts;
  opts.allow_invalid = true;
  io::Loader loader(opts);
  AlgebraPtr g = loader.algebra(fixture("gl11_perturbed_jacobi.json")).algebra;
  CHECK_FALSE(check_jacobi(*g).pass);
  auto conv = loader.algebra(fixture("gl11_hopf_antipode_negates.json")).conventions;
  CHECK_FALSE(conv.antipode_negates);
  CHECK(conv.tensor_koszul);
}

TEST_CASE("document kinds") {
  CHECK(io::document_kind(fixture("gl11.json")) == "algebra");
  CHECK(io::document_kind(fixture("gl11_pair.json")) == "pair");
  CHECK(io::document_kind(fixture("cp12_subpair.json")) == "subpair");
  CHECK(io::document_kind(fixture("cp12_section_member.json")) == "section");
  CHECK(io::document_kind(fixture("gl11_identity.json")) == "morphism");
}

TEST_CASE("algebra round trip") {
  for (AlgebraPtr g : {fixtures::gl_algebra(1, 1), fixtures::gl_algebra(2, 1), fixtures::cp12_algebra(), fixtures::abelian_odd_algebra(2)}) {
    std::string text = io::algebra_to_json(*g);
    AlgebraPtr back = io::parse_algebra(text, "roundtrip");
    CHECK(same_brackets(*g, *back));
    CHECK(io::algebra_to_json(*back) == text);
  }
}

TEST_CASE("pair and section round trip through files") {
  TempDir dir;
  PairPtr p = fixtures::gl_pair(1, 1);
  std::string alg = dir.write("alg.json", io::algebra_to_json(p->g()));
  std::string pair = dir.write("pair.json", io::pair_to_json(*p, "alg.json"));
  io::Loader loader;
  PairPtr back = loader.pair(pair);
  CHECK(same_brackets(back->g(), p->g()));
  CHECK(back->alpha().matrix() == p->alpha().matrix());
  CHECK(io::pair_to_json(*back, "alg.json") == io::pair_to_json(*p, "alg.json"));
  CHECK(loader.algebra(alg).algebra == back->algebra());

  std::mt19937_64 rng(3);
  for (int k = 0; k < 5; ++k) {
    Section s = random_section(back, rng);
    std::string path = dir.write("s" + std::to_string(k) + ".json", io::section_to_json(s, "pair.json"));
    Section t = loader.section(path);
    CHECK(t.pair() == back);
    CHECK(t.table() == s.table());
  }
}

TEST_CASE("enveloping algebra elements serialize in canonical order") {
  AlgebraPtr g = fixtures::gl_algebra(1, 1);
  EnvelopePtr env = std::make_shared<Envelope>(g);
  std::size_t e12 = g->basis().index_of("e12"), e21 = g->basis().index_of("e21");
  UEAElement u = UEAElement::generator(env, e21) * UEAElement::generator(env, e12);
  nlohmann::json j = nlohmann::json::parse(io::uea_to_json(u));
  REQUIRE(j.is_array());
  CHECK(j.size() == 3);
  for (const auto& t : j) {
    CHECK(t.contains("even"));
    CHECK(t.contains("odd"));
    CHECK(t.contains("coeff"));
  }
  CHECK(io::uea_to_json(u) == io::uea_to_json(UEAElement::generator(env, e21) * UEAElement::generator(env, e12)));
}
