#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "sgk/sgk.h"

namespace {

std::string fixture(const std::string& name) { return std::string(SGK_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("version, statuses and commands") {
  CHECK(std::string(sgk_version()).size() > 0);
  CHECK(std::string(sgk_status_name(SGK_OK)) == "ok");
  CHECK(std::string(sgk_status_name(SGK_ERR_PARSE)) == "parse error");
  CHECK(sgk_command_count() == 8);
  std::vector<std::string> names;
  for (size_t i = 0; i < sgk_command_count(); ++i) names.push_back(sgk_command_name(i));
  CHECK(std::find(names.begin(), names.end(), "demo-cp12") != names.end());
  CHECK(sgk_command_name(sgk_command_count()) == nullptr);
}

TEST_CASE("algebra handles") {
  sgk_algebra* a = nullptr;
  REQUIRE(sgk_algebra_load(fixture("gl11.json").c_str(), 0, &a) == SGK_OK);
  CHECK(sgk_algebra_even_dim(a) == 2);
  CHECK(sgk_algebra_odd_dim(a) == 2);
  CHECK(std::string(sgk_algebra_basis_name(a, 2)) == "e12");
  size_t l = 99, r = 99;
  CHECK(sgk_algebra_is_split(a, &l, &r) == 0);
  CHECK(std::string(sgk_algebra_basis_name(a, l)) == "e12");
  CHECK(std::string(sgk_algebra_basis_name(a, r)) == "e21");
  sgk_report* rep = nullptr;
  REQUIRE(sgk_algebra_jacobi(a, &rep) == SGK_OK);
  CHECK(sgk_report_fail_count(rep) == 0);
  CHECK(sgk_report_line_count(rep) > 0);
  CHECK(sgk_report_line_pass(rep, 0) == 1);
  CHECK(std::string(sgk_report_line_check(rep, 0)).find("jacobi") != std::string::npos);
  sgk_report_free(rep);
  REQUIRE(sgk_algebra_hopf(a, 2, &rep) == SGK_OK);
  CHECK(sgk_report_fail_count(rep) == 0);
  CHECK(std::string(sgk_report_summary(rep, -1)).find("\"elapsed\":null") != std::string::npos);
  sgk_report_free(rep);
  sgk_algebra_free(a);

  sgk_algebra* ab = nullptr;
  REQUIRE(sgk_algebra_load(fixture("abelian2.json").c_str(), 0, &ab) == SGK_OK);
  CHECK(sgk_algebra_is_split(ab, nullptr, nullptr) == 1);
  sgk_algebra_free(ab);
}

TEST_CASE("load errors set status and message") {
  sgk_algebra* a = nullptr;
  CHECK(sgk_algebra_load(fixture("gl11_truncated.json").c_str(), 0, &a) == SGK_ERR_PARSE);
  CHECK(a == nullptr);
  CHECK(std::string(sgk_last_error()).find(":48:12:") != std::string::npos);
  CHECK(sgk_algebra_load(fixture("gl11_perturbed_jacobi.json").c_str(), 0, &a) == SGK_ERR_INVALID);
  CHECK(sgk_algebra_load(fixture("gl11_perturbed_jacobi.json").c_str(), 1, &a) == SGK_OK);
  CHECK(std::string(sgk_last_error()).empty());
  sgk_algebra_free(a);
  CHECK(sgk_algebra_load(fixture("missing.json").c_str(), 0, &a) == SGK_ERR_IO);
  CHECK(sgk_algebra_load(nullptr, 0, &a) == SGK_ERR_ARGUMENT);
  CHECK(sgk_algebra_load(fixture("gl11.json").c_str(), 0, nullptr) == SGK_ERR_ARGUMENT);
}

TEST_CASE("pair handles") {
  sgk_pair* p = nullptr;
  REQUIRE(sgk_pair_load(fixture("abelian2_pair.json").c_str(), 0, &p) == SGK_OK);
  sgk_algebra* a = nullptr;
  REQUIRE(sgk_pair_algebra(p, &a) == SGK_OK);
  CHECK(sgk_algebra_odd_dim(a) == 2);
  sgk_algebra_free(a);
  sgk_report* rep = nullptr;
  REQUIRE(sgk_pair_group_axioms(p, 2, &rep) == SGK_OK);
  CHECK(sgk_report_fail_count(rep) == 0);
  sgk_report_free(rep);
  REQUIRE(sgk_pair_split_check(p, &rep) == SGK_OK);
  CHECK(sgk_report_fail_count(rep) == 0);
  sgk_report_free(rep);
  sgk_pair_free(p);
}

TEST_CASE("subpair isotropy through the C interface") {
  sgk_subpair* s = nullptr;
  REQUIRE(sgk_subpair_load(fixture("cp12_subpair.json").c_str(), 0, &s) == SGK_OK);
  CHECK(sgk_subpair_quotient_dim(s) == 1);
  const char* h[] = {"6", "1", "0", "0", "2", "0", "0", "0", "4"};
  char** out = nullptr;
  size_t n = 0;
  REQUIRE(sgk_subpair_isotropy(s, h, 9, &out, &n) == SGK_OK);
  REQUIRE(n == 1);
  CHECK(std::string(out[0]) == "3/2");
  sgk_strings_free(out, n);
  const char* notin[] = {"1", "0", "0", "1", "1", "0", "0", "0", "1"};
  CHECK(sgk_subpair_isotropy(s, notin, 9, &out, &n) == SGK_ERR_INVALID);
  CHECK(sgk_subpair_isotropy(s, h, 4, &out, &n) == SGK_ERR_DIMENSION);
  sgk_report* rep = nullptr;
  REQUIRE(sgk_subpair_split_check(s, &rep) == SGK_OK);
  CHECK(sgk_report_fail_count(rep) == 0);
  sgk_report_free(rep);
  sgk_subpair_free(s);
}

TEST_CASE("running commands") {
  sgk_options opts;
  sgk_options_init(&opts);
  std::string path = fixture("gl11.json");
  const char* in[] = {path.c_str()};
  sgk_report* rep = nullptr;
  REQUIRE(sgk_run("split-check", in, 1, &opts, &rep) == SGK_OK);
  CHECK(sgk_report_fail_count(rep) > 0);
  std::string text = sgk_report_text(rep);
  CHECK(text.rfind("FAIL split.criterion", 0) == 0);
  sgk_report_free(rep);
  CHECK(sgk_run("no-such-command", in, 1, &opts, &rep) == SGK_ERR_INVALID);
  CHECK(sgk_run("check-jacobi", nullptr, 0, &opts, &rep) == SGK_ERR_INVALID);
  CHECK(sgk_run("check-jacobi", in, 1, nullptr, &rep) == SGK_OK);
  sgk_report_free(rep);
  CHECK(sgk_run("check-jacobi", in, 1, &opts, nullptr) == SGK_ERR_ARGUMENT);
}
