#pragma once

#include <map>
#include <memory>
#include <string>

#include "sgk/homogeneous.hpp"

namespace sgk::io {

struct LoadOptions {
  /// Accept algebras failing Jacobi or disagreeing with their realization (mutation fixtures).
  bool allow_invalid = false;
};

struct AlgebraFile {
  AlgebraPtr algebra;
  HopfConventions conventions;
};

struct SubpairFile {
  std::shared_ptr<const HCSubpair> sub;
  CosetData data;
};

/// Reads definition files. References between files ("algebra", "pair", "source", "target")
/// are resolved relative to the referring file; each file is loaded once per Loader so that
/// shared references yield the same object. Errors are Errc::Parse / Errc::InvalidInput /
/// Errc::Io with "<file>:<line>:<col>" for syntax errors and "<file>: <json path>" otherwise.
class Loader {
 public:
  explicit Loader(LoadOptions opts = {}) : opts_(opts) {}

  /// An algebra file, or any file with an "algebra" field.
  AlgebraFile algebra(const std::string& path);
  PairPtr pair(const std::string& path);
  SubpairFile subpair(const std::string& path);
  Section section(const std::string& path);
  HCMorphism morphism(const std::string& path);

 private:
  LoadOptions opts_;
  std::map<std::string, AlgebraFile> algebras_;
  std::map<std::string, PairPtr> pairs_;
};

/// "algebra", "pair", "subpair", "section" or "morphism", from the fields present.
std::string document_kind(const std::string& path);

/// Parses an algebra document held in memory; `source` names it in error messages.
AlgebraPtr parse_algebra(const std::string& text, const std::string& source, const LoadOptions& opts = {});

std::string algebra_to_json(const LieSuperAlgebra& g);
/// Model file for a pair; `algebra_ref` is written as the "algebra" reference, or the algebra
/// is inlined when empty.
std::string pair_to_json(const HCPair& p, const std::string& algebra_ref = {});
std::string section_to_json(const Section& s, const std::string& pair_ref);
/// UEA element as a list of {even, odd, coeff} records in canonical order.
std::string uea_to_json(const UEAElement& u);

}  // namespace sgk::io
