#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <supersasaki/sasakilift.hpp>
#include <supersasaki/transform.hpp>

namespace supersasaki::cli {

/// Malformed or inconsistent input file.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReferenceChristoffel {
  std::size_t upper;
  std::size_t lower1;
  std::size_t lower2;
  ScalarExpr value;
};

/// Externally claimed values to compare against; never used as inputs.
struct ReferenceData {
  std::optional<std::vector<ReferenceChristoffel>> christoffel;  // the claimed nonzero set
  std::vector<std::string> nabla_dot;                            // per coordinate, may be empty
  std::optional<std::string> sasaki;
};

struct GeometrySpec {
  std::filesystem::path path;
  std::string name;
  std::string notes;
  std::vector<std::vector<std::string>> metric_text;
  std::vector<std::vector<std::string>> omega_text;
  Geometry geometry;
  ReferenceData reference;
};

GeometrySpec load_geometry(const std::filesystem::path& path);

struct MapSpec {
  std::filesystem::path path;
  std::string name;
  std::filesystem::path source_path;
  std::filesystem::path target_path;
  std::vector<std::string> components_text;
  std::optional<std::vector<std::string>> inverse_text;
};

MapSpec load_map(const std::filesystem::path& path);
SmoothMap build_map(const MapSpec& spec, const Chart& source, const Chart& target);

/// "raw" fields give both blocks over PTM; "base" fields give X^a(x).
struct FieldSpec {
  enum class Kind { Base, Ptm };
  Kind kind = Kind::Base;
  std::vector<std::string> components;
  std::vector<std::string> bar;
  std::optional<Parity> parity;
};

FieldSpec load_field(const std::filesystem::path& path);
/// Comma separated base components, e.g. "1,0" or "y,-x".
FieldSpec inline_field(const std::string& text);

VectorFieldM build_base_field(const FieldSpec& spec, const Chart& chart);
VectorFieldPTM build_ptm_field(const FieldSpec& spec, const SuperDomain& domain);

}  // namespace supersasaki::cli
