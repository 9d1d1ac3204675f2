#include "specs.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace supersasaki::cli {

using nlohmann::json;

namespace {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(path.string() + ": " + e.what());
  }
}

std::string expr_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw SpecError(where + ": expected an expression string");
}

ScalarExpr parse_in(const std::string& text, const std::set<std::string>& vocab,
                    const std::string& where) {
  try {
    return parse_expr(text, vocab);
  } catch (const ParseError& e) {
    throw SpecError(where + ": " + e.what() + " in '" + text + "'");
  }
}

std::vector<std::vector<std::string>> matrix_text(const json& j, std::size_t n,
                                                  const std::string& where) {
  if (!j.is_array() || j.size() != n) {
    throw SpecError(where + ": expected " + std::to_string(n) + " rows");
  }
  std::vector<std::vector<std::string>> out;
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) {
      throw SpecError(where + ": row " + std::to_string(r) + " needs " + std::to_string(n) +
                      " entries");
    }
    std::vector<std::string> row;
    for (const auto& e : j[r]) row.push_back(expr_text(e, where));
    out.push_back(std::move(row));
  }
  return out;
}

ExprMatrix build_matrix(const std::vector<std::vector<std::string>>& text, const Chart& chart,
                        const std::string& where) {
  ExprMatrix m;
  for (const auto& row : text) {
    ExprVector r;
    for (const auto& e : row) r.push_back(parse_in(e, chart.vocabulary(), where));
    m.push_back(std::move(r));
  }
  return m;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw SpecError(where + ": expected a list");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(expr_text(e, where));
  return out;
}

std::filesystem::path relative_to(const std::filesystem::path& file, const std::string& ref) {
  std::filesystem::path p(ref);
  return p.is_absolute() ? p : file.parent_path() / p;
}

}  // namespace

GeometrySpec load_geometry(const std::filesystem::path& path) {
  const json j = read_json(path);
  const std::string where = path.filename().string();
  try {
    if (!j.contains("coords")) throw SpecError(where + ": missing 'coords'");
    std::vector<std::string> coords = j.at("coords").get<std::vector<std::string>>();
    std::map<std::string, Interval> domain;
    if (j.contains("sample_domain")) {
      for (const auto& [name, iv] : j.at("sample_domain").items()) {
        if (!iv.is_array() || iv.size() != 2) {
          throw SpecError(where + ": sample_domain." + name + " must be [lo, hi]");
        }
        domain[name] = Interval{iv[0].get<double>(), iv[1].get<double>()};
      }
    }
    Chart chart(coords, domain);
    const std::size_t n = chart.dim();
    if (!j.contains("metric")) throw SpecError(where + ": missing 'metric'");
    if (!j.contains("omega")) throw SpecError(where + ": missing 'omega'");
    auto metric_text = matrix_text(j.at("metric"), n, where + ": metric");
    auto omega_text = matrix_text(j.at("omega"), n, where + ": omega");
    MetricTensor g(chart, build_matrix(metric_text, chart, where + ": metric"));
    AlmostSymplectic w =
        AlmostSymplectic::from_classical(chart, build_matrix(omega_text, chart, where + ": omega"));
    std::string name = j.value("name", path.stem().string());

    ReferenceData ref;
    if (j.contains("reference")) {
      const json& r = j.at("reference");
      if (r.contains("christoffel")) {
        std::vector<ReferenceChristoffel> list;
        for (const auto& e : r.at("christoffel")) {
          if (!e.is_array() || e.size() != 4) {
            throw SpecError(where + ": reference christoffel entries are [upper, lower, lower, value]");
          }
          list.push_back({chart.index_of(e[0].get<std::string>()),
                          chart.index_of(e[1].get<std::string>()),
                          chart.index_of(e[2].get<std::string>()),
                          parse_in(expr_text(e[3], where), chart.vocabulary(), where)});
        }
        ref.christoffel = std::move(list);
      }
      if (r.contains("nabla_dot")) ref.nabla_dot = string_list(r.at("nabla_dot"), where);
      if (r.contains("sasaki")) ref.sasaki = r.at("sasaki").get<std::string>();
    }
    Geometry geom = make_geometry(name, std::move(chart), std::move(g), std::move(w));
    return GeometrySpec{path, std::move(name), j.value("notes", ""), std::move(metric_text),
                        std::move(omega_text), std::move(geom), std::move(ref)};
  } catch (const json::exception& e) {
    throw SpecError(where + ": " + e.what());
  }
}

MapSpec load_map(const std::filesystem::path& path) {
  const json j = read_json(path);
  const std::string where = path.filename().string();
  try {
    MapSpec out;
    out.path = path;
    out.name = j.value("name", path.stem().string());
    out.source_path = relative_to(path, j.at("source").get<std::string>());
    out.target_path = relative_to(path, j.at("target").get<std::string>());
    out.components_text = string_list(j.at("components"), where + ": components");
    if (j.contains("inverse")) out.inverse_text = string_list(j.at("inverse"), where + ": inverse");
    return out;
  } catch (const json::exception& e) {
    throw SpecError(where + ": " + e.what());
  }
}

SmoothMap build_map(const MapSpec& spec, const Chart& source, const Chart& target) {
  const std::string where = spec.path.filename().string();
  if (spec.components_text.size() != target.dim()) {
    throw SpecError(where + ": needs one component per target coordinate");
  }
  ExprVector comps;
  for (const auto& c : spec.components_text) {
    comps.push_back(parse_in(c, source.vocabulary(), where));
  }
  std::optional<ExprVector> inverse;
  if (spec.inverse_text) {
    inverse.emplace();
    for (const auto& c : *spec.inverse_text) {
      inverse->push_back(parse_in(c, target.vocabulary(), where + ": inverse"));
    }
  }
  return SmoothMap(source, target, std::move(comps), std::move(inverse));
}

FieldSpec load_field(const std::filesystem::path& path) {
  const json j = read_json(path);
  const std::string where = path.filename().string();
  try {
    FieldSpec out;
    const std::string kind = j.value("kind", "base");
    if (kind == "base") {
      out.kind = FieldSpec::Kind::Base;
    } else if (kind == "ptm") {
      out.kind = FieldSpec::Kind::Ptm;
    } else {
      throw SpecError(where + ": kind must be 'base' or 'ptm'");
    }
    out.components = string_list(j.at("components"), where);
    if (j.contains("bar")) out.bar = string_list(j.at("bar"), where);
    if (j.contains("parity")) {
      const std::string p = j.at("parity").get<std::string>();
      if (p != "even" && p != "odd") throw SpecError(where + ": parity must be even or odd");
      out.parity = p == "odd" ? Parity::Odd : Parity::Even;
    }
    return out;
  } catch (const json::exception& e) {
    throw SpecError(where + ": " + e.what());
  }
}

FieldSpec inline_field(const std::string& text) {
  FieldSpec out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.components.push_back(part);
  return out;
}

VectorFieldM build_base_field(const FieldSpec& spec, const Chart& chart) {
  if (spec.kind != FieldSpec::Kind::Base) throw SpecError("expected a base vector field");
  if (spec.components.size() != chart.dim()) {
    throw SpecError("vector field needs " + std::to_string(chart.dim()) + " components");
  }
  VectorFieldM out;
  for (const auto& c : spec.components) {
    out.push_back(simplify(parse_in(c, chart.vocabulary(), "vector field")));
  }
  return out;
}

VectorFieldPTM build_ptm_field(const FieldSpec& spec, const SuperDomain& domain) {
  const std::size_t n = domain.dim();
  if (spec.components.size() != n || (!spec.bar.empty() && spec.bar.size() != n)) {
    throw SpecError("vector field needs " + std::to_string(n) + " components per block");
  }
  std::vector<GradedExpr> base;
  std::vector<GradedExpr> bar;
  try {
    for (const auto& c : spec.components) base.push_back(parse_graded(c, domain.ptm()));
    for (std::size_t a = 0; a < n; ++a) {
      bar.push_back(spec.bar.empty() ? GradedExpr(domain.ptm())
                                     : parse_graded(spec.bar[a], domain.ptm()));
    }
  } catch (const ParseError& e) {
    throw SpecError(std::string("vector field: ") + e.what());
  }
  return VectorFieldPTM(domain, std::move(base), std::move(bar), spec.parity);
}

}  // namespace supersasaki::cli
