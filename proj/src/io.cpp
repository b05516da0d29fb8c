#include "canonmat/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstddef>

namespace canonmat {

namespace {

using ojson = nlohmann::ordered_json;
using njson = nlohmann::json;

constexpr const char* kSchemaVersion = "1";

std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

njson parse_text(const std::string& text) {
  try {
    return njson::parse(text);
  } catch (const njson::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(ErrorCode::ParseError,
                "invalid JSON at line " + std::to_string(line) + ", column " +
                    std::to_string(col));
  }
}

double number_entry(const njson& j) {
  if (!j.is_number()) {
    throw Error(ErrorCode::NonFiniteEntry, "matrix entry component is not a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonFiniteEntry, "matrix entry component is not finite");
  }
  return v;
}

ComplexMatrix matrix_from_json(const njson& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries")) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix document must carry rows, cols and entries");
  }
  if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion) {
    throw Error(ErrorCode::ParseError, "unsupported schema_version");
  }
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) {
    throw Error(ErrorCode::DimensionMismatch, "rows/cols must be nonnegative integers");
  }
  const std::size_t rows = j["rows"].get<std::size_t>();
  const std::size_t cols = j["cols"].get<std::size_t>();
  const njson& entries = j["entries"];
  if (!entries.is_array() || entries.size() != rows) {
    throw Error(ErrorCode::DimensionMismatch, "entries must hold `rows` rows");
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const njson& row = entries[i];
    if (!row.is_array() || row.size() != cols) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i + 1) +
                                                    " must hold `cols` entries");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      const njson& entry = row[k];
      if (!entry.is_array() || entry.size() != 2) {
        throw Error(ErrorCode::DimensionMismatch,
                    "every entry must be a two-element [re, im] array");
      }
      m(i, k) = cplx(number_entry(entry[0]), number_entry(entry[1]));
    }
  }
  return m;
}

ojson matrix_to_json(const ComplexMatrix& m) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  ojson entries = ojson::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    ojson row = ojson::array();
    for (std::size_t k = 0; k < m.cols; ++k) {
      row.push_back({m(i, k).real(), m(i, k).imag()});
    }
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

ojson complex_list_to_json(const std::vector<cplx>& values) {
  ojson out = ojson::array();
  for (cplx v : values) out.push_back({v.real(), v.imag()});
  return out;
}

ComplexMatrix column_from_values(const std::vector<cplx>& values) {
  ComplexMatrix m(values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(i, 0) = values[i];
  return m;
}

ojson positions_to_json(const std::vector<std::pair<std::size_t, std::size_t>>& ps) {
  ojson out = ojson::array();
  for (const auto& [p, q] : ps) out.push_back({p + 1, q + 1});
  return out;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

ojson diagnostics_json(const ToleranceConfig& tol) {
  ojson d;
  d["tol_eig"] = tol.tol_eig;
  d["tol_zero"] = tol.tol_zero;
  d["tol_residual"] = tol.tol_residual;
  return d;
}

}  // namespace

ComplexMatrix parse_matrix(const std::string& text) {
  return matrix_from_json(parse_text(text));
}

std::string serialize_matrix(const ComplexMatrix& m) {
  return dump(matrix_to_json(m));
}

std::string serialize_unitary_result(const CanonicalResult& r,
                                     const ToleranceConfig& tol,
                                     double residual, double unitarity) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "unitary-canonical";
  ojson matrices;
  matrices["m_can"] = matrix_to_json(r.m_can);
  matrices["u_total"] = matrix_to_json(r.u_total);
  j["matrices"] = std::move(matrices);
  ojson partition;
  partition["sizes"] = r.partition.sizes;
  partition["eigenvalues"] = complex_list_to_json(r.partition.eigenvalues);
  j["partition"] = std::move(partition);
  ojson graph;
  graph["vertices"] = r.g.vertex_count();
  graph["edges"] = positions_to_json(r.g.edges());
  j["graph"] = std::move(graph);
  j["reduced_positions"] = positions_to_json(r.reduced_blocks);
  ojson diag = diagnostics_json(tol);
  diag["residual"] = residual;
  diag["unitarity"] = unitarity;
  j["diagnostics"] = std::move(diag);
  return dump(j);
}

std::string serialize_pair_result(const CanonicalPairResult& r,
                                  const ToleranceConfig& tol, double residual) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "pair-canonical";
  ojson matrices;
  matrices["lambda"] = matrix_to_json(column_from_values(r.lambda));
  matrices["b_can"] = matrix_to_json(r.b_can);
  matrices["s_total"] = matrix_to_json(r.s_total);
  j["matrices"] = std::move(matrices);
  ojson graph;
  graph["vertices"] = r.g.vertex_count();
  ojson edges = ojson::array();
  for (const auto& [p, q] : r.g.edges()) edges.push_back({p + 1, q + 1, "->"});
  graph["edges"] = std::move(edges);
  j["graph"] = std::move(graph);
  j["reduced_positions"] = positions_to_json(r.ones);
  ojson diag = diagnostics_json(tol);
  diag["residual"] = residual;
  diag["cond_estimate"] = r.cond_estimate;
  j["diagnostics"] = std::move(diag);
  return dump(j);
}

std::string serialize_similarity_decision(bool similar, const std::string& detail) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "similarity-decision";
  j["similar"] = similar;
  j["detail"] = detail;
  return dump(j);
}

std::string serialize_decomposition(const Decomposition& d) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "decomposition";
  ojson summands = ojson::array();
  for (const auto& s : d.summands) {
    ojson one;
    one["original_vertices"] = [&] {
      ojson arr = ojson::array();
      for (std::size_t v : s.original_vertices) arr.push_back(v + 1);
      return arr;
    }();
    ojson partition;
    partition["sizes"] = s.partition.sizes;
    partition["eigenvalues"] = complex_list_to_json(s.partition.eigenvalues);
    one["partition"] = std::move(partition);
    ojson graph;
    graph["vertices"] = s.tree.vertex_count();
    graph["edges"] = positions_to_json(s.tree.edges());
    one["graph"] = std::move(graph);
    one["matrix"] = matrix_to_json(s.matrix);
    summands.push_back(std::move(one));
  }
  j["summands"] = std::move(summands);
  ojson perm = ojson::array();
  for (std::size_t v : d.permutation) perm.push_back(v + 1);
  j["permutation"] = std::move(perm);
  return dump(j);
}

namespace {

std::vector<cplx> complex_list_from_json(const njson& j) {
  std::vector<cplx> out;
  for (const auto& e : j) {
    out.emplace_back(number_entry(e[0]), number_entry(e[1]));
  }
  return out;
}

}  // namespace

ResultKind stored_result_kind(const std::string& text) {
  const njson j = parse_text(text);
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorCode::ParseError, "result document lacks a kind field");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "unitary-canonical") return ResultKind::Unitary;
  if (kind == "pair-canonical") return ResultKind::Pair;
  throw Error(ErrorCode::ParseError, "unknown result kind: " + kind);
}

StoredUnitaryResult parse_unitary_result(const std::string& text) {
  const njson j = parse_text(text);
  if (!j.contains("matrices") || !j.contains("partition") || !j.contains("graph")) {
    throw Error(ErrorCode::ParseError, "result document lacks required sections");
  }
  StoredUnitaryResult out{matrix_from_json(j["matrices"]["m_can"]), {}, Forest(0)};
  out.partition.sizes = j["partition"]["sizes"].get<std::vector<std::size_t>>();
  out.partition.eigenvalues = complex_list_from_json(j["partition"]["eigenvalues"]);
  const std::size_t t = j["graph"]["vertices"].get<std::size_t>();
  out.g = Forest(t);
  for (const auto& e : j["graph"]["edges"]) {
    out.g.add_edge(e[0].get<std::size_t>() - 1, e[1].get<std::size_t>() - 1);
  }
  return out;
}

StoredPairResult parse_pair_result(const std::string& text) {
  const njson j = parse_text(text);
  if (!j.contains("matrices") || !j.contains("graph")) {
    throw Error(ErrorCode::ParseError, "result document lacks required sections");
  }
  const ComplexMatrix lambda_col = matrix_from_json(j["matrices"]["lambda"]);
  StoredPairResult out{lambda_col.data, matrix_from_json(j["matrices"]["b_can"]),
                       DiForest(0)};
  const std::size_t n = j["graph"]["vertices"].get<std::size_t>();
  out.g = DiForest(n);
  for (const auto& e : j["graph"]["edges"]) {
    out.g.add_edge(e[0].get<std::size_t>() - 1, e[1].get<std::size_t>() - 1);
  }
  return out;
}

}  // namespace canonmat
