#pragma once

#include <string>
#include <vector>

#include "kron/evaluation.hpp"
#include "kron/matrix.hpp"

#include "json.hpp"

namespace kron {

inline constexpr int kSchemaVersion = 1;

/// Dense CSV: one row per line, comma-separated decimal floats. `header`
/// skips the first line on read. Values are written with 17 significant
/// digits so a write/read round trip is exact.
Matrix read_matrix_csv(const std::string& path, bool header = false);
void write_matrix_csv(const std::string& path, const Matrix& m);
void write_matrix_csv(const std::string& path, const SymMatrix& m);

/// Edge list CSV `i,j,weight`, 1-indexed, one edge per line with a header.
void write_edges_csv(const std::string& path, const std::vector<Edge>& edges,
                     const SymMatrix& weights);
std::vector<Edge> read_edges_csv(const std::string& path);

std::string format_double(double v);  // shortest 17-significant-digit form

nlohmann::json to_json(const EvalReport& rep);
EvalReport report_from_json(const nlohmann::json& j);
/// Flat CSV, one row per trial x penalty.
std::string report_csv(const EvalReport& rep);

nlohmann::json to_json(const Diagnostics& d);
nlohmann::json to_json(const CvResult& r);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

}  // namespace kron
