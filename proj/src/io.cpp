#include "kron/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace kron {

namespace {

std::vector<double> parse_row(const std::string& line, const std::string& path) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) comma = line.size();
    const std::string cell = line.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      while (used < cell.size() &&
             (cell[used] == ' ' || cell[used] == '\r' || cell[used] == '\t'))
        ++used;
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw IoError(path + ": bad numeric cell '" + cell + "'");
    }
    pos = comma + 1;
    if (comma == line.size()) break;
  }
  return out;
}

}  // namespace

Matrix read_matrix_csv(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && header) {
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    rows.push_back(parse_row(line, path));
    if (rows.size() > 1 && rows.back().size() != rows.front().size())
      throw IoError(path + ": ragged rows");
  }
  if (rows.empty()) throw IoError(path + ": empty matrix");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_matrix_csv(const std::string& path, const SymMatrix& m) {
  write_matrix_csv(path, m.matrix());
}

void write_edges_csv(const std::string& path, const std::vector<Edge>& edges,
                     const SymMatrix& weights) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "i,j,weight\n";
  for (const Edge& e : edges) {
    if (e.first >= e.second || e.second >= weights.dim())
      throw InvalidEdge("write_edges_csv: malformed edge");
    out << (e.first + 1) << ',' << (e.second + 1) << ','
        << format_double(weights(e.first, e.second)) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<Edge> read_edges_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Edge> edges;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      first = false;  // header
      continue;
    }
    if (line.empty()) continue;
    const std::vector<double> cells = parse_row(line, path);
    if (cells.size() != 3) throw IoError(path + ": expected i,j,weight rows");
    const auto i = static_cast<std::size_t>(cells[0]);
    const auto j = static_cast<std::size_t>(cells[1]);
    if (i < 1 || j < 1 || i >= j) throw InvalidEdge(path + ": bad edge indices");
    edges.emplace_back(i - 1, j - 1);
  }
  return edges;
}

namespace {

nlohmann::json point_json(const CurvePoint& p) {
  return {{"penalty", p.penalty},       {"fpr", p.fpr},
          {"fnr", p.fnr},               {"mcc", p.mcc},
          {"rel_err_op", p.rel_err_op}, {"rel_err_frob", p.rel_err_frob}};
}

CurvePoint point_from_json(const nlohmann::json& j) {
  CurvePoint p;
  p.penalty = j.at("penalty");
  p.fpr = j.at("fpr");
  p.fnr = j.at("fnr");
  p.mcc = j.at("mcc");
  p.rel_err_op = j.at("rel_err_op");
  p.rel_err_frob = j.at("rel_err_frob");
  return p;
}

}  // namespace

nlohmann::json to_json(const EvalReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows) rows.push_back(point_json(r));
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : rep.trial_rows) {
    nlohmann::json p = point_json(t.point);
    p["trial"] = t.trial;
    trials.push_back(std::move(p));
  }
  return {{"schema_version", kSchemaVersion},
          {"label", rep.label},
          {"rows", std::move(rows)},
          {"trial_rows", std::move(trials)},
          {"trials_used", rep.trials_used},
          {"trials_failed", rep.trials_failed},
          {"failures", rep.failures}};
}

EvalReport report_from_json(const nlohmann::json& j) {
  if (j.at("schema_version").get<int>() != kSchemaVersion)
    throw IoError("report: unsupported schema_version");
  EvalReport rep;
  rep.label = j.at("label");
  for (const auto& r : j.at("rows")) rep.rows.push_back(point_from_json(r));
  for (const auto& t : j.at("trial_rows")) {
    TrialPoint tp;
    tp.trial = t.at("trial");
    tp.point = point_from_json(t);
    rep.trial_rows.push_back(tp);
  }
  rep.trials_used = j.at("trials_used");
  rep.trials_failed = j.at("trials_failed");
  rep.failures = j.at("failures").get<std::vector<std::string>>();
  return rep;
}

std::string report_csv(const EvalReport& rep) {
  std::ostringstream out;
  out << "trial,penalty,fpr,fnr,mcc,rel_err_op,rel_err_frob\n";
  for (const auto& t : rep.trial_rows) {
    const CurvePoint& p = t.point;
    out << t.trial << ',' << format_double(p.penalty) << ','
        << format_double(p.fpr) << ',' << format_double(p.fnr) << ','
        << format_double(p.mcc) << ',' << format_double(p.rel_err_op) << ','
        << format_double(p.rel_err_frob) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const Diagnostics& d) {
  return {{"schema_version", kSchemaVersion},
          {"total_correlation", d.total_correlation},
          {"frob_over_trace", d.frob_over_trace},
          {"l1_off", d.l1_off},
          {"l1_full", d.l1_full},
          {"stable_rank", d.stable_rank},
          {"condition_number", d.condition_number}};
}

nlohmann::json to_json(const CvResult& r) {
  return {{"schema_version", kSchemaVersion},
          {"chosen", r.chosen},
          {"grid", r.grid},
          {"scores", r.scores},
          {"folds_used", r.folds_used},
          {"folds_skipped", r.folds_skipped},
          {"warnings", r.warnings}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const std::string& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace kron
