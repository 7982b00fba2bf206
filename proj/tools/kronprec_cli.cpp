// Command-line front end: simulation, estimation, ROC/CV harness, diagnostics.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kron/evaluation.hpp"
#include "kron/flipflop.hpp"
#include "kron/io.hpp"
#include "kron/linalg.hpp"
#include "kron/models.hpp"
#include "kron/sampler.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

// ---- model specs ----------------------------------------------------------

struct ModelSpec {
  std::string kind;  // ar1 | star | random | identity
  double rho = 0.0;
  std::size_t blocks = 20, leaves = 8;
  std::size_t d = 0;
  double w_min = 0.0, w_max = 0.0;
};

std::vector<double> split_numbers(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(std::stod(s.substr(pos, comma - pos)));
    pos = comma + 1;
    if (comma == s.size()) break;
  }
  return out;
}

ModelSpec parse_model(const std::string& text) {
  ModelSpec spec;
  const std::size_t colon = text.find(':');
  spec.kind = text.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) args = split_numbers(text.substr(colon + 1));
  if (spec.kind == "identity") {
    if (!args.empty()) throw kron::Error("identity model takes no parameters");
  } else if (spec.kind == "ar1") {
    if (args.size() != 1) throw kron::Error("usage: ar1:<rho>");
    spec.rho = args[0];
  } else if (spec.kind == "star") {
    if (args.empty() || args.size() > 3)
      throw kron::Error("usage: star:<rho>[,<blocks>,<leaves>]");
    spec.rho = args[0];
    if (args.size() > 1) spec.blocks = static_cast<std::size_t>(args[1]);
    if (args.size() > 2) spec.leaves = static_cast<std::size_t>(args[2]);
  } else if (spec.kind == "random") {
    if (args.size() != 3) throw kron::Error("usage: random:<d>,<wmin>,<wmax>");
    spec.d = static_cast<std::size_t>(args[0]);
    spec.w_min = args[1];
    spec.w_max = args[2];
  } else {
    throw kron::Error("unknown model '" + spec.kind + "'");
  }
  return spec;
}

json model_json(const ModelSpec& s) {
  json j{{"kind", s.kind}};
  if (s.kind == "ar1") j["rho"] = s.rho;
  if (s.kind == "star") {
    j["rho"] = s.rho;
    j["blocks"] = s.blocks;
    j["leaves"] = s.leaves;
  }
  if (s.kind == "random") {
    j["d"] = s.d;
    j["w_min"] = s.w_min;
    j["w_max"] = s.w_max;
  }
  return j;
}

kron::GroundTruth build_model(const ModelSpec& spec, std::size_t dim,
                              std::uint64_t seed, std::uint64_t side_tag) {
  if (spec.kind == "ar1") return kron::ar1(dim, spec.rho);
  if (spec.kind == "star")
    return kron::star_block(dim, spec.blocks, spec.leaves, spec.rho);
  if (spec.kind == "random") {
    kron::Rng rng = kron::Rng::substream({seed}, side_tag, 0);
    return kron::random_concentration(dim, spec.d, spec.w_min, spec.w_max, rng);
  }
  kron::GroundTruth gt;
  gt.model_tag = "identity";
  gt.covariance = kron::SymMatrix::identity(dim);
  gt.precision = kron::SymMatrix::identity(dim);
  return gt;
}

// side tags keep the A-side and B-side model draws on disjoint RNG streams
constexpr std::uint64_t kSideA = 0x4d6f64656c41ULL;  // "ModelA"
constexpr std::uint64_t kSideB = 0x4d6f64656c42ULL;

// ---- shared plumbing ------------------------------------------------------

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw kron::IoError("cannot create " + dir + ": " + ec.message());
}

void write_run_config(const std::string& dir, json cfg) {
  cfg["schema_version"] = kron::kSchemaVersion;
  kron::write_json(dir + "/run_config.json", cfg);
}

kron::DataSet load_dataset(const std::string& input,
                           const std::vector<std::string>& files, bool header) {
  std::vector<kron::Matrix> ms;
  if (!input.empty()) {
    const json manifest = kron::read_json(input + "/manifest.json");
    const std::size_t n = manifest.at("n");
    for (std::size_t t = 0; t < n; ++t)
      ms.push_back(kron::read_matrix_csv(
          input + "/X_" + std::to_string(t + 1) + ".csv", header));
  } else {
    if (files.empty()) throw kron::Error("no input data given");
    for (const auto& f : files) ms.push_back(kron::read_matrix_csv(f, header));
  }
  return kron::DataSet::from_matrices(std::move(ms));
}

kron::SymMatrix star_normalize(const kron::SymMatrix& s) {
  double tr = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) tr += s(i, i);
  kron::SymMatrix out(s.dim());
  const double c = static_cast<double>(s.dim()) / tr;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, s(i, j) * c);
  return out;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string model_a, model_b, out;
  std::size_t f = 0, m = 0, n = 1;
  std::uint64_t seed = 0;
};

void cmd_simulate(const SimulateArgs& a) {
  const ModelSpec spec_a = parse_model(a.model_a);
  const ModelSpec spec_b = parse_model(a.model_b);
  const kron::GroundTruth ta = build_model(spec_a, a.m, a.seed, kSideA);
  const kron::GroundTruth tb = build_model(spec_b, a.f, a.seed, kSideB);
  const kron::DataSet data =
      kron::sample_matrix_normal(ta.covariance, tb.covariance, a.n, {a.seed});

  ensure_dir(a.out);
  for (std::size_t t = 0; t < data.n(); ++t)
    kron::write_matrix_csv(a.out + "/X_" + std::to_string(t + 1) + ".csv",
                           data.matrices[t]);
  kron::write_matrix_csv(a.out + "/A_cov.csv", ta.covariance);
  kron::write_matrix_csv(a.out + "/A_prec.csv", ta.precision);
  kron::write_edges_csv(a.out + "/A_edges.csv", ta.edges, ta.precision);
  kron::write_matrix_csv(a.out + "/B_cov.csv", tb.covariance);
  kron::write_matrix_csv(a.out + "/B_prec.csv", tb.precision);
  kron::write_edges_csv(a.out + "/B_edges.csv", tb.edges, tb.precision);

  kron::write_json(a.out + "/manifest.json",
                   {{"schema_version", kron::kSchemaVersion},
                    {"f", a.f},
                    {"m", a.m},
                    {"n", a.n},
                    {"seed", a.seed},
                    {"model_a", model_json(spec_a)},
                    {"model_b", model_json(spec_b)}});
  write_run_config(a.out, {{"command", "simulate"},
                           {"model_a", a.model_a},
                           {"model_b", a.model_b},
                           {"f", a.f},
                           {"m", a.m},
                           {"n", a.n},
                           {"seed", a.seed},
                           {"out", a.out}});
}

// ---- estimate -------------------------------------------------------------

struct EstimateArgs {
  std::string input, out, truth;
  std::vector<std::string> files;
  bool header = false;
  std::string method = "gemini";
  std::string solver = "glasso";
  std::string penalty_mode = "theory";
  double lambda_a = 0.0, lambda_b = 0.0;
  std::string grid;
  std::uint64_t seed = 0;
  std::size_t folds = 10;
};

kron::PenaltyConfig penalty_config(const EstimateArgs& a) {
  kron::PenaltyConfig cfg;
  if (a.penalty_mode == "explicit" || a.lambda_a > 0.0 || a.lambda_b > 0.0) {
    cfg.mode = kron::PenaltyMode::Explicit;
    cfg.lambda_A = a.lambda_a;
    cfg.lambda_B = a.lambda_b;
  } else if (a.penalty_mode == "cv") {
    cfg.mode = kron::PenaltyMode::Cv;
    cfg.grid = split_numbers(a.grid);
    cfg.cv_seed = a.seed;
    cfg.cv_folds = a.folds;
  } else if (a.penalty_mode == "theory") {
    cfg.mode = kron::PenaltyMode::Theory;
  } else {
    throw kron::Error("unknown penalty mode '" + a.penalty_mode + "'");
  }
  return cfg;
}

json single_side_eval(const kron::SymMatrix& est_prec,
                      const std::vector<kron::Edge>& est_edges,
                      const kron::SymMatrix& truth_prec,
                      const std::vector<kron::Edge>& truth_edges) {
  const kron::ConfusionCounts cc =
      kron::confusion(est_edges, truth_edges, est_prec.dim());
  return {{"fpr", cc.fpr()},
          {"fnr", cc.fnr()},
          {"mcc", cc.mcc()},
          {"rel_err_op", kron::relative_error(est_prec, truth_prec,
                                              kron::NormKind::Operator)},
          {"rel_err_frob", kron::relative_error(est_prec, truth_prec,
                                                kron::NormKind::Frobenius)}};
}

void cmd_estimate(const EstimateArgs& a) {
  const kron::DataSet data = load_dataset(a.input, a.files, a.header);
  const kron::PenaltyConfig cfg = penalty_config(a);
  ensure_dir(a.out);

  kron::SymMatrix a_star, b_star;  // *-normalized covariance estimates
  kron::PrecisionEstimate a_star_prec, b_star_prec;
  json fit;
  fit["schema_version"] = kron::kSchemaVersion;
  fit["method"] = a.method;

  if (a.method == "gemini") {
    const kron::SolverKind solver = a.solver == "clime"
                                        ? kron::SolverKind::Clime
                                        : kron::SolverKind::Glasso;
    if (a.solver != "glasso" && a.solver != "clime")
      throw kron::Error("unknown solver '" + a.solver + "'");
    const kron::GeminiFit g = kron::gemini_estimate(data, cfg, solver);
    const kron::StarNormalized star = kron::normalize_star(g);
    kron::write_matrix_csv(a.out + "/A_rho.csv", g.a_rho);
    kron::write_matrix_csv(a.out + "/B_rho.csv", g.b_rho);
    kron::write_matrix_csv(a.out + "/A_prec.csv", g.a_prec.entries);
    kron::write_matrix_csv(a.out + "/B_prec.csv", g.b_prec.entries);
    a_star = star.a_star;
    b_star = star.b_star;
    a_star_prec = star.a_star_prec;
    b_star_prec = star.b_star_prec;
    fit["solver"] = a.solver;
    fit["lambda_A"] = g.penalties.lambda_A;
    fit["lambda_B"] = g.penalties.lambda_B;
    fit["penalty_clamped"] = g.penalties.clamped;
    fit["clime_pd_repaired"] = g.clime_pd_repaired;
    fit["weights_w1"] = g.weights.w1;
    fit["weights_w2"] = g.weights.w2;
    fit["frob2_mean"] = g.weights.frob2_mean;
  } else if (a.method == "nipff") {
    if (a.solver == "clime")
      throw kron::Error("nipff uses the glasso solver only");
    const kron::NipffResult r = kron::nipff(data, cfg);
    const kron::WeightPair w = kron::weights(data);
    kron::write_matrix_csv(a.out + "/A_rho.csv",
                           kron::to_correlation(r.a_star).entries);
    kron::write_matrix_csv(a.out + "/B_rho.csv",
                           kron::to_correlation(r.b_star).entries);
    kron::write_matrix_csv(a.out + "/A_prec.csv", r.a_prec.entries);
    kron::write_matrix_csv(a.out + "/B_prec.csv", r.b_prec.entries);
    // nipff's a_star tracks the *-scale only approximately; renormalize
    a_star = star_normalize(r.a_star);
    a_star_prec = kron::PrecisionEstimate::from(kron::inverse_spd(a_star));
    b_star = r.b_star;
    b_star_prec = kron::PrecisionEstimate::from(kron::inverse_spd(b_star));
    fit["orientation"] = r.transposed ? "transposed" : "direct";
    fit["lambda_A0"] = r.penalties_used.lambda_A0;
    fit["lambda_B1"] = r.penalties_used.lambda_B1;
    fit["lambda_A1"] = r.penalties_used.lambda_A1;
    fit["penalty_clamped"] = r.penalties_used.clamped;
    fit["weights_w1"] = w.w1;
    fit["weights_w2"] = w.w2;
    fit["frob2_mean"] = w.frob2_mean;
  } else {
    throw kron::Error("unknown method '" + a.method + "'");
  }

  kron::write_matrix_csv(a.out + "/A_star_prec.csv", a_star_prec.entries);
  kron::write_matrix_csv(a.out + "/B_star_prec.csv", b_star_prec.entries);
  kron::write_edges_csv(a.out + "/A_edges.csv", a_star_prec.edges,
                        a_star_prec.entries);
  kron::write_edges_csv(a.out + "/B_edges.csv", b_star_prec.edges,
                        b_star_prec.entries);
  kron::write_json(a.out + "/fit.json", fit);

  if (!a.truth.empty()) {
    const kron::SymMatrix ta = kron::SymMatrix::from_matrix(
        kron::read_matrix_csv(a.truth + "/A_prec.csv"));
    const kron::SymMatrix tb = kron::SymMatrix::from_matrix(
        kron::read_matrix_csv(a.truth + "/B_prec.csv"));
    const kron::SymMatrix ca = kron::SymMatrix::from_matrix(
        kron::read_matrix_csv(a.truth + "/A_cov.csv"));
    double tr_a = 0.0;
    for (std::size_t i = 0; i < ca.dim(); ++i) tr_a += ca(i, i);
    const double s = tr_a / static_cast<double>(ca.dim());
    kron::SymMatrix omega_star(ta.dim()), pi_star(tb.dim());
    for (std::size_t i = 0; i < ta.dim(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        omega_star.set(i, j, ta(i, j) * s);
    for (std::size_t i = 0; i < tb.dim(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        pi_star.set(i, j, tb(i, j) / s);
    json eval{{"schema_version", kron::kSchemaVersion}};
    eval["A"] = single_side_eval(a_star_prec.entries, a_star_prec.edges,
                                 omega_star,
                                 kron::read_edges_csv(a.truth + "/A_edges.csv"));
    eval["B"] = single_side_eval(b_star_prec.entries, b_star_prec.edges,
                                 pi_star,
                                 kron::read_edges_csv(a.truth + "/B_edges.csv"));
    kron::write_json(a.out + "/eval.json", eval);
  }

  write_run_config(a.out, {{"command", "estimate"},
                           {"input", a.input},
                           {"files", a.files},
                           {"header", a.header},
                           {"method", a.method},
                           {"solver", a.solver},
                           {"penalty_mode", a.penalty_mode},
                           {"lambda_a", a.lambda_a},
                           {"lambda_b", a.lambda_b},
                           {"grid", a.grid},
                           {"seed", a.seed},
                           {"folds", a.folds},
                           {"truth", a.truth},
                           {"out", a.out}});
}

// ---- roc ------------------------------------------------------------------

struct RocArgs {
  std::string model_a, model_b, out, method = "gemini", grid;
  std::size_t f = 0, m = 0, n = 1, trials = 1, threads = 1;
  std::uint64_t seed = 0;
};

void write_report(const std::string& dir, const kron::EvalReport& rep) {
  kron::write_json(dir + "/" + rep.label + ".json", kron::to_json(rep));
  kron::write_text(dir + "/" + rep.label + ".csv", kron::report_csv(rep));
}

void cmd_roc(const RocArgs& a) {
  const ModelSpec spec_a = parse_model(a.model_a);
  const ModelSpec spec_b = parse_model(a.model_b);
  const kron::GroundTruth ta = build_model(spec_a, a.m, a.seed, kSideA);
  const kron::GroundTruth tb = build_model(spec_b, a.f, a.seed, kSideB);

  kron::RocConfig cfg;
  cfg.grid_a = cfg.grid_b = split_numbers(a.grid);
  cfg.trials = a.trials;
  cfg.threads = a.threads;
  cfg.method = a.method == "nipff" ? kron::Method::Nipff : kron::Method::Gemini;
  if (a.method != "gemini" && a.method != "nipff")
    throw kron::Error("unknown method '" + a.method + "'");
  cfg.rng = {a.seed};

  const kron::RocResult res = kron::roc_sweep(ta, tb, a.n, cfg);
  ensure_dir(a.out);
  for (const auto& rep : res.a_curves) write_report(a.out, rep);
  for (const auto& rep : res.b_curves) write_report(a.out, rep);
  if (cfg.method == kron::Method::Nipff) write_report(a.out, res.b_baseline);
  write_run_config(a.out, {{"command", "roc"},
                           {"model_a", a.model_a},
                           {"model_b", a.model_b},
                           {"f", a.f},
                           {"m", a.m},
                           {"n", a.n},
                           {"trials", a.trials},
                           {"threads", a.threads},
                           {"method", a.method},
                           {"grid", a.grid},
                           {"seed", a.seed},
                           {"out", a.out}});
}

// ---- cv -------------------------------------------------------------------

struct CvArgs {
  std::string input, out, grid, side = "a";
  std::vector<std::string> files;
  bool header = false;
  std::size_t folds = 10, trials = 10;
  std::uint64_t seed = 0;
};

void cmd_cv(const CvArgs& a) {
  const kron::DataSet data = load_dataset(a.input, a.files, a.header);
  const kron::CvSide side = a.side == "b" ? kron::CvSide::B : kron::CvSide::A;
  if (a.side != "a" && a.side != "b")
    throw kron::Error("side must be 'a' or 'b'");
  const kron::CvResult res = kron::cross_validate(
      data, split_numbers(a.grid), a.folds, a.trials, side, {a.seed});
  ensure_dir(a.out);
  kron::write_json(a.out + "/cv.json", kron::to_json(res));
  write_run_config(a.out, {{"command", "cv"},
                           {"input", a.input},
                           {"files", a.files},
                           {"header", a.header},
                           {"grid", a.grid},
                           {"folds", a.folds},
                           {"trials", a.trials},
                           {"side", a.side},
                           {"seed", a.seed},
                           {"out", a.out}});
  std::cout << "chosen penalty: " << kron::format_double(res.chosen) << "\n";
}

// ---- diagnose -------------------------------------------------------------

struct DiagnoseArgs {
  std::string input, model, out;
  std::size_t dim = 0;
  bool header = false;
  std::uint64_t seed = 0;
};

void cmd_diagnose(const DiagnoseArgs& a) {
  kron::SymMatrix s;
  if (!a.model.empty()) {
    if (a.dim == 0) throw kron::Error("--dim required with --model");
    s = build_model(parse_model(a.model), a.dim, a.seed, kSideA).covariance;
  } else if (!a.input.empty()) {
    s = kron::SymMatrix::from_matrix(kron::read_matrix_csv(a.input, a.header),
                                     1e-12);
  } else {
    throw kron::Error("diagnose needs --input or --model");
  }
  const kron::Diagnostics d = kron::diagnostics(s);
  const json j = kron::to_json(d);
  std::cout << j.dump(2) << "\n";
  if (!a.out.empty()) {
    ensure_dir(a.out);
    kron::write_json(a.out + "/diagnostics.json", j);
    write_run_config(a.out, {{"command", "diagnose"},
                             {"input", a.input},
                             {"model", a.model},
                             {"dim", a.dim},
                             {"header", a.header},
                             {"seed", a.seed},
                             {"out", a.out}});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kronecker-structured covariance and precision estimation"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "sample matrix-variate data");
  c_sim->add_option("--model-a", sim.model_a, "A-side model spec")->required();
  c_sim->add_option("--model-b", sim.model_b, "B-side model spec")->required();
  c_sim->add_option("--f", sim.f, "rows per replicate")->required();
  c_sim->add_option("--m", sim.m, "columns per replicate")->required();
  c_sim->add_option("--n", sim.n, "replicates");
  c_sim->add_option("--seed", sim.seed, "rng seed");
  c_sim->add_option("--out", sim.out, "output directory")->required();

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "fit the factor estimates");
  c_est->add_option("--input", est.input, "simulate output directory");
  c_est->add_option("files", est.files, "replicate CSV files");
  c_est->add_flag("--header", est.header, "skip the first CSV line");
  c_est->add_option("--method", est.method, "gemini | nipff");
  c_est->add_option("--solver", est.solver, "glasso | clime");
  c_est->add_option("--penalty-mode", est.penalty_mode, "theory | explicit | cv");
  c_est->add_option("--lambda-a", est.lambda_a, "explicit A-side penalty");
  c_est->add_option("--lambda-b", est.lambda_b, "explicit B-side penalty");
  c_est->add_option("--grid", est.grid, "comma-separated penalty grid (cv)");
  c_est->add_option("--folds", est.folds, "cv folds");
  c_est->add_option("--seed", est.seed, "cv fold seed");
  c_est->add_option("--truth", est.truth, "directory with ground-truth CSVs");
  c_est->add_option("--out", est.out, "output directory")->required();

  RocArgs roc;
  auto* c_roc = app.add_subcommand("roc", "penalty-sweep recovery curves");
  c_roc->add_option("--model-a", roc.model_a, "A-side model spec")->required();
  c_roc->add_option("--model-b", roc.model_b, "B-side model spec")->required();
  c_roc->add_option("--f", roc.f)->required();
  c_roc->add_option("--m", roc.m)->required();
  c_roc->add_option("--n", roc.n, "replicates");
  c_roc->add_option("--trials", roc.trials, "monte-carlo trials");
  c_roc->add_option("--threads", roc.threads, "worker threads");
  c_roc->add_option("--method", roc.method, "gemini | nipff");
  c_roc->add_option("--grid", roc.grid, "comma-separated penalty grid")->required();
  c_roc->add_option("--seed", roc.seed, "rng seed");
  c_roc->add_option("--out", roc.out, "output directory")->required();

  CvArgs cv;
  auto* c_cv = app.add_subcommand("cv", "cross-validate the penalty");
  c_cv->add_option("--input", cv.input, "simulate output directory");
  c_cv->add_option("files", cv.files, "replicate CSV files");
  c_cv->add_flag("--header", cv.header, "skip the first CSV line");
  c_cv->add_option("--grid", cv.grid, "comma-separated penalty grid")->required();
  c_cv->add_option("--folds", cv.folds, "folds");
  c_cv->add_option("--trials", cv.trials, "fold-assignment repetitions");
  c_cv->add_option("--side", cv.side, "a (rows) | b (columns)");
  c_cv->add_option("--seed", cv.seed, "fold-assignment seed");
  c_cv->add_option("--out", cv.out, "output directory")->required();

  DiagnoseArgs diag;
  auto* c_diag = app.add_subcommand("diagnose", "covariance diagnostics");
  c_diag->add_option("--input", diag.input, "covariance CSV");
  c_diag->add_option("--model", diag.model, "model spec instead of a file");
  c_diag->add_option("--dim", diag.dim, "model dimension");
  c_diag->add_flag("--header", diag.header, "skip the first CSV line");
  c_diag->add_option("--seed", diag.seed, "rng seed for random models");
  c_diag->add_option("--out", diag.out, "output directory (optional)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*c_sim) cmd_simulate(sim);
    if (*c_est) cmd_estimate(est);
    if (*c_roc) cmd_roc(roc);
    if (*c_cv) cmd_cv(cv);
    if (*c_diag) cmd_diagnose(diag);
  } catch (const kron::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const kron::NotPD& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const kron::NotPSD& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const kron::NotConverged& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const kron::SingularInput& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const kron::DegenerateColumn& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const kron::DegenerateRow& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const kron::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
