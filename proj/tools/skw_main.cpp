// Command-line front end: operator k-norms, blockpositivity thresholds,
// witness classification, subspace entanglement reports and figure data.
//
// Exit codes: 0 ok, 2 input error, 3 non-convergence under --strict,
// 4 degenerate family.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "skw/families.hpp"
#include "skw/io.hpp"
#include "skw/knorm.hpp"
#include "skw/repro.hpp"
#include "skw/witness.hpp"

namespace {

using namespace skw;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitDegenerate = 4;

struct NotConvergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputFlags {
  std::string file;
  std::string family;
  int m = 0;  // 0 = unset; falls back to the other factor, else 3
  int n = 0;
  std::optional<double> lambda;
  std::optional<int> point_k;  // omega / tomiyama parameter
  std::optional<int> point_i;  // omega line index
  std::string basis_file;
};

struct SolverFlags {
  int restarts = 64;
  int max_iters = 500;
  double rel_tol = 1e-12;
  std::uint64_t seed = 0;
  bool strict = false;

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.rel_tol = rel_tol;
    cfg.seed = seed;
    return cfg;
  }
};

void add_input_flags(CLI::App* cmd, InputFlags& in) {
  cmd->add_option("--file", in.file, "JSON matrix file");
  cmd->add_option("--family", in.family, "named family (see README)");
  cmd->add_option("--m", in.m, "first factor dimension (defaults to --n, else 3)");
  cmd->add_option("--n", in.n, "second factor dimension (defaults to --m, else 3)");
  cmd->add_option("--lambda", [&in](const std::vector<std::string>& v) {
    in.lambda = std::stod(v.at(0));
    return true;
  }, "family parameter lambda");
  cmd->add_option("--i", [&in](const std::vector<std::string>& v) {
    in.point_i = std::stoi(v.at(0));
    return true;
  }, "omega line index (2 or 3)");
}

void add_solver_flags(CLI::App* cmd, SolverFlags& s) {
  cmd->add_option("--restarts", s.restarts, "seesaw restarts (default 64)");
  cmd->add_option("--max-iters", s.max_iters, "seesaw iteration cap (default 500)");
  cmd->add_option("--tol", s.rel_tol, "relative convergence tolerance (default 1e-12)");
  cmd->add_option("--seed", s.seed, "random seed (default 0)");
  cmd->add_flag("--strict", s.strict, "exit 3 when the optimizer did not converge");
}

HermitianOp load_operator(const InputFlags& in) {
  if (!in.file.empty() && !in.family.empty())
    throw std::invalid_argument("give either --file or --family, not both");
  if (!in.file.empty()) return io::matrix_from_json(io::load_json_file(in.file));
  if (in.family.empty()) throw std::invalid_argument("missing input: --file or --family");

  const int m = in.m > 0 ? in.m : (in.n > 0 ? in.n : 3);
  const int n = in.n > 0 ? in.n : m;
  if (in.family == "tomiyama") {
    if (!in.point_k) throw std::invalid_argument("tomiyama requires --k");
    return tomiyama_point(n, *in.point_k);
  }
  auto fam = family_from_name(in.family);
  if (!fam) throw std::invalid_argument("unknown family: " + in.family);

  FamilySpec spec{*fam, BipartiteDim(m, n), in.lambda, in.point_k, in.point_i, {}};
  if (*fam == Family::projection) {
    if (in.basis_file.empty())
      throw std::invalid_argument("projection family requires --basis");
    spec.basis = io::subspace_from_json(io::load_json_file(in.basis_file));
  }
  // The biqutrit catalog entries fix the dimensions themselves.
  switch (*fam) {
    case Family::rho1:
    case Family::rho2:
    case Family::rho3:
    case Family::rho1_lambda:
    case Family::rho2_lambda:
    case Family::sigma1:
    case Family::sigma2:
    case Family::omega:
      spec.dim = BipartiteDim(3, 3);
      break;
    default:
      break;
  }
  return build(spec);
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty())
    std::cout << text;
  else
    io::write_file_atomic(output_path, text);
}

// --- knorm -----------------------------------------------------------------

int run_knorm(const InputFlags& in, const SolverFlags& solver, int k, bool use_min,
              const std::string& output_path) {
  const HermitianOp op = load_operator(in);
  const KNormResult result =
      use_min ? min_knorm(op, k, solver.config()) : knorm(State(op), k, solver.config());
  if (solver.strict && !result.converged)
    throw NotConvergedError("optimizer did not converge within --max-iters");
  io::json j = io::knorm_result_to_json(result);
  j["norm"] = use_min ? "min" : "max";
  emit(j.dump(2) + "\n", output_path);
  return kExitOk;
}

// --- beta ------------------------------------------------------------------

int run_beta(const InputFlags& in, const SolverFlags& solver, const std::string& format,
             const std::string& output_path) {
  const State rho(load_operator(in));
  const BetaThresholds beta = beta_thresholds(rho, solver.config());
  if (format == "csv") {
    std::string csv = "k,beta_minus,beta_plus\n";
    for (std::size_t k = 1; k <= beta.beta_minus.size(); ++k) {
      char buf[80];
      std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", k, beta.beta_minus[k - 1],
                    beta.beta_plus[k - 1]);
      csv += buf;
    }
    emit(csv, output_path);
  } else {
    emit(io::beta_thresholds_to_json(beta).dump(2) + "\n", output_path);
  }
  return kExitOk;
}

// --- classify ----------------------------------------------------------------

int run_classify(const InputFlags& in, const SolverFlags& solver,
                 const std::string& output_path) {
  const HermitianOp op = load_operator(in);
  const WitnessClass w = classify_witness(op, solver.config());

  io::json j{{"classification", io::witness_class_to_json(w)}};
  std::string description;
  if (w.is_state) {
    description = "state";
  } else if (w.max_bp_level == 0) {
    description = "not blockpositive at any level";
  } else {
    description = "Schmidt number " + std::to_string(*w.witnessed_schmidt_number) + " witness";
  }

  const double lambda_min = hermitian_spectrum(op).first(0);
  if (lambda_min < -tol::psd) {
    const FaceLocation face = face_outside(op);
    j["face"] = io::face_location_to_json(face);
    description += "; outside the face of a rank-" +
                   std::to_string(face.range_subspace.dimension()) + " subspace";
  } else {
    description += " (inside the state body)";
  }
  j["description"] = description;
  emit(j.dump(2) + "\n", output_path);
  return kExitOk;
}

// --- subspace ----------------------------------------------------------------

Subspace load_subspace(const std::string& basis_file, const std::string& xi_list,
                       bool perp) {
  std::optional<Subspace> e;
  if (!basis_file.empty()) {
    e = io::subspace_from_json(io::load_json_file(basis_file));
  } else if (!xi_list.empty()) {
    Matrix span(9, 0);
    std::stringstream ss(xi_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      span.conservativeResize(9, span.cols() + 1);
      span.col(span.cols() - 1) = catalog_vector(std::stoi(item)).amplitudes();
    }
    if (span.cols() == 0) throw std::invalid_argument("--xi needs at least one index");
    e = Subspace::from_span(BipartiteDim(3, 3), span);
  } else {
    throw std::invalid_argument("missing input: --basis or --xi");
  }
  return perp ? e->complement() : *e;
}

int run_subspace(const std::string& basis_file, const std::string& xi_list, bool perp,
                 const SolverFlags& solver, const std::string& output_path) {
  const Subspace e = load_subspace(basis_file, xi_list, perp);
  io::json j{{"m", e.ambient().m},
             {"n", e.ambient().n},
             {"dim", e.dimension()},
             {"entanglement_order", entanglement_order(e, solver.config())}};
  if (e.dimension() < e.ambient().mn())
    j["witnesses_outside_face"] =
        io::face_witness_report_to_json(witnesses_outside_face(e, solver.config()));
  emit(j.dump(2) + "\n", output_path);
  return kExitOk;
}

// --- repro -------------------------------------------------------------------

int run_repro(int fig, const std::string& plane_name, int rays, int points,
              const std::string& out_dir, const SolverFlags& solver,
              const std::string& format) {
  const SolverConfig cfg = solver.config();
  const std::string prefix = out_dir.empty() ? "." : out_dir;
  std::vector<std::string> written;

  if (fig == 3 || fig == 4) {
    const int family = fig == 3 ? 1 : 2;
    std::vector<CurvePoint> all;
    for (int k = 1; k <= 3; ++k) {
      const auto pts = sweep_family(family, k, uniform_grid(points), cfg);
      all.insert(all.end(), pts.begin(), pts.end());
    }
    const std::string path = prefix + "/fig" + std::to_string(fig) + ".csv";
    io::write_file_atomic(path, sweep_csv(all));
    written.push_back(path);
  } else if (fig == 2) {
    const Plane plane = plane_name == "H2" ? Plane::H2 : Plane::H1;
    std::vector<std::vector<PlaneCoord>> boundaries;
    std::vector<PlaneCoord> flat;
    for (int k = 1; k <= 2; ++k) {
      boundaries.push_back(bp_boundary_on_plane(plane, k, rays, cfg));
      flat.insert(flat.end(), boundaries.back().begin(), boundaries.back().end());
    }
    const std::string tag = plane == Plane::H1 ? "H1" : "H2";
    const std::string csv_path = prefix + "/fig2_" + tag + ".csv";
    const std::string svg_path = prefix + "/fig2_" + tag + ".svg";
    io::write_file_atomic(csv_path, plane_csv(flat));
    io::write_file_atomic(svg_path, plane_svg(plane, boundaries));
    written.push_back(csv_path);
    written.push_back(svg_path);
  } else {
    throw std::invalid_argument("--fig must be 2, 3 or 4");
  }

  if (format == "json") {
    std::cout << io::json{{"written", written}}.dump(2) << "\n";
  } else {
    for (const std::string& path : written) std::cout << "wrote " << path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator k-norms and Schmidt number witness geometry"};
  app.require_subcommand(1);

  InputFlags in;
  SolverFlags solver;
  std::string output_path;
  std::string format = "json";

  int k_level = 1;
  bool use_min = false;
  CLI::App* knorm_cmd = app.add_subcommand("knorm", "operator k-norm of a state");
  add_input_flags(knorm_cmd, in);
  add_solver_flags(knorm_cmd, solver);
  knorm_cmd->add_option("--k", k_level, "norm level k")->required();
  knorm_cmd->add_flag("--min", use_min, "compute the minimum variant |X|_S(k)");
  knorm_cmd->add_option("--output", output_path, "write result to file");
  knorm_cmd->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));

  CLI::App* beta_cmd = app.add_subcommand("beta", "blockpositivity thresholds of X_lambda");
  add_input_flags(beta_cmd, in);
  add_solver_flags(beta_cmd, solver);
  beta_cmd->add_option("--output", output_path, "write result to file");
  beta_cmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "witness class and face location of a matrix");
  add_input_flags(classify_cmd, in);
  add_solver_flags(classify_cmd, solver);
  classify_cmd->add_option("--k", [&in](const std::vector<std::string>& v) {
    in.point_k = std::stoi(v.at(0));
    return true;
  }, "family parameter k (omega, tomiyama)");
  classify_cmd->add_option("--basis", in.basis_file, "subspace file (projection family)");
  classify_cmd->add_option("--output", output_path, "write result to file");
  classify_cmd->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));

  std::string basis_file, xi_list;
  bool perp = false;
  CLI::App* subspace_cmd =
      app.add_subcommand("subspace", "entanglement order and witness report");
  add_solver_flags(subspace_cmd, solver);
  subspace_cmd->add_option("--basis", basis_file, "JSON subspace file");
  subspace_cmd->add_option("--xi", xi_list, "span of catalog vectors, e.g. 3 or 1,3");
  subspace_cmd->add_flag("--perp", perp, "use the orthogonal complement");
  subspace_cmd->add_option("--output", output_path, "write result to file");
  subspace_cmd->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));

  int fig = 3, rays = 64, points = 21;
  std::string plane_name = "H1", out_dir = ".";
  CLI::App* repro_cmd = app.add_subcommand("repro", "emit figure reproduction data");
  add_solver_flags(repro_cmd, solver);
  repro_cmd->add_option("--fig", fig, "figure number: 2, 3 or 4")->required();
  repro_cmd->add_option("--plane", plane_name, "H1 or H2 (fig 2)");
  repro_cmd->add_option("--rays", rays, "rays for fig 2 (default 64)");
  repro_cmd->add_option("--points", points, "grid points for figs 3/4 (default 21)");
  repro_cmd->add_option("--out", out_dir, "output directory (default .)");
  repro_cmd->add_option("--format", format, "stdout summary format: json or text")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (knorm_cmd->parsed()) {
      in.point_k = in.point_k ? in.point_k : std::optional<int>(k_level);
      return run_knorm(in, solver, k_level, use_min, output_path);
    }
    if (beta_cmd->parsed()) return run_beta(in, solver, format, output_path);
    if (classify_cmd->parsed()) return run_classify(in, solver, output_path);
    if (subspace_cmd->parsed())
      return run_subspace(basis_file, xi_list, perp, solver, output_path);
    if (repro_cmd->parsed())
      return run_repro(fig, plane_name, rays, points, out_dir, solver, format);
  } catch (const DegenerateFamilyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const NotConvergedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotConverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
