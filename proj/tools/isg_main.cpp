#include "isg/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace isg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitFormat = 2;

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

SynchronousGame load_valid_game(const std::string& path) {
  SynchronousGame g = game_from_json(load_json_file(path));
  const ValidationReport report = validate_game(g);
  if (!report.ok()) {
    throw InvariantError("invalid game '" + path + "':\n" + report.to_string());
  }
  return g;
}

Vertex parse_vertex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("vertex must be 'q,a', got '" + text + "'");
  try {
    return Vertex{std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ParseError("vertex must be 'q,a', got '" + text + "'");
  }
}

std::vector<int> parse_partition(const std::string& text) {
  std::vector<int> blocks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      blocks.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ParseError("partition must be comma-separated block indices");
    }
  }
  return blocks;
}

void emit(const std::string& out_path, const json& j) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    save_json_file(out_path, j);
  }
}

void run_validate(const std::string& game_path) {
  const SynchronousGame g = game_from_json(load_json_file(game_path));
  const ValidationReport report = validate_game(g);
  if (report.ok()) {
    std::cout << "valid\n";
    return;
  }
  std::cout << report.to_string();
  throw InvariantError("game has " + std::to_string(report.violations.size()) + " violation(s)");
}

void run_graph(const std::string& game_path, const std::string& format,
               const std::string& out_path) {
  const GameGraph x = build_game_graph(load_valid_game(game_path));
  std::string text;
  if (format == "dot") {
    text = export_dot(x);
  } else if (format == "edge-list" || format == "edge_list") {
    text = export_edge_list(x);
  } else if (format == "json") {
    text = graph_to_json(x).dump(2) + "\n";
  } else {
    throw ParseError("unknown format '" + format + "'");
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write '" + out_path + "'");
    out << text;
  }
}

void run_reduce(const std::string& game_path, const std::string& out_path, int t,
                const std::string& weighting) {
  const SynchronousGame g = load_valid_game(game_path);
  if (t == 0) t = g.nq();
  if (weighting != "uniform" && weighting != "diagonal") {
    throw ParseError("weighting must be 'diagonal' or 'uniform'");
  }
  const Weighting w = weighting == "uniform" ? Weighting::uniform : Weighting::diagonal;
  const IndependentSetGame game = make_indep_set_game(build_game_graph(g), t, w);
  emit(out_path, indep_game_to_json(game));
}

void run_classical_value(const std::string& game_path, double cap, bool synchronous) {
  const SynchronousGame g = load_valid_game(game_path);
  const ClassicalValueResult result = classical_value(g, cap, synchronous);
  if (result.exact) {
    std::cout << "value: " << format_rational(*result.exact) << "\n";
  } else {
    std::cout << "value: " << fmt(result.value) << "\n";
  }
  const auto print_assignment = [&](const char* name, const std::vector<int>& f) {
    std::cout << name << ":";
    for (int q = 0; q < g.nq(); ++q) std::cout << " " << g.answers[f[q]];
    std::cout << "\n";
  };
  print_assignment("witness_f", result.witness.f);
  print_assignment("witness_f_prime", result.witness.f_prime);
}

void run_eval(const std::string& game_path, const std::string& strategy_path, double eta) {
  const SynchronousGame g = load_valid_game(game_path);
  const SyncQuantumStrategy s = sync_strategy_from_json(load_json_file(strategy_path));
  std::cout << "value: " << fmt(eval_sync_strategy(g, s, Tolerance{eta})) << "\n";
}

void run_loss(const std::string& isg_path, const std::string& strategy_path,
              const std::string& source_path, double eta) {
  const IndepStrategy s = indep_strategy_from_json(load_json_file(strategy_path));
  LossBreakdown loss;
  if (!source_path.empty()) {
    loss = sync_loss_indep_predicate(load_valid_game(source_path), s, Tolerance{eta});
  } else {
    const IndependentSetGame game = indep_game_from_json(load_json_file(isg_path));
    loss = sync_loss_indep(game, s, Tolerance{eta});
  }
  std::cout << "loss: " << fmt(loss.loss) << "\n"
            << "same_vertex_term: " << fmt(loss.same_vertex_term) << "\n"
            << "adjacent_term: " << fmt(loss.adjacent_term) << "\n";
}

void run_round(const std::string& ops_path, const std::string& out_path,
               const std::string& report_path, bool projection, const std::string& sub_path,
               const std::string& partition, double eta) {
  const std::vector<cmat> ops = operators_from_json(load_json_file(ops_path));
  const Tolerance tol{eta};
  RoundingResult result;
  if (!sub_path.empty()) {
    const std::vector<cmat> p = operators_from_json(load_json_file(sub_path));
    result = round_subordinate(ops, p, parse_partition(partition), tol);
  } else if (projection) {
    result = round_projection_family(ops, tol);
  } else {
    result = round_positive_family(ops, tol);
  }
  emit(out_path, operators_to_json(result.pvm));
  const json report = rounding_report_to_json(result.report);
  if (!report_path.empty()) {
    save_json_file(report_path, report);
  } else {
    std::cout << report.dump(2) << "\n";
  }
  const auto violations = check_report(result.report);
  if (!violations.empty()) {
    throw InvariantError("rounding report violates its invariants: " + violations.front());
  }
}

void run_lift_forward(const std::string& game_path, const std::string& strategy_path,
                      const std::string& out_path, double eta) {
  const SynchronousGame g = load_valid_game(game_path);
  const SyncQuantumStrategy s = sync_strategy_from_json(load_json_file(strategy_path));
  const IndepStrategy lifted = forward_lift(g, s, Tolerance{eta});
  std::vector<std::string> index_questions;
  for (int q : question_order(g)) index_questions.push_back(g.questions[q]);
  emit(out_path, indep_strategy_to_json(lifted, build_game_graph(g), index_questions));
}

void run_lift_back(const std::string& strategy_path, const std::string& game_path,
                   const std::string& out_path, const std::string& report_path, bool approx,
                   double kappa_prime, double eta) {
  const SynchronousGame g = load_valid_game(game_path);
  const IndepStrategy s = indep_strategy_from_json(load_json_file(strategy_path));
  const Tolerance tol{eta};
  if (!approx) {
    const SyncQuantumStrategy back = backward_lift_perfect(s, g, tol);
    emit(out_path, sync_strategy_to_json(back));
    std::cout << "value: " << fmt(eval_sync_strategy(g, back, tol)) << "\n";
    return;
  }
  const ApproxLiftResult result = backward_lift_approx(s, g, tol, kappa_prime);
  emit(out_path, sync_strategy_to_json(result.strategy));
  json report = lift_report_to_json(result.report);
  report["note"] =
      "synchronous strategies only; for a C-diagonally dominant game, a general "
      "quantum value >= 1-eps implies a synchronous quantum value >= 1-O((eps/C)^(1/4))";
  if (!report_path.empty()) {
    save_json_file(report_path, report);
  } else {
    std::cout << report.dump(2) << "\n";
  }
  const auto violations = check_lift_report(result.report, g.nq());
  if (!violations.empty()) {
    throw InvariantError("lift report violates its invariants: " + violations.front());
  }
}

void run_verify(const std::string& isg_path, const std::string& exhaustive_game,
                const std::string& game_path, int i, int j, const std::string& u_text,
                const std::string& v_text) {
  if (!exhaustive_game.empty()) {
    const SynchronousGame g = load_valid_game(exhaustive_game);
    const IndependentSetGame game = indep_game_from_json(load_json_file(isg_path));
    if (game.t != g.nq()) {
      throw InvariantError("t = " + std::to_string(game.t) + " does not match |Q| = " +
                           std::to_string(g.nq()));
    }
    if (game.graph.size() != g.nq() * g.na()) {
      throw InvariantError("graph vertex count does not match Q x A");
    }
    long long checked = 0;
    for (int qi = 0; qi < game.t; ++qi) {
      for (int qj = 0; qj < game.t; ++qj) {
        for (int u = 0; u < game.graph.size(); ++u) {
          for (int v = 0; v < game.graph.size(); ++v) {
            const bool direct = game.predicate(qi, qj, u, v);
            const bool oracle = reduction_verifier(g, qi, qj, game.graph.vertices()[u],
                                                   game.graph.vertices()[v]);
            ++checked;
            if (direct != oracle) {
              throw InvariantError("mismatch at (i=" + std::to_string(qi + 1) +
                                   ", j=" + std::to_string(qj + 1) + ", u=" + std::to_string(u) +
                                   ", v=" + std::to_string(v) + ")");
            }
          }
        }
      }
    }
    std::cout << "equivalent on all tuples (" << checked << " checked)\n";
    return;
  }
  if (game_path.empty()) throw ParseError("single-tuple mode needs --game");
  const SynchronousGame g = load_valid_game(game_path);
  const bool accept =
      reduction_verifier(g, i - 1, j - 1, parse_vertex(u_text), parse_vertex(v_text));
  std::cout << (accept ? "accept" : "reject") << "\n";
}

void run_luck(int k, int n, const std::string& out_path, const std::string& strategy_path,
              const std::string& graph_path, const std::string& report_path) {
  const LuckParams params{k, n};
  const SynchronousGame g = make_luck_game(params);
  if (!out_path.empty()) save_json_file(out_path, game_to_json(g));
  if (!graph_path.empty()) save_json_file(graph_path, graph_to_json(build_game_graph(g)));
  if (!strategy_path.empty()) {
    std::vector<std::string> index_questions;
    for (int q : question_order(g)) index_questions.push_back(g.questions[q]);
    save_json_file(strategy_path, indep_strategy_to_json(sharpness_strategy(params),
                                                         build_game_graph(g), index_questions));
  }
  const json report = sharpness_report_to_json(sharpness_report(params));
  if (!report_path.empty()) {
    save_json_file(report_path, report);
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

void run_sharpness(int k, int n, const std::string& out_path) {
  const SharpnessReport report = sharpness_report({k, n});
  emit(out_path, sharpness_report_to_json(report));
  if (!report.bound_holds) throw InvariantError("sharpness bound failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synchronous games, game graphs, and independent set game reductions"};
  app.require_subcommand(1);

  std::string game_path, strategy_path, out_path, report_path, isg_path, source_path;
  std::string format = "dot", weighting = "diagonal", sub_path, partition, exhaustive_game;
  std::string u_text, v_text;
  double eta = 1e-9, cap = 1e8, kappa_prime = 10.0;
  int t = 0, k = 2, n = 1, qi = 1, qj = 1;
  bool synchronous = false, projection = false, approx = false;

  auto* validate_cmd = app.add_subcommand("validate", "check game invariants");
  validate_cmd->add_option("game", game_path, "game file")->required();

  auto* graph_cmd = app.add_subcommand("graph", "emit the game graph X(G)");
  graph_cmd->add_option("game", game_path)->required();
  graph_cmd->add_option("--format", format, "dot | edge-list | json");
  graph_cmd->add_option("--out", out_path);

  auto* reduce_cmd = app.add_subcommand("reduce", "build the independent set game for X(G)");
  reduce_cmd->add_option("game", game_path)->required();
  reduce_cmd->add_option("--out", out_path);
  reduce_cmd->add_option("--t", t, "independent set size (default |Q|)");
  reduce_cmd->add_option("--weighting", weighting, "diagonal | uniform");

  auto* cv_cmd = app.add_subcommand("classical-value", "brute-force deterministic optimum");
  cv_cmd->add_option("game", game_path)->required();
  cv_cmd->add_option("--cap", cap, "enumeration budget");
  cv_cmd->add_flag("--synchronous", synchronous, "restrict to witnesses with f' = f");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a synchronous quantum strategy");
  eval_cmd->add_option("game", game_path)->required();
  eval_cmd->add_option("strategy", strategy_path)->required();
  eval_cmd->add_option("--tol", eta);

  auto* loss_cmd = app.add_subcommand("loss", "losing probability on a diagonal game");
  loss_cmd->add_option("isgame", isg_path)->required();
  loss_cmd->add_option("strategy", strategy_path)->required();
  loss_cmd->add_option("--game", source_path, "source game for the predicate-query path");
  loss_cmd->add_option("--tol", eta);

  auto* round_cmd = app.add_subcommand("round", "round operators to a PVM");
  round_cmd->add_option("operators", game_path)->required();
  round_cmd->add_option("--out", out_path);
  round_cmd->add_option("--report", report_path);
  round_cmd->add_flag("--projection", projection, "validate inputs as projections");
  round_cmd->add_option("--subordinate", sub_path, "PVM file for subordinate rounding");
  round_cmd->add_option("--partition", partition, "block index per operator, e.g. 0,0,1");
  round_cmd->add_option("--tol", eta);

  auto* lf_cmd = app.add_subcommand("lift-forward", "strategy for G to strategy for (X(G), t)");
  lf_cmd->add_option("game", game_path)->required();
  lf_cmd->add_option("strategy", strategy_path)->required();
  lf_cmd->add_option("--out", out_path);
  lf_cmd->add_option("--tol", eta);

  auto* lb_cmd = app.add_subcommand("lift-back", "strategy for (X(G), t) to strategy for G");
  lb_cmd->add_option("strategy", strategy_path)->required();
  lb_cmd->add_option("game", game_path)->required();
  lb_cmd->add_option("--out", out_path);
  lb_cmd->add_option("--report", report_path);
  lb_cmd->add_flag("--approx", approx, "round per question instead of requiring perfection");
  lb_cmd->add_option("--kappa-prime", kappa_prime, "constant in the reported bound");
  lb_cmd->add_option("--tol", eta);

  auto* verify_cmd = app.add_subcommand("verify", "check the reduction verifier");
  verify_cmd->add_option("isgame", isg_path)->required();
  verify_cmd->add_option("--exhaustive", exhaustive_game,
                         "compare against this game on all tuples");
  verify_cmd->add_option("--game", game_path, "source game for single-tuple mode");
  verify_cmd->add_option("--i", qi, "first question index (1-based)");
  verify_cmd->add_option("--j", qj, "second question index (1-based)");
  verify_cmd->add_option("--u", u_text, "first vertex 'q,a'");
  verify_cmd->add_option("--v", v_text, "second vertex 'q,a'");

  auto* luck_cmd = app.add_subcommand("luck", "emit a (k,n)-luck game and its artifacts");
  luck_cmd->add_option("--k", k)->required();
  luck_cmd->add_option("--n", n)->required();
  luck_cmd->add_option("--out", out_path, "game file");
  luck_cmd->add_option("--strategy-out", strategy_path, "sharpness strategy file");
  luck_cmd->add_option("--graph-out", source_path, "game graph file");
  luck_cmd->add_option("--report", report_path, "sharpness report file");

  auto* sharp_cmd = app.add_subcommand("sharpness", "sharpness report for a (k,n)-luck game");
  sharp_cmd->add_option("--k", k)->required();
  sharp_cmd->add_option("--n", n)->required();
  sharp_cmd->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) run_validate(game_path);
    if (graph_cmd->parsed()) run_graph(game_path, format, out_path);
    if (reduce_cmd->parsed()) run_reduce(game_path, out_path, t, weighting);
    if (cv_cmd->parsed()) run_classical_value(game_path, cap, synchronous);
    if (eval_cmd->parsed()) run_eval(game_path, strategy_path, eta);
    if (loss_cmd->parsed()) run_loss(isg_path, strategy_path, source_path, eta);
    if (round_cmd->parsed()) {
      run_round(game_path, out_path, report_path, projection, sub_path, partition, eta);
    }
    if (lf_cmd->parsed()) run_lift_forward(game_path, strategy_path, out_path, eta);
    if (lb_cmd->parsed()) {
      run_lift_back(strategy_path, game_path, out_path, report_path, approx, kappa_prime, eta);
    }
    if (verify_cmd->parsed()) {
      run_verify(isg_path, exhaustive_game, game_path, qi, qj, u_text, v_text);
    }
    if (luck_cmd->parsed()) run_luck(k, n, out_path, strategy_path, source_path, report_path);
    if (sharp_cmd->parsed()) run_sharpness(k, n, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}
