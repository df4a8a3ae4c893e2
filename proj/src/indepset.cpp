#include "isg/indepset.hpp"

#include <algorithm>
#include <stdexcept>

namespace isg {

bool IndependentSetGame::predicate(int i, int j, int u, int v) const {
  if (i < 0 || i >= t || j < 0 || j >= t) throw std::out_of_range("question index out of range");
  if (u < 0 || u >= graph.size() || v < 0 || v >= graph.size()) {
    throw std::out_of_range("vertex index out of range");
  }
  if (i == j) return u == v;
  return u != v && !graph.adjacent(u, v);
}

Distribution IndependentSetGame::distribution() const {
  return weighting == Weighting::uniform ? Distribution::uniform(t) : Distribution::diag_weighted(t);
}

IndependentSetGame make_indep_set_game(GameGraph x, int t, Weighting w) {
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  if (x.size() < 1) throw std::invalid_argument("graph must have at least one vertex");
  return IndependentSetGame{std::move(x), t, w};
}

bool reduction_verifier(const SynchronousGame& g, int i, int j, const Vertex& u, const Vertex& v) {
  const int t = g.nq();
  if (i < 0 || i >= t || j < 0 || j >= t) throw std::out_of_range("question index out of range");
  for (const Vertex& w : {u, v}) {
    if (w.q < 0 || w.q >= g.nq() || w.a < 0 || w.a >= g.na()) {
      throw std::out_of_range("vertex label out of range");
    }
  }
  if (i == j) return u.q == v.q && u.a == v.a;
  if (u.q == v.q) return false;
  return g.win(u.q, v.q, u.a, v.a) && g.win(v.q, u.q, v.a, u.a);
}

ValidationReport validate_indep_strategy(const IndependentSetGame& game, const IndepStrategy& s,
                                         const Tolerance& tol) {
  ValidationReport report;
  if (s.dim < 1) report.violations.push_back("strategy dimension must be >= 1");
  if (static_cast<int>(s.pvms.size()) != game.t) {
    report.violations.push_back("strategy has " + std::to_string(s.pvms.size()) +
                                " families, game has t = " + std::to_string(game.t));
    return report;
  }
  for (int i = 0; i < game.t; ++i) {
    if (static_cast<int>(s.pvms[i].size()) != game.graph.size()) {
      report.violations.push_back("family " + std::to_string(i) + " has " +
                                  std::to_string(s.pvms[i].size()) + " elements, expected " +
                                  std::to_string(game.graph.size()));
      continue;
    }
    bool dims_ok = true;
    for (const cmat& p : s.pvms[i]) {
      if (p.rows() != s.dim || p.cols() != s.dim) {
        report.violations.push_back("family " + std::to_string(i) + ": element dimension mismatch");
        dims_ok = false;
        break;
      }
    }
    if (dims_ok && !is_pvm(s.pvms[i], tol)) {
      report.violations.push_back("family " + std::to_string(i) + " is not a PVM");
    }
  }
  return report;
}

namespace {

// Accumulates the two sums of the pi_d losing-probability formula; the caller
// supplies the adjacency test for ordered vertex pairs. A single division by
// 2t^2 at the end keeps deterministic (d=1) evaluations exact in doubles.
template <typename AdjFn>
LossBreakdown loss_with_condition(int t, int nv, const IndepStrategy& s, AdjFn adjacent) {
  double same_sum = 0;
  double adj_sum = 0;
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < t; ++j) {
      if (i == j) continue;
      for (int u = 0; u < nv; ++u) {
        same_sum += normalized_trace_product(s.pvms[i][u], s.pvms[j][u]).real();
        for (int v = 0; v < nv; ++v) {
          if (u == v) continue;
          if (adjacent(u, v)) {
            adj_sum += normalized_trace_product(s.pvms[i][u], s.pvms[j][v]).real();
          }
        }
      }
    }
  }
  const double denom = 2.0 * t * t;
  LossBreakdown out;
  out.same_vertex_term = same_sum / denom;
  out.adjacent_term = adj_sum / denom;
  out.loss = (same_sum + adj_sum) / denom;
  return out;
}

}  // namespace

LossBreakdown sync_loss_indep(const IndependentSetGame& game, const IndepStrategy& s,
                              const Tolerance& tol) {
  if (game.weighting != Weighting::diagonal) {
    throw std::invalid_argument(
        "losing-probability formula applies to the diagonally weighted game; "
        "evaluate uniform weighting through the games module");
  }
  const ValidationReport report = validate_indep_strategy(game, s, tol);
  if (!report.ok()) throw std::invalid_argument("invalid strategy: " + report.to_string());
  return loss_with_condition(game.t, game.graph.size(), s,
                             [&](int u, int v) { return game.graph.adjacent(u, v); });
}

LossBreakdown sync_loss_indep_predicate(const SynchronousGame& g, const IndepStrategy& s,
                                        const Tolerance& tol) {
  const int t = g.nq();
  const int na = g.na();
  const int nv = t * na;
  if (static_cast<int>(s.pvms.size()) != t) {
    throw std::invalid_argument("strategy must have t = |Q| families");
  }
  for (const auto& family : s.pvms) {
    if (static_cast<int>(family.size()) != nv) {
      throw std::invalid_argument("strategy families must range over Q x A");
    }
    if (!is_pvm(family, tol)) throw std::invalid_argument("strategy family is not a PVM");
  }
  // Vertex index v = q*na + a, matching the lexicographic graph order.
  return loss_with_condition(t, nv, s, [&](int u, int v) {
    const int q = u / na, a = u % na;
    const int qp = v / na, ap = v % na;
    return !g.win(q, qp, a, ap) || !g.win(qp, q, ap, a);
  });
}

Rat sync_loss_indep_exact_d1(const IndependentSetGame& game, const std::vector<int>& answered) {
  if (static_cast<int>(answered.size()) != game.t) {
    throw std::invalid_argument("need one answered vertex per question index");
  }
  if (game.weighting != Weighting::diagonal) {
    throw std::invalid_argument("losing-probability formula applies to the diagonal weighting");
  }
  long long same = 0;
  long long adj = 0;
  for (int i = 0; i < game.t; ++i) {
    for (int j = 0; j < game.t; ++j) {
      if (i == j) continue;
      if (answered[i] == answered[j]) {
        ++same;
      } else if (game.graph.adjacent(answered[i], answered[j])) {
        ++adj;
      }
    }
  }
  return Rat(same + adj, 2LL * game.t * game.t);
}

TrivialStrategyResult trivial_fixed_set_strategy(const IndependentSetGame& game) {
  const int n = game.graph.size();
  std::vector<bool> removed(n, false);
  std::vector<int> chosen;
  // Greedy independent set: repeatedly take the minimum-degree vertex in the
  // residual graph, ties by vertex order.
  while (static_cast<int>(chosen.size()) < game.t) {
    int best = -1;
    int best_deg = 0;
    for (int v = 0; v < n; ++v) {
      if (removed[v]) continue;
      int deg = 0;
      for (int u = 0; u < n; ++u) {
        if (!removed[u] && game.graph.adjacent(v, u)) ++deg;
      }
      if (best < 0 || deg < best_deg) {
        best = v;
        best_deg = deg;
      }
    }
    if (best < 0) break;
    chosen.push_back(best);
    removed[best] = true;
    for (int u = 0; u < n; ++u) {
      if (game.graph.adjacent(best, u)) removed[u] = true;
    }
  }
  // Too few non-adjacent vertices: repeat the last chosen one. Diagonal
  // questions are still always won.
  while (static_cast<int>(chosen.size()) < game.t) chosen.push_back(chosen.back());

  TrivialStrategyResult result;
  result.answered = chosen;
  result.strategy.dim = 1;
  result.strategy.pvms.assign(game.t, std::vector<cmat>(n, cmat::Zero(1, 1)));
  for (int i = 0; i < game.t; ++i) {
    result.strategy.pvms[i][chosen[i]] = cmat::Identity(1, 1);
  }
  const Distribution pi = game.distribution();
  Rat value(0);
  for (int i = 0; i < game.t; ++i) {
    for (int j = 0; j < game.t; ++j) {
      if (game.predicate(i, j, chosen[i], chosen[j])) value += pi.exact_value(i, j);
    }
  }
  result.value = value;
  return result;
}

SynchronousGame to_synchronous_game(const IndependentSetGame& game) {
  std::vector<std::string> questions;
  questions.reserve(game.t);
  for (int i = 1; i <= game.t; ++i) questions.push_back(std::to_string(i));
  std::vector<std::string> answers;
  answers.reserve(game.graph.size());
  for (const Vertex& v : game.graph.vertices()) {
    answers.push_back(std::to_string(v.q) + "," + std::to_string(v.a));
  }
  SynchronousGame g = make_synchronous_game(std::move(questions), std::move(answers),
                                            game.distribution());
  for (int i = 0; i < game.t; ++i) {
    for (int j = 0; j < game.t; ++j) {
      for (int u = 0; u < game.graph.size(); ++u) {
        for (int v = 0; v < game.graph.size(); ++v) {
          g.set_win(i, j, u, v, game.predicate(i, j, u, v));
        }
      }
    }
  }
  return g;
}

SyncQuantumStrategy as_sync_strategy(const IndepStrategy& s) {
  return SyncQuantumStrategy{s.dim, s.pvms};
}

}  // namespace isg
