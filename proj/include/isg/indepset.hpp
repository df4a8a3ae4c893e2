#pragma once

#include "isg/graph.hpp"

#include <vector>

namespace isg {

enum class Weighting { uniform, diagonal };

// t-independent set game (X, t): question set [t], answers are vertices of X.
// Equal indices demand equal vertices; distinct indices demand distinct,
// non-adjacent vertices.
struct IndependentSetGame {
  GameGraph graph;
  int t = 1;
  Weighting weighting = Weighting::diagonal;

  // Predicate over question indices i, j in [0, t) and vertex indices u, v.
  bool predicate(int i, int j, int u, int v) const;
  Distribution distribution() const;  // exact (pi_u or pi_d)
};

IndependentSetGame make_indep_set_game(GameGraph x, int t, Weighting w);

// Oracle-style verifier: decides the tuple with only predicate queries on g
// plus label comparisons; never builds the game graph. i, j are 0-based
// indices in [0, |Q|).
bool reduction_verifier(const SynchronousGame& g, int i, int j, const Vertex& u, const Vertex& v);

// PVM family over the graph's vertices per question index i in [t].
struct IndepStrategy {
  int dim = 0;
  std::vector<std::vector<cmat>> pvms;  // [i][vertex]
};

ValidationReport validate_indep_strategy(const IndependentSetGame& game, const IndepStrategy& s,
                                         const Tolerance& tol = {});

struct LossBreakdown {
  double loss = 0.0;
  double same_vertex_term = 0.0;   // (1/2t^2) sum_{i != j, v} tau(P_i^v P_j^v)
  double adjacent_term = 0.0;      // (1/2t^2) sum over adjacent ordered pairs
};

// Losing probability under pi_d; adjacency taken from the game's graph.
// Rejects uniform weighting (evaluate those through the games module).
LossBreakdown sync_loss_indep(const IndependentSetGame& game, const IndepStrategy& s,
                              const Tolerance& tol = {});

// Same quantity for (X(g), |Q|), with the adjacency condition evaluated as
// raw ordered predicate queries V(q,q';a,a') = 0 or V(q',q;a',a) = 0. Kept as
// an independent code path from the graph-based evaluator.
LossBreakdown sync_loss_indep_predicate(const SynchronousGame& g, const IndepStrategy& s,
                                        const Tolerance& tol = {});

// Exact loss of a deterministic (d=1) strategy given as the answered vertex
// per question index.
Rat sync_loss_indep_exact_d1(const IndependentSetGame& game, const std::vector<int>& answered);

struct TrivialStrategyResult {
  IndepStrategy strategy;    // d = 1
  std::vector<int> answered; // vertex index per question in [t]
  Rat value;
};

// Fixed-set strategy: greedy independent set (min residual degree, ties by
// vertex order); unfilled slots repeat the last chosen vertex.
TrivialStrategyResult trivial_fixed_set_strategy(const IndependentSetGame& game);

// The independent set game viewed as a synchronous game (questions "1".."t",
// answers labeled "q,a" per vertex).
SynchronousGame to_synchronous_game(const IndependentSetGame& game);

// An IndepStrategy is structurally a strategy for to_synchronous_game.
SyncQuantumStrategy as_sync_strategy(const IndepStrategy& s);

}  // namespace isg
