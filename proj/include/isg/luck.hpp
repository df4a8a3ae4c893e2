#pragma once

#include "isg/indepset.hpp"

namespace isg {

// (k,n)-luck game: question set [kn], a single answer, uniform distribution;
// a round is won iff x = y, or x > n and y > n. No strategy involved.
struct LuckParams {
  int k = 2;  // >= 2
  int n = 1;  // >= 1
};

SynchronousGame make_luck_game(const LuckParams& p);

// Closed form (k-1)^2/k^2 + 1/(k^2 n).
Rat luck_value(const LuckParams& p);

// Direct summation of the uniform distribution over winning question pairs.
Rat luck_value_by_summation(const LuckParams& p);

// Deterministic strategy for (X(G_{k,n}), kn): index i answers vertex q = i
// when i > n, q = i + n when i <= n (1-based).
IndepStrategy sharpness_strategy(const LuckParams& p);

struct SharpnessReport {
  LuckParams params;
  int t = 0;              // kn
  Rat epsilon;            // 1/k - 1/k^2
  Rat game_value;         // closed form, <= 1 - epsilon
  Rat strategy_loss;      // 1/(k^2 n), exact count
  double measured_loss = 0;  // same quantity through the loss evaluator
  Rat strategy_value;     // 1 - strategy_loss
  bool bound_holds = false;  // 1 - loss >= 1 - 2 epsilon / t
};

SharpnessReport sharpness_report(const LuckParams& p);

}  // namespace isg
