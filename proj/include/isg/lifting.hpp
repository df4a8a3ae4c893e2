#pragma once

#include "isg/indepset.hpp"
#include "isg/stability.hpp"

#include <vector>

namespace isg {

// Diagnostics of the approximate backward lift.
struct LiftReport {
  double delta = 0;  // measured loss of the input strategy on (X(G), t)
  std::vector<double> per_question_residuals;  // ||sum_{i,a} P_i^{(q,a)} - 1||_2
  double mean_residual = 0;
  std::vector<double> rounding_distances;  // per q: sum_{i,a} ||P - Q||_2^2
  double value_on_G = 0;
  double bound_rhs = 0;  // 1 - kappa_prime * sqrt(t * delta)
  double kappa_prime = 10.0;
};

std::vector<std::string> check_lift_report(const LiftReport& r, int t);

// The labeling [t] <-> Q: question indices in sorted label order (numeric
// when every label parses as an integer, lexicographic otherwise).
std::vector<int> question_order(const SynchronousGame& g);

// Play G's strategy on (X(G), t): index i measures {P_{q(i)}^a}_a and answers
// vertex (q(i), a).
IndepStrategy forward_lift(const SynchronousGame& g, const SyncQuantumStrategy& s,
                           const Tolerance& tol = {});

// P_q^a := sum_i P_i^{(q,a)}. Throws when some {P_q^a}_a fails PVM validation
// (input not close enough to perfect; use backward_lift_approx).
SyncQuantumStrategy backward_lift_perfect(const IndepStrategy& s, const SynchronousGame& g,
                                          const Tolerance& tol = {});

struct ApproxLiftResult {
  SyncQuantumStrategy strategy;
  LiftReport report;
};

// Per question q, rounds the t*|A| projections {P_i^{(q,a)}}_{(i,a)} to a PVM
// {Q_i^{(q,a)}} and forms Q_q^a := sum_i Q_i^{(q,a)}.
ApproxLiftResult backward_lift_approx(const IndepStrategy& s, const SynchronousGame& g,
                                      const Tolerance& tol = {}, double kappa_prime = 10.0);

}  // namespace isg
