#pragma once

#include "isg/algebra.hpp"

#include <string>
#include <vector>

namespace isg {

// Every named intermediate of the rounding pipeline, for inequality testing.
struct RoundingReport {
  double eps_meas = 0;          // ||1 - sum a_j||_2
  double delta_meas = 0;        // |1 - tau(sum a_j^2)|
  double norm_a0 = 0;           // ||a_0||_2, a_0 the positive part of 1 - sum a_j
  double norm_rho_minus_1 = 0;  // ||rho - 1||_2
  double dist_a_to_b_sq = 0;    // sum ||a_j - b_j||_2^2
  double dist_b_to_c_sq = 0;    // sum ||b_j - c_j||_2^2
  double povm_purity = 0;       // sum tau(c_j^2)
  double dist_c_to_p_sq = 0;    // sum ||c_j - q_j||_2^2
  double total_dist_sq = 0;     // sum ||a_j - q_j||_2^2
};

// Violated report invariants (guaranteed inequalities plus finiteness);
// empty for every valid pipeline run.
std::vector<std::string> check_report(const RoundingReport& r);

struct RoundingResult {
  std::vector<cmat> pvm;
  RoundingReport report;
};

// Rounds positive contractions a_j <= 1 with sum a_j ~ 1 to a PVM:
// x = 1 - sum a_j, a_0 = x_+, b_1 = a_0 + a_1, b_j = a_j (j >= 2),
// rho = sum b_j, c_j = rho^{-1/2} b_j rho^{-1/2}, then povm_to_pvm.
// Eigenvalues in (1, 1 + 100*eta] are clamped to 1, small negatives to 0.
RoundingResult round_positive_family(const std::vector<cmat>& a, const Tolerance& tol = {});

// Nearest-PVM heuristic for a POVM: diagonalize a weighted sum of the c_j,
// assign each eigenvector to the element with the largest expectation, then
// see-saw (reassign / re-diagonalize block compressions) until the distance
// stops improving. Exact on commuting input; deterministic.
std::vector<cmat> povm_to_pvm(const std::vector<cmat>& c, const Tolerance& tol = {});

// Same pipeline for projection families (delta <= eps automatically).
RoundingResult round_projection_family(const std::vector<cmat>& p, const Tolerance& tol = {});

// Rounding under subordination a_j <= p_{block_of[j]} for a PVM {p_k}: runs
// the pipeline in the compressed algebra (+)_k p_k M p_k and redistributes
// the off-block mass so that q_j <= p_{block_of[j]} exactly.
RoundingResult round_subordinate(const std::vector<cmat>& a, const std::vector<cmat>& p,
                                 const std::vector<int>& block_of, const Tolerance& tol = {});

}  // namespace isg
