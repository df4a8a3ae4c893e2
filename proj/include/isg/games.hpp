#pragma once

#include "isg/algebra.hpp"
#include "isg/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace isg {

// Question-pair distribution. Entries are exact rationals when constructed by
// the library (uniform, pi_d, diagonal weighting) and plain doubles when read
// from files; the double view is always available.
class Distribution {
 public:
  Distribution() = default;

  static Distribution uniform(int n);
  // pi_d(i,j) = delta_{ij}/(2t) + 1/(2t^2)
  static Distribution diag_weighted(int t);
  static Distribution from_exact(int n, std::vector<Rat> entries);
  static Distribution from_values(int n, std::vector<double> entries);

  int size() const { return n_; }
  bool exact() const { return !exact_.empty(); }
  double value(int i, int j) const { return values_[idx(i, j)]; }
  const Rat& exact_value(int i, int j) const { return exact_[idx(i, j)]; }

  double sum() const;
  Rat exact_sum() const;
  double row_sum(int i) const;
  double col_sum(int j) const;
  Rat exact_row_sum(int i) const;
  Rat exact_col_sum(int j) const;
  double diagonal_mass() const;

 private:
  int idx(int i, int j) const { return i * n_ + j; }
  int n_ = 0;
  std::vector<double> values_;
  std::vector<Rat> exact_;
};

// Synchronous game G = (Q, A, pi, V). Predicate held as a dense bit-packed
// table indexed (q, q', a, a').
struct SynchronousGame {
  std::vector<std::string> questions;
  std::vector<std::string> answers;
  Distribution pi;
  std::vector<bool> predicate;

  int nq() const { return static_cast<int>(questions.size()); }
  int na() const { return static_cast<int>(answers.size()); }
  bool win(int q, int qp, int a, int ap) const {
    return predicate[((static_cast<std::size_t>(q) * nq() + qp) * na() + a) * na() + ap];
  }
  void set_win(int q, int qp, int a, int ap, bool w) {
    predicate[((static_cast<std::size_t>(q) * nq() + qp) * na() + a) * na() + ap] = w;
  }
};

// Fresh game with the synchronous predicate pattern: V(q,q;a,a') = [a = a'],
// all off-diagonal cells winning. Carve losing cells with set_win.
SynchronousGame make_synchronous_game(std::vector<std::string> questions,
                                      std::vector<std::string> answers, Distribution pi);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

ValidationReport validate_game(const SynchronousGame& g);

// PVM family {P_q^a}_a per question, all in one matrix algebra of dim d.
struct SyncQuantumStrategy {
  int dim = 0;
  std::vector<std::vector<cmat>> pvms;  // [question][answer]
};

ValidationReport validate_strategy(const SynchronousGame& g, const SyncQuantumStrategy& s,
                                   const Tolerance& tol = {});

struct DeterministicStrategyPair {
  std::vector<int> f;        // Q -> A (answer index per question)
  std::vector<int> f_prime;  // Q -> A
};

struct ClassicalValueResult {
  double value = 0.0;
  std::optional<Rat> exact;  // set when the distribution is exact
  DeterministicStrategyPair witness;
};

// Exact maximum over deterministic pairs (f, f'); witness is the
// lexicographically smallest maximizer. Throws when |A|^(2|Q|) exceeds cap.
// With synchronous_only the maximum is restricted to pairs with f' = f.
ClassicalValueResult classical_value(const SynchronousGame& g, double cap = 1e8,
                                     bool synchronous_only = false);

double eval_deterministic_pair(const SynchronousGame& g, const DeterministicStrategyPair& w);
Rat eval_deterministic_pair_exact(const SynchronousGame& g, const DeterministicStrategyPair& w);

// sum_{q,q'} pi(q,q') sum_{a,a': V=1} tau(P_q^a P_q'^a')
double eval_sync_strategy(const SynchronousGame& g, const SyncQuantumStrategy& s,
                          const Tolerance& tol = {});

// pi'(x,y) = (C/2)(row_x + col_x) delta_{xy} + (1-C) pi(x,y), 0 <= C < 1/2.
SynchronousGame c_diagonal_weighting(const SynchronousGame& g, const Rat& c);

// Largest C with pi(q,q) >= C * max(row sum, column sum) for every q.
double diagonal_dominance(const Distribution& pi);
Rat diagonal_dominance_exact(const Distribution& pi);

}  // namespace isg
