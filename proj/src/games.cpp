#include "isg/games.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace isg {

Distribution Distribution::uniform(int n) {
  if (n < 1) throw std::invalid_argument("distribution size must be >= 1");
  return from_exact(n, std::vector<Rat>(static_cast<std::size_t>(n) * n,
                                        Rat(1, static_cast<long long>(n) * n)));
}

Distribution Distribution::diag_weighted(int t) {
  if (t < 1) throw std::invalid_argument("distribution size must be >= 1");
  const Rat off(1, 2LL * t * t);
  const Rat diag = Rat(1, 2LL * t) + off;
  std::vector<Rat> entries(static_cast<std::size_t>(t) * t, off);
  for (int i = 0; i < t; ++i) entries[static_cast<std::size_t>(i) * t + i] = diag;
  return from_exact(t, std::move(entries));
}

Distribution Distribution::from_exact(int n, std::vector<Rat> entries) {
  if (entries.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("distribution entry count mismatch");
  }
  Distribution d;
  d.n_ = n;
  d.exact_ = std::move(entries);
  d.values_.resize(d.exact_.size());
  for (std::size_t i = 0; i < d.exact_.size(); ++i) d.values_[i] = to_double(d.exact_[i]);
  return d;
}

Distribution Distribution::from_values(int n, std::vector<double> entries) {
  if (entries.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("distribution entry count mismatch");
  }
  Distribution d;
  d.n_ = n;
  d.values_ = std::move(entries);
  return d;
}

double Distribution::sum() const {
  double s = 0;
  for (double v : values_) s += v;
  return s;
}

Rat Distribution::exact_sum() const {
  Rat s(0);
  for (const Rat& v : exact_) s += v;
  return s;
}

double Distribution::row_sum(int i) const {
  double s = 0;
  for (int j = 0; j < n_; ++j) s += value(i, j);
  return s;
}

double Distribution::col_sum(int j) const {
  double s = 0;
  for (int i = 0; i < n_; ++i) s += value(i, j);
  return s;
}

Rat Distribution::exact_row_sum(int i) const {
  Rat s(0);
  for (int j = 0; j < n_; ++j) s += exact_value(i, j);
  return s;
}

Rat Distribution::exact_col_sum(int j) const {
  Rat s(0);
  for (int i = 0; i < n_; ++i) s += exact_value(i, j);
  return s;
}

double Distribution::diagonal_mass() const {
  double s = 0;
  for (int i = 0; i < n_; ++i) s += value(i, i);
  return s;
}

SynchronousGame make_synchronous_game(std::vector<std::string> questions,
                                      std::vector<std::string> answers, Distribution pi) {
  SynchronousGame g;
  g.questions = std::move(questions);
  g.answers = std::move(answers);
  g.pi = std::move(pi);
  const int nq = g.nq();
  const int na = g.na();
  if (nq < 1 || na < 1) throw std::invalid_argument("game needs at least one question and answer");
  if (g.pi.size() != nq) throw std::invalid_argument("distribution size must match question count");
  g.predicate.assign(static_cast<std::size_t>(nq) * nq * na * na, true);
  for (int q = 0; q < nq; ++q) {
    for (int a = 0; a < na; ++a) {
      for (int ap = 0; ap < na; ++ap) {
        if (a != ap) g.set_win(q, q, a, ap, false);
      }
    }
  }
  return g;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::ostringstream out;
  for (const auto& v : violations) out << v << "\n";
  return out.str();
}

ValidationReport validate_game(const SynchronousGame& g) {
  ValidationReport report;
  const int nq = g.nq();
  const int na = g.na();
  if (nq < 1) report.violations.push_back("no questions");
  if (na < 1) report.violations.push_back("no answers");
  if (g.pi.size() != nq) {
    report.violations.push_back("distribution size " + std::to_string(g.pi.size()) +
                                " does not match question count " + std::to_string(nq));
    return report;
  }
  if (g.predicate.size() != static_cast<std::size_t>(nq) * nq * na * na) {
    report.violations.push_back("predicate table has " + std::to_string(g.predicate.size()) +
                                " cells, expected " + std::to_string(nq * nq * na * na));
    return report;
  }
  const auto check_labels = [&](const std::vector<std::string>& labels, const char* what) {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      report.violations.push_back(std::string("duplicate ") + what + " label");
    }
  };
  check_labels(g.questions, "question");
  check_labels(g.answers, "answer");
  for (int q = 0; q < nq; ++q) {
    for (int qp = 0; qp < nq; ++qp) {
      if (g.pi.value(q, qp) < 0) {
        report.violations.push_back("negative probability at (" + std::to_string(q) + "," +
                                    std::to_string(qp) + ")");
      }
    }
  }
  if (g.pi.exact()) {
    const Rat s = g.pi.exact_sum();
    if (s != Rat(1)) {
      report.violations.push_back("distribution sums to " + format_rational(s) + ", expected 1");
    }
  } else {
    const double s = g.pi.sum();
    if (std::abs(s - 1.0) > 1e-12) {
      std::ostringstream msg;
      msg << "distribution sums to " << s << ", expected 1";
      report.violations.push_back(msg.str());
    }
  }
  for (int q = 0; q < nq; ++q) {
    for (int a = 0; a < na; ++a) {
      for (int ap = 0; ap < na; ++ap) {
        const bool expected = (a == ap);
        if (g.win(q, q, a, ap) != expected) {
          report.violations.push_back("synchronicity violation at (" + std::to_string(q) + "," +
                                      std::to_string(q) + ";" + std::to_string(a) + "," +
                                      std::to_string(ap) + "): V=" +
                                      (expected ? "0" : "1"));
        }
      }
    }
  }
  return report;
}

ValidationReport validate_strategy(const SynchronousGame& g, const SyncQuantumStrategy& s,
                                   const Tolerance& tol) {
  ValidationReport report;
  if (s.dim < 1) report.violations.push_back("strategy dimension must be >= 1");
  if (static_cast<int>(s.pvms.size()) != g.nq()) {
    report.violations.push_back("strategy has " + std::to_string(s.pvms.size()) +
                                " question families, game has " + std::to_string(g.nq()));
    return report;
  }
  for (int q = 0; q < g.nq(); ++q) {
    if (static_cast<int>(s.pvms[q].size()) != g.na()) {
      report.violations.push_back("question " + std::to_string(q) + " has " +
                                  std::to_string(s.pvms[q].size()) + " elements, expected " +
                                  std::to_string(g.na()));
      continue;
    }
    for (const cmat& p : s.pvms[q]) {
      if (p.rows() != s.dim || p.cols() != s.dim) {
        report.violations.push_back("question " + std::to_string(q) +
                                    ": element dimension mismatch");
      }
    }
    if (!report.violations.empty()) continue;
    if (!is_pvm(s.pvms[q], tol)) {
      report.violations.push_back("family for question " + std::to_string(q) + " is not a PVM");
    }
  }
  return report;
}

namespace {

// Shared enumeration core. Iterates f in lexicographic order; for each f the
// optimal f' decomposes per column q' (the objective is additive over q'),
// with per-column ties resolved to the lowest answer. Strictly-greater
// updates keep the lexicographically smallest maximizing pair. The canonical
// accumulation order (q' outer, q inner) matches eval_deterministic_pair so
// the witness re-evaluates to the returned value bit-for-bit.
template <typename T, typename PiFn>
std::pair<T, DeterministicStrategyPair> enumerate_pairs(const SynchronousGame& g, PiFn pi,
                                                        bool synchronous_only) {
  const int nq = g.nq();
  const int na = g.na();
  std::vector<int> f(nq, 0);
  T best{};
  bool have_best = false;
  DeterministicStrategyPair best_pair;

  std::vector<T> column(na);
  for (;;) {
    T total{};
    std::vector<int> fp(nq, 0);
    for (int qp = 0; qp < nq; ++qp) {
      if (synchronous_only) {
        T v{};
        for (int q = 0; q < nq; ++q) {
          if (g.win(q, qp, f[q], f[qp])) v += pi(q, qp);
        }
        total += v;
        fp[qp] = f[qp];
      } else {
        for (int ap = 0; ap < na; ++ap) {
          T v{};
          for (int q = 0; q < nq; ++q) {
            if (g.win(q, qp, f[q], ap)) v += pi(q, qp);
          }
          column[ap] = v;
        }
        int arg = 0;
        for (int ap = 1; ap < na; ++ap) {
          if (column[ap] > column[arg]) arg = ap;
        }
        total += column[arg];
        fp[qp] = arg;
      }
    }
    if (!have_best || total > best) {
      best = total;
      best_pair = DeterministicStrategyPair{f, fp};
      have_best = true;
    }
    int pos = nq - 1;
    while (pos >= 0 && f[pos] == na - 1) f[pos--] = 0;
    if (pos < 0) break;
    ++f[pos];
  }
  return {best, best_pair};
}

}  // namespace

ClassicalValueResult classical_value(const SynchronousGame& g, double cap, bool synchronous_only) {
  const double exponent = (synchronous_only ? 1.0 : 2.0) * g.nq();
  const double required = std::pow(static_cast<double>(g.na()), exponent);
  if (!(required <= cap)) {
    std::ostringstream msg;
    msg << "enumeration budget exceeded: |A|^" << (synchronous_only ? "" : "2") << "|Q| = "
        << required << " > cap " << cap;
    throw std::runtime_error(msg.str());
  }

  ClassicalValueResult result;
  if (g.pi.exact()) {
    auto [value, witness] = enumerate_pairs<Rat>(
        g, [&](int q, int qp) { return g.pi.exact_value(q, qp); }, synchronous_only);
    result.exact = value;
    result.value = to_double(value);
    result.witness = std::move(witness);
  } else {
    auto [value, witness] = enumerate_pairs<double>(
        g, [&](int q, int qp) { return g.pi.value(q, qp); }, synchronous_only);
    result.value = value;
    result.witness = std::move(witness);
  }
  return result;
}

double eval_deterministic_pair(const SynchronousGame& g, const DeterministicStrategyPair& w) {
  double total = 0;
  for (int qp = 0; qp < g.nq(); ++qp) {
    double v = 0;
    for (int q = 0; q < g.nq(); ++q) {
      if (g.win(q, qp, w.f[q], w.f_prime[qp])) v += g.pi.value(q, qp);
    }
    total += v;
  }
  return total;
}

Rat eval_deterministic_pair_exact(const SynchronousGame& g, const DeterministicStrategyPair& w) {
  Rat total(0);
  for (int qp = 0; qp < g.nq(); ++qp) {
    for (int q = 0; q < g.nq(); ++q) {
      if (g.win(q, qp, w.f[q], w.f_prime[qp])) total += g.pi.exact_value(q, qp);
    }
  }
  return total;
}

double eval_sync_strategy(const SynchronousGame& g, const SyncQuantumStrategy& s,
                          const Tolerance& tol) {
  const ValidationReport report = validate_strategy(g, s, tol);
  if (!report.ok()) {
    throw std::invalid_argument("invalid strategy: " + report.to_string());
  }
  double value = 0;
  for (int q = 0; q < g.nq(); ++q) {
    for (int qp = 0; qp < g.nq(); ++qp) {
      const double pi = g.pi.value(q, qp);
      if (pi == 0.0) continue;
      double winning = 0;
      for (int a = 0; a < g.na(); ++a) {
        for (int ap = 0; ap < g.na(); ++ap) {
          if (g.win(q, qp, a, ap)) {
            winning += normalized_trace_product(s.pvms[q][a], s.pvms[qp][ap]).real();
          }
        }
      }
      value += pi * winning;
    }
  }
  return value;
}

SynchronousGame c_diagonal_weighting(const SynchronousGame& g, const Rat& c) {
  if (c < Rat(0) || c >= Rat(1, 2)) {
    throw std::invalid_argument("weighting constant must satisfy 0 <= C < 1/2, got " +
                                format_rational(c));
  }
  const int n = g.nq();
  SynchronousGame out = g;
  if (g.pi.exact()) {
    std::vector<Rat> entries(static_cast<std::size_t>(n) * n);
    const Rat one_minus(Rat(1) - c);
    for (int x = 0; x < n; ++x) {
      const Rat marginal = g.pi.exact_row_sum(x) + g.pi.exact_col_sum(x);
      for (int y = 0; y < n; ++y) {
        Rat v = one_minus * g.pi.exact_value(x, y);
        if (x == y) v += c / 2 * marginal;
        entries[static_cast<std::size_t>(x) * n + y] = v;
      }
    }
    out.pi = Distribution::from_exact(n, std::move(entries));
  } else {
    const double cd = to_double(c);
    std::vector<double> entries(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
      const double marginal = g.pi.row_sum(x) + g.pi.col_sum(x);
      for (int y = 0; y < n; ++y) {
        double v = (1.0 - cd) * g.pi.value(x, y);
        if (x == y) v += cd / 2.0 * marginal;
        entries[static_cast<std::size_t>(x) * n + y] = v;
      }
    }
    out.pi = Distribution::from_values(n, std::move(entries));
  }
  return out;
}

double diagonal_dominance(const Distribution& pi) {
  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int q = 0; q < pi.size(); ++q) {
    const double m = std::max(pi.row_sum(q), pi.col_sum(q));
    if (m == 0.0) continue;  // question never sampled, constraint vacuous
    any = true;
    if (pi.value(q, q) == 0.0) return 0.0;
    best = std::min(best, pi.value(q, q) / m);
  }
  return any ? best : 0.0;
}

Rat diagonal_dominance_exact(const Distribution& pi) {
  if (!pi.exact()) throw std::invalid_argument("distribution is not exact");
  Rat best(0);
  bool any = false;
  for (int q = 0; q < pi.size(); ++q) {
    const Rat m = std::max(pi.exact_row_sum(q), pi.exact_col_sum(q));
    if (m == Rat(0)) continue;
    const Rat ratio = pi.exact_value(q, q) / m;
    if (!any || ratio < best) best = ratio;
    any = true;
    if (best == Rat(0)) return best;
  }
  return any ? best : Rat(0);
}

}  // namespace isg
