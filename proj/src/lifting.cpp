#include "isg/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace isg {

namespace {

constexpr double kSlack = 1e-9;

bool all_numeric(const std::vector<std::string>& labels) {
  for (const auto& label : labels) {
    if (label.empty()) return false;
    std::size_t pos = (label[0] == '-') ? 1 : 0;
    if (pos == label.size()) return false;
    for (; pos < label.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(label[pos]))) return false;
    }
  }
  return true;
}

IndependentSetGame reduced_game(const SynchronousGame& g) {
  return make_indep_set_game(build_game_graph(g), g.nq(), Weighting::diagonal);
}

}  // namespace

std::vector<std::string> check_lift_report(const LiftReport& r, int t) {
  std::vector<std::string> violations;
  const auto finite_nonneg = [&](const char* name, double v) {
    if (!std::isfinite(v) || v < -kSlack) {
      violations.push_back(std::string(name) + " not finite/nonnegative");
    }
  };
  finite_nonneg("delta", r.delta);
  finite_nonneg("mean_residual", r.mean_residual);
  finite_nonneg("value_on_G", r.value_on_G);
  for (double v : r.per_question_residuals) finite_nonneg("residual", v);
  for (double v : r.rounding_distances) finite_nonneg("rounding_distance", v);
  const double jensen = std::sqrt(2.0 * t * std::max(0.0, r.delta));
  if (r.mean_residual > jensen + kSlack) {
    violations.push_back("mean residual exceeds the sqrt(2 t delta) bound");
  }
  return violations;
}

std::vector<int> question_order(const SynchronousGame& g) {
  std::vector<int> order(g.nq());
  std::iota(order.begin(), order.end(), 0);
  if (all_numeric(g.questions)) {
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
      return std::stoll(g.questions[lhs]) < std::stoll(g.questions[rhs]);
    });
  } else {
    std::stable_sort(order.begin(), order.end(),
                     [&](int lhs, int rhs) { return g.questions[lhs] < g.questions[rhs]; });
  }
  return order;
}

IndepStrategy forward_lift(const SynchronousGame& g, const SyncQuantumStrategy& s,
                           const Tolerance& tol) {
  const ValidationReport report = validate_strategy(g, s, tol);
  if (!report.ok()) throw std::invalid_argument("invalid strategy: " + report.to_string());
  const int t = g.nq();
  const int na = g.na();
  const std::vector<int> order = question_order(g);

  IndepStrategy lifted;
  lifted.dim = s.dim;
  lifted.pvms.assign(t, std::vector<cmat>(static_cast<std::size_t>(t) * na,
                                          cmat::Zero(s.dim, s.dim)));
  for (int i = 0; i < t; ++i) {
    const int q = order[i];
    for (int a = 0; a < na; ++a) {
      lifted.pvms[i][static_cast<std::size_t>(q) * na + a] = s.pvms[q][a];
    }
  }
  return lifted;
}

SyncQuantumStrategy backward_lift_perfect(const IndepStrategy& s, const SynchronousGame& g,
                                          const Tolerance& tol) {
  const int t = g.nq();
  const int na = g.na();
  if (static_cast<int>(s.pvms.size()) != t) {
    throw std::invalid_argument("strategy must have t = |Q| families");
  }
  SyncQuantumStrategy out;
  out.dim = s.dim;
  out.pvms.assign(t, std::vector<cmat>(na, cmat::Zero(s.dim, s.dim)));
  for (int q = 0; q < t; ++q) {
    for (int a = 0; a < na; ++a) {
      for (int i = 0; i < t; ++i) {
        out.pvms[q][a] += s.pvms[i][static_cast<std::size_t>(q) * na + a];
      }
    }
    if (!is_pvm(out.pvms[q], tol)) {
      throw std::runtime_error(
          "backward lift failed: summed family for question " + std::to_string(q) +
          " is not a PVM within tolerance (input not perfect; use the approximate lift)");
    }
  }
  return out;
}

ApproxLiftResult backward_lift_approx(const IndepStrategy& s, const SynchronousGame& g,
                                      const Tolerance& tol, double kappa_prime) {
  const int t = g.nq();
  const int na = g.na();
  const IndependentSetGame game = reduced_game(g);
  {
    const ValidationReport report = validate_indep_strategy(game, s, tol);
    if (!report.ok()) throw std::invalid_argument("invalid strategy: " + report.to_string());
  }

  ApproxLiftResult result;
  result.report.kappa_prime = kappa_prime;
  result.report.delta = sync_loss_indep_predicate(g, s, tol).loss;

  result.strategy.dim = s.dim;
  result.strategy.pvms.assign(t, std::vector<cmat>(na, cmat::Zero(s.dim, s.dim)));
  for (int q = 0; q < t; ++q) {
    // Family {P_i^{(q,a)}} indexed (i, a), i outer.
    std::vector<cmat> family;
    family.reserve(static_cast<std::size_t>(t) * na);
    for (int i = 0; i < t; ++i) {
      for (int a = 0; a < na; ++a) {
        family.push_back(s.pvms[i][static_cast<std::size_t>(q) * na + a]);
      }
    }
    RoundingResult rounded = round_projection_family(family, tol);
    result.report.per_question_residuals.push_back(rounded.report.eps_meas);
    result.report.rounding_distances.push_back(rounded.report.total_dist_sq);
    for (int i = 0; i < t; ++i) {
      for (int a = 0; a < na; ++a) {
        result.strategy.pvms[q][a] += rounded.pvm[static_cast<std::size_t>(i) * na + a];
      }
    }
  }

  const auto& residuals = result.report.per_question_residuals;
  result.report.mean_residual =
      std::accumulate(residuals.begin(), residuals.end(), 0.0) / static_cast<double>(t);
  result.report.value_on_G = eval_sync_strategy(g, result.strategy, tol);
  result.report.bound_rhs =
      1.0 - kappa_prime * std::sqrt(static_cast<double>(t) * std::max(0.0, result.report.delta));
  return result;
}

}  // namespace isg
