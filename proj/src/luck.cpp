#include "isg/luck.hpp"

#include <stdexcept>
#include <string>

namespace isg {

namespace {

void validate_params(const LuckParams& p) {
  if (p.k < 2) throw std::invalid_argument("luck game needs k >= 2");
  if (p.n < 1) throw std::invalid_argument("luck game needs n >= 1");
}

}  // namespace

SynchronousGame make_luck_game(const LuckParams& p) {
  validate_params(p);
  const int t = p.k * p.n;
  std::vector<std::string> questions;
  questions.reserve(t);
  for (int q = 1; q <= t; ++q) questions.push_back(std::to_string(q));
  SynchronousGame g = make_synchronous_game(std::move(questions), {"1"}, Distribution::uniform(t));
  // 0-based: x > n (1-based) means index >= n.
  for (int x = 0; x < t; ++x) {
    for (int y = 0; y < t; ++y) {
      const bool win = (x == y) || (x >= p.n && y >= p.n);
      g.set_win(x, y, 0, 0, win);
    }
  }
  return g;
}

Rat luck_value(const LuckParams& p) {
  validate_params(p);
  const long long k = p.k;
  const long long n = p.n;
  return Rat((k - 1) * (k - 1), k * k) + Rat(1, k * k * n);
}

Rat luck_value_by_summation(const LuckParams& p) {
  const SynchronousGame g = make_luck_game(p);
  Rat total(0);
  for (int x = 0; x < g.nq(); ++x) {
    for (int y = 0; y < g.nq(); ++y) {
      if (g.win(x, y, 0, 0)) total += g.pi.exact_value(x, y);
    }
  }
  return total;
}

IndepStrategy sharpness_strategy(const LuckParams& p) {
  validate_params(p);
  const int t = p.k * p.n;
  IndepStrategy s;
  s.dim = 1;
  s.pvms.assign(t, std::vector<cmat>(t, cmat::Zero(1, 1)));
  for (int i = 0; i < t; ++i) {
    const int q = (i < p.n) ? i + p.n : i;
    s.pvms[i][q] = cmat::Identity(1, 1);
  }
  return s;
}

SharpnessReport sharpness_report(const LuckParams& p) {
  validate_params(p);
  const long long k = p.k;
  const long long n = p.n;
  SharpnessReport report;
  report.params = p;
  report.t = p.k * p.n;
  report.epsilon = Rat(1, k) - Rat(1, k * k);
  report.game_value = luck_value(p);
  report.strategy_loss = Rat(1, k * k * n);

  const SynchronousGame g = make_luck_game(p);
  const IndependentSetGame game =
      make_indep_set_game(build_game_graph(g), report.t, Weighting::diagonal);
  const IndepStrategy s = sharpness_strategy(p);
  report.measured_loss = sync_loss_indep(game, s).loss;

  // Exact route through the deterministic evaluator.
  std::vector<int> answered(report.t);
  for (int i = 0; i < report.t; ++i) answered[i] = (i < p.n) ? i + p.n : i;
  const Rat exact_loss = sync_loss_indep_exact_d1(game, answered);
  if (exact_loss != report.strategy_loss) {
    throw std::runtime_error("sharpness loss mismatch: measured " + format_rational(exact_loss) +
                             ", closed form " + format_rational(report.strategy_loss));
  }

  report.strategy_value = Rat(1) - report.strategy_loss;
  report.bound_holds =
      report.strategy_value >= Rat(1) - Rat(2) * report.epsilon / Rat(report.t);
  return report;
}

}  // namespace isg
