#include "isg/lifting.hpp"

#include "isg/luck.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <cmath>

using namespace isg;
using namespace isg::testutil;

namespace {

IndependentSetGame reduced(const SynchronousGame& g) {
  return make_indep_set_game(build_game_graph(g), g.nq(), Weighting::diagonal);
}

// Conjugate every element of family i by one unitary; families stay PVMs.
IndepStrategy perturb_per_index(const IndepStrategy& s, double theta, Rng& rng) {
  IndepStrategy out = s;
  for (auto& family : out.pvms) {
    const cmat u = unitary_rotation(random_hermitian_unit(s.dim, rng), theta);
    for (cmat& p : family) p = u * p * u.adjoint();
  }
  return out;
}

// (1/t^2) sum_{(i,a) != (i',a'), q} tau(P_i^{(q,a)} P_{i'}^{(q,a')})
double almost_orthogonality(const SynchronousGame& g, const IndepStrategy& s) {
  const int t = g.nq();
  const int na = g.na();
  double total = 0;
  for (int q = 0; q < t; ++q) {
    for (int i = 0; i < t; ++i) {
      for (int a = 0; a < na; ++a) {
        for (int ip = 0; ip < t; ++ip) {
          for (int ap = 0; ap < na; ++ap) {
            if (i == ip && a == ap) continue;
            total += normalized_trace_product(s.pvms[i][static_cast<std::size_t>(q) * na + a],
                                              s.pvms[ip][static_cast<std::size_t>(q) * na + ap])
                         .real();
          }
        }
      }
    }
  }
  return total / (static_cast<double>(t) * t);
}

}  // namespace

TEST_SUITE("lifting") {

TEST_CASE("forward lift of a perfect agreement strategy is perfect") {
  const SynchronousGame g = agreement_game();
  const SyncQuantumStrategy s = deterministic_direct_sum(g, {{0, 0}});
  const IndepStrategy lifted = forward_lift(g, s);
  const IndependentSetGame game = reduced(g);
  CHECK(validate_indep_strategy(game, lifted, {}).ok());
  CHECK(sync_loss_indep(game, lifted).loss <= 1e-12);
}

TEST_CASE("forward lift of the trine strategy") {
  const SynchronousGame g = triangle_coloring_game(2);
  SyncQuantumStrategy s;
  s.dim = 2;
  s.pvms.assign(3, std::vector<cmat>(2, cmat::Zero(2, 2)));
  for (int q = 0; q < 3; ++q) {
    const double angle = 2.0 * M_PI * q / 3.0;
    cmat p(2, 2);
    p << 0.5, 0.5 * std::complex<double>(std::cos(angle), -std::sin(angle)),
        0.5 * std::complex<double>(std::cos(angle), std::sin(angle)), 0.5;
    s.pvms[q][0] = p;
    s.pvms[q][1] = cmat::Identity(2, 2) - p;
  }
  const double value = eval_sync_strategy(g, s);
  REQUIRE(value == doctest::Approx(5.0 / 6.0));
  const IndepStrategy lifted = forward_lift(g, s);
  const LossBreakdown loss = sync_loss_indep(reduced(g), lifted);
  CHECK(loss.loss <= (1.0 - value) + 1e-10);
  // For a lift under the uniform base game the loss halves exactly.
  CHECK(loss.loss == doctest::Approx((1.0 - value) / 2.0).epsilon(1e-10));
  CHECK(loss.same_vertex_term == 0.0);
}

TEST_CASE("forward lift of a deterministic strategy, scalar evaluation") {
  Rng rng(401);
  for (int trial = 0; trial < 8; ++trial) {
    const SynchronousGame g = random_sync_game(3, 2, 0.4, rng);
    const std::vector<int> f = {static_cast<int>(rng() % 2), static_cast<int>(rng() % 2),
                                static_cast<int>(rng() % 2)};
    const SyncQuantumStrategy s = deterministic_direct_sum(g, {f});
    const IndepStrategy lifted = forward_lift(g, s);
    const GameGraph x = build_game_graph(g);
    // Scalar oracle: distinct questions never collide on a vertex, so the
    // loss is the number of ordered adjacent answered pairs over 2t^2.
    int adjacent_pairs = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        const int u = x.find_vertex(Vertex{i, f[i]});
        const int v = x.find_vertex(Vertex{j, f[j]});
        if (x.adjacent(u, v)) ++adjacent_pairs;
      }
    }
    const double expected = adjacent_pairs / (2.0 * 9.0);
    CHECK(sync_loss_indep(reduced(g), lifted).loss == doctest::Approx(expected).epsilon(1e-12));
    // A witness forming an independent set lifts to a lossless strategy.
    if (adjacent_pairs == 0) {
      CHECK(sync_loss_indep(reduced(g), lifted).loss == 0.0);
    }
  }
}

TEST_CASE("forward lift is valid whatever the input value") {
  Rng rng(409);
  for (int trial = 0; trial < 5; ++trial) {
    const SynchronousGame g = random_sync_game(3, 2, 0.5, rng);
    SyncQuantumStrategy s;
    s.dim = 4;
    for (int q = 0; q < 3; ++q) s.pvms.push_back(random_pvm(4, 2, rng));
    const IndepStrategy lifted = forward_lift(g, s);
    CHECK(validate_indep_strategy(reduced(g), lifted, {}).ok());
    const LossBreakdown loss = sync_loss_indep(reduced(g), lifted);
    CHECK(loss.same_vertex_term == 0.0);
  }
}

TEST_CASE("lifted loss never exceeds the loss on the source game") {
  Rng rng(419);
  for (int trial = 0; trial < 6; ++trial) {
    const SynchronousGame g = random_sync_game(3, 2, 0.4, rng);
    SyncQuantumStrategy s;
    s.dim = 4;
    for (int q = 0; q < 3; ++q) s.pvms.push_back(random_pvm(4, 2, rng));
    const double input_loss = 1.0 - eval_sync_strategy(g, s);
    const double lifted_loss = sync_loss_indep(reduced(g), forward_lift(g, s)).loss;
    CHECK(lifted_loss <= input_loss + 1e-10);
  }
}

TEST_CASE("perfect backward lift round trip") {
  const SynchronousGame g = agreement_game();
  const SyncQuantumStrategy s = deterministic_direct_sum(g, {{0, 0}, {1, 1}});
  const IndepStrategy lifted = forward_lift(g, s);
  const SyncQuantumStrategy back = backward_lift_perfect(lifted, g);
  CHECK(eval_sync_strategy(g, back) == doctest::Approx(1.0).epsilon(1e-12));

  const SynchronousGame k3 = triangle_coloring_game(3);
  const SyncQuantumStrategy s3 =
      deterministic_direct_sum(k3, {{0, 1, 2}, {1, 2, 0}});
  REQUIRE(eval_sync_strategy(k3, s3) == doctest::Approx(1.0));
  const SyncQuantumStrategy back3 = backward_lift_perfect(forward_lift(k3, s3), k3);
  CHECK(eval_sync_strategy(k3, back3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("perfect backward lift of a fixed independent set") {
  const SynchronousGame g = agreement_game();
  const GameGraph x = build_game_graph(g);
  IndepStrategy s;
  s.dim = 1;
  s.pvms.assign(2, std::vector<cmat>(x.size(), cmat::Zero(1, 1)));
  s.pvms[0][x.find_vertex(Vertex{0, 0})] = cmat::Identity(1, 1);
  s.pvms[1][x.find_vertex(Vertex{1, 0})] = cmat::Identity(1, 1);
  const SyncQuantumStrategy back = backward_lift_perfect(s, g);
  CHECK(eval_sync_strategy(g, back) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("imperfect input fails the perfect backward lift") {
  // Two indices answering the same vertex make the summed operator exceed
  // the identity detectably. (Per-index rotations of a lift never do: they
  // conjugate each question family coherently.)
  const SynchronousGame g = make_luck_game({2, 1});
  const IndepStrategy s = sharpness_strategy({2, 1});
  CHECK_THROWS_AS(backward_lift_perfect(s, g), std::runtime_error);
}

TEST_CASE("approximate backward lift at zero noise recovers the value") {
  const SynchronousGame g = triangle_coloring_game(3);
  const SyncQuantumStrategy s = deterministic_direct_sum(g, {{0, 1, 2}, {2, 0, 1}});
  const IndepStrategy lifted = forward_lift(g, s);
  const ApproxLiftResult result = backward_lift_approx(lifted, g);
  CHECK(result.report.delta <= 1e-12);
  for (double r : result.report.per_question_residuals) CHECK(r <= 1e-10);
  CHECK(result.report.value_on_G >= 1.0 - 1e-8);
  CHECK(check_lift_report(result.report, g.nq()).empty());
}

TEST_CASE("approximate backward lift under per-index perturbations") {
  Rng rng(431);
  const SynchronousGame g = triangle_coloring_game(3);
  const SyncQuantumStrategy s =
      deterministic_direct_sum(g, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}});
  const int t = g.nq();
  double prev_delta = -1.0;
  double prev_loss = -1.0;
  for (const double theta : {0.0, 0.02, 0.05, 0.1, 0.2}) {
    Rng local(static_cast<unsigned long long>(theta * 1000) + 7);
    const IndepStrategy noisy = perturb_per_index(forward_lift(g, s), theta, local);
    const ApproxLiftResult result = backward_lift_approx(noisy, g);

    // Output is a valid strategy per question.
    for (int q = 0; q < t; ++q) {
      CHECK(is_pvm(result.strategy.pvms[q], Tolerance{1e-8}));
    }
    // Almost-orthogonality and Jensen bounds.
    CHECK(almost_orthogonality(g, noisy) <= 2.0 * result.report.delta + 1e-9);
    CHECK(check_lift_report(result.report, t).empty());
    // Residual energy bound before rounding.
    double resid_sq = 0;
    for (double r : result.report.per_question_residuals) resid_sq += r * r;
    CHECK(resid_sq <= 2.0 * t * t * result.report.delta + 1e-6);
    // Final value bound with the configured constant.
    CHECK(result.report.value_on_G >= result.report.bound_rhs - 1e-9);
    if (theta == 0.0) {
      CHECK(result.report.value_on_G >= 1.0 - 1e-8);
    }
    // Joint monotonicity along the sweep.
    CHECK(result.report.delta >= prev_delta - 1e-9);
    CHECK(1.0 - result.report.value_on_G >= prev_loss - 1e-9);
    prev_delta = result.report.delta;
    prev_loss = 1.0 - result.report.value_on_G;
  }
}

TEST_CASE("approximate backward lift accepts arbitrary valid strategies") {
  Rng rng(443);
  for (int trial = 0; trial < 4; ++trial) {
    const SynchronousGame g = random_sync_game(2 + static_cast<int>(rng() % 2), 2, 0.4, rng);
    const int t = g.nq();
    const int nv = t * g.na();
    IndepStrategy s;
    s.dim = 4;
    for (int i = 0; i < t; ++i) s.pvms.push_back(random_pvm(4, nv, rng));
    const ApproxLiftResult result = backward_lift_approx(s, g);
    for (int q = 0; q < t; ++q) CHECK(is_pvm(result.strategy.pvms[q], Tolerance{1e-8}));
    CHECK(check_lift_report(result.report, t).empty());
    CHECK(almost_orthogonality(g, s) <= 2.0 * result.report.delta + 1e-9);
    CHECK(result.report.value_on_G >= result.report.bound_rhs - 1e-9);
  }
}

TEST_CASE("question order is the sorted label order") {
  SynchronousGame g = agreement_game();
  g.questions = {"10", "2"};
  const std::vector<int> numeric = question_order(g);
  CHECK(numeric == std::vector<int>{1, 0});  // 2 < 10 numerically
  g.questions = {"b", "a"};
  const std::vector<int> lex = question_order(g);
  CHECK(lex == std::vector<int>{1, 0});
}

}  // TEST_SUITE
