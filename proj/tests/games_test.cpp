#include "isg/games.hpp"

#include "isg/luck.hpp"
#include "testutil.hpp"

#include <doctest.h>

using namespace isg;
using namespace isg::testutil;

namespace {

// Independent brute force over all deterministic pairs, plain nested loops.
double oracle_best_pair_value(const SynchronousGame& g) {
  const int nq = g.nq();
  const int na = g.na();
  long long total = 1;
  for (int q = 0; q < 2 * nq; ++q) total *= na;
  double best = -1;
  for (long long code = 0; code < total; ++code) {
    long long rest = code;
    std::vector<int> f(nq), fp(nq);
    for (int q = 0; q < nq; ++q) {
      f[q] = static_cast<int>(rest % na);
      rest /= na;
    }
    for (int q = 0; q < nq; ++q) {
      fp[q] = static_cast<int>(rest % na);
      rest /= na;
    }
    double v = 0;
    for (int q = 0; q < nq; ++q) {
      for (int qp = 0; qp < nq; ++qp) {
        if (g.win(q, qp, f[q], fp[qp])) v += g.pi.value(q, qp);
      }
    }
    best = std::max(best, v);
  }
  return best;
}

// Trine measurement for the triangle 2-coloring game: answer-0 projector per
// question is rank one with Bloch vectors 120 degrees apart.
SyncQuantumStrategy trine_strategy() {
  SyncQuantumStrategy s;
  s.dim = 2;
  s.pvms.assign(3, std::vector<cmat>(2, cmat::Zero(2, 2)));
  for (int q = 0; q < 3; ++q) {
    const double angle = 2.0 * M_PI * q / 3.0;
    const double ux = std::cos(angle);
    const double uy = std::sin(angle);
    cmat p(2, 2);
    p << 0.5 * (1 + 0.0), 0.5 * std::complex<double>(ux, -uy),
        0.5 * std::complex<double>(ux, uy), 0.5 * (1 - 0.0);
    s.pvms[q][0] = p;
    s.pvms[q][1] = cmat::Identity(2, 2) - p;
  }
  return s;
}

}  // namespace

TEST_SUITE("games") {

TEST_CASE("validate agreement game and broken variants") {
  SynchronousGame g = agreement_game();
  CHECK(validate_game(g).ok());

  SynchronousGame broken = g;
  broken.set_win(0, 0, 0, 1, true);
  const auto report = validate_game(broken);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].find("(0,0;0,1)") != std::string::npos);

  SynchronousGame scaled = g;
  scaled.pi = Distribution::from_exact(2, {Rat(1, 8), Rat(1, 8), Rat(1, 8), Rat(1, 8)});
  const auto report2 = validate_game(scaled);
  REQUIRE_FALSE(report2.ok());
  CHECK(report2.violations[0].find("1/2") != std::string::npos);
}

TEST_CASE("classical value of the agreement game") {
  const auto result = classical_value(agreement_game());
  CHECK(result.value == 1.0);
  REQUIRE(result.exact.has_value());
  CHECK(*result.exact == Rat(1));
}

TEST_CASE("classical value of the (2,1)-luck game") {
  const auto result = classical_value(make_luck_game({2, 1}));
  REQUIRE(result.exact.has_value());
  CHECK(*result.exact == Rat(1, 2));
}

TEST_CASE("classical value of the triangle 2-coloring game") {
  const SynchronousGame g = triangle_coloring_game(2);
  // Oracle: direct enumeration of all 64 deterministic pairs.
  const double oracle = oracle_best_pair_value(g);
  CHECK(oracle == doctest::Approx(7.0 / 9.0).epsilon(1e-14));
  const auto result = classical_value(g);
  REQUIRE(result.exact.has_value());
  CHECK(*result.exact == Rat(7, 9));
  // The witness attains the value exactly.
  CHECK(eval_deterministic_pair_exact(g, result.witness) == *result.exact);
}

TEST_CASE("classical value witness re-evaluates bit-identically on float input") {
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    SynchronousGame g = random_sync_game(3, 2, 0.4, rng);
    // Convert to non-exact distribution to exercise the float path.
    std::vector<double> values;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) values.push_back(g.pi.value(i, j));
    }
    g.pi = Distribution::from_values(3, values);
    const auto result = classical_value(g);
    CHECK(result.value == eval_deterministic_pair(g, result.witness));
    CHECK(result.value <= 1.0 + 1e-12);
  }
}

TEST_CASE("classical value budget") {
  Rng rng(1);
  const SynchronousGame g = random_sync_game(4, 3, 0.3, rng);
  CHECK_THROWS_AS(classical_value(g, 10.0), std::runtime_error);
}

TEST_CASE("synchronous-only restriction never beats the pair optimum") {
  Rng rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    const SynchronousGame g = random_sync_game(3, 3, 0.3, rng);
    const auto pairs = classical_value(g);
    const auto sync = classical_value(g, 1e8, true);
    CHECK(*sync.exact <= *pairs.exact);
    CHECK(sync.witness.f == sync.witness.f_prime);
  }
}

TEST_CASE("quantum evaluation: scalar strategies match the classical formula") {
  const SynchronousGame g = agreement_game();
  SyncQuantumStrategy s = deterministic_direct_sum(g, {{0, 0}});
  CHECK(eval_sync_strategy(g, s) == doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    const SynchronousGame h = random_sync_game(3, 2, 0.4, rng);
    std::vector<int> f = {static_cast<int>(rng() % 2), static_cast<int>(rng() % 2),
                          static_cast<int>(rng() % 2)};
    const SyncQuantumStrategy d1 = deterministic_direct_sum(h, {f});
    const double quantum = eval_sync_strategy(h, d1);
    const double classical = eval_deterministic_pair(h, {f, f});
    CHECK(quantum == doctest::Approx(classical).epsilon(1e-13));
  }
}

TEST_CASE("trine strategy reaches 5/6 on the triangle 2-coloring game") {
  const SynchronousGame g = triangle_coloring_game(2);
  const SyncQuantumStrategy s = trine_strategy();
  // Oracle: tau(P Q) = (1 + u.w)/4 for rank-one Bloch projectors. Within a
  // question the vectors agree, across questions they are 120 degrees apart.
  double oracle = 0;
  for (int q = 0; q < 3; ++q) {
    for (int qp = 0; qp < 3; ++qp) {
      if (q == qp) {
        oracle += (1.0 / 9.0) * 1.0;  // PVM: equal answers always
      } else {
        const double dot = std::cos(2.0 * M_PI * (q - qp) / 3.0);
        // winning answers differ: tau(P^0 (1-P'^0)) + tau((1-P^0) P'^0)
        oracle += (1.0 / 9.0) * 2.0 * (1.0 - dot) / 4.0;
      }
    }
  }
  CHECK(oracle == doctest::Approx(5.0 / 6.0).epsilon(1e-13));
  CHECK(eval_sync_strategy(g, s) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("evaluation is invariant under global unitary conjugation") {
  Rng rng(43);
  const SynchronousGame g = triangle_coloring_game(2);
  SyncQuantumStrategy s = trine_strategy();
  const double base = eval_sync_strategy(g, s);
  for (int trial = 0; trial < 5; ++trial) {
    const cmat u = random_unitary(2, rng);
    SyncQuantumStrategy conj = s;
    for (auto& family : conj.pvms) {
      for (auto& p : family) p = u * p * u.adjoint();
    }
    CHECK(std::abs(eval_sync_strategy(g, conj) - base) <= 1e-10);
  }
  // Random strategies at d = 8.
  for (int trial = 0; trial < 3; ++trial) {
    const SynchronousGame h = random_sync_game(3, 3, 0.4, rng);
    SyncQuantumStrategy big;
    big.dim = 8;
    for (int q = 0; q < 3; ++q) big.pvms.push_back(random_pvm(8, 3, rng));
    const double value = eval_sync_strategy(h, big);
    CHECK(value >= -1e-9);
    CHECK(value <= 1.0 + 1e-9);
    const cmat u = random_unitary(8, rng);
    for (auto& family : big.pvms) {
      for (auto& p : family) p = u * p * u.adjoint();
    }
    CHECK(std::abs(eval_sync_strategy(h, big) - value) <= 1e-10);
  }
}

TEST_CASE("diagonal weighting on a float distribution") {
  SynchronousGame g = agreement_game();
  g.pi = Distribution::from_values(2, {0.25, 0.25, 0.25, 0.25});
  const SynchronousGame w = c_diagonal_weighting(g, Rat(1, 4));
  CHECK_FALSE(w.pi.exact());
  // C/t + (1-C)/t^2 at t = 2, C = 1/4.
  CHECK(w.pi.value(0, 0) == doctest::Approx(0.125 + 0.75 * 0.25).epsilon(1e-15));
  CHECK(w.pi.sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(diagonal_dominance(w.pi) >= 0.125 - 1e-15);
}

TEST_CASE("validation flags duplicate labels") {
  SynchronousGame g = agreement_game();
  g.questions = {"0", "0"};
  CHECK_FALSE(validate_game(g).ok());
}

TEST_CASE("diagonal loss of a valid strategy vanishes") {
  Rng rng(47);
  for (int trial = 0; trial < 5; ++trial) {
    const SynchronousGame g = random_sync_game(3, 3, 0.4, rng);
    SyncQuantumStrategy s;
    s.dim = 6;
    for (int q = 0; q < 3; ++q) s.pvms.push_back(random_pvm(6, 3, rng));
    double diag_loss = 0;
    for (int q = 0; q < 3; ++q) {
      for (int a = 0; a < 3; ++a) {
        for (int ap = 0; ap < 3; ++ap) {
          if (a != ap) {
            diag_loss += g.pi.value(q, q) *
                         normalized_trace_product(s.pvms[q][a], s.pvms[q][ap]).real();
          }
        }
      }
    }
    CHECK(std::abs(diag_loss) <= 1e-10);
  }
}

TEST_CASE("diagonal weighting") {
  const SynchronousGame g = triangle_coloring_game(2);

  SUBCASE("C = 0 leaves the distribution unchanged") {
    const SynchronousGame w = c_diagonal_weighting(g, Rat(0));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(w.pi.exact_value(i, j) == g.pi.exact_value(i, j));
    }
  }

  SUBCASE("uniform base distribution gets C/t + (1-C)/t^2 on the diagonal") {
    const Rat c(1, 3);
    const SynchronousGame w = c_diagonal_weighting(g, c);
    const Rat expected = c / 3 + (Rat(1) - c) / 9;
    for (int i = 0; i < 3; ++i) CHECK(w.pi.exact_value(i, i) == expected);
    CHECK(w.pi.exact_sum() == Rat(1));
  }

  SUBCASE("output is C/2 diagonally dominant") {
    for (const Rat& c : {Rat(0), Rat(1, 4), Rat(2, 5), Rat(49, 100)}) {
      const SynchronousGame w = c_diagonal_weighting(g, c);
      CHECK(diagonal_dominance_exact(w.pi) >= c / 2);
      CHECK(validate_game(w).ok());
    }
  }

  SUBCASE("C out of range") {
    CHECK_THROWS_AS(c_diagonal_weighting(g, Rat(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(c_diagonal_weighting(g, Rat(-1, 10)), std::invalid_argument);
  }

  SUBCASE("weighted classical value dominates the diagonal mass") {
    Rng rng(53);
    for (int trial = 0; trial < 5; ++trial) {
      const SynchronousGame h = random_sync_game(3, 2, 0.5, rng);
      const SynchronousGame w = c_diagonal_weighting(h, Rat(1, 3));
      Rat diag_mass(0);
      for (int q = 0; q < w.nq(); ++q) diag_mass += w.pi.exact_value(q, q);
      CHECK(*classical_value(w).exact >= diag_mass);
    }
  }
}

TEST_CASE("diagonal dominance") {
  CHECK(diagonal_dominance_exact(Distribution::uniform(4)) == Rat(1, 4));
  CHECK(diagonal_dominance_exact(Distribution::diag_weighted(5)) == Rat(1, 2) + Rat(1, 10));
  // Zero diagonal entry.
  CHECK(diagonal_dominance(Distribution::from_exact(
            2, {Rat(0), Rat(1, 2), Rat(1, 2), Rat(0)})) == 0.0);
}

}  // TEST_SUITE
