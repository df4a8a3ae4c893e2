#include "isg/serialize.hpp"

#include <cmath>
#include <fstream>

namespace isg {

namespace {

const json& expect_field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ParseError(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

int expect_positive_int(const json& j, const char* name) {
  const json& field = expect_field(j, name);
  if (!field.is_number_integer() || field.get<long long>() < 1) {
    throw ParseError(std::string("field '") + name + "' must be a positive integer");
  }
  return field.get<int>();
}

std::vector<std::string> labels_from_json(const json& field, const char* name) {
  std::vector<std::string> labels;
  if (field.is_number_integer()) {
    const long long count = field.get<long long>();
    if (count < 1) throw ParseError(std::string(name) + " count must be >= 1");
    for (long long i = 0; i < count; ++i) labels.push_back(std::to_string(i));
  } else if (field.is_array()) {
    for (const json& item : field) {
      if (item.is_string()) {
        labels.push_back(item.get<std::string>());
      } else if (item.is_number_integer()) {
        labels.push_back(std::to_string(item.get<long long>()));
      } else {
        throw ParseError(std::string(name) + " labels must be strings or integers");
      }
    }
    if (labels.empty()) throw ParseError(std::string(name) + " list must be non-empty");
  } else {
    throw ParseError(std::string(name) + " must be a count or a label list");
  }
  return labels;
}

Distribution distribution_from_json(const json& field, int n) {
  if (field.is_string()) {
    const std::string name = field.get<std::string>();
    if (name == "uniform") return Distribution::uniform(n);
    if (name == "diag_weighted") return Distribution::diag_weighted(n);
    throw ParseError("unknown distribution '" + name + "'");
  }
  if (!field.is_array() || static_cast<int>(field.size()) != n) {
    throw ParseError("distribution must be 'uniform', 'diag_weighted' or an " + std::to_string(n) +
                     "x" + std::to_string(n) + " matrix");
  }
  std::vector<Rat> exact;
  std::vector<double> values;
  bool all_exact = true;
  for (const json& row : field) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError("distribution rows must have " + std::to_string(n) + " entries");
    }
    for (const json& cell : row) {
      if (cell.is_string()) {
        const Rat r = parse_rational(cell.get<std::string>());
        exact.push_back(r);
        values.push_back(to_double(r));
      } else if (cell.is_number_integer()) {
        exact.push_back(Rat(cell.get<long long>()));
        values.push_back(static_cast<double>(cell.get<long long>()));
      } else if (cell.is_number()) {
        all_exact = false;
        exact.clear();
        values.push_back(cell.get<double>());
      } else {
        throw ParseError("distribution entries must be numbers or 'p/q' strings");
      }
    }
  }
  if (all_exact) return Distribution::from_exact(n, std::move(exact));
  // Re-read every cell as double to keep positions aligned.
  values.clear();
  for (const json& row : field) {
    for (const json& cell : row) {
      values.push_back(cell.is_string() ? to_double(parse_rational(cell.get<std::string>()))
                                        : cell.get<double>());
    }
  }
  return Distribution::from_values(n, std::move(values));
}

json distribution_to_json(const Distribution& pi) {
  const int n = pi.size();
  if (pi.exact()) {
    bool uniform = true;
    const Rat u(1, static_cast<long long>(n) * n);
    for (int i = 0; i < n && uniform; ++i) {
      for (int j = 0; j < n && uniform; ++j) {
        if (pi.exact_value(i, j) != u) uniform = false;
      }
    }
    if (uniform) return json("uniform");
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int j = 0; j < n; ++j) row.push_back(format_rational(pi.exact_value(i, j)));
      rows.push_back(std::move(row));
    }
    return rows;
  }
  json rows = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) row.push_back(pi.value(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

json matrix_to_json(const cmat& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    entries.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

cmat matrix_from_json(const json& j) {
  const int dim = expect_positive_int(j, "dim");
  if (dim > kMaxDim) {
    throw ParseError("matrix dimension " + std::to_string(dim) + " exceeds the cap " +
                     std::to_string(kMaxDim));
  }
  const json& entries = expect_field(j, "entries");
  if (!entries.is_array() || static_cast<int>(entries.size()) != dim) {
    throw ParseError("matrix needs " + std::to_string(dim) + " rows");
  }
  cmat m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = entries.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ParseError("matrix row " + std::to_string(r) + " needs " + std::to_string(dim) +
                       " entries");
    }
    for (int c = 0; c < dim; ++c) {
      const json& cell = row.at(c);
      if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
          !cell.at(1).is_number()) {
        throw ParseError("matrix entries must be [re, im] pairs");
      }
      m(r, c) = std::complex<double>(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  if (!m.allFinite()) throw ParseError("matrix has non-finite entries");
  return m;
}

json game_to_json(const SynchronousGame& g) {
  json losing = json::array();
  for (int q = 0; q < g.nq(); ++q) {
    for (int qp = 0; qp < g.nq(); ++qp) {
      for (int a = 0; a < g.na(); ++a) {
        for (int ap = 0; ap < g.na(); ++ap) {
          if (!g.win(q, qp, a, ap)) losing.push_back(json::array({q, qp, a, ap}));
        }
      }
    }
  }
  return json{{"questions", g.questions},
              {"answers", g.answers},
              {"distribution", distribution_to_json(g.pi)},
              {"losing_pairs", std::move(losing)}};
}

SynchronousGame game_from_json(const json& j) {
  std::vector<std::string> questions = labels_from_json(expect_field(j, "questions"), "questions");
  std::vector<std::string> answers = labels_from_json(expect_field(j, "answers"), "answers");
  const int nq = static_cast<int>(questions.size());
  const int na = static_cast<int>(answers.size());

  SynchronousGame g;
  g.questions = std::move(questions);
  g.answers = std::move(answers);
  g.pi = distribution_from_json(expect_field(j, "distribution"), nq);
  // Literal semantics: every unlisted tuple wins. A valid file therefore also
  // lists the diagonal losing cells forced by synchronicity.
  g.predicate.assign(static_cast<std::size_t>(nq) * nq * na * na, true);
  const json& losing = expect_field(j, "losing_pairs");
  if (!losing.is_array()) throw ParseError("losing_pairs must be an array");
  for (const json& tuple : losing) {
    if (!tuple.is_array() || tuple.size() != 4) {
      throw ParseError("losing_pairs entries must be [q, q', a, a'] tuples");
    }
    const int q = tuple.at(0).get<int>();
    const int qp = tuple.at(1).get<int>();
    const int a = tuple.at(2).get<int>();
    const int ap = tuple.at(3).get<int>();
    if (q < 0 || q >= nq || qp < 0 || qp >= nq || a < 0 || a >= na || ap < 0 || ap >= na) {
      throw ParseError("losing_pairs tuple out of range");
    }
    g.set_win(q, qp, a, ap, false);
  }
  return g;
}

json graph_to_json(const GameGraph& x) {
  json vertices = json::array();
  for (const Vertex& v : x.vertices()) vertices.push_back(json::array({v.q, v.a}));
  json edges = json::array();
  for (int u = 0; u < x.size(); ++u) {
    for (int v = u + 1; v < x.size(); ++v) {
      if (x.adjacent(u, v)) edges.push_back(json::array({u, v}));
    }
  }
  return json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

GameGraph graph_from_json(const json& j) {
  const json& vertices = expect_field(j, "vertices");
  if (!vertices.is_array() || vertices.empty()) {
    throw ParseError("graph needs a non-empty vertices array");
  }
  std::vector<Vertex> verts;
  for (const json& v : vertices) {
    if (!v.is_array() || v.size() != 2) throw ParseError("vertices must be [q, a] pairs");
    verts.push_back(Vertex{v.at(0).get<int>(), v.at(1).get<int>()});
  }
  GameGraph x(std::move(verts));
  const json& edges = expect_field(j, "edges");
  if (!edges.is_array()) throw ParseError("edges must be an array");
  for (const json& e : edges) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edges must be [u, v] index pairs");
    const int u = e.at(0).get<int>();
    const int v = e.at(1).get<int>();
    if (u < 0 || u >= x.size() || v < 0 || v >= x.size() || u == v) {
      throw ParseError("edge endpoints out of range");
    }
    x.set_adjacent(u, v, true);
  }
  return x;
}

json indep_game_to_json(const IndependentSetGame& game) {
  return json{{"graph", graph_to_json(game.graph)},
              {"t", game.t},
              {"weighting", game.weighting == Weighting::uniform ? "uniform" : "diagonal"}};
}

IndependentSetGame indep_game_from_json(const json& j) {
  GameGraph x = graph_from_json(expect_field(j, "graph"));
  const int t = expect_positive_int(j, "t");
  const std::string w = expect_field(j, "weighting").get<std::string>();
  Weighting weighting;
  if (w == "uniform") {
    weighting = Weighting::uniform;
  } else if (w == "diagonal") {
    weighting = Weighting::diagonal;
  } else {
    throw ParseError("weighting must be 'uniform' or 'diagonal'");
  }
  return make_indep_set_game(std::move(x), t, weighting);
}

json sync_strategy_to_json(const SyncQuantumStrategy& s) {
  json pvms = json::array();
  for (const auto& family : s.pvms) {
    json f = json::array();
    for (const cmat& p : family) f.push_back(matrix_to_json(p));
    pvms.push_back(std::move(f));
  }
  return json{{"dim", s.dim}, {"pvms", std::move(pvms)}};
}

SyncQuantumStrategy sync_strategy_from_json(const json& j) {
  SyncQuantumStrategy s;
  s.dim = expect_positive_int(j, "dim");
  const json& pvms = expect_field(j, "pvms");
  if (!pvms.is_array() || pvms.empty()) throw ParseError("strategy needs a pvms array");
  for (const json& family : pvms) {
    if (!family.is_array() || family.empty()) throw ParseError("each pvm must be a matrix list");
    std::vector<cmat> f;
    for (const json& p : family) {
      f.push_back(matrix_from_json(p));
      if (f.back().rows() != s.dim) throw ParseError("strategy matrix dimension mismatch");
    }
    s.pvms.push_back(std::move(f));
  }
  return s;
}

json indep_strategy_to_json(const IndepStrategy& s, const GameGraph& graph,
                            const std::vector<std::string>& index_questions) {
  json vertices = json::array();
  for (const Vertex& v : graph.vertices()) vertices.push_back(json::array({v.q, v.a}));
  json pvms = json::array();
  for (const auto& family : s.pvms) {
    json f = json::array();
    for (const cmat& p : family) f.push_back(matrix_to_json(p));
    pvms.push_back(std::move(f));
  }
  json out{{"dim", s.dim},
           {"t", s.pvms.size()},
           {"vertices", std::move(vertices)},
           {"pvms", std::move(pvms)}};
  if (!index_questions.empty()) out["index_questions"] = index_questions;
  return out;
}

IndepStrategy indep_strategy_from_json(const json& j) {
  IndepStrategy s;
  s.dim = expect_positive_int(j, "dim");
  const int t = expect_positive_int(j, "t");
  const json& vertices = expect_field(j, "vertices");
  if (!vertices.is_array() || vertices.empty()) throw ParseError("strategy needs a vertices list");
  const std::size_t nv = vertices.size();
  const json& pvms = expect_field(j, "pvms");
  if (!pvms.is_array() || static_cast<int>(pvms.size()) != t) {
    throw ParseError("strategy needs t pvm families");
  }
  for (const json& family : pvms) {
    if (!family.is_array() || family.size() != nv) {
      throw ParseError("each family needs one matrix per vertex");
    }
    std::vector<cmat> f;
    for (const json& p : family) {
      f.push_back(matrix_from_json(p));
      if (f.back().rows() != s.dim) throw ParseError("strategy matrix dimension mismatch");
    }
    s.pvms.push_back(std::move(f));
  }
  return s;
}

json operators_to_json(const std::vector<cmat>& ops) {
  if (ops.empty()) throw std::invalid_argument("no operators");
  json list = json::array();
  for (const cmat& op : ops) list.push_back(matrix_to_json(op));
  return json{{"dim", ops.front().rows()}, {"operators", std::move(list)}};
}

std::vector<cmat> operators_from_json(const json& j) {
  const int dim = expect_positive_int(j, "dim");
  const json& list = expect_field(j, "operators");
  if (!list.is_array() || list.empty()) throw ParseError("operators must be a non-empty array");
  std::vector<cmat> ops;
  for (const json& op : list) {
    ops.push_back(matrix_from_json(op));
    if (ops.back().rows() != dim) throw ParseError("operator dimension mismatch");
  }
  return ops;
}

json rounding_report_to_json(const RoundingReport& r) {
  return json{{"eps_meas", r.eps_meas},
              {"delta_meas", r.delta_meas},
              {"norm_a0", r.norm_a0},
              {"norm_rho_minus_1", r.norm_rho_minus_1},
              {"dist_a_to_b_sq", r.dist_a_to_b_sq},
              {"dist_b_to_c_sq", r.dist_b_to_c_sq},
              {"povm_purity", r.povm_purity},
              {"dist_c_to_p_sq", r.dist_c_to_p_sq},
              {"total_dist_sq", r.total_dist_sq}};
}

json lift_report_to_json(const LiftReport& r) {
  return json{{"delta", r.delta},
              {"per_question_residuals", r.per_question_residuals},
              {"mean_residual", r.mean_residual},
              {"rounding_distances", r.rounding_distances},
              {"value_on_G", r.value_on_G},
              {"bound_rhs", r.bound_rhs},
              {"kappa_prime", r.kappa_prime}};
}

json sharpness_report_to_json(const SharpnessReport& r) {
  return json{{"k", r.params.k},
              {"n", r.params.n},
              {"t", r.t},
              {"epsilon", format_rational(r.epsilon)},
              {"game_value", format_rational(r.game_value)},
              {"strategy_loss", format_rational(r.strategy_loss)},
              {"measured_loss", r.measured_loss},
              {"strategy_value", format_rational(r.strategy_value)},
              {"bound_holds", r.bound_holds}};
}

}  // namespace isg
