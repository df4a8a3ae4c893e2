#include "isg/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace isg {

GameGraph::GameGraph(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw std::invalid_argument("duplicate vertex");
  }
  n_ = static_cast<int>(vertices_.size());
  adj_.assign(static_cast<std::size_t>(n_) * n_, false);
}

void GameGraph::set_adjacent(int u, int v, bool on) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) throw std::out_of_range("vertex index out of range");
  if (u == v) {
    if (on) throw std::invalid_argument("self-loops are not allowed");
    return;
  }
  adj_[static_cast<std::size_t>(u) * n_ + v] = on;
  adj_[static_cast<std::size_t>(v) * n_ + u] = on;
}

int GameGraph::degree(int v) const {
  int deg = 0;
  for (int u = 0; u < n_; ++u) {
    if (adjacent(v, u)) ++deg;
  }
  return deg;
}

int GameGraph::edge_count() const {
  int count = 0;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) ++count;
    }
  }
  return count;
}

int GameGraph::find_vertex(const Vertex& v) const {
  const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || !(*it == v)) return -1;
  return static_cast<int>(it - vertices_.begin());
}

GameGraph build_game_graph(const SynchronousGame& g) {
  const ValidationReport report = validate_game(g);
  if (!report.ok()) {
    throw std::invalid_argument("invalid game: " + report.to_string());
  }
  const int na = g.na();
  std::vector<Vertex> vertices;
  vertices.reserve(static_cast<std::size_t>(g.nq()) * na);
  for (int q = 0; q < g.nq(); ++q) {
    for (int a = 0; a < na; ++a) vertices.push_back(Vertex{q, a});
  }
  GameGraph x(std::move(vertices));
  const int n = x.size();
  for (int u = 0; u < n; ++u) {
    const Vertex vu = x.vertices()[u];
    for (int v = u + 1; v < n; ++v) {
      const Vertex vv = x.vertices()[v];
      const bool adjacent = !g.win(vu.q, vv.q, vu.a, vv.a) || !g.win(vv.q, vu.q, vv.a, vu.a);
      x.set_adjacent(u, v, adjacent);
    }
  }
  return x;
}

bool is_independent_set(const GameGraph& x, const std::vector<int>& set) {
  for (int v : set) {
    if (v < 0 || v >= x.size()) throw std::out_of_range("unknown vertex " + std::to_string(v));
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (set[i] == set[j] || x.adjacent(set[i], set[j])) return false;
    }
  }
  return true;
}

namespace {

std::string vertex_name(const Vertex& v) {
  return std::to_string(v.q) + "," + std::to_string(v.a);
}

}  // namespace

std::string export_dot(const GameGraph& x) {
  std::ostringstream out;
  out << "graph X {\n";
  for (const Vertex& v : x.vertices()) {
    out << "  \"" << vertex_name(v) << "\";\n";
  }
  for (int u = 0; u < x.size(); ++u) {
    for (int v = u + 1; v < x.size(); ++v) {
      if (x.adjacent(u, v)) {
        out << "  \"" << vertex_name(x.vertices()[u]) << "\" -- \"" << vertex_name(x.vertices()[v])
            << "\";\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_edge_list(const GameGraph& x) {
  std::ostringstream out;
  for (int u = 0; u < x.size(); ++u) {
    for (int v = u + 1; v < x.size(); ++v) {
      if (x.adjacent(u, v)) {
        out << vertex_name(x.vertices()[u]) << " " << vertex_name(x.vertices()[v]) << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace isg
