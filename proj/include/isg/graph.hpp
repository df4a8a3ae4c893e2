#pragma once

#include "isg/games.hpp"

#include <string>
#include <vector>

namespace isg {

struct Vertex {
  int q = 0;
  int a = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

// Undirected simple graph; vertices kept in (q, a) lexicographic order and
// adjacency as a dense symmetric bit matrix with false diagonal.
class GameGraph {
 public:
  GameGraph() = default;
  explicit GameGraph(std::vector<Vertex> vertices);

  int size() const { return n_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u) * n_ + v]; }
  void set_adjacent(int u, int v, bool on);
  int degree(int v) const;
  int edge_count() const;
  // Index of a vertex, -1 when absent.
  int find_vertex(const Vertex& v) const;

 private:
  std::vector<Vertex> vertices_;
  int n_ = 0;
  std::vector<bool> adj_;
};

// X(G): vertex set Q x A, (q,a) ~ (q',a') iff V(q,q';a,a') = 0 or
// V(q',q;a',a) = 0.
GameGraph build_game_graph(const SynchronousGame& g);

// True iff the vertices are distinct and pairwise non-adjacent.
// Throws on out-of-range indices.
bool is_independent_set(const GameGraph& x, const std::vector<int>& set);

std::string export_dot(const GameGraph& x);
std::string export_edge_list(const GameGraph& x);

}  // namespace isg
