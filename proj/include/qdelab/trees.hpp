#pragma once
// Admissible rooted trees on a Young diagram.
//
// The skeleton graph joins adjacent boxes (sharing an edge). Every L-shaped
// triple {(x,y),(x+1,y),(x+1,y+1)} in the diagram contributes two skeleton
// edges {(x,y)-(x+1,y)} and {(x+1,y)-(x+1,y+1)}; an admissible tree removes
// exactly one edge of each L. There are 2^m such trees, m = number of
// L-shapes = sum over content multiplicities (m_i - 1). Each tree is rooted
// at the corner (1,1) and oriented away from the root; kappa counts arrows
// whose head has a smaller row or column than its tail.

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdelab/partitions.hpp"
#include "qdelab/young.hpp"

namespace qdelab {

struct OrientedTree {
  // (tail, head) box indices, oriented away from the root (box 0).
  std::vector<std::pair<int, int>> edges;
  int kappa = 0;
  // Per edge: vertices of the head-side subtree (including the head) and its
  // size l_e.
  std::vector<std::vector<int>> subtree;
  std::vector<int> l_e;
};

inline std::vector<std::pair<int, int>> skeleton_edges(const Partition& lam) {
  auto bs = boxes_of(lam);
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < static_cast<int>(bs.size()); ++i) {
    const Box& b = bs[i];
    if (in_diagram(lam, b.row, b.col + 1))
      es.push_back({i, box_index(lam, b.row, b.col + 1)});
    if (in_diagram(lam, b.row + 1, b.col))
      es.push_back({i, box_index(lam, b.row + 1, b.col)});
  }
  return es;
}

// L-shapes as pairs of skeleton-edge indices (vertical edge, horizontal edge).
inline std::vector<std::pair<int, int>> l_shapes(
    const Partition& lam, const std::vector<std::pair<int, int>>& skel) {
  auto find_edge = [&](int u, int v) {
    for (int k = 0; k < static_cast<int>(skel.size()); ++k)
      if ((skel[k].first == u && skel[k].second == v) ||
          (skel[k].first == v && skel[k].second == u))
        return k;
    throw std::logic_error("l_shapes: missing skeleton edge");
  };
  std::vector<std::pair<int, int>> ls;
  auto bs = boxes_of(lam);
  for (const Box& b : bs) {
    if (in_diagram(lam, b.row + 1, b.col) &&
        in_diagram(lam, b.row + 1, b.col + 1)) {
      int u = box_index(lam, b.row, b.col);
      int v = box_index(lam, b.row + 1, b.col);
      int w = box_index(lam, b.row + 1, b.col + 1);
      ls.push_back({find_edge(u, v), find_edge(v, w)});
    }
  }
  return ls;
}

inline std::vector<OrientedTree> enumerate_trees(const Partition& lam) {
  auto bs = boxes_of(lam);
  int n = static_cast<int>(bs.size());
  auto skel = skeleton_edges(lam);
  auto ls = l_shapes(lam, skel);
  int m = static_cast<int>(ls.size());

  // Cross-check the L-shape count against content multiplicities.
  {
    std::map<int, int> mult;
    for (const Box& b : bs) mult[content_of(b)]++;
    int expect = 0;
    for (auto& [c, k] : mult) expect += k - 1;
    if (expect != m) throw std::logic_error("enumerate_trees: L-shape count");
  }

  std::vector<OrientedTree> out;
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<bool> removed(skel.size(), false);
    for (int i = 0; i < m; ++i)
      removed[static_cast<std::size_t>(mask & (1 << i) ? ls[i].second
                                                       : ls[i].first)] = true;
    // Build adjacency of the kept edges.
    std::vector<std::vector<int>> adj(n);
    int kept = 0;
    for (std::size_t k = 0; k < skel.size(); ++k) {
      if (removed[k]) continue;
      adj[skel[k].first].push_back(skel[k].second);
      adj[skel[k].second].push_back(skel[k].first);
      kept++;
    }
    if (kept != n - 1)
      throw std::logic_error("enumerate_trees: edge count after removal");
    // Orient away from the root (box 0) by DFS; verify spanning.
    OrientedTree t;
    std::vector<int> parent(n, -2);
    std::vector<int> order;
    parent[0] = -1;
    std::vector<int> stack = {0};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      order.push_back(u);
      for (int v : adj[u])
        if (parent[v] == -2) {
          parent[v] = u;
          t.edges.push_back({u, v});
          stack.push_back(v);
        }
    }
    if (static_cast<int>(order.size()) != n)
      throw std::logic_error("enumerate_trees: not spanning");
    for (auto& [u, v] : t.edges)
      if (bs[v].row < bs[u].row || bs[v].col < bs[u].col) t.kappa++;
    // Subtree membership per edge: descendants of the head.
    for (auto& [u, v] : t.edges) {
      std::vector<int> sub;
      std::vector<int> st = {v};
      std::vector<bool> seen(n, false);
      seen[v] = true;
      while (!st.empty()) {
        int w = st.back();
        st.pop_back();
        sub.push_back(w);
        for (auto& [p, q] : t.edges)
          if (p == w && !seen[q]) {
            seen[q] = true;
            st.push_back(q);
          }
      }
      std::sort(sub.begin(), sub.end());
      t.subtree.push_back(sub);
      t.l_e.push_back(static_cast<int>(sub.size()));
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace qdelab
