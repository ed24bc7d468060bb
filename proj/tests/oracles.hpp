#pragma once

// Test-only oracles, kept independent of the library's implementation
// paths: permutation-based isomorphism, backtracking bijection search,
// brute-force injective homomorphism search, Pruefer-sequence tree
// generation, and a direct recursion on the degree rules for vertex counts.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "sibtree/core/embed.hpp"
#include "sibtree/core/tree.hpp"

namespace oracles {

using sibtree::DecoratedTree;
using sibtree::VertexId;

inline std::vector<std::pair<VertexId, VertexId>> edge_list(const DecoratedTree& t) {
  std::vector<std::pair<VertexId, VertexId>> es;
  for (VertexId v = 0; v < t.size(); ++v)
    for (VertexId w : t.neighbors(v))
      if (v < w) es.emplace_back(v, w);
  return es;
}

inline bool same_decoration(const sibtree::VertexRecord& a, const sibtree::VertexRecord& b) {
  return a.kind == b.kind && a.label == b.label && a.raytype == b.raytype &&
         a.amalgamated == b.amalgamated && a.frontier == b.frontier;
}

// Check every permutation of [0,n); only for tiny trees.
inline bool perm_isomorphic(const DecoratedTree& a, const DecoratedTree& b, bool rooted) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto edges_b = edge_list(b);
  std::sort(edges_b.begin(), edges_b.end());
  do {
    if (rooted && perm[*a.root] != *b.root) continue;
    bool ok = true;
    for (VertexId v = 0; v < n && ok; ++v) ok = same_decoration(a.rec(v), b.rec(perm[v]));
    for (VertexId v = 0; v < n && ok; ++v) {
      if (a.degree(v) != b.degree(perm[v])) ok = false;
      for (VertexId w : a.neighbors(v)) {
        auto e = std::minmax(perm[v], perm[w]);
        if (!std::binary_search(edges_b.begin(), edges_b.end(), std::make_pair(e.first, e.second))) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Backtracking bijection search with adjacency-consistency pruning;
// exact for moderate sizes.
inline bool backtrack_isomorphic(const DecoratedTree& a, const DecoratedTree& b, bool rooted) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  std::vector<VertexId> img(n, sibtree::kNoVertex);
  std::vector<char> used(n, 0);
  // order guest vertices so each (after the first) touches an assigned one
  std::vector<VertexId> order = {rooted ? *a.root : 0};
  std::vector<char> seen(n, 0);
  seen[order[0]] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (VertexId w : a.neighbors(order[i]))
      if (!seen[w]) {
        seen[w] = 1;
        order.push_back(w);
      }
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == n) return true;
    VertexId g = order[i];
    for (VertexId h = 0; h < n; ++h) {
      if (used[h] || !same_decoration(a.rec(g), b.rec(h))) continue;
      if (rooted && g == *a.root && h != *b.root) continue;
      if (a.degree(g) != b.degree(h)) continue;
      bool ok = true;
      for (VertexId w : a.neighbors(g)) {
        if (img[w] == sibtree::kNoVertex) continue;
        bool adj = false;
        for (VertexId x : b.neighbors(h)) adj |= x == img[w];
        if (!adj) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      img[g] = h;
      used[h] = 1;
      if (rec(i + 1)) return true;
      img[g] = sibtree::kNoVertex;
      used[h] = 0;
    }
    return false;
  };
  return rec(0);
}

// Brute-force injective edge-preserving decoration-compatible map search;
// closed-frontier semantics, guest anchored nowhere.
inline bool brute_embedding_exists(const DecoratedTree& g, const DecoratedTree& h, bool rooted) {
  const std::size_t ng = g.size(), nh = h.size();
  if (ng > nh) return false;
  std::vector<VertexId> img(ng, sibtree::kNoVertex);
  std::vector<char> used(nh, 0);
  std::vector<VertexId> order = {rooted ? *g.root : 0};
  std::vector<char> seen(ng, 0);
  seen[order[0]] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (VertexId w : g.neighbors(order[i]))
      if (!seen[w]) {
        seen[w] = 1;
        order.push_back(w);
      }
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == ng) return true;
    VertexId gv = order[i];
    for (VertexId hv = 0; hv < nh; ++hv) {
      if (used[hv] || !sibtree::decoration_compatible(g.rec(gv), h.rec(hv))) continue;
      if (rooted && gv == *g.root && hv != *h.root) continue;
      bool ok = true;
      for (VertexId w : g.neighbors(gv)) {
        if (img[w] == sibtree::kNoVertex) continue;
        bool adj = false;
        for (VertexId x : h.neighbors(hv)) adj |= x == img[w];
        if (!adj) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      img[gv] = hv;
      used[hv] = 1;
      if (rec(i + 1)) return true;
      img[gv] = sibtree::kNoVertex;
      used[hv] = 0;
    }
    return false;
  };
  return rec(0);
}

// Labelled tree on n vertices from a Pruefer sequence.
inline DecoratedTree tree_from_pruefer(const std::vector<int>& seq, int n) {
  DecoratedTree t;
  for (int i = 0; i < n; ++i) {
    sibtree::VertexRecord r;
    r.kind = sibtree::VertexKind::Gadget; // undecorated
    r.address = sibtree::parse_address("z");
    r.address.moves.push_back(
        {sibtree::MoveTag::CopyStep, static_cast<std::int16_t>(i), 0});
    t.add_vertex(std::move(r));
  }
  if (n == 1) return t;
  std::vector<int> deg(n, 1);
  for (int x : seq) ++deg[x];
  std::vector<int> ptr;
  for (int i = 0; i < n; ++i) ptr.push_back(i);
  std::vector<char> done(n, 0);
  std::vector<int> degree = deg;
  for (int x : seq) {
    int leaf = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && degree[i] == 1) {
        leaf = i;
        break;
      }
    t.add_edge(static_cast<VertexId>(leaf), static_cast<VertexId>(x));
    done[leaf] = 1;
    --degree[x];
  }
  int a = -1, b = -1;
  for (int i = 0; i < n; ++i)
    if (!done[i]) (a < 0 ? a : b) = i;
  t.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b));
  return t;
}

// Vertex count of the R-ball of given radius, by direct recursion on the
// degree rules, restated here independently of the builder: the root owes
// two label-1 children; another label-0 vertex owes one label-1 child; a
// label-l vertex owes the two labels of {l-1, l, l+1} its parent does not
// supply.
inline long rball_vertex_count(int radius) {
  std::function<long(int, int, int)> rec = [&](int lab, int par, int depth) -> long {
    if (depth == radius) return 1;
    long total = 1;
    std::vector<int> kids;
    if (par < 0)
      kids = {1, 1};
    else if (lab == 0)
      kids = {1};
    else {
      for (int k : {lab - 1, lab, lab + 1})
        if (k != par) kids.push_back(k);
    }
    for (int kl : kids) total += rec(kl, lab, depth + 1);
    return total;
  };
  return rec(0, -1, 0);
}

// Colour by rescanning the path right to left for the first equal-adjacent
// pair (independent of the library scan).
inline int colour_rescan(const DecoratedTree& t, VertexId v, VertexId u) {
  if (u == v) return 0;
  auto p = t.path(v, u);
  std::reverse(p.begin(), p.end());
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (*t.rec(p[i]).label == *t.rec(p[i + 1]).label) return *t.rec(p[i]).label;
  return -1;
}

} // namespace oracles
