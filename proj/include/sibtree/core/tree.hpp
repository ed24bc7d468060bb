#pragma once

// Finite decorated tree: the carrier for every structure built here.
// Vertices carry a kind, an optional label, an optional ray type bit,
// an amalgamation flag and a frontier flag. Frontier vertices sit on a
// truncation boundary; their full neighbourhood is not materialized and
// they are excluded from all lemma-style quantifications.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "address.hpp"

namespace sibtree {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

enum class VertexKind : std::uint8_t { Tree, Copy, Ray, Gadget };

inline const char* kind_name(VertexKind k) {
  switch (k) {
    case VertexKind::Tree: return "tree";
    case VertexKind::Copy: return "copy";
    case VertexKind::Ray: return "ray";
    case VertexKind::Gadget: return "gadget";
  }
  return "?";
}

struct VertexRecord {
  VertexKind kind = VertexKind::Tree;
  std::optional<int> label;
  std::optional<int> raytype;
  bool amalgamated = false;
  bool frontier = false;
  Address address;
};

struct structural_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DecoratedTree {
public:
  std::optional<VertexId> root;

  VertexId add_vertex(VertexRecord rec) {
    rec_.push_back(std::move(rec));
    adj_.emplace_back();
    return static_cast<VertexId>(rec_.size() - 1);
  }

  void add_edge(VertexId u, VertexId v) {
    if (u >= size() || v >= size() || u == v)
      throw structural_error("add_edge: bad endpoints");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }

  std::size_t size() const { return rec_.size(); }
  const VertexRecord& rec(VertexId v) const { return rec_[v]; }
  VertexRecord& rec(VertexId v) { return rec_[v]; }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
  std::size_t degree(VertexId v) const { return adj_[v].size(); }

  // Structural invariants: connected, acyclic, simple, decorations coherent.
  // Ray-type completeness is only required of typed structures.
  void validate(bool typed = false) const {
    if (rec_.empty()) throw structural_error("empty tree");
    std::size_t edges = 0;
    for (VertexId v = 0; v < size(); ++v) {
      edges += adj_[v].size();
      std::vector<VertexId> ns = adj_[v];
      std::sort(ns.begin(), ns.end());
      if (std::adjacent_find(ns.begin(), ns.end()) != ns.end())
        throw structural_error("parallel edge at " + rec_[v].address.str());
      for (VertexId w : ns)
        if (w >= size()) throw structural_error("dangling edge");
      const VertexRecord& r = rec_[v];
      switch (r.kind) {
        case VertexKind::Tree:
          if (!r.label || *r.label != 0) throw structural_error("tree vertex must have label 0");
          break;
        case VertexKind::Copy:
          if (!r.label || *r.label < 1) throw structural_error("copy vertex must have label >= 1");
          break;
        case VertexKind::Gadget:
          if (r.label || r.raytype) throw structural_error("gadget vertex carries no label/type");
          break;
        case VertexKind::Ray:
          if (typed && !r.frontier && !r.raytype)
            throw structural_error("typed ray vertex lacks a type bit");
          break;
      }
    }
    if (edges != 2 * (size() - 1)) throw structural_error("|E| != |V|-1");
    // connectivity
    std::vector<char> seen(size(), 0);
    std::queue<VertexId> q;
    q.push(0);
    seen[0] = 1;
    std::size_t cnt = 0;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      ++cnt;
      for (VertexId w : adj_[v])
        if (!seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
    }
    if (cnt != size()) throw structural_error("disconnected");
    if (root && *root >= size()) throw structural_error("bad root");
  }

  // The unique simple path from u to v, endpoints included.
  std::vector<VertexId> path(VertexId u, VertexId v) const {
    if (u >= size() || v >= size()) throw structural_error("path: bad endpoints");
    if (u == v) return {u};
    std::vector<VertexId> parent(size(), kNoVertex);
    std::queue<VertexId> q;
    q.push(u);
    parent[u] = u;
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop();
      if (x == v) break;
      for (VertexId w : adj_[x])
        if (parent[w] == kNoVertex) {
          parent[w] = x;
          q.push(w);
        }
    }
    if (parent[v] == kNoVertex) throw structural_error("path: unreachable");
    std::vector<VertexId> p{v};
    while (p.back() != u) p.push_back(parent[p.back()]);
    std::reverse(p.begin(), p.end());
    return p;
  }

  // BFS distance to the nearest vertex satisfying pred; nullopt if none.
  template <typename Pred>
  std::optional<int> dist_to_predicate(VertexId v, Pred pred) const {
    std::vector<char> seen(size(), 0);
    std::queue<std::pair<VertexId, int>> q;
    q.push({v, 0});
    seen[v] = 1;
    while (!q.empty()) {
      auto [x, d] = q.front();
      q.pop();
      if (pred(x)) return d;
      for (VertexId w : adj_[x])
        if (!seen[w]) {
          seen[w] = 1;
          q.push({w, d + 1});
        }
    }
    return std::nullopt;
  }

  std::vector<int> bfs_depths(VertexId from) const {
    std::vector<int> d(size(), -1);
    std::queue<VertexId> q;
    q.push(from);
    d[from] = 0;
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop();
      for (VertexId w : adj_[x])
        if (d[w] < 0) {
          d[w] = d[x] + 1;
          q.push(w);
        }
    }
    return d;
  }

  std::map<Address, VertexId> address_index() const {
    std::map<Address, VertexId> idx;
    for (VertexId v = 0; v < size(); ++v) idx.emplace(rec_[v].address, v);
    return idx;
  }

  // Ball of given radius around a centre, re-flagging cut vertices as frontier.
  DecoratedTree extract_ball(VertexId centre, int radius) const {
    std::vector<int> d = bfs_depths(centre);
    std::vector<VertexId> remap(size(), kNoVertex);
    DecoratedTree out;
    for (VertexId v = 0; v < size(); ++v) {
      if (d[v] < 0 || d[v] > radius) continue;
      VertexRecord r = rec_[v];
      if (d[v] == radius && degree(v) > 1) r.frontier = true;
      remap[v] = out.add_vertex(std::move(r));
    }
    for (VertexId v = 0; v < size(); ++v) {
      if (remap[v] == kNoVertex) continue;
      std::size_t kept = 0;
      for (VertexId w : adj_[v]) {
        if (remap[w] == kNoVertex) continue;
        ++kept;
        if (w > v) continue;
        out.add_edge(remap[v], remap[w]);
      }
      if (kept < adj_[v].size()) out.rec(remap[v]).frontier = true;
    }
    out.root = remap[centre];
    return out;
  }

private:
  std::vector<VertexRecord> rec_;
  std::vector<std::vector<VertexId>> adj_;
};

} // namespace sibtree
