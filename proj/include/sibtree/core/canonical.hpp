#pragma once

// Canonical forms for decorated trees. Rooted codes are classic
// recursive sorted-children codes with the decoration folded in; the
// unrooted code anchors at the centroid(s), ties resolved by taking the
// lexicographically smaller rooted code.

#include <algorithm>
#include <string>
#include <vector>

#include "tree.hpp"

namespace sibtree {

namespace detail {

inline std::string decoration_key(const VertexRecord& r) {
  std::string k;
  k += static_cast<char>('0' + static_cast<int>(r.kind));
  k += r.label ? std::to_string(*r.label) : std::string("-");
  k += ';';
  k += r.raytype ? std::to_string(*r.raytype) : std::string("-");
  k += r.amalgamated ? 'a' : '.';
  k += r.frontier ? 'f' : '.';
  return k;
}

inline std::string rooted_code(const DecoratedTree& t, VertexId root) {
  // Explicit stack; paths inside gadget chains can be long.
  std::vector<VertexId> order;
  std::vector<VertexId> parent(t.size(), kNoVertex);
  order.reserve(t.size());
  order.push_back(root);
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    VertexId v = order[i];
    for (VertexId w : t.neighbors(v))
      if (parent[w] == kNoVertex) {
        parent[w] = v;
        order.push_back(w);
      }
  }
  std::vector<std::string> code(t.size());
  for (std::size_t i = order.size(); i-- > 0;) {
    VertexId v = order[i];
    std::vector<std::string> kids;
    for (VertexId w : t.neighbors(v))
      if (parent[w] == v && w != v) kids.push_back(std::move(code[w]));
    std::sort(kids.begin(), kids.end());
    std::string c = "(" + decoration_key(t.rec(v));
    for (auto& k : kids) c += k;
    c += ')';
    code[v] = std::move(c);
  }
  return code[root];
}

inline std::vector<VertexId> centroids(const DecoratedTree& t) {
  const std::size_t n = t.size();
  if (n == 1) return {0};
  std::vector<std::size_t> sub(n, 1);
  std::vector<VertexId> order;
  std::vector<VertexId> parent(n, kNoVertex);
  order.push_back(0);
  parent[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (VertexId w : t.neighbors(order[i]))
      if (parent[w] == kNoVertex) {
        parent[w] = order[i];
        order.push_back(w);
      }
  for (std::size_t i = order.size(); i-- > 1;) sub[parent[order[i]]] += sub[order[i]];
  std::vector<VertexId> cs;
  for (VertexId v = 0; v < n; ++v) {
    std::size_t big = n - sub[v];
    for (VertexId w : t.neighbors(v))
      if (parent[w] == v) big = std::max(big, sub[w]);
    if (big <= n / 2) cs.push_back(v);
  }
  return cs;
}

} // namespace detail

// Byte-string canonical code; equal iff the trees are decoration-preserving
// isomorphic (rooted or unrooted per the flag).
inline std::string canonical_form(const DecoratedTree& t, bool rooted) {
  t.validate();
  if (rooted) {
    if (!t.root) throw parameter_error("canonical_form: rooted requested but no root set");
    return detail::rooted_code(t, *t.root);
  }
  std::string best;
  for (VertexId c : detail::centroids(t)) {
    std::string code = detail::rooted_code(t, c);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

inline bool is_isomorphic(const DecoratedTree& a, const DecoratedTree& b, bool rooted) {
  if (a.size() != b.size()) return false;
  return canonical_form(a, rooted) == canonical_form(b, rooted);
}

} // namespace sibtree
