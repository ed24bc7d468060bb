#pragma once

// Fence partial orders over the gadgets, the double rays and the labelled
// tree, with an order-embedding checker and the graph-versus-order monoid
// comparison.
//
// Gadget fence (even path length 2n): u_0 < u_1, u_{2i} < u_{2i-1},
// u_{2i} < u_{2i+1} for 0 < i < n, u_{2n} < u_{2n-1}, and u_{2n} below every
// fan leaf. The hub carries no relations. Double rays are fenced with even
// positions low; copies of the labelled tree orient each core edge by the
// sign at the nearest tree vertex.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/embed.hpp"
#include "core/tree.hpp"
#include "gadget.hpp"
#include "ray.hpp"
#include "rtree.hpp"

namespace sibtree {

struct PosetOverlay {
  std::size_t n = 0;
  std::vector<std::pair<VertexId, VertexId>> covers; // (lower, upper)

  // reachability over covers; closed under transitivity
  std::vector<std::vector<char>> closure() const {
    std::vector<std::vector<VertexId>> up(n);
    for (auto [lo, hi] : covers) up[lo].push_back(hi);
    std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
    for (VertexId v = 0; v < n; ++v) {
      std::vector<VertexId> stack{v};
      while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (VertexId y : up[x])
          if (!le[v][y]) {
            le[v][y] = 1;
            stack.push_back(y);
          }
      }
    }
    return le;
  }

  // irreflexive and antisymmetric once transitively closed
  void validate() const {
    auto le = closure();
    for (VertexId v = 0; v < n; ++v) {
      if (le[v][v]) throw structural_error("order overlay has a cycle");
      for (VertexId w = 0; w < n; ++w)
        if (v != w && le[v][w] && le[w][v]) throw structural_error("order overlay not antisymmetric");
    }
  }
};

// ---- fence orders -----------------------------------------------------------

// Fence on a standalone gadget built by build_pk; path length must be even.
inline PosetOverlay order_gadget(const GadgetSpec& spec) {
  if (spec.pathlen % 2 != 0) throw parameter_error("order_gadget: even path length required");
  const int n2 = spec.pathlen;
  PosetOverlay o;
  o.n = static_cast<std::size_t>(n2 + spec.fan + 2);
  // vertex ids as laid out by build_pk: 0..n2 path, n2+1 hub, n2+2.. leaves
  auto path = [&](int i) { return static_cast<VertexId>(i); };
  o.covers.emplace_back(path(0), path(1));
  for (int i = 2; i < n2; i += 2) {
    o.covers.emplace_back(path(i), path(i - 1));
    o.covers.emplace_back(path(i), path(i + 1));
  }
  o.covers.emplace_back(path(n2), path(n2 - 1));
  for (int f = 0; f < spec.fan; ++f)
    o.covers.emplace_back(path(n2), static_cast<VertexId>(n2 + 2 + f));
  o.validate();
  return o;
}

// Fence on a poset-variant ray window with materialized gadgets: even ray
// positions low, odd high, plus every attached gadget's fence anchored at
// its ray vertex.
inline PosetOverlay order_ray_window(const RayWindow& w) {
  if (w.variant != RayVariant::Poset) throw parameter_error("order_ray_window: poset variant only");
  PosetOverlay o;
  o.n = w.tree.size();
  for (int j = w.lo; j < w.hi; ++j) {
    VertexId a = w.at.at(j), b = w.at.at(j + 1);
    if (j % 2 == 0)
      o.covers.emplace_back(a, b);
    else
      o.covers.emplace_back(b, a);
  }
  // gadget fences: locate members by address positions
  auto idx = w.tree.address_index();
  for (int j = w.lo; j <= w.hi; ++j) {
    VertexId anchor = w.at.at(j);
    if (w.tree.rec(anchor).frontier) continue;
    bool typed = j % 2 == 0;
    GadgetSpec spec = typed ? type_gadget(w.assignment.at(j)) : poset_odd_gadget();
    GadgetRole role = typed ? GadgetRole::TypeGadget : GadgetRole::ParityGadget;
    const Address& base = w.tree.rec(anchor).address;
    auto at = [&](int pos) { return idx.at(gadget_step(base, role, pos)); };
    // u_0 is the anchor itself
    o.covers.emplace_back(anchor, at(1));
    for (int i = 2; i < spec.pathlen; i += 2) {
      o.covers.emplace_back(at(i), at(i - 1));
      o.covers.emplace_back(at(i), at(i + 1));
    }
    o.covers.emplace_back(at(spec.pathlen), at(spec.pathlen - 1));
    for (int f = 0; f < spec.fan; ++f)
      o.covers.emplace_back(at(spec.pathlen), idx.at(gadget_step(base, role, -(1 + f))));
  }
  o.validate();
  return o;
}

// Orientation of every interior core edge of an R-ball. An edge with labels
// (l, l+1) points up from the lower endpoint iff the sign at the nearest
// tree vertex is positive; an equal-label edge points the other way. Both
// nearest-tree-vertex choices of an equal-label edge must agree (the
// unimodal sign antisymmetry), which is asserted here.
inline PosetOverlay order_r(const RBall& ball, const SignContext& ctx, int depth_cap = 1 << 20) {
  const DecoratedTree& t = ball.tree;
  std::vector<int> depth = t.bfs_depths(ball.centre);
  PosetOverlay o;
  o.n = t.size();
  for (VertexId u = 0; u < t.size(); ++u) {
    for (VertexId v : t.neighbors(u)) {
      if (u > v) continue;
      if (!is_core(t, u) || !is_core(t, v)) continue;
      if (t.rec(u).frontier || t.rec(v).frontier) continue;
      if (depth[u] > depth_cap || depth[v] > depth_cap) continue;
      int lu = *t.rec(u).label, lv = *t.rec(v).label;
      VertexId lo = lu < lv ? u : v, hi = lu < lv ? v : u;
      if (lu != lv) {
        // the decreasing path from the lower endpoint reaches the unique
        // nearest tree vertex of both endpoints
        auto w = descending_tree_vertex(t, lo);
        if (!w) throw truncation_error("order_r: nearest tree vertex not materialized");
        int sigma = *w == lo ? sign_at(t, ctx, *w, hi) : sign_at(t, ctx, *w, lo);
        if (sigma > 0)
          o.covers.emplace_back(lo, hi);
        else
          o.covers.emplace_back(hi, lo);
      } else {
        auto w1 = descending_tree_vertex(t, u);
        auto w2 = descending_tree_vertex(t, v);
        if (!w1 || !w2) throw truncation_error("order_r: nearest tree vertex not materialized");
        // apply the rule from each endpoint's own nearest tree vertex
        int s1 = sign_at(t, ctx, *w1, u); // u > v iff positive
        int s2 = sign_at(t, ctx, *w2, v); // v > u iff positive
        if (s1 != -s2)
          throw structural_error("order_r: the two nearest-tree-vertex choices disagree");
        if (s1 > 0)
          o.covers.emplace_back(v, u);
        else
          o.covers.emplace_back(u, v);
      }
    }
  }
  o.validate();
  return o;
}

// ---- order embeddings ---------------------------------------------------------

// Injective maps preserving and reflecting the order. When match_labels is
// set, vertex labels must also agree (the desk-scale stand-in for the
// label-gadget fences of the full ordered tree).
inline std::vector<std::vector<VertexId>> enumerate_order_embeddings(
    const DecoratedTree& gt, const PosetOverlay& guest, const DecoratedTree& ht,
    const PosetOverlay& host, bool rooted, bool match_labels = false,
    std::size_t cap = 200000) {
  auto gle = guest.closure();
  auto hle = host.closure();
  const std::size_t ng = gt.size(), nh = ht.size();
  std::vector<VertexId> img(ng, kNoVertex);
  std::vector<char> used(nh, 0);
  std::vector<std::vector<VertexId>> out;
  std::function<void(std::size_t)> rec = [&](std::size_t g) {
    if (out.size() > cap) throw parameter_error("order embedding enumeration cap exceeded");
    if (g == ng) {
      out.push_back(img);
      return;
    }
    for (VertexId h = 0; h < nh; ++h) {
      if (used[h]) continue;
      if (rooted && gt.root && g == *gt.root && (!ht.root || h != *ht.root)) continue;
      if (match_labels && gt.rec(g).label != ht.rec(h).label) continue;
      bool ok = true;
      for (std::size_t g2 = 0; g2 < g && ok; ++g2) {
        VertexId h2 = img[g2];
        ok = gle[g][g2] == hle[h][h2] && gle[g2][g] == hle[h2][h];
      }
      if (!ok) continue;
      img[g] = h;
      used[h] = 1;
      rec(g + 1);
      img[g] = kNoVertex;
      used[h] = 0;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<std::vector<VertexId>> order_embeds(const DecoratedTree& gt,
                                                         const PosetOverlay& guest,
                                                         const DecoratedTree& ht,
                                                         const PosetOverlay& host, bool rooted) {
  auto all = enumerate_order_embeddings(gt, guest, ht, host, rooted, false, 200000);
  if (all.empty()) return std::nullopt;
  return all.front();
}

// ---- monoid comparisons ---------------------------------------------------------

// Rooted gadget pair: set of graph embeddings versus set of order
// embeddings, as raw image vectors.
inline bool gadget_monoid_equal(GadgetSpec a, GadgetSpec b, std::string* detail = nullptr) {
  DecoratedTree ga = build_pk(a), gb = build_pk(b);
  auto graph = enumerate_embeddings(ga, gb, true, FrontierPolicy::Closed);
  auto order =
      enumerate_order_embeddings(ga, order_gadget(a), gb, order_gadget(b), true, false);
  bool equal = graph == order;
  if (!equal && detail)
    *detail = "graph set has " + std::to_string(graph.size()) + " maps, order set " +
              std::to_string(order.size());
  return equal;
}

// Rooted order embeddability between gadget fences, by enumeration.
inline bool order_gadget_embeds(GadgetSpec a, GadgetSpec b) {
  DecoratedTree ga = build_pk(a), gb = build_pk(b);
  return !enumerate_order_embeddings(ga, order_gadget(a), gb, order_gadget(b), true, false)
              .empty();
}

// Alignment maps of poset-variant windows: shifts j -> j + t and
// reflections j -> c - j, judged once at graph level (gadget kinds align and
// every aligned gadget pair embeds as rooted trees) and once at order level
// (ray fence orientation preserved and every aligned fence pair embeds as a
// rooted order). The two verdicts are compared per map.
struct WindowAlignment {
  bool reflection = false;
  int param = 0; // shift displacement, or reflection constant c

  int image(int j) const { return reflection ? param - j : j + param; }
  std::string str() const {
    return (reflection ? "reflect@" : "shift") + std::to_string(param);
  }
};

inline GadgetSpec window_gadget_spec(int s, int j) {
  return j % 2 == 0 ? type_gadget(tp(s, j / 2)) : poset_odd_gadget();
}

inline bool window_alignment_graph_valid(int s, int halfwidth, const WindowAlignment& m) {
  for (int j = -halfwidth; j <= halfwidth; ++j) {
    int i = m.image(j);
    if (i < -halfwidth || i > halfwidth) continue;
    if (((j - i) % 2 + 2) % 2 != 0) return false; // gadget kinds misalign
    if (!pk_embeds(window_gadget_spec(s, j), window_gadget_spec(s, i))) return false;
  }
  return true;
}

inline bool window_alignment_order_valid(int s, int halfwidth, const WindowAlignment& m) {
  for (int j = -halfwidth; j <= halfwidth; ++j) {
    int i = m.image(j);
    if (i < -halfwidth || i > halfwidth) continue;
    if (((j - i) % 2 + 2) % 2 != 0) return false; // low/high fence positions flip
    if (!order_gadget_embeds(window_gadget_spec(s, j), window_gadget_spec(s, i))) return false;
  }
  return true;
}

// The interior sub-ball of an R-ball together with the induced edge
// orientations, every edge oriented from data of the enclosing larger ball.
struct OrderedBall {
  DecoratedTree tree;
  PosetOverlay order;
};

inline OrderedBall ordered_r_ball(int radius) {
  RBall big = build_rball(2 * radius + 1, 2 * radius + 1, false);
  SignContext ctx = canonical_sign_context(big.tree, big.centre);
  PosetOverlay full = order_r(big, ctx, radius);
  std::vector<int> depth = big.tree.bfs_depths(big.centre);
  OrderedBall out;
  std::vector<VertexId> remap(big.tree.size(), kNoVertex);
  for (VertexId v = 0; v < big.tree.size(); ++v) {
    if (depth[v] > radius) continue;
    VertexRecord r = big.tree.rec(v);
    r.frontier = depth[v] == radius;
    remap[v] = out.tree.add_vertex(std::move(r));
  }
  for (VertexId v = 0; v < big.tree.size(); ++v) {
    if (remap[v] == kNoVertex) continue;
    for (VertexId w : big.tree.neighbors(v))
      if (v < w && remap[w] != kNoVertex) out.tree.add_edge(remap[v], remap[w]);
  }
  out.tree.root = remap[big.centre];
  out.order.n = out.tree.size();
  for (auto [lo, hi] : full.covers)
    if (remap[lo] != kNoVertex && remap[hi] != kNoVertex)
      out.order.covers.emplace_back(remap[lo], remap[hi]);
  out.order.validate();
  return out;
}

// Rooted self-maps of the ordered ball: label-preserving graph embeddings
// versus order embeddings. Labels stand in for the label-gadget fences of
// the fully gadgeted ordered tree; the gadget table is compared separately.
inline SweepReport verify_rball_monoid(int radius) {
  SweepReport rep{"rball-monoid"};
  OrderedBall ball = ordered_r_ball(radius);
  auto graph = enumerate_embeddings(ball.tree, ball.tree, true, FrontierPolicy::Closed);
  auto order =
      enumerate_order_embeddings(ball.tree, ball.order, ball.tree, ball.order, true, true);
  rep.cases = static_cast<long>(graph.size() + order.size());
  for (const auto& g : graph)
    if (!std::binary_search(order.begin(), order.end(), g))
      rep.violations.push_back("graph-only self-map of the ordered ball");
  for (const auto& o : order)
    if (!std::binary_search(graph.begin(), graph.end(), o))
      rep.violations.push_back("order-only self-map of the ordered ball");
  return rep;
}

} // namespace sibtree
