#pragma once

// Finite truncations of the labelled rooted tree (R, r) and its local
// calculus. Construction rules: the root has label 0; a label-0 vertex has
// exactly two neighbours of label 1; a vertex of label l >= 1 has exactly
// three neighbours, labelled l-1, l and l+1. Label-0 vertices are the tree
// vertices; they have core degree 2, every other vertex core degree 3.
//
// On top of the labels: colour (label of the last equal-label adjacent pair
// on a path), height (maximum label on a path), and the +-1 sign/spin data
// that orients the two neighbourhoods of each tree vertex.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "core/canonical.hpp"
#include "core/tree.hpp"
#include "gadget.hpp"

namespace sibtree {

// Labels of the children a vertex owes, given its own label and the label
// of its parent (nullopt at the root).
inline std::vector<int> rule_child_labels(int label, std::optional<int> parent_label) {
  if (!parent_label) return {1, 1};
  if (label == 0) return {1};
  std::vector<int> want{label - 1, label, label + 1};
  auto it = std::find(want.begin(), want.end(), *parent_label);
  want.erase(it);
  return want;
}

struct RBall {
  DecoratedTree tree;
  VertexId centre = 0;
  int radius = 0;
  int maxlabel = 0;
  bool with_gadgets = false;
};

inline RBall build_rball(int radius, int maxlabel, bool with_gadgets) {
  if (radius < 1) throw parameter_error("build_rball: radius >= 1 required");
  RBall ball;
  ball.radius = radius;
  ball.maxlabel = maxlabel;
  ball.with_gadgets = with_gadgets;
  DecoratedTree& t = ball.tree;
  VertexRecord root;
  root.kind = VertexKind::Tree;
  root.label = 0;
  ball.centre = t.add_vertex(std::move(root));
  t.root = ball.centre;
  std::vector<int> depth(1, 0);
  struct Item {
    VertexId v;
    std::optional<int> parent_label;
  };
  std::vector<Item> work{{ball.centre, std::nullopt}};
  while (!work.empty()) {
    Item it = work.back();
    work.pop_back();
    const int lab = *t.rec(it.v).label;
    const int d = depth[it.v];
    if (d == radius) {
      t.rec(it.v).frontier = true;
      continue;
    }
    bool cut = false;
    int slot = 0;
    for (int kl : rule_child_labels(lab, it.parent_label)) {
      if (kl > maxlabel) {
        cut = true;
        ++slot;
        continue;
      }
      VertexRecord r;
      r.kind = kl == 0 ? VertexKind::Tree : VertexKind::Copy;
      r.label = kl;
      r.address = copy_step(t.rec(it.v).address, slot);
      VertexId c = t.add_vertex(std::move(r));
      depth.push_back(d + 1);
      t.add_edge(it.v, c);
      work.push_back({c, lab});
      ++slot;
    }
    if (cut) t.rec(it.v).frontier = true;
  }
  if (with_gadgets) {
    const std::size_t core = t.size();
    for (VertexId v = 0; v < core; ++v)
      if (!t.rec(v).frontier) attach_gadget(t, v, label_gadget(*t.rec(v).label), GadgetRole::LabelGadget);
  }
  return ball;
}

// ---- core-graph helpers -------------------------------------------------

inline bool is_core(const DecoratedTree& t, VertexId v) {
  return t.rec(v).kind != VertexKind::Gadget;
}

inline int core_degree(const DecoratedTree& t, VertexId v) {
  int d = 0;
  for (VertexId w : t.neighbors(v))
    if (is_core(t, w)) ++d;
  return d;
}

inline bool is_tree_vertex(const DecoratedTree& t, VertexId v) {
  return t.rec(v).label && *t.rec(v).label == 0;
}

inline std::vector<VertexId> tree_vertices(const DecoratedTree& t) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < t.size(); ++v)
    if (is_tree_vertex(t, v)) out.push_back(v);
  return out;
}

// The unique neighbour of v with label lab(v)-1; nullopt if not materialized.
inline std::optional<VertexId> down_neighbor(const DecoratedTree& t, VertexId v) {
  const int lab = *t.rec(v).label;
  for (VertexId w : t.neighbors(v))
    if (is_core(t, w) && t.rec(w).label && *t.rec(w).label == lab - 1) return w;
  return std::nullopt;
}

// Endpoint of the strictly decreasing label path from x (the unique nearest
// tree vertex); nullopt if it runs past the truncation.
inline std::optional<VertexId> descending_tree_vertex(const DecoratedTree& t, VertexId x) {
  VertexId cur = x;
  while (*t.rec(cur).label > 0) {
    auto d = down_neighbor(t, cur);
    if (!d) return std::nullopt;
    cur = *d;
  }
  return cur;
}

// ---- colour / height ----------------------------------------------------

// Label of the last equal-label adjacent pair on the path from v to u;
// 0 when u == v. Both endpoints must be tree vertices.
inline int colour(const DecoratedTree& t, VertexId v, VertexId u) {
  if (v == u) return 0;
  std::vector<VertexId> p = t.path(v, u);
  for (std::size_t i = p.size() - 1; i-- > 0;)
    if (*t.rec(p[i]).label == *t.rec(p[i + 1]).label) return *t.rec(p[i]).label;
  throw domain_error("colour: no consecutive pair on path");
}

// Maximum label on the path from v to w.
inline int height(const DecoratedTree& t, VertexId v, VertexId w) {
  int h = 0;
  for (VertexId x : t.path(v, w)) h = std::max(h, *t.rec(x).label);
  return h;
}

// ---- sign and spin ------------------------------------------------------

// Orientation of the two neighbourhoods of a base tree vertex: +1 on the
// branch through pos_neighbor, -1 on the other. The canonical context puts
// +1 on the first-constructed (address-least) core neighbour.
struct SignContext {
  VertexId base = 0;
  VertexId pos_neighbor = 0;
};

inline SignContext canonical_sign_context(const DecoratedTree& t, VertexId base) {
  std::vector<VertexId> ns;
  for (VertexId w : t.neighbors(base))
    if (is_core(t, w)) ns.push_back(w);
  if (ns.size() < 2) throw domain_error("sign context: base must have two core neighbours");
  std::sort(ns.begin(), ns.end(),
            [&](VertexId a, VertexId b) { return t.rec(a).address < t.rec(b).address; });
  return {base, ns[0]};
}

namespace detail {
inline int parity_sign(int n) { return n % 2 == 0 ? 1 : -1; }

inline int cp_plus_tv(const DecoratedTree& t, const std::vector<VertexId>& p) {
  int cp = 0, tv = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (*t.rec(p[i]).label == 0) ++tv;
    if (i + 1 < p.size() && *t.rec(p[i]).label == *t.rec(p[i + 1]).label) ++cp;
  }
  return cp + tv;
}
} // namespace detail

// Spin of tree vertex u with respect to the context base:
//   spin_base(u) = sign_base(u) * (-1)^(cp + tv) over the base..u path.
inline int spin(const DecoratedTree& t, const SignContext& ctx, VertexId u);

// sign_v(x): orientation at tree vertex v of the branch containing x.
// At the context base it is the chosen orientation; elsewhere it is
// spin_base(v) on the base-side branch and -spin_base(v) on the other.
inline int sign_at(const DecoratedTree& t, const SignContext& ctx, VertexId v, VertexId x) {
  if (v == x) throw domain_error("sign: undefined at the base vertex itself");
  if (v == ctx.base) {
    return t.path(v, x)[1] == ctx.pos_neighbor ? 1 : -1;
  }
  int spin_base_v = spin(t, ctx, v);
  bool same_side = t.path(v, x)[1] == t.path(v, ctx.base)[1];
  return same_side ? spin_base_v : -spin_base_v;
}

inline int spin(const DecoratedTree& t, const SignContext& ctx, VertexId u) {
  if (u == ctx.base) throw domain_error("spin: undefined at the base vertex");
  std::vector<VertexId> p = t.path(ctx.base, u);
  int s = p[1] == ctx.pos_neighbor ? 1 : -1; // sign_base(u)
  return s * detail::parity_sign(detail::cp_plus_tv(t, p));
}

// spin_v(u) for an arbitrary tree vertex v (not only the context base).
inline int spin_from(const DecoratedTree& t, const SignContext& ctx, VertexId v, VertexId u) {
  if (u == v) throw domain_error("spin: undefined at its own base");
  int s = sign_at(t, ctx, v, u);
  return s * detail::parity_sign(detail::cp_plus_tv(t, t.path(v, u)));
}

// ---- verification sweeps ------------------------------------------------

struct SweepReport {
  std::string name;
  long cases = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Stored label equals the distance to the nearest genuine degree-2 core
// vertex. Quantified over vertices whose witness ball is fully materialized
// (depth + label < radius), the decidable region of the truncation.
inline SweepReport lab_check(const RBall& ball) {
  SweepReport rep{"label-reconstruct"};
  const DecoratedTree& t = ball.tree;
  std::vector<int> depth = t.bfs_depths(ball.centre);
  auto genuine_tree = [&](VertexId w) {
    return is_core(t, w) && !t.rec(w).frontier && core_degree(t, w) == 2;
  };
  for (VertexId v = 0; v < t.size(); ++v) {
    if (!is_core(t, v) || t.rec(v).frontier) continue;
    const int lab = *t.rec(v).label;
    if (depth[v] + lab >= ball.radius) continue;
    ++rep.cases;
    auto d = t.dist_to_predicate(v, genuine_tree);
    if (!d || *d != lab)
      rep.violations.push_back(t.rec(v).address.str() + ": label " + std::to_string(lab) +
                               " but degree-2 distance " + (d ? std::to_string(*d) : "inf"));
  }
  return rep;
}

// Exceptions to colour agreement between two base vertices lie on strictly
// decreasing label paths out of the u..v path.
inline std::vector<VertexId> colour_exception_set(const DecoratedTree& t, VertexId u, VertexId v) {
  std::vector<VertexId> ex;
  for (VertexId x : t.path(u, v))
    if (auto w = descending_tree_vertex(t, x)) ex.push_back(*w);
  std::sort(ex.begin(), ex.end());
  ex.erase(std::unique(ex.begin(), ex.end()), ex.end());
  return ex;
}

inline SweepReport verify_colpreserv(const DecoratedTree& t, VertexId u, VertexId v,
                                     const std::vector<VertexId>& domain) {
  SweepReport rep{"colour-lemma"};
  std::vector<VertexId> ex = colour_exception_set(t, u, v);
  for (VertexId w : domain) {
    ++rep.cases;
    if (colour(t, u, w) == colour(t, v, w)) continue;
    if (!std::binary_search(ex.begin(), ex.end(), w))
      rep.violations.push_back("col_u != col_v off the decreasing-path set at " +
                               t.rec(w).address.str());
  }
  return rep;
}

inline SweepReport verify_colour_lemma(const RBall& ball) {
  SweepReport rep{"colour-lemma"};
  const DecoratedTree& t = ball.tree;
  std::vector<VertexId> tv = tree_vertices(t);
  for (VertexId u : tv)
    for (VertexId v : tv) {
      if (u >= v) continue;
      SweepReport sub = verify_colpreserv(t, u, v, tv);
      rep.cases += sub.cases;
      for (auto& s : sub.violations) rep.violations.push_back(s);
    }
  return rep;
}

// The spin transfer rules between base vertices, all clauses, plus the
// two-base corollary with its meet-vertex exception.
inline SweepReport verify_spin_lemmas(const RBall& ball) {
  SweepReport rep{"spin-lemmas"};
  const DecoratedTree& t = ball.tree;
  SignContext ctx = canonical_sign_context(t, ball.centre);
  const VertexId r = ball.centre;
  std::vector<VertexId> tv = tree_vertices(t);
  auto on_path = [&](VertexId w, VertexId a, VertexId b) {
    std::vector<VertexId> p = t.path(a, b);
    return std::find(p.begin(), p.end(), w) != p.end();
  };

  for (VertexId v : tv) {
    if (v == r) continue;
    // spin_v(r) = sign_r(v)
    ++rep.cases;
    if (spin_from(t, ctx, v, r) != sign_at(t, ctx, r, v))
      rep.violations.push_back("spin_v(r) != sign_r(v) at v=" + t.rec(v).address.str());
    for (VertexId w : tv) {
      if (w == r || w == v) continue;
      ++rep.cases;
      int sv = spin_from(t, ctx, v, w);
      int sr = spin(t, ctx, w);
      if (on_path(w, r, v)) {
        if (sv != -sr)
          rep.violations.push_back("spin_v(w) != -spin_r(w) on P_rv at w=" +
                                   t.rec(w).address.str());
      } else {
        if (sv != sr)
          rep.violations.push_back("spin_v(w) != spin_r(w) off P_rv at w=" +
                                   t.rec(w).address.str());
      }
    }
  }

  // two arbitrary bases
  for (VertexId u : tv)
    for (VertexId v : tv) {
      if (u >= v) continue;
      std::vector<VertexId> puv = t.path(u, v);
      for (VertexId w : tv) {
        if (w == u || w == v) continue;
        ++rep.cases;
        int su = spin_from(t, ctx, u, w);
        int sv = spin_from(t, ctx, v, w);
        bool onp = std::find(puv.begin(), puv.end(), w) != puv.end();
        if (!onp) {
          if (su != sv)
            rep.violations.push_back("spin_u(w) != spin_v(w) off P_uv at w=" +
                                     t.rec(w).address.str());
        } else {
          // meet of u and v seen from r; that single vertex keeps its spin
          std::vector<VertexId> pru = t.path(r, u), prv = t.path(r, v);
          std::size_t i = 0;
          while (i < pru.size() && i < prv.size() && pru[i] == prv[i]) ++i;
          VertexId meet = pru[i - 1];
          bool exception = (w != r) && (w == meet);
          if (exception ? su != sv : su != -sv)
            rep.violations.push_back("two-base spin clause fails at w=" + t.rec(w).address.str());
        }
      }
    }
  return rep;
}

// Height transfer: min(hth_u(w), hth_v(w)) >= hth_u(v) forces equality.
inline SweepReport verify_height_transfer(const RBall& ball) {
  SweepReport rep{"height-transfer"};
  const DecoratedTree& t = ball.tree;
  std::vector<VertexId> tv = tree_vertices(t);
  for (VertexId u : tv)
    for (VertexId v : tv) {
      if (u == v) continue;
      int huv = height(t, u, v);
      for (VertexId w : tv) {
        int hu = height(t, u, w), hv = height(t, v, w);
        if (std::min(hu, hv) < huv) continue;
        ++rep.cases;
        if (hu != hv)
          rep.violations.push_back("height transfer fails at w=" + t.rec(w).address.str());
      }
    }
  return rep;
}

// Unimodal pairs: tree vertices joined by a path with labels
// <0 1 .. k k .. 1 0>. There are exactly two per (w1, k), one per branch.
inline std::vector<std::pair<VertexId, VertexId>> unimodal_pairs(const DecoratedTree& t, int kmax) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId w1 = 0; w1 < t.size(); ++w1) {
    if (!is_tree_vertex(t, w1)) continue;
    for (VertexId start : t.neighbors(w1)) {
      if (!is_core(t, start) || !t.rec(start).label || *t.rec(start).label != 1) continue;
      for (int k = 1; k <= kmax; ++k) {
        // ascend to label k
        VertexId cur = start;
        bool ok = true;
        for (int l = 2; l <= k && ok; ++l) {
          ok = false;
          for (VertexId w : t.neighbors(cur))
            if (is_core(t, w) && t.rec(w).label && *t.rec(w).label == l) {
              cur = w;
              ok = true;
              break;
            }
        }
        if (!ok) continue;
        // cross the consecutive pair at the peak
        VertexId peer = kNoVertex;
        for (VertexId w : t.neighbors(cur))
          if (is_core(t, w) && t.rec(w).label && *t.rec(w).label == k && w != cur) peer = w;
        if (peer == kNoVertex) continue;
        auto w2 = descending_tree_vertex(t, peer);
        if (!w2 || *w2 == w1) continue;
        out.emplace_back(w1, *w2);
      }
    }
  }
  return out;
}

// Antisymmetry of sign across unimodal pairs.
inline SweepReport verify_unisign(const RBall& ball, int kmax) {
  SweepReport rep{"unimodal-sign"};
  const DecoratedTree& t = ball.tree;
  SignContext ctx = canonical_sign_context(t, ball.centre);
  for (auto [w1, w2] : unimodal_pairs(t, kmax)) {
    ++rep.cases;
    if (sign_at(t, ctx, w1, w2) != -sign_at(t, ctx, w2, w1))
      rep.violations.push_back("sign_w1(w2) != -sign_w2(w1) for pair " + t.rec(w1).address.str() +
                               " , " + t.rec(w2).address.str());
  }
  return rep;
}

// Rooted-ball homogeneity: the ball of radius rho around any interior tree
// vertex is isomorphic (as a rooted decorated tree) to the ball around r.
inline SweepReport verify_homogeneity(const RBall& ball, int rho) {
  SweepReport rep{"homogeneity"};
  const DecoratedTree& t = ball.tree;
  std::vector<int> depth = t.bfs_depths(ball.centre);
  DecoratedTree ref = t.extract_ball(ball.centre, rho);
  std::string ref_code = canonical_form(ref, true);
  for (VertexId v : tree_vertices(t)) {
    if (depth[v] + rho > ball.radius) continue;
    ++rep.cases;
    DecoratedTree sub = t.extract_ball(v, rho);
    if (canonical_form(sub, true) != ref_code)
      rep.violations.push_back("ball around " + t.rec(v).address.str() + " differs from root ball");
  }
  return rep;
}

} // namespace sibtree
