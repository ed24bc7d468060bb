#pragma once

// Staged assemblies of copies of (R, r) glued along double rays.
//
// Two gluing operations:
//   activate   a ray vertex: identify it with the root of a fresh copy;
//   amalgamate a tree vertex: identify it with a distinguished vertex of a
//              fresh double ray, whose other vertices are then activated.
// A vertex arising from either identification is flagged amalgamated; with
// gadgets it has degree 6 (two copy neighbours, two ray neighbours, the
// label-0 gadget and the type gadget).
//
// The spine of stage k amalgamates every interior tree vertex of global
// height at most k with an untyped ray. The typed construction lives in
// construct.hpp and drives the same builder through target vertices.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/tree.hpp"
#include "gadget.hpp"
#include "ray.hpp"
#include "rtree.hpp"

namespace sibtree {

// A type assignment: tp_base with finitely many overridden positions.
struct Typing {
  int base_s = 0;
  std::map<int, int> overrides;

  int bit(int i) const {
    auto it = overrides.find(i);
    return it != overrides.end() ? it->second : tp(base_s, i);
  }
};

struct CopyInfo {
  VertexId root = kNoVertex;
};

struct RayInfo {
  VertexId glue = kNoVertex;      // the vertex this ray was glued onto
  int centre_typing_index = 0;    // typing index of the glue vertex
  std::optional<Typing> typing;   // untyped for the spine
  std::map<int, VertexId> at;     // offset from the glue vertex -> vertex
};

struct VertexAux {
  int copy_id = -1;
  int ray_id = -1;
  int ray_offset = 0;
  int depth = 0; // core distance from the centre
};

struct AmalgamEntry {
  std::string address;
  int height = 0;
  int spin = 0;
  std::string tag;
};

struct Assembly {
  DecoratedTree tree;
  std::vector<VertexAux> aux;
  std::vector<CopyInfo> copies;
  std::vector<RayInfo> rays;
  VertexId centre = 0;
  int stage = 0;
  int radius = 0;
  int maxlabel = 0;
  bool with_gadgets = false;
  std::vector<AmalgamEntry> log;
  int fixpoint_iterations = 0;

  bool interior(VertexId v) const { return !tree.rec(v).frontier; }
};

namespace detail {

class AssemblyBuilder {
public:
  AssemblyBuilder(int radius, int maxlabel, bool gadgets) {
    a_.radius = radius;
    a_.maxlabel = maxlabel;
    a_.with_gadgets = gadgets;
  }

  Assembly take() && { return std::move(a_); }
  Assembly& assembly() { return a_; }

  // The first ray plus activations; its glue vertex is the centre, which is
  // itself activated with a copy.
  void seed(std::optional<Typing> typing, int centre_typing_index = 0) {
    VertexRecord r;
    r.kind = VertexKind::Ray;
    r.label = 0;
    a_.centre = a_.tree.add_vertex(std::move(r));
    a_.aux.push_back({});
    a_.tree.root = a_.centre;
    attach_ray(a_.centre, std::move(typing), centre_typing_index);
    grow_copy(a_.centre);
  }

  // Fresh double ray glued at v (offset 0) and activation of its vertices.
  int attach_ray(VertexId v, std::optional<Typing> typing, int centre_typing_index) {
    int ray_id = static_cast<int>(a_.rays.size());
    RayInfo ray;
    ray.glue = v;
    ray.centre_typing_index = centre_typing_index;
    ray.typing = std::move(typing);
    ray.at[0] = v;
    a_.rays.push_back(ray);
    a_.aux[v].ray_id = ray_id;
    a_.aux[v].ray_offset = 0;
    a_.tree.rec(v).amalgamated = true;
    a_.tree.rec(v).kind = VertexKind::Ray;
    apply_type(v, ray_id);
    const int budget = a_.radius - a_.aux[v].depth;
    for (int dir : {+1, -1}) {
      VertexId prev = v;
      for (int o = 1; o <= budget; ++o) {
        VertexRecord r;
        r.kind = VertexKind::Ray;
        r.address = ray_step(a_.tree.rec(prev).address, dir);
        VertexId nv = a_.tree.add_vertex(std::move(r));
        a_.aux.push_back({-1, ray_id, dir * o, a_.aux[v].depth + o});
        a_.tree.add_edge(prev, nv);
        a_.rays[ray_id].at[dir * o] = nv;
        if (o == budget) {
          a_.tree.rec(nv).frontier = true;
        } else {
          activate(nv, ray_id);
        }
        prev = nv;
      }
    }
    return ray_id;
  }

  // Identify a ray vertex with the root of a fresh copy of (R, r).
  void activate(VertexId v, int ray_id) {
    a_.tree.rec(v).label = 0;
    a_.tree.rec(v).amalgamated = true;
    apply_type(v, ray_id);
    grow_copy(v);
  }

  // Expand a copy rooted at v to the remaining radius budget.
  void grow_copy(VertexId v) {
    int copy_id = static_cast<int>(a_.copies.size());
    a_.copies.push_back({v});
    a_.aux[v].copy_id = copy_id;
    struct Item {
      VertexId v;
      std::optional<int> parent_label;
    };
    std::vector<Item> work{{v, std::nullopt}};
    while (!work.empty()) {
      Item it = work.back();
      work.pop_back();
      const int lab = *a_.tree.rec(it.v).label;
      if (a_.aux[it.v].depth == a_.radius) {
        a_.tree.rec(it.v).frontier = true;
        continue;
      }
      bool cut = false;
      int slot = 0;
      for (int kl : rule_child_labels(lab, it.parent_label)) {
        if (kl > a_.maxlabel) {
          cut = true;
          ++slot;
          continue;
        }
        VertexRecord r;
        r.kind = kl == 0 ? VertexKind::Tree : VertexKind::Copy;
        r.label = kl;
        r.address = it.v == v ? enter_copy(a_.tree.rec(it.v).address, slot)
                              : copy_step(a_.tree.rec(it.v).address, slot);
        VertexId c = a_.tree.add_vertex(std::move(r));
        a_.aux.push_back({copy_id, -1, 0, a_.aux[it.v].depth + 1});
        a_.tree.add_edge(it.v, c);
        work.push_back({c, lab});
        ++slot;
      }
      if (cut) a_.tree.rec(it.v).frontier = true;
      if (a_.with_gadgets && !a_.tree.rec(it.v).frontier) {
        attach_gadget(a_.tree, it.v, label_gadget(lab), GadgetRole::LabelGadget);
        sync_aux(a_.aux[it.v].depth);
      }
    }
  }

  void apply_type(VertexId v, int ray_id) {
    const RayInfo& ray = a_.rays[ray_id];
    if (!ray.typing) return;
    if (a_.tree.rec(v).frontier) return;
    int bit = ray.typing->bit(ray.centre_typing_index + a_.aux[v].ray_offset);
    a_.tree.rec(v).raytype = bit;
    if (a_.with_gadgets) {
      attach_gadget(a_.tree, v, type_gadget(bit), GadgetRole::TypeGadget);
      sync_aux(a_.aux[v].depth);
    }
  }

  // gadget vertices share their anchor's depth and belong to no copy or ray
  void sync_aux(int depth) {
    while (a_.aux.size() < a_.tree.size()) a_.aux.push_back({-1, -1, 0, depth});
  }

private:
  Assembly a_;
};

} // namespace detail

// ---- global calculus ------------------------------------------------------

inline int ghth(const Assembly& a, VertexId v, VertexId w) {
  int h = 0;
  for (VertexId x : a.tree.path(v, w))
    if (a.tree.rec(x).label) h = std::max(h, *a.tree.rec(x).label);
  return h;
}

// First vertex of the path that lies in w's copy.
inline VertexId copy_entry(const Assembly& a, const std::vector<VertexId>& path, VertexId w) {
  const int target_copy = a.aux[w].copy_id;
  if (target_copy < 0) throw domain_error("copy_entry: target vertex belongs to no copy");
  for (VertexId x : path)
    if (a.aux[x].copy_id == target_copy) return x;
  throw domain_error("copy_entry: path never enters the copy");
}

inline int gcol(const Assembly& a, VertexId v, VertexId w) {
  if (v == w) return 0;
  std::vector<VertexId> p = a.tree.path(v, w);
  VertexId entry = copy_entry(a, p, w);
  if (entry == w) return 0;
  // scan the in-copy suffix for its last equal-label adjacent pair
  std::size_t start = 0;
  while (p[start] != entry) ++start;
  int col = -1;
  for (std::size_t i = start; i + 1 < p.size(); ++i)
    if (*a.tree.rec(p[i]).label == *a.tree.rec(p[i + 1]).label) col = *a.tree.rec(p[i]).label;
  if (col < 0) throw domain_error("gcol: no consecutive pair after copy entry");
  return col;
}

// Copy-local sign context: +1 on the address-least child branch of the root.
inline SignContext copy_sign_context(const Assembly& a, int copy_id) {
  VertexId root = a.copies[copy_id].root;
  VertexId best = kNoVertex;
  for (VertexId w : a.tree.neighbors(root))
    if (a.aux[w].copy_id == copy_id && is_core(a.tree, w))
      if (best == kNoVertex || a.tree.rec(w).address < a.tree.rec(best).address) best = w;
  if (best == kNoVertex) throw domain_error("copy has no materialized children");
  return {root, best};
}

inline int gsign(const Assembly& a, VertexId v, VertexId w) {
  std::vector<VertexId> p = a.tree.path(v, w);
  VertexId entry = copy_entry(a, p, w);
  if (entry == w) throw domain_error("gsign: undefined at the copy entry vertex");
  SignContext ctx = copy_sign_context(a, a.aux[w].copy_id);
  return sign_at(a.tree, ctx, entry, w);
}

inline int gspin(const Assembly& a, VertexId v, VertexId w) {
  std::vector<VertexId> p = a.tree.path(v, w);
  VertexId entry = copy_entry(a, p, w);
  if (entry == w) throw domain_error("gspin: undefined at the copy entry vertex");
  SignContext ctx = copy_sign_context(a, a.aux[w].copy_id);
  return spin_from(a.tree, ctx, entry, w);
}

// Tree vertices (label-0 copy members, amalgamated or not) of the assembly.
inline std::vector<VertexId> assembly_tree_vertices(const Assembly& a) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < a.tree.size(); ++v)
    if (a.tree.rec(v).label && *a.tree.rec(v).label == 0) out.push_back(v);
  return out;
}

// ---- spine -----------------------------------------------------------------

// Untyped stage-k assembly: activate everything, then amalgamate every
// interior tree vertex of global height at most k, iterating to a fixed
// point (fresh material may contain further low vertices).
inline Assembly build_spine(int k, int radius, int maxlabel = 64) {
  if (k < 0 || radius < 1) throw parameter_error("build_spine: bad parameters");
  detail::AssemblyBuilder b(radius, maxlabel, true);
  b.seed(std::nullopt);
  Assembly& a = b.assembly();
  a.stage = k;
  bool changed = true;
  while (changed) {
    changed = false;
    ++a.fixpoint_iterations;
    std::vector<std::pair<Address, VertexId>> todo;
    for (VertexId v = 0; v < a.tree.size(); ++v) {
      const VertexRecord& r = a.tree.rec(v);
      if (r.kind != VertexKind::Tree || r.amalgamated || r.frontier) continue;
      if (ghth(a, a.centre, v) <= k) todo.emplace_back(r.address, v);
    }
    std::sort(todo.begin(), todo.end());
    for (auto& [addr, v] : todo) {
      b.attach_ray(v, std::nullopt, 0);
      changed = true;
    }
  }
  return std::move(b).take();
}

// ---- verification ----------------------------------------------------------

// Global spin transfer: bases u, v agree at every interior w off their path;
// global colour agreement has exceptions only on strictly decreasing label
// paths out of P_{u,v}.
inline SweepReport verify_global_lemmas(const Assembly& a, std::size_t max_pairs) {
  SweepReport rep{"global-lemmas"};
  std::vector<VertexId> tvs;
  for (VertexId v : assembly_tree_vertices(a))
    if (a.interior(v)) tvs.push_back(v);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (std::size_t i = 0; i < tvs.size() && pairs.size() < max_pairs; ++i)
    for (std::size_t j = i + 1; j < tvs.size() && pairs.size() < max_pairs; ++j)
      if ((i + j) % 3 == 0) pairs.emplace_back(tvs[i], tvs[j]);
  for (auto [u, v] : pairs) {
    std::vector<VertexId> puv = a.tree.path(u, v);
    for (VertexId w : tvs) {
      if (w == u || w == v) continue;
      bool on_path = std::find(puv.begin(), puv.end(), w) != puv.end();
      // spin clause
      if (!on_path) {
        try {
          ++rep.cases;
          if (gspin(a, u, w) != gspin(a, v, w))
            rep.violations.push_back("global spin transfer fails at " +
                                     a.tree.rec(w).address.str());
        } catch (const domain_error&) {
          // w is the entry vertex for one of the bases; outside both domains
        }
      }
      // colour clause with its decreasing-path exception set
      ++rep.cases;
      if (gcol(a, u, w) != gcol(a, v, w)) {
        bool excused = false;
        for (VertexId x : puv) {
          if (!a.tree.rec(x).label) continue;
          auto end = descending_tree_vertex(a.tree, x);
          excused |= end && *end == w;
        }
        if (!excused)
          rep.violations.push_back("global colour disagreement off the exception set at " +
                                   a.tree.rec(w).address.str());
      }
    }
  }
  return rep;
}

// Interior degree census (with gadgets): every degree lands in {1,2,3,4,6}
// for typed assemblies ({1,..,5} untyped) and matches the decoration class.
inline SweepReport verify_degree_census(const Assembly& a) {
  SweepReport rep{"degree-census"};
  if (!a.with_gadgets) throw parameter_error("degree census expects materialized gadgets");
  for (VertexId v = 0; v < a.tree.size(); ++v) {
    if (!a.interior(v)) continue;
    ++rep.cases;
    const VertexRecord& r = a.tree.rec(v);
    std::size_t d = a.tree.degree(v);
    bool ok = false;
    if (r.kind == VertexKind::Gadget) {
      const Move& m = r.address.moves.back();
      if (m.b > 0)
        ok = d == 2; // gadget path vertex
      else if (m.b == 0)
        ok = d == 3 || d == 4; // hub: fan + 1
      else
        ok = d == 1; // fan leaf
    } else if (r.kind == VertexKind::Copy) {
      ok = d == 4; // three copy neighbours + label gadget
    } else if (r.kind == VertexKind::Tree) {
      ok = d == 3 && !r.amalgamated; // two copy neighbours + label gadget
    } else if (r.kind == VertexKind::Ray) {
      bool typed = a.aux[v].ray_id >= 0 && a.rays[a.aux[v].ray_id].typing.has_value();
      ok = r.amalgamated && d == (typed ? 6u : 5u);
    }
    if (!ok)
      rep.violations.push_back("degree/decoration mismatch at " + r.address.str() + " (" +
                               kind_name(r.kind) + ", degree " + std::to_string(d) + ")");
  }
  return rep;
}

} // namespace sibtree
