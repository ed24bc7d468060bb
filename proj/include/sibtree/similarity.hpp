#pragma once

// Path fingerprints and similarity maps over assemblies.
//
// The fingerprint of a path assigns one symbol per vertex: at the first
// vertex of each copy-visit the branch orientation (sign) toward the next
// vertex, inside a copy the vertex's label, and along a ray the direction
// of travel. A similarity anchored at an amalgamated vertex u is a map
// preserving the fingerprint of every path out of u; for each anchored pair
// there is exactly one, built here by parallel breadth-first extension.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spine.hpp"

namespace sibtree {

struct FingerSymbol {
  enum Kind : std::uint8_t { Sign, Label, Lt, Gt } kind;
  int value = 0;

  friend bool operator==(const FingerSymbol&, const FingerSymbol&) = default;

  std::string str() const {
    switch (kind) {
      case Sign: return value > 0 ? "+1" : "-1";
      case Label: return std::to_string(value);
      case Lt: return "<";
      case Gt: return ">";
    }
    return "?";
  }
};

struct Fingerprint {
  std::vector<FingerSymbol> symbols;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

  std::string str() const {
    std::string out;
    for (const auto& s : symbols) {
      if (!out.empty()) out += ' ';
      out += s.str();
    }
    return out;
  }
};

namespace detail {

inline bool is_ray_edge(const Assembly& a, VertexId x, VertexId y) {
  return a.aux[x].ray_id >= 0 && a.aux[x].ray_id == a.aux[y].ray_id &&
         std::abs(a.aux[x].ray_offset - a.aux[y].ray_offset) == 1;
}

// The symbol emitted at position i of a path.
inline FingerSymbol symbol_at(const Assembly& a, const std::vector<VertexId>& p, std::size_t i) {
  VertexId x = p[i];
  if (i + 1 < p.size() && is_ray_edge(a, x, p[i + 1])) {
    return {a.aux[x].ray_offset < a.aux[p[i + 1]].ray_offset ? FingerSymbol::Lt : FingerSymbol::Gt,
            0};
  }
  // first visit of x's copy along the path?
  bool first = true;
  for (std::size_t j = 0; j < i; ++j)
    if (a.aux[p[j]].copy_id == a.aux[x].copy_id) {
      first = false;
      break;
    }
  if (first && i + 1 < p.size() && a.aux[p[i + 1]].copy_id == a.aux[x].copy_id &&
      a.aux[x].copy_id >= 0) {
    SignContext ctx = copy_sign_context(a, a.aux[x].copy_id);
    return {FingerSymbol::Sign, sign_at(a.tree, ctx, x, p[i + 1])};
  }
  // unactivated frontier ray vertices carry no label
  return {FingerSymbol::Label, a.tree.rec(x).label ? *a.tree.rec(x).label : -1};
}

} // namespace detail

inline Fingerprint fingerprint(const Assembly& a, VertexId u, VertexId v) {
  std::vector<VertexId> p = a.tree.path(u, v);
  Fingerprint f;
  for (std::size_t i = 0; i < p.size(); ++i) f.symbols.push_back(detail::symbol_at(a, p, i));
  return f;
}

struct no_similarity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimilarityMap {
  VertexId anchor_from = 0, anchor_to = 0;
  std::vector<VertexId> img; // kNoVertex where the truncation ends
  std::vector<char> at_frontier_edge; // guest vertices whose extension was cut

  VertexId operator()(VertexId v) const { return img[v]; }
  bool defined(VertexId v) const { return img[v] != kNoVertex; }
};

// The unique fingerprint-preserving extension of u -> v over the core graph,
// grown step by step; every continuation symbol determines the image of the
// next vertex uniquely. A mismatch forced at a non-frontier host vertex is
// an error; running out of host material leaves the map partial.
inline SimilarityMap build_similarity(const Assembly& a, VertexId u, VertexId v) {
  if (!a.tree.rec(u).amalgamated || !a.tree.rec(v).amalgamated)
    throw parameter_error("build_similarity: anchors must be amalgamated vertices");
  SimilarityMap phi;
  phi.anchor_from = u;
  phi.anchor_to = v;
  phi.img.assign(a.tree.size(), kNoVertex);
  phi.at_frontier_edge.assign(a.tree.size(), 0);
  phi.img[u] = v;

  std::vector<std::vector<VertexId>> queue;
  queue.push_back({u});
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::vector<VertexId> gpath = queue[qi];
    VertexId g = gpath.back();
    VertexId h = phi.img[g];
    for (VertexId n : a.tree.neighbors(g)) {
      if (!is_core(a.tree, n)) continue;
      if (gpath.size() > 1 && n == gpath[gpath.size() - 2]) continue;
      if (a.tree.rec(n).frontier) {
        phi.at_frontier_edge[g] = 1; // guest-side data incomplete past here
        continue;
      }
      std::vector<VertexId> np = gpath;
      np.push_back(n);
      // symbol of the step g -> n, evaluated on the guest path
      FingerSymbol step_sym = detail::symbol_at(a, np, np.size() - 2);
      FingerSymbol next_sym = detail::symbol_at(a, np, np.size() - 1);
      // the unique host continuation carrying the same pair of symbols;
      // frontier host candidates end the determined region instead
      std::vector<VertexId> hpath = a.tree.path(phi.anchor_to, h);
      VertexId match = kNoVertex;
      bool ambiguous = false, cut = a.tree.rec(h).frontier;
      for (VertexId hn : a.tree.neighbors(h)) {
        if (!is_core(a.tree, hn)) continue;
        if (hpath.size() > 1 && hn == hpath[hpath.size() - 2]) continue;
        std::vector<VertexId> hp = hpath;
        hp.push_back(hn);
        if (detail::symbol_at(a, hp, hp.size() - 2) != step_sym) continue;
        if (a.tree.rec(hn).frontier) {
          cut = true;
          continue;
        }
        if (detail::symbol_at(a, hp, hp.size() - 1) == next_sym) {
          if (match != kNoVertex) ambiguous = true;
          match = hn;
        }
      }
      if (ambiguous) throw no_similarity("ambiguous continuation at " + a.tree.rec(g).address.str());
      if (match == kNoVertex) {
        if (cut) {
          phi.at_frontier_edge[g] = 1; // truncation ended on the host side
          continue;
        }
        throw no_similarity("no fingerprint-preserving continuation at " +
                            a.tree.rec(g).address.str());
      }
      if (phi.img[n] != kNoVertex) continue;
      phi.img[n] = match;
      queue.push_back(std::move(np));
    }
  }
  return phi;
}

// Fingerprint preservation of phi at amalgamated vertices, plus label, ray
// direction, copy and amalgamation-status preservation on its domain.
inline SweepReport check_similarity_properties(const Assembly& a, const SimilarityMap& phi) {
  SweepReport rep{"similarity-properties"};
  for (VertexId w = 0; w < a.tree.size(); ++w) {
    if (!phi.defined(w) || !a.tree.rec(w).amalgamated || !a.interior(w)) continue;
    if (!a.interior(phi(w))) continue;
    ++rep.cases;
    Fingerprint fg = fingerprint(a, phi.anchor_from, w);
    Fingerprint fh = fingerprint(a, phi.anchor_to, phi(w));
    if (!(fg == fh))
      rep.violations.push_back("fingerprint mismatch at " + a.tree.rec(w).address.str() + ": " +
                               fg.str() + " vs " + fh.str());
    if (a.tree.rec(w).label != a.tree.rec(phi(w)).label ||
        a.tree.rec(w).amalgamated != a.tree.rec(phi(w)).amalgamated)
      rep.violations.push_back("decoration not preserved at " + a.tree.rec(w).address.str());
  }
  return rep;
}

// Spin/colour transfer along a similarity: spin agrees off the anchor path,
// colour off the strictly-decreasing exception set.
inline SweepReport check_similarity_transfer(const Assembly& a, const SimilarityMap& phi) {
  SweepReport rep{"similarity-transfer"};
  VertexId u = phi.anchor_from, v = phi.anchor_to;
  std::vector<VertexId> puv = a.tree.path(u, v);
  for (VertexId w : assembly_tree_vertices(a)) {
    if (!phi.defined(w) || !a.interior(w) || !a.interior(phi(w))) continue;
    bool on_path = std::find(puv.begin(), puv.end(), w) != puv.end();
    if (!on_path && w != u && w != v) {
      try {
        int su = gspin(a, u, w);
        int sv = gspin(a, v, w);
        int svp = gspin(a, v, phi(w));
        ++rep.cases;
        if (su != sv || sv != svp)
          rep.violations.push_back("spin transfer fails at " + a.tree.rec(w).address.str());
      } catch (const domain_error&) {
        // entry vertices sit outside the spin domain
      }
    }
    // colour clause
    ++rep.cases;
    int cu = gcol(a, u, w), cv = gcol(a, v, w), cvp = gcol(a, v, phi(w));
    if (cu != cv || cu != cvp) {
      bool excused = false;
      for (VertexId x : puv) {
        if (!a.tree.rec(x).label) continue;
        auto end = descending_tree_vertex(a.tree, x);
        excused |= end && (*end == w || *end == phi(w));
      }
      if (!excused)
        rep.violations.push_back("colour transfer fails off the exception set at " +
                                 a.tree.rec(w).address.str());
    }
  }
  return rep;
}

} // namespace sibtree
