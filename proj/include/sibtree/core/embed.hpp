#pragma once

// Tree-embedding engine: injective edge-preserving decoration-compatible
// maps, found by recursive bipartite matching of child lists (augmenting
// paths, memoized on guest/host vertex pairs).
//
// Decoration compatibility: kinds must match, labels must match, and ray
// types respect 0 <= 1 (a type-0 vertex may land on a type-1 vertex, never
// the reverse). Gadget vertices carry neither label nor type, so for them
// compatibility reduces to kind equality.
//
// Frontier policy is per call. closed: frontier vertices behave as the
// ordinary leaves they are in the truncation. open: a guest subtree hanging
// past a host frontier vertex is accepted as unverifiable-and-allowed, so
// "none" refutes but "some" only means "not refuted within the truncation".

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tree.hpp"

namespace sibtree {

enum class FrontierPolicy : std::uint8_t { Closed, Open };

struct EmbeddingMap {
  // pairs[g] = host image of guest vertex g, or kNoVertex where undefined.
  std::vector<VertexId> pairs;
  bool rooted = false;

  VertexId operator()(VertexId g) const { return pairs[g]; }
};

inline bool decoration_compatible(const VertexRecord& g, const VertexRecord& h) {
  if (g.kind != h.kind) return false;
  if (g.label.has_value() != h.label.has_value()) return false;
  if (g.label && *g.label != *h.label) return false;
  if (g.raytype.has_value() != h.raytype.has_value()) return false;
  if (g.raytype && *g.raytype > *h.raytype) return false;
  return true;
}

namespace detail {

// Host rooted at an anchor; guest rooted at its own anchor. embeds(g,h)
// decides whether guest-subtree(g) maps into host-subtree(h) with g -> h.
class Embedder {
public:
  Embedder(const DecoratedTree& guest, const DecoratedTree& host, FrontierPolicy policy)
      : g_(guest), h_(host), policy_(policy) {}

  bool run(VertexId groot, VertexId hroot) {
    groot_ = groot;
    root_order(g_, groot, gparent_, gorder_);
    root_order(h_, hroot, hparent_, horder_);
    memo_.assign(g_.size() * h_.size(), 0);
    return embeds(groot, hroot);
  }

  // Rebuild one concrete map after run() returned true.
  EmbeddingMap extract(VertexId groot, VertexId hroot) {
    EmbeddingMap m;
    m.pairs.assign(g_.size(), kNoVertex);
    assign(groot, hroot, m);
    return m;
  }

  // Enumerate every embedding with g->h (per-call memo reuse); cap guards
  // against misuse on large instances.
  void enumerate(VertexId groot, VertexId hroot, std::size_t cap,
                 const std::function<void(const EmbeddingMap&)>& sink) {
    if (!run(groot, hroot)) return;
    EmbeddingMap m;
    m.pairs.assign(g_.size(), kNoVertex);
    count_ = 0;
    cap_ = cap;
    enum_rec(groot, hroot, m, sink);
  }

private:
  const DecoratedTree& g_;
  const DecoratedTree& h_;
  FrontierPolicy policy_;
  VertexId groot_ = 0;
  std::vector<VertexId> gparent_, hparent_, gorder_, horder_;
  std::vector<std::int8_t> memo_; // 0 unknown, 1 yes, -1 no
  std::size_t count_ = 0, cap_ = 0;

  static void root_order(const DecoratedTree& t, VertexId root, std::vector<VertexId>& parent,
                         std::vector<VertexId>& order) {
    parent.assign(t.size(), kNoVertex);
    order.clear();
    order.push_back(root);
    parent[root] = root;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (VertexId w : t.neighbors(order[i]))
        if (parent[w] == kNoVertex) {
          parent[w] = order[i];
          order.push_back(w);
        }
  }

  std::vector<VertexId> children(const DecoratedTree& t, const std::vector<VertexId>& parent,
                                 VertexId v) const {
    std::vector<VertexId> c;
    for (VertexId w : t.neighbors(v))
      if (parent[w] == v && w != v) c.push_back(w);
    return c;
  }

  bool embeds(VertexId g, VertexId h) {
    std::int8_t& slot = memo_[g * h_.size() + h];
    if (slot) return slot > 0;
    bool ok = decoration_compatible(g_.rec(g), h_.rec(h));
    if (ok) {
      auto gc = children(g_, gparent_, g);
      if (!gc.empty()) {
        if (h_.rec(h).frontier && policy_ == FrontierPolicy::Open) {
          // subtree disappears past the truncation boundary
        } else {
          auto hc = children(h_, hparent_, h);
          ok = match_children(gc, hc);
        }
      }
    }
    slot = ok ? 1 : -1;
    return ok;
  }

  bool match_children(const std::vector<VertexId>& gc, const std::vector<VertexId>& hc) {
    if (gc.size() > hc.size()) return false;
    std::vector<VertexId> match(hc.size(), kNoVertex);
    for (VertexId g : gc) {
      std::vector<char> used(hc.size(), 0);
      if (!augment(g, gc, hc, used, match)) return false;
    }
    return true;
  }

  bool augment(VertexId g, const std::vector<VertexId>& gc, const std::vector<VertexId>& hc,
               std::vector<char>& used, std::vector<VertexId>& match) {
    for (std::size_t j = 0; j < hc.size(); ++j) {
      if (used[j] || !embeds(g, hc[j])) continue;
      used[j] = 1;
      if (match[j] == kNoVertex || augment(match[j], gc, hc, used, match)) {
        match[j] = g;
        return true;
      }
    }
    return false;
  }

  void assign(VertexId g, VertexId h, EmbeddingMap& m) {
    m.pairs[g] = h;
    auto gc = children(g_, gparent_, g);
    if (gc.empty()) return;
    if (h_.rec(h).frontier && policy_ == FrontierPolicy::Open) return;
    auto hc = children(h_, hparent_, h);
    std::vector<VertexId> match(hc.size(), kNoVertex);
    for (VertexId c : gc) {
      std::vector<char> used(hc.size(), 0);
      augment(c, gc, hc, used, match);
    }
    for (std::size_t j = 0; j < hc.size(); ++j)
      if (match[j] != kNoVertex) assign(match[j], hc[j], m);
  }

  // Depth-first product over all per-vertex injective child assignments.
  void enum_rec(VertexId g, VertexId h, EmbeddingMap& m,
                const std::function<void(const EmbeddingMap&)>& sink) {
    m.pairs.assign(g_.size(), kNoVertex);
    m.pairs[g] = h;
    std::vector<std::pair<VertexId, VertexId>> stack{{g, h}};
    enum_step(stack, m, sink);
  }

  void enum_step(std::vector<std::pair<VertexId, VertexId>>& stack, EmbeddingMap& m,
                 const std::function<void(const EmbeddingMap&)>& sink) {
    if (stack.empty()) {
      if (++count_ > cap_) throw parameter_error("embedding enumeration cap exceeded");
      sink(m);
      return;
    }
    auto [gv, hv] = stack.back();
    stack.pop_back();
    auto gc = children(g_, gparent_, gv);
    bool open_cut = h_.rec(hv).frontier && policy_ == FrontierPolicy::Open;
    if (gc.empty() || open_cut) {
      enum_step(stack, m, sink);
    } else {
      auto hc = children(h_, hparent_, hv);
      std::vector<std::size_t> chosen(gc.size(), 0);
      std::vector<char> used(hc.size(), 0);
      enum_assign(0, gc, hc, chosen, used, stack, m, sink);
    }
    stack.emplace_back(gv, hv);
  }

  void enum_assign(std::size_t i, const std::vector<VertexId>& gc, const std::vector<VertexId>& hc,
                   std::vector<std::size_t>& chosen, std::vector<char>& used,
                   std::vector<std::pair<VertexId, VertexId>>& stack, EmbeddingMap& m,
                   const std::function<void(const EmbeddingMap&)>& sink) {
    if (i == gc.size()) {
      for (std::size_t t = 0; t < gc.size(); ++t) {
        m.pairs[gc[t]] = hc[chosen[t]];
        stack.emplace_back(gc[t], hc[chosen[t]]);
      }
      enum_step(stack, m, sink);
      for (std::size_t t = 0; t < gc.size(); ++t) {
        m.pairs[gc[t]] = kNoVertex;
        stack.pop_back();
      }
      return;
    }
    for (std::size_t j = 0; j < hc.size(); ++j) {
      if (used[j] || !embeds(gc[i], hc[j])) continue;
      used[j] = 1;
      chosen[i] = j;
      enum_assign(i + 1, gc, hc, chosen, used, stack, m, sink);
      used[j] = 0;
    }
  }
};

} // namespace detail

// Rooted: guest root -> host root. Unrooted: any injective edge-preserving
// decoration-compatible map; the guest is anchored at vertex 0 and every
// host vertex is tried as its image.
inline std::optional<EmbeddingMap> find_embedding(const DecoratedTree& guest,
                                                  const DecoratedTree& host, bool rooted,
                                                  FrontierPolicy policy) {
  if (rooted) {
    if (!guest.root || !host.root) throw parameter_error("find_embedding: roots required");
    detail::Embedder e(guest, host, policy);
    if (!e.run(*guest.root, *host.root)) return std::nullopt;
    EmbeddingMap m = e.extract(*guest.root, *host.root);
    m.rooted = true;
    return m;
  }
  for (VertexId h = 0; h < host.size(); ++h) {
    detail::Embedder e(guest, host, policy);
    if (e.run(0, h)) {
      EmbeddingMap m = e.extract(0, h);
      m.rooted = false;
      return m;
    }
  }
  return std::nullopt;
}

// All embeddings (rooted: root->root; unrooted: all anchor images), as a
// sorted deduplicated list of image vectors. Small instances only.
inline std::vector<std::vector<VertexId>> enumerate_embeddings(const DecoratedTree& guest,
                                                               const DecoratedTree& host,
                                                               bool rooted, FrontierPolicy policy,
                                                               std::size_t cap = 200000) {
  std::vector<std::vector<VertexId>> out;
  auto sink = [&](const EmbeddingMap& m) { out.push_back(m.pairs); };
  if (rooted) {
    if (!guest.root || !host.root) throw parameter_error("enumerate_embeddings: roots required");
    detail::Embedder e(guest, host, policy);
    e.enumerate(*guest.root, *host.root, cap, sink);
  } else {
    for (VertexId h = 0; h < host.size(); ++h) {
      detail::Embedder e(guest, host, policy);
      e.enumerate(0, h, cap, sink);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace sibtree
