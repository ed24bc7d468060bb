#pragma once

// The finite rooted trees PK(n,m) that encode labels and ray types as pure
// graph structure. PK(n,m) is a path u_0 .. u_n whose far end u_n meets the
// hub of a star K_{1,m}; the root is u_0, the endpoint identified with the
// decorated vertex. Label ell is encoded by PK(2*ell+6, 2); ray type 0 by
// PK(2,2), type 1 by PK(2,3); the poset variant marks odd ray positions
// with PK(4,2).

#include <string>

#include "core/embed.hpp"
#include "core/tree.hpp"

namespace sibtree {

enum class GadgetPurpose { Label, Type0, Type1, PosetOdd };

struct GadgetSpec {
  int pathlen = 0;
  int fan = 0;

  friend auto operator<=>(const GadgetSpec&, const GadgetSpec&) = default;
};

inline GadgetSpec label_gadget(int ell) { return {2 * ell + 6, 2}; }
inline GadgetSpec type_gadget(int bit) { return bit == 0 ? GadgetSpec{2, 2} : GadgetSpec{2, 3}; }
inline GadgetSpec poset_odd_gadget() { return {4, 2}; }

// Standalone gadget: pathlen + fan + 2 vertices, all of gadget kind,
// rooted at u_0.
inline DecoratedTree build_pk(GadgetSpec spec) {
  if (spec.fan < 1) throw parameter_error("build_pk: fan must be >= 1");
  if (spec.pathlen < 1) throw parameter_error("build_pk: pathlen must be >= 1");
  DecoratedTree t;
  Address base;
  auto gv = [&](int pos) {
    VertexRecord r;
    r.kind = VertexKind::Gadget;
    r.address = pos == 0 ? base : gadget_step(base, GadgetRole::LabelGadget, pos);
    return t.add_vertex(std::move(r));
  };
  VertexId prev = gv(0);
  t.root = prev;
  for (int i = 1; i <= spec.pathlen; ++i) {
    VertexId u = gv(i);
    t.add_edge(prev, u);
    prev = u;
  }
  VertexId hub = t.add_vertex({VertexKind::Gadget, {}, {}, false, false,
                               gadget_step(base, GadgetRole::LabelGadget, 0) /*hub*/});
  t.add_edge(prev, hub);
  for (int i = 0; i < spec.fan; ++i) {
    VertexId leaf = t.add_vertex({VertexKind::Gadget, {}, {}, false, false,
                                  gadget_step(base, GadgetRole::LabelGadget, -(1 + i))});
    t.add_edge(hub, leaf);
  }
  return t;
}

// Closed-form rooted embeddability used throughout the construction:
// equal path length and guest fan at most host fan. For fans >= 2 this is
// exactly what the engine computes (the hub degree pins the hub, so the
// root-to-hub path lengths must agree). Fan-1 gadgets degenerate to bare
// paths, which do embed into longer paths; the verification suites surface
// that boundary rather than hide it.
inline bool pk_embeds(GadgetSpec a, GadgetSpec b) {
  if (a.fan < 1 || b.fan < 1 || a.pathlen < 1 || b.pathlen < 1)
    throw parameter_error("pk_embeds: invalid spec");
  return a.pathlen == b.pathlen && a.fan <= b.fan;
}

// Attach a gadget to an existing vertex of a larger tree: the gadget root
// is identified with the anchor, so the anchor gains exactly one edge.
inline void attach_gadget(DecoratedTree& t, VertexId anchor, GadgetSpec spec, GadgetRole role) {
  const Address base = t.rec(anchor).address;
  VertexId prev = anchor;
  for (int i = 1; i <= spec.pathlen; ++i) {
    VertexId u =
        t.add_vertex({VertexKind::Gadget, {}, {}, false, false, gadget_step(base, role, i)});
    t.add_edge(prev, u);
    prev = u;
  }
  VertexId hub =
      t.add_vertex({VertexKind::Gadget, {}, {}, false, false, gadget_step(base, role, 0)});
  t.add_edge(prev, hub);
  for (int i = 0; i < spec.fan; ++i) {
    VertexId leaf = t.add_vertex(
        {VertexKind::Gadget, {}, {}, false, false, gadget_step(base, role, -(1 + i))});
    t.add_edge(hub, leaf);
  }
}

} // namespace sibtree
