#pragma once

// Typed double rays. The family of type assignments, indexed by s:
//   tp_0(j) = 0 for j <= 0, 1 for j > 0
//   tp_s(j) = 0 for j < 0 or 1 <= j <= s, 1 for j = 0 or j >= s+1   (s >= 1)
// with centre z_s = v_0 in every case. Windows are finite intervals with
// frontier endpoints. The poset variant puts the type gadgets on even
// positions only and PK(4,2) on odd positions.

#include <map>
#include <optional>
#include <vector>

#include "core/embed.hpp"
#include "core/tree.hpp"
#include "gadget.hpp"

namespace sibtree {

inline int tp(int s, int j) {
  if (s < 0) throw parameter_error("tp: s >= 0 required");
  if (s == 0) return j <= 0 ? 0 : 1;
  if (j < 0 || (1 <= j && j <= s)) return 0;
  return 1; // j == 0 or j >= s+1
}

enum class RayVariant { Standard, Poset };

struct RayWindow {
  DecoratedTree tree;
  int lo = 0, hi = 0;
  int centre_index = 0;
  RayVariant variant = RayVariant::Standard;
  std::map<int, int> assignment;           // index -> type bit
  std::map<int, VertexId> at;              // index -> vertex
};

// Window of a typed double ray with assignment tp_s. Bits are stored as
// decorations; gadgets are attached when materialize_gadgets is set
// (standard: a type gadget everywhere; poset: type gadgets on even indices,
// the PK(4,2) marker on odd ones).
inline RayWindow build_ray(int s, int lo, int hi, RayVariant variant,
                           bool materialize_gadgets = false) {
  if (lo > 0 || hi < 0) throw parameter_error("build_ray: window must contain index 0");
  RayWindow w;
  w.lo = lo;
  w.hi = hi;
  w.centre_index = 0;
  w.variant = variant;
  DecoratedTree& t = w.tree;
  Address base;
  for (int j = lo; j <= hi; ++j) {
    VertexRecord r;
    r.kind = VertexKind::Ray;
    Address a = base;
    for (int i = 0; i < std::abs(j); ++i) a = ray_step(a, j > 0 ? 1 : -1);
    r.address = a;
    bool typed = variant == RayVariant::Standard || (j % 2 == 0);
    if (typed) {
      // the poset variant lays the assignment across the even positions
      int bit = variant == RayVariant::Standard ? tp(s, j) : tp(s, j / 2);
      w.assignment[j] = bit;
      if (!materialize_gadgets) r.raytype = bit;
    }
    r.frontier = j == lo || j == hi;
    VertexId v = t.add_vertex(std::move(r));
    w.at[j] = v;
    if (j > lo) t.add_edge(w.at[j - 1], v);
  }
  t.root = w.at[0];
  if (materialize_gadgets)
    for (int j = lo; j <= hi; ++j) {
      if (t.rec(w.at[j]).frontier) continue;
      bool typed = variant == RayVariant::Standard || (j % 2 == 0);
      if (typed)
        attach_gadget(t, w.at[j], type_gadget(w.assignment.at(j)), GadgetRole::TypeGadget);
      else
        attach_gadget(t, w.at[j], poset_odd_gadget(), GadgetRole::ParityGadget);
    }
  return w;
}

// Validity of the direction-preserving shift j -> j + t as a type-monotone
// map between windows of the same halfwidth; indices shifted past the host
// window count as unverifiable-and-allowed (open truncation semantics).
inline bool shift_embeds(int s_guest, int s_host, int halfwidth, int t) {
  for (int j = -halfwidth; j <= halfwidth; ++j) {
    int i = j + t;
    if (i < -halfwidth || i > halfwidth) continue;
    if (tp(s_guest, j) > tp(s_host, i)) return false;
  }
  return true;
}

// Same check at gadget level: the guest gadget at j must embed as a rooted
// tree into the host gadget at j + t.
inline bool shift_embeds_gadget_level(int s_guest, int s_host, int halfwidth, int t) {
  for (int j = -halfwidth; j <= halfwidth; ++j) {
    int i = j + t;
    if (i < -halfwidth || i > halfwidth) continue;
    if (!pk_embeds(type_gadget(tp(s_guest, j)), type_gadget(tp(s_host, i)))) return false;
  }
  return true;
}

// True iff the centred (zero-shift) direction-preserving type-monotone map
// of halfwidth windows is valid. The halfwidth precondition guarantees the
// window sees every index where the two assignments differ.
inline bool centred_shift_embeds(int s, int s2, int halfwidth) {
  if (halfwidth < s + s2 + 2) throw parameter_error("centred_shift_embeds: halfwidth too small");
  return shift_embeds(s, s2, halfwidth, 0);
}

// All valid shifts within |t| <= halfwidth/2, bit level.
inline std::vector<int> valid_shifts(int s_guest, int s_host, int halfwidth) {
  std::vector<int> out;
  for (int t = -halfwidth / 2; t <= halfwidth / 2; ++t)
    if (shift_embeds(s_guest, s_host, halfwidth, t)) out.push_back(t);
  return out;
}

} // namespace sibtree
