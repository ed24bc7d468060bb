#pragma once

// The typed stage-k trees. A family of them is seeded by the assignments
// tp_s on the central double ray; everything deeper is forced: every target
// vertex (global height equal to global colour, both at most k) is
// amalgamated with a typed double ray, the typing chosen by its global
// spin. Positive spin attaches the registered sibling for the stage,
// negative spin attaches the stage-below typing; the difference between the
// two centre patterns (type 1-then-0 versus 0-then-1) is what makes the
// branch orientation a graph property.

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "similarity.hpp"
#include "spine.hpp"

namespace sibtree {

// k = 2^i (2j + 1)
inline std::pair<int, int> stage_decode(int k) {
  if (k < 1) throw parameter_error("stage_decode: k >= 1 required");
  int i = 0;
  while (k % 2 == 0) {
    k /= 2;
    ++i;
  }
  return {i, (k - 1) / 2};
}

// Finite description of a sibling: overrides of tp_0 on the central ray of
// the stage-i tree, plus its centre (the first type-1-then-type-0 position).
struct SiblingSpec {
  int base_stage = 0;
  int index = 0;
  std::map<int, int> overrides;
  int centre_index = 0;

  Typing typing() const { return Typing{0, overrides}; }
  std::string tag() const {
    return "S" + std::to_string(base_stage) + "," + std::to_string(index);
  }
};

using Registry = std::vector<SiblingSpec>;

inline const SiblingSpec& registry_lookup(const Registry& reg, int i, int j) {
  for (const SiblingSpec& s : reg)
    if (s.base_stage == i && s.index == j) return s;
  throw parameter_error("registry has no entry for stage 2^" + std::to_string(i) + "(2*" +
                        std::to_string(j) + "+1)");
}

inline nlohmann::ordered_json registry_to_json(const Registry& reg) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SiblingSpec& s : reg) {
    nlohmann::ordered_json e;
    e["base_stage"] = s.base_stage;
    e["index"] = s.index;
    auto& ov = e["overrides"] = nlohmann::ordered_json::array();
    for (auto [i, b] : s.overrides)
      ov.push_back(nlohmann::ordered_json{{"index", i}, {"bit", b}});
    e["centre_index"] = s.centre_index;
    arr.push_back(std::move(e));
  }
  return arr;
}

inline Registry registry_from_json(const nlohmann::json& j) {
  Registry reg;
  for (const auto& e : j) {
    SiblingSpec s;
    s.base_stage = e.at("base_stage").get<int>();
    s.index = e.at("index").get<int>();
    for (const auto& ov : e.at("overrides"))
      s.overrides[ov.at("index").get<int>()] = ov.at("bit").get<int>();
    s.centre_index = e.at("centre_index").get<int>();
    reg.push_back(std::move(s));
  }
  return reg;
}

inline Registry load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parameter_error("cannot open registry file " + path);
  nlohmann::json j;
  in >> j;
  return registry_from_json(j);
}

struct TBall {
  Assembly assembly;
  Typing seed;
  int seed_centre_index = 0;
  int stage = 0;
};

namespace detail {

// Target vertices with respect to c: interior unamalgamated tree vertices
// whose global height and colour from c agree and stay within the bound.
inline std::vector<std::pair<int, VertexId>> collect_targets(const Assembly& a, VertexId c,
                                                             int max_height) {
  std::vector<std::pair<int, VertexId>> out;
  for (VertexId v = 0; v < a.tree.size(); ++v) {
    const VertexRecord& r = a.tree.rec(v);
    if (r.kind != VertexKind::Tree || r.amalgamated || r.frontier) continue;
    int h = ghth(a, c, v);
    if (h < 1 || h > max_height) continue;
    if (gcol(a, c, v) == h) out.emplace_back(h, v);
  }
  return out;
}

inline void amalgamate_to(AssemblyBuilder& b, const Registry& reg, VertexId c, int max_height) {
  if (max_height < 1) return;
  Assembly& a = b.assembly();
  while (true) {
    auto targets = collect_targets(a, c, max_height);
    if (targets.empty()) break;
    std::sort(targets.begin(), targets.end(), [&](auto& x, auto& y) {
      return x.first != y.first ? x.first < y.first
                                : a.tree.rec(x.second).address < a.tree.rec(y.second).address;
    });
    for (auto [h, v] : targets) {
      if (a.tree.rec(v).amalgamated) continue;
      int spin = gspin(a, c, v);
      std::optional<Typing> typing;
      int centre_index = 0;
      std::string tag;
      if (spin > 0) {
        auto [i, j] = stage_decode(h);
        const SiblingSpec& s = registry_lookup(reg, i, j);
        typing = s.typing();
        centre_index = s.centre_index;
        tag = s.tag();
      } else {
        typing = Typing{0, {}};
        centre_index = 0;
        tag = "T" + std::to_string(h - 1);
      }
      a.log.push_back({a.tree.rec(v).address.str(), h, spin, tag});
      b.attach_ray(v, std::move(typing), centre_index);
      amalgamate_to(b, reg, v, h - 1);
    }
    ++a.fixpoint_iterations;
  }
}

} // namespace detail

// Stage-k tree for the given seed typing (tp_s for the family member s, or
// a sibling's overridden typing seeded at its centre).
inline TBall build_t_seeded(Typing seed, int seed_centre_index, int k, int radius,
                            const Registry& reg, int maxlabel = 64) {
  if (k < 0 || radius < 1) throw parameter_error("build_t: bad parameters");
  detail::AssemblyBuilder b(radius, maxlabel, true);
  b.seed(seed, seed_centre_index);
  detail::amalgamate_to(b, reg, b.assembly().centre, k);
  TBall t;
  t.assembly = std::move(b).take();
  t.assembly.stage = k;
  t.seed = std::move(seed);
  t.seed_centre_index = seed_centre_index;
  t.stage = k;
  return t;
}

inline TBall build_t(int s, int k, int radius, const Registry& reg, int maxlabel = 64) {
  return build_t_seeded(Typing{s, {}}, 0, k, radius, reg, maxlabel);
}

// ---- targets and craters ----------------------------------------------------

// All (address, height) pairs with global height equal to global colour with
// respect to the centre; height-0 targets are the central-ray vertices.
inline std::vector<std::pair<VertexId, int>> target_vertices(const Assembly& a) {
  std::vector<std::pair<VertexId, int>> out;
  for (VertexId v : assembly_tree_vertices(a)) {
    if (!a.interior(v)) continue;
    int h = ghth(a, a.centre, v);
    if (gcol(a, a.centre, v) == h) out.emplace_back(v, h);
  }
  return out;
}

// Crater of a height-h target: everything of global height below h from it;
// for height-0 targets the degenerate convention {v} keeps craters a
// partition of the typed material.
inline std::vector<VertexId> crater(const Assembly& a, VertexId v, int h) {
  if (h == 0) return {v};
  std::vector<VertexId> out;
  for (VertexId u = 0; u < a.tree.size(); ++u) {
    if (!is_core(a.tree, u)) continue;
    if (ghth(a, v, u) < h) out.push_back(u);
  }
  return out;
}

// ---- translations and witness self-maps -------------------------------------

struct WitnessMap {
  std::string name;
  int displacement = 0;
  std::vector<VertexId> img; // kNoVertex outside the truncated domain

  bool defined(VertexId v) const { return img[v] != kNoVertex; }
  VertexId operator()(VertexId v) const { return img[v]; }
};

namespace detail {

// Shift the leading central-ray run of an address by t.
inline Address shift_central_prefix(const Address& addr, int t) {
  std::size_t run = 0;
  int offset = 0;
  while (run < addr.moves.size() && addr.moves[run].tag == MoveTag::RayStep) {
    offset += addr.moves[run].a;
    ++run;
  }
  int no = offset + t;
  Address out;
  for (int i = 0; i < std::abs(no); ++i)
    out.moves.push_back({MoveTag::RayStep, static_cast<std::int16_t>(no > 0 ? 1 : -1), 0});
  out.moves.insert(out.moves.end(), addr.moves.begin() + run, addr.moves.end());
  return out;
}

} // namespace detail

// The translation by t along the central ray, as a partial self-map of the
// truncation. Returns nullopt if the map would violate type monotonicity on
// its materialized domain.
inline std::optional<WitnessMap> translation_witness(const TBall& tb, int t) {
  const Assembly& a = tb.assembly;
  auto index = a.tree.address_index();
  WitnessMap w;
  w.name = "translation+" + std::to_string(t);
  w.displacement = std::abs(t);
  w.img.assign(a.tree.size(), kNoVertex);
  for (VertexId v = 0; v < a.tree.size(); ++v) {
    Address target = detail::shift_central_prefix(a.tree.rec(v).address, t);
    auto it = index.find(target);
    if (it == index.end()) continue;
    w.img[v] = it->second;
    const VertexRecord& gr = a.tree.rec(v);
    const VertexRecord& hr = a.tree.rec(it->second);
    if (gr.raytype && hr.raytype && *gr.raytype > *hr.raytype) return std::nullopt;
    if (gr.raytype && !hr.raytype && !hr.frontier) return std::nullopt;
  }
  // edge preservation on the defined domain
  for (VertexId v = 0; v < a.tree.size(); ++v) {
    if (!w.defined(v)) continue;
    for (VertexId x : a.tree.neighbors(v)) {
      if (!w.defined(x)) continue;
      bool adj = false;
      for (VertexId y : a.tree.neighbors(w(v))) adj |= y == w(x);
      if (!adj) throw structural_error("translation image is not edge-preserving");
    }
  }
  return w;
}

// Extend a core-level map over gadget vertices: each gadget vertex follows
// its anchor positionally (path index to path index, leaf i to leaf i).
inline void extend_over_gadgets(const Assembly& a, std::vector<VertexId>& img) {
  auto idx = a.tree.address_index();
  for (VertexId g = 0; g < a.tree.size(); ++g) {
    if (is_core(a.tree, g) || img[g] != kNoVertex) continue;
    const Address& addr = a.tree.rec(g).address;
    Address anchor_addr = addr;
    Move last = anchor_addr.moves.back();
    anchor_addr.moves.pop_back();
    auto anchor_it = idx.find(anchor_addr);
    if (anchor_it == idx.end() || img[anchor_it->second] == kNoVertex) continue;
    Address target = a.tree.rec(img[anchor_it->second]).address;
    target.moves.push_back(last);
    auto it = idx.find(target);
    if (it != idx.end()) img[g] = it->second;
  }
}

// Witness self-maps anchored by similarity: for every interior amalgamated
// vertex within reach of the centre, the unique similarity sending the
// centre there, kept when it respects the type assignment on its domain.
inline std::vector<WitnessMap> similarity_witnesses(const TBall& tb, int max_distance) {
  const Assembly& a = tb.assembly;
  std::vector<WitnessMap> out;
  std::vector<int> depth = a.tree.bfs_depths(a.centre);
  std::vector<std::pair<Address, VertexId>> anchors;
  for (VertexId v = 0; v < a.tree.size(); ++v)
    if (v != a.centre && a.tree.rec(v).amalgamated && a.interior(v) && depth[v] <= max_distance)
      anchors.emplace_back(a.tree.rec(v).address, v);
  std::sort(anchors.begin(), anchors.end());
  for (auto& [addr, v] : anchors) {
    SimilarityMap phi;
    try {
      phi = build_similarity(a, a.centre, v);
    } catch (const no_similarity&) {
      continue;
    }
    bool typing_ok = true;
    for (VertexId x = 0; x < a.tree.size() && typing_ok; ++x) {
      if (phi.img[x] == kNoVertex) continue;
      const VertexRecord& gr = a.tree.rec(x);
      const VertexRecord& hr = a.tree.rec(phi.img[x]);
      if (gr.raytype && hr.raytype && *gr.raytype > *hr.raytype) typing_ok = false;
      if (gr.raytype && !hr.raytype && !hr.frontier) typing_ok = false;
    }
    if (!typing_ok) continue;
    WitnessMap w;
    w.name = "similarity->" + addr.str();
    w.displacement = depth[v];
    w.img = phi.img;
    extend_over_gadgets(a, w.img);
    out.push_back(std::move(w));
  }
  return out;
}

inline WitnessMap identity_witness(const TBall& tb) {
  WitnessMap w;
  w.name = "identity";
  w.displacement = 0;
  w.img.resize(tb.assembly.tree.size());
  for (VertexId v = 0; v < tb.assembly.tree.size(); ++v) w.img[v] = v;
  return w;
}

// ---- verification ------------------------------------------------------------

// Strip the type assignment: drop type-gadget vertices and ray-type bits.
// What remains is the untyped spine of the construction.
inline DecoratedTree strip_type_assignment(const DecoratedTree& t) {
  DecoratedTree out;
  std::vector<VertexId> remap(t.size(), kNoVertex);
  for (VertexId v = 0; v < t.size(); ++v) {
    const VertexRecord& r = t.rec(v);
    bool type_gadget = false;
    for (const Move& m : r.address.moves)
      if (m.tag == MoveTag::GadgetStep && m.a == static_cast<std::int16_t>(GadgetRole::TypeGadget))
        type_gadget = true;
    if (type_gadget) continue;
    VertexRecord nr = r;
    nr.raytype.reset();
    remap[v] = out.add_vertex(std::move(nr));
  }
  for (VertexId v = 0; v < t.size(); ++v)
    for (VertexId w : t.neighbors(v))
      if (v < w && remap[v] != kNoVertex && remap[w] != kNoVertex)
        out.add_edge(remap[v], remap[w]);
  if (t.root) out.root = remap[*t.root];
  return out;
}

// Pairwise distinctness of the family members and the registry siblings at a
// common truncation.
inline SweepReport verify_nonisomorphism(int s_count, int k, int radius, const Registry& reg) {
  SweepReport rep{"noniso"};
  std::vector<std::pair<std::string, std::string>> codes;
  for (int s = 0; s < s_count; ++s) {
    TBall t = build_t(s, k, radius, reg);
    codes.emplace_back("T" + std::to_string(s) + "(" + std::to_string(k) + ")",
                       canonical_form(t.assembly.tree, false));
  }
  for (const SiblingSpec& s : reg) {
    if (s.base_stage != 0 || (1 << s.base_stage) * (2 * s.index + 1) > std::max(k, 1)) continue;
    TBall t = build_t_seeded(s.typing(), s.centre_index, k, radius, reg);
    codes.emplace_back(s.tag() + "(" + std::to_string(k) + ")",
                       canonical_form(t.assembly.tree, false));
  }
  for (std::size_t i = 0; i < codes.size(); ++i)
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      ++rep.cases;
      if (codes[i].second == codes[j].second)
        rep.violations.push_back(codes[i].first + " and " + codes[j].first +
                                 " have equal canonical forms");
    }
  return rep;
}

// Uncovered-interior analysis of a witness self-map. A host vertex counts
// as resolved-uncovered when its gadget cluster was hit by the image but the
// vertex itself was missed; everything else missing is truncation loss.
struct UncoveredReport {
  std::vector<VertexId> uncovered;      // resolved-uncovered vertices
  std::vector<VertexId> downgraded;     // ray vertices typed 0 -> 1 under the map
  long unresolved = 0;
  bool ok = true;
  std::string detail;
};

inline UncoveredReport verify_embfinite(const TBall& tb, const WitnessMap& w) {
  const Assembly& a = tb.assembly;
  UncoveredReport rep;
  std::vector<char> in_image(a.tree.size(), 0);
  for (VertexId v = 0; v < a.tree.size(); ++v)
    if (w.defined(v)) in_image[w(v)] = 1;
  // per-gadget-instance hit analysis
  std::map<VertexId, std::vector<VertexId>> cluster_missing;
  for (VertexId v = 0; v < a.tree.size(); ++v) {
    if (!is_core(a.tree, v)) continue;
    for (VertexId g : a.tree.neighbors(v)) {
      if (is_core(a.tree, g)) continue;
      // walk this whole gadget instance
      std::vector<VertexId> stack{g};
      std::vector<VertexId> members;
      std::set<VertexId> seen{v};
      while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        if (!seen.insert(x).second) continue;
        members.push_back(x);
        for (VertexId y : a.tree.neighbors(x))
          if (!is_core(a.tree, y)) stack.push_back(y);
      }
      bool hit = false;
      std::vector<VertexId> missing;
      for (VertexId x : members) {
        if (in_image[x])
          hit = true;
        else
          missing.push_back(x);
      }
      if (hit) {
        auto& mm = cluster_missing[v];
        mm.insert(mm.end(), missing.begin(), missing.end());
      } else {
        rep.unresolved += static_cast<long>(missing.size());
      }
    }
  }
  for (auto& [anchorv, missing] : cluster_missing) {
    for (VertexId x : missing) {
      if (!a.interior(anchorv)) continue;
      rep.uncovered.push_back(x);
      // must be a fan leaf of a type gadget at a downgraded ray vertex
      const Address& addr = a.tree.rec(x).address;
      const Move& last = addr.moves.back();
      bool leaf = last.tag == MoveTag::GadgetStep && last.b < 0 &&
                  last.a == static_cast<std::int16_t>(GadgetRole::TypeGadget);
      bool down = false;
      if (leaf) {
        // the preimage anchor must be a type-0 ray vertex mapped onto type 1
        for (VertexId p = 0; p < a.tree.size() && !down; ++p)
          if (w.defined(p) && w(p) == anchorv)
            down = a.tree.rec(p).raytype == 0 && a.tree.rec(anchorv).raytype == 1;
      }
      if (!(leaf && down)) {
        rep.ok = false;
        rep.detail += "unexpected uncovered vertex " + addr.str() + "; ";
      } else {
        rep.downgraded.push_back(anchorv);
      }
    }
  }
  // size bound: displacement times the per-index type-1 density (one)
  long bound = static_cast<long>(w.displacement);
  if (static_cast<long>(rep.uncovered.size()) > std::max(bound, 0L)) {
    rep.ok = false;
    rep.detail += "uncovered set larger than the displacement bound; ";
  }
  return rep;
}

// ---- sibling enumeration ------------------------------------------------------

struct SiblingCandidate {
  std::map<int, int> overrides;
  std::optional<int> centre_index;
  bool witnessed = false;   // shift embeddings both ways
  bool distinct = false;    // non-isomorphic to every family member at truncation
  std::string rejection;
};

// Does some direction-preserving shift with |t| <= window/2 map guest bits
// monotonically into host bits on the window? Images past the window count
// as unverifiable-and-allowed, so at least half the window is always
// actually checked.
template <typename GuestBits, typename HostBits>
inline bool monotone_shift_witness(GuestBits&& guest, HostBits&& host, int window) {
  for (int t = -window / 2; t <= window / 2; ++t) {
    bool ok = true;
    for (int j = -window; j <= window && ok; ++j) {
      int i = j + t;
      if (i < -window || i > window) continue;
      ok = guest(j) <= host(i);
    }
    if (ok) return true;
  }
  return false;
}

// Canonical enumeration of type-override siblings of the stage-k tree:
// candidates ordered by override count then address order of the touched
// positions; verified at truncation scale (two-way shift witnesses, and
// canonical distinctness from every family member) and filtered to those
// carrying a type 1-then-0 centre. An override that restates the base bit
// is a no-op, so each touched position is flipped.
inline std::vector<SiblingCandidate> enumerate_sibling_candidates(int k, int max_overrides,
                                                                  int window, int s_count,
                                                                  int radius,
                                                                  const Registry& reg) {
  std::vector<int> positions;
  positions.push_back(0);
  for (int i = 1; i <= window; ++i) positions.push_back(-i);
  for (int i = 1; i <= window; ++i) positions.push_back(i);
  std::sort(positions.begin(), positions.end(), [](int x, int y) {
    Address ax, ay;
    for (int i = 0; i < std::abs(x); ++i) ax = ray_step(ax, x > 0 ? 1 : -1);
    for (int i = 0; i < std::abs(y); ++i) ay = ray_step(ay, y > 0 ? 1 : -1);
    return ax < ay;
  });

  std::vector<std::string> family_codes;
  for (int s = 0; s < s_count; ++s)
    family_codes.push_back(canonical_form(build_t(s, k, radius, reg).assembly.tree, false));

  // override position sets of size 1..max_overrides, in enumeration order
  std::vector<std::vector<int>> pos_sets;
  std::vector<int> cur;
  std::function<void(std::size_t, int)> gen = [&](std::size_t from, int left) {
    if (!cur.empty()) pos_sets.push_back(cur);
    if (left == 0) return;
    for (std::size_t i = from; i < positions.size(); ++i) {
      cur.push_back(positions[i]);
      gen(i + 1, left - 1);
      cur.pop_back();
    }
  };
  gen(0, std::max(max_overrides, 0));
  std::stable_sort(pos_sets.begin(), pos_sets.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });

  std::vector<SiblingCandidate> out;
  for (const auto& ps : pos_sets) {
    SiblingCandidate c;
    for (int pos : ps) c.overrides[pos] = 1 - tp(0, pos);
    Typing typing{0, c.overrides};
    // centre: first 1-then-0 position in the window
    for (int i = -window - 1; i <= window && !c.centre_index; ++i)
      if (typing.bit(i) == 1 && typing.bit(i + 1) == 0) c.centre_index = i;
    // witnessed both ways by shifts of the typing
    bool fwd = monotone_shift_witness([&](int j) { return typing.bit(j); },
                                      [&](int i) { return tp(0, i); }, window);
    bool bwd = monotone_shift_witness([&](int j) { return tp(0, j); },
                                      [&](int i) { return typing.bit(i); }, window);
    c.witnessed = fwd && bwd;
    if (c.witnessed) {
      TBall t = build_t_seeded(typing, c.centre_index.value_or(0), k, radius, reg);
      std::string code = canonical_form(t.assembly.tree, false);
      c.distinct = true;
      for (const std::string& f : family_codes) c.distinct &= code != f;
    }
    if (!c.witnessed)
      c.rejection = "no two-way shift witness";
    else if (!c.centre_index)
      c.rejection = "no type 1-then-0 centre";
    else if (!c.distinct)
      c.rejection = "isomorphic to a family member at this truncation";
    out.push_back(std::move(c));
  }
  return out;
}

// First registry-eligible candidate for each base stage, frozen as the
// default registry for the family size.
inline Registry default_registry(int s_count, int max_stage, int radius) {
  Registry reg;
  for (int i = 0; max_stage >= 1 && i <= 1; ++i) {
    if ((1 << i) > std::max(max_stage, 1)) break;
    Registry boot = reg;
    auto cands = enumerate_sibling_candidates(i, 1, 8, s_count, radius, boot);
    for (const SiblingCandidate& c : cands)
      if (c.witnessed && c.centre_index && c.distinct) {
        SiblingSpec s;
        s.base_stage = i;
        s.index = 0;
        s.overrides = c.overrides;
        s.centre_index = *c.centre_index;
        reg.push_back(std::move(s));
        break;
      }
  }
  return reg;
}

} // namespace sibtree
