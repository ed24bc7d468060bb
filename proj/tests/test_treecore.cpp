#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "sibtree/core/canonical.hpp"
#include "sibtree/core/dot.hpp"
#include "sibtree/core/embed.hpp"
#include "sibtree/core/json_io.hpp"
#include "sibtree/core/tree.hpp"

#include "oracles.hpp"

using namespace sibtree;

namespace {

DecoratedTree undecorated_path(int n, int root = -1) {
  DecoratedTree t;
  for (int i = 0; i < n; ++i) {
    VertexRecord r;
    r.kind = VertexKind::Gadget;
    r.address.moves.push_back({MoveTag::CopyStep, static_cast<std::int16_t>(i), 0});
    t.add_vertex(std::move(r));
    if (i) t.add_edge(i - 1, i);
  }
  if (root >= 0) t.root = static_cast<VertexId>(root);
  return t;
}

DecoratedTree star(int leaves) {
  DecoratedTree t;
  for (int i = 0; i <= leaves; ++i) {
    VertexRecord r;
    r.kind = VertexKind::Gadget;
    r.address.moves.push_back({MoveTag::CopyStep, static_cast<std::int16_t>(i), 0});
    t.add_vertex(std::move(r));
    if (i) t.add_edge(0, i);
  }
  return t;
}

DecoratedTree random_decorated_tree(std::mt19937& rng, int maxn) {
  std::uniform_int_distribution<int> nd(2, maxn);
  int n = nd(rng);
  std::vector<int> seq(std::max(0, n - 2));
  std::uniform_int_distribution<int> vd(0, n - 1);
  for (int& x : seq) x = vd(rng);
  DecoratedTree t = oracles::tree_from_pruefer(seq, n);
  std::uniform_int_distribution<int> kd(0, 3);
  std::uniform_int_distribution<int> ld(1, 3);
  std::uniform_int_distribution<int> bd(0, 1);
  for (VertexId v = 0; v < t.size(); ++v) {
    VertexRecord& r = t.rec(v);
    switch (kd(rng)) {
      case 0:
        r.kind = VertexKind::Tree;
        r.label = 0;
        break;
      case 1:
        r.kind = VertexKind::Copy;
        r.label = ld(rng);
        break;
      case 2:
        r.kind = VertexKind::Ray;
        r.raytype = bd(rng);
        break;
      default: r.kind = VertexKind::Gadget; break;
    }
    r.amalgamated = bd(rng) == 1;
    r.frontier = false;
  }
  return t;
}

DecoratedTree apply_permutation(const DecoratedTree& t, const std::vector<VertexId>& perm) {
  DecoratedTree out;
  std::vector<VertexId> inv(t.size());
  for (VertexId v = 0; v < t.size(); ++v) inv[perm[v]] = v;
  for (VertexId v = 0; v < t.size(); ++v) out.add_vertex(t.rec(inv[v]));
  for (VertexId v = 0; v < t.size(); ++v)
    for (VertexId w : t.neighbors(v))
      if (v < w) out.add_edge(perm[v], perm[w]);
  if (t.root) out.root = perm[*t.root];
  return out;
}

} // namespace

TEST_CASE("canonical form: identity and symmetry cases") {
  DecoratedTree single = undecorated_path(1);
  CHECK(canonical_form(single, false) == canonical_form(undecorated_path(1), false));

  // path of 3 vs star K_{1,2}: same unrooted tree, distinct when rooted
  DecoratedTree p3 = undecorated_path(3);
  DecoratedTree k12 = star(2);
  CHECK(canonical_form(p3, false) == canonical_form(k12, false));
  p3.root = 0; // leaf
  k12.root = 0; // centre
  CHECK(canonical_form(p3, true) != canonical_form(k12, true));
  p3.root = 1; // centre
  CHECK(canonical_form(p3, true) == canonical_form(k12, true));
}

TEST_CASE("canonical form: all unlabeled trees on up to 8 vertices vs permutation oracle") {
  // distinct unlabeled trees on n = 1..8 vertices
  const long expected[] = {1, 1, 1, 2, 3, 6, 11, 23};
  for (int n = 1; n <= 8; ++n) {
    std::set<std::string> codes;
    std::map<std::string, DecoratedTree> reps;
    long total = n <= 2 ? 1 : 1;
    if (n > 2) {
      total = 1;
      for (int i = 0; i < n - 2; ++i) total *= n;
    }
    std::vector<int> seq(std::max(0, n - 2), 0);
    for (long it = 0; it < total; ++it) {
      long x = it;
      for (int i = 0; i < n - 2; ++i) {
        seq[i] = static_cast<int>(x % n);
        x /= n;
      }
      DecoratedTree t = oracles::tree_from_pruefer(seq, n);
      std::string c = canonical_form(t, false);
      if (codes.insert(c).second) reps.emplace(c, t);
    }
    CHECK(static_cast<long>(codes.size()) == expected[n - 1]);
    // representatives must be pairwise non-isomorphic by the permutation oracle
    if (n <= 7) {
      std::vector<const DecoratedTree*> rs;
      for (auto& [c, t] : reps) rs.push_back(&t);
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = i + 1; j < rs.size(); ++j)
          CHECK_FALSE(oracles::perm_isomorphic(*rs[i], *rs[j], false));
    }
  }
}

TEST_CASE("is_isomorphic: relabeled copies and decorated random trees") {
  std::mt19937 rng(12345);
  for (int round = 0; round < 40; ++round) {
    DecoratedTree t = random_decorated_tree(rng, 12);
    std::vector<VertexId> perm(t.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    DecoratedTree u = apply_permutation(t, perm);
    CHECK(is_isomorphic(t, u, false));
    CHECK(oracles::backtrack_isomorphic(t, u, false));
    // decoration mutation must break both
    DecoratedTree m = u;
    m.rec(0).amalgamated = !m.rec(0).amalgamated;
    CHECK(is_isomorphic(m, u, false) == oracles::backtrack_isomorphic(m, u, false));
  }
  // a 30-vertex relabeled copy
  std::vector<int> seq(28);
  std::uniform_int_distribution<int> vd(0, 29);
  for (int& x : seq) x = vd(rng);
  DecoratedTree big = oracles::tree_from_pruefer(seq, 30);
  std::vector<VertexId> perm(big.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  CHECK(is_isomorphic(big, apply_permutation(big, perm), false));
}

TEST_CASE("find_embedding: basic cases") {
  DecoratedTree edge = undecorated_path(2);
  DecoratedTree p4 = undecorated_path(4);
  CHECK(find_embedding(edge, p4, false, FrontierPolicy::Closed).has_value());

  DecoratedTree k13 = star(3);
  DecoratedTree p11 = undecorated_path(11);
  CHECK_FALSE(find_embedding(k13, p11, false, FrontierPolicy::Closed).has_value());
}

TEST_CASE("find_embedding agrees with brute-force search on small decorated pairs") {
  std::mt19937 rng(777);
  int some = 0;
  for (int round = 0; round < 120; ++round) {
    DecoratedTree g = random_decorated_tree(rng, 7);
    DecoratedTree h = random_decorated_tree(rng, 9);
    bool engine = find_embedding(g, h, false, FrontierPolicy::Closed).has_value();
    bool brute = oracles::brute_embedding_exists(g, h, false);
    CHECK(engine == brute);
    some += engine;
  }
  CHECK(some > 0); // the sample exercises both outcomes
}

TEST_CASE("embedding maps are injective, edge-preserving and path-rigid") {
  std::mt19937 rng(4242);
  for (int round = 0; round < 30; ++round) {
    DecoratedTree g = random_decorated_tree(rng, 7);
    DecoratedTree h = random_decorated_tree(rng, 10);
    auto m = find_embedding(g, h, false, FrontierPolicy::Closed);
    if (!m) continue;
    std::set<VertexId> image;
    for (VertexId v = 0; v < g.size(); ++v) {
      REQUIRE((*m)(v) != kNoVertex);
      CHECK(image.insert((*m)(v)).second);
    }
    for (VertexId v = 0; v < g.size(); ++v)
      for (VertexId w : g.neighbors(v)) {
        bool adj = false;
        for (VertexId x : h.neighbors((*m)(v))) adj |= x == (*m)(w);
        CHECK(adj);
      }
    // guest paths map onto host paths of equal length
    for (int probe = 0; probe < 5; ++probe) {
      VertexId a = static_cast<VertexId>(rng() % g.size());
      VertexId b = static_cast<VertexId>(rng() % g.size());
      CHECK(g.path(a, b).size() == h.path((*m)(a), (*m)(b)).size());
    }
  }
}

TEST_CASE("embedding is reflexive and composable") {
  std::mt19937 rng(99);
  DecoratedTree t = random_decorated_tree(rng, 10);
  auto self = find_embedding(t, t, false, FrontierPolicy::Closed);
  REQUIRE(self.has_value());
  DecoratedTree mid = t;
  auto m1 = find_embedding(t, mid, false, FrontierPolicy::Closed);
  auto m2 = find_embedding(mid, t, false, FrontierPolicy::Closed);
  REQUIRE(m1.has_value());
  REQUIRE(m2.has_value());
  // composition is again injective and edge-preserving
  std::set<VertexId> image;
  for (VertexId v = 0; v < t.size(); ++v) CHECK(image.insert((*m2)((*m1)(v))).second);
}

TEST_CASE("frontier policy: open accepts guest growth past the boundary, closed refuses") {
  DecoratedTree host = undecorated_path(3);
  host.rec(2).frontier = true;
  host.root = 0;
  DecoratedTree guest = undecorated_path(5);
  guest.root = 0;
  CHECK_FALSE(find_embedding(guest, host, true, FrontierPolicy::Closed).has_value());
  CHECK(find_embedding(guest, host, true, FrontierPolicy::Open).has_value());
}

TEST_CASE("json round trip preserves canonical form and addresses") {
  std::mt19937 rng(5);
  for (int round = 0; round < 10; ++round) {
    DecoratedTree t = random_decorated_tree(rng, 12);
    t.root = 0;
    auto j = tree_to_json(t);
    DecoratedTree back = tree_from_json(j);
    CHECK(canonical_form(t, true) == canonical_form(back, true));
    CHECK(tree_to_json(back) == j);
  }
}

TEST_CASE("dot export is well-formed") {
  DecoratedTree t = star(3);
  std::ostringstream os;
  tree_to_dot(t, os, "star");
  std::string s = os.str();
  CHECK(s.find("graph \"star\"") != std::string::npos);
  CHECK(s.find("n0 -- n1") != std::string::npos);
}

TEST_CASE("structural validation rejects malformed input") {
  DecoratedTree t;
  VertexRecord a;
  a.kind = VertexKind::Tree;
  a.label = 0;
  t.add_vertex(a);
  VertexRecord b;
  b.kind = VertexKind::Copy;
  b.label = 0; // copy vertices must have label >= 1
  t.add_vertex(b);
  t.add_edge(0, 1);
  CHECK_THROWS_AS(t.validate(), structural_error);
}
