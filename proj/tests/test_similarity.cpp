#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sibtree/construct.hpp"
#include "sibtree/similarity.hpp"

using namespace sibtree;

namespace {
Registry desk_registry() {
  static Registry reg = default_registry(3, 2, 5);
  return reg;
}
} // namespace

TEST_CASE("fingerprint of the trivial path is a single label symbol") {
  Assembly a = build_spine(0, 4);
  Fingerprint f = fingerprint(a, a.centre, a.centre);
  REQUIRE(f.symbols.size() == 1);
  CHECK(f.symbols[0].kind == FingerSymbol::Label);
  CHECK(f.symbols[0].value == 0);
  CHECK(f.str() == "0");
}

TEST_CASE("a positive ray step emits a direction symbol") {
  Assembly a = build_spine(0, 5);
  VertexId v1 = a.rays[0].at.at(1);
  Fingerprint f = fingerprint(a, a.centre, v1);
  REQUIRE(f.symbols.size() == 2);
  CHECK(f.symbols[0].kind == FingerSymbol::Lt);
  CHECK(f.symbols[1].kind == FingerSymbol::Label);
}

TEST_CASE("similarity to itself is the identity") {
  Assembly a = build_spine(0, 5);
  SimilarityMap phi = build_similarity(a, a.centre, a.centre);
  for (VertexId v = 0; v < a.tree.size(); ++v)
    if (phi.defined(v)) CHECK(phi(v) == v);
}

TEST_CASE("similarity to a shifted centre is the translation") {
  Registry reg = desk_registry();
  TBall t = build_t(0, 0, 6, reg);
  const Assembly& a = t.assembly;
  VertexId v1 = a.rays[0].at.at(1);
  SimilarityMap phi = build_similarity(a, a.centre, v1);
  auto w1 = translation_witness(t, 1);
  REQUIRE(w1.has_value());
  int compared = 0;
  for (VertexId v = 0; v < a.tree.size(); ++v) {
    if (!phi.defined(v) || !w1->defined(v)) continue;
    if (!is_core(a.tree, v)) continue;
    CHECK(phi(v) == (*w1)(v));
    ++compared;
  }
  CHECK(compared > 20);
}

TEST_CASE("fingerprints are preserved along constructed similarities") {
  Assembly a = build_spine(1, 6);
  // anchor at a height-1 amalgamated vertex
  VertexId anchor = kNoVertex;
  for (VertexId v : assembly_tree_vertices(a))
    if (a.tree.rec(v).amalgamated && a.interior(v) && ghth(a, a.centre, v) == 1) {
      anchor = v;
      break;
    }
  REQUIRE(anchor != kNoVertex);
  SimilarityMap phi = build_similarity(a, a.centre, anchor);
  SweepReport rep = check_similarity_properties(a, phi);
  CHECK(rep.cases >= 5);
  CHECK(rep.violations.empty());
}

TEST_CASE("spin and colour transfer along a nontrivial similarity") {
  Assembly a = build_spine(0, 6);
  VertexId v2 = a.rays[0].at.at(2);
  SimilarityMap phi = build_similarity(a, a.centre, v2);
  SweepReport rep = check_similarity_transfer(a, phi);
  CHECK(rep.cases > 20);
  CHECK(rep.violations.empty());
}

TEST_CASE("uniqueness: exhaustive candidate scan finds exactly one image per vertex") {
  Assembly a = build_spine(1, 6);
  VertexId target = a.rays[0].at.at(1);
  SimilarityMap phi = build_similarity(a, a.centre, target);
  std::vector<int> depth = a.tree.bfs_depths(a.centre);
  long checked = 0;
  for (VertexId w : assembly_tree_vertices(a)) {
    if (!a.tree.rec(w).amalgamated || !a.interior(w) || depth[w] > 3) continue;
    if (!phi.defined(w)) continue;
    Fingerprint want = fingerprint(a, a.centre, w);
    long candidates = 0;
    for (VertexId x : assembly_tree_vertices(a)) {
      if (!a.tree.rec(x).amalgamated) continue;
      if (fingerprint(a, target, x) == want) ++candidates;
    }
    CHECK(candidates == 1);
    ++checked;
  }
  CHECK(checked >= 5);
}

TEST_CASE("the two branches at a tree vertex carry opposite sign symbols") {
  // so no fingerprint-preserving map can exchange them
  Assembly a = build_spine(0, 6);
  SignContext ctx = copy_sign_context(a, a.aux[a.centre].copy_id);
  VertexId c0 = kNoVertex, c1 = kNoVertex;
  for (VertexId w : a.tree.neighbors(a.centre))
    if (a.aux[w].copy_id == a.aux[a.centre].copy_id && is_core(a.tree, w))
      (c0 == kNoVertex ? c0 : c1) = w;
  REQUIRE(c1 != kNoVertex);
  CHECK(sign_at(a.tree, ctx, a.centre, c0) == -sign_at(a.tree, ctx, a.centre, c1));
}
