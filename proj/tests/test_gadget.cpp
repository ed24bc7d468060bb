#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sibtree/core/canonical.hpp"
#include "sibtree/core/embed.hpp"
#include "sibtree/gadget.hpp"

#include "oracles.hpp"

using namespace sibtree;

TEST_CASE("build_pk shapes") {
  DecoratedTree g22 = build_pk({2, 2});
  CHECK(g22.size() == 6);
  CHECK(g22.degree(*g22.root) == 1);
  int deg3 = 0;
  for (VertexId v = 0; v < g22.size(); ++v) deg3 += g22.degree(v) == 3;
  CHECK(deg3 == 1); // the hub

  // label gadget for label 0: path of length 6, hub, two leaves
  DecoratedTree lg0 = build_pk(label_gadget(0));
  CHECK(lg0.size() == 10);

  // degenerate fan: a bare path on 4 vertices
  DecoratedTree g11 = build_pk({1, 1});
  CHECK(g11.size() == 4);
  for (VertexId v = 0; v < g11.size(); ++v) CHECK(g11.degree(v) <= 2);

  CHECK_THROWS_AS(build_pk({2, 0}), parameter_error);
}

TEST_CASE("pk_embeds closed form on the gadgets actually used") {
  CHECK(pk_embeds({2, 2}, {2, 3}));       // type 0 into type 1
  CHECK_FALSE(pk_embeds({2, 3}, {2, 2})); // but not back
  CHECK_FALSE(pk_embeds({4, 2}, {2, 2}));
  CHECK_FALSE(pk_embeds({4, 2}, {2, 3}));
  CHECK_FALSE(pk_embeds({2, 2}, {4, 2}));
  CHECK_FALSE(pk_embeds({2, 3}, {4, 2}));
}

TEST_CASE("engine agrees with pk_embeds and brute force wherever the fan is at least 2") {
  for (int n = 1; n <= 6; ++n)
    for (int m = 2; m <= 4; ++m)
      for (int n2 = 1; n2 <= 6; ++n2)
        for (int m2 = 2; m2 <= 4; ++m2) {
          GadgetSpec a{n, m}, b{n2, m2};
          DecoratedTree ga = build_pk(a), gb = build_pk(b);
          bool engine = find_embedding(ga, gb, true, FrontierPolicy::Closed).has_value();
          CHECK(engine == pk_embeds(a, b));
          if (n <= 4 && n2 <= 4) CHECK(engine == oracles::brute_embedding_exists(ga, gb, true));
        }
}

TEST_CASE("fan-1 gadgets are bare paths and escape the closed form") {
  // PK(n,1) is a rooted path on n+3 vertices; it embeds into any gadget with
  // a longer or equal root path, so the closed form under-reports exactly on
  // guest-fan-1 pairs with strictly shorter path length.
  for (int n = 1; n <= 5; ++n)
    for (int n2 = 1; n2 <= 5; ++n2)
      for (int m2 = 1; m2 <= 3; ++m2) {
        DecoratedTree g = build_pk({n, 1}), h = build_pk({n2, m2});
        bool engine = find_embedding(g, h, true, FrontierPolicy::Closed).has_value();
        bool brute = oracles::brute_embedding_exists(g, h, true);
        CHECK(engine == brute);
        CHECK(engine == (n <= n2));
        if (n < n2) CHECK_FALSE(pk_embeds({n, 1}, {n2, m2})); // the documented divergence
      }
}

TEST_CASE("distinct label gadgets are mutually non-embeddable as rooted trees") {
  for (int l1 = 0; l1 <= 3; ++l1)
    for (int l2 = 0; l2 <= 3; ++l2) {
      if (l1 == l2) continue;
      DecoratedTree a = build_pk(label_gadget(l1)), b = build_pk(label_gadget(l2));
      CHECK_FALSE(find_embedding(a, b, true, FrontierPolicy::Closed).has_value());
    }
}

TEST_CASE("label gadgets and type gadgets do not mix") {
  for (int l = 0; l <= 2; ++l)
    for (GadgetSpec t : {type_gadget(0), type_gadget(1), poset_odd_gadget()}) {
      DecoratedTree lg = build_pk(label_gadget(l)), tg = build_pk(t);
      CHECK_FALSE(find_embedding(lg, tg, true, FrontierPolicy::Closed).has_value());
      CHECK_FALSE(find_embedding(tg, lg, true, FrontierPolicy::Closed).has_value());
    }
}

TEST_CASE("type gadgets are non-isomorphic") {
  DecoratedTree a = build_pk(type_gadget(0)), b = build_pk(type_gadget(1));
  CHECK_FALSE(is_isomorphic(a, b, true));
  CHECK_FALSE(is_isomorphic(a, b, false));
  CHECK(is_isomorphic(a, build_pk(type_gadget(0)), true));
}

TEST_CASE("attach_gadget adds exactly one edge at the anchor") {
  DecoratedTree t;
  VertexRecord r;
  r.kind = VertexKind::Tree;
  r.label = 0;
  VertexId v = t.add_vertex(r);
  t.root = v;
  attach_gadget(t, v, type_gadget(1), GadgetRole::TypeGadget);
  CHECK(t.degree(v) == 1);
  CHECK(t.size() == 1u + 2 + 1 + 3);
  t.validate();
}
