#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sibtree/core/canonical.hpp"
#include "sibtree/ray.hpp"

using namespace sibtree;

TEST_CASE("type assignments") {
  CHECK(tp(0, 0) == 0);
  CHECK(tp(0, 1) == 1);
  CHECK(tp(2, 1) == 0);
  CHECK(tp(2, 3) == 1);
  CHECK(tp(2, 0) == 1);
  for (int s = 0; s <= 5; ++s) CHECK(tp(s, -5) == 0);
}

TEST_CASE("window shapes and assignments") {
  RayWindow w0 = build_ray(0, -3, 3, RayVariant::Standard);
  std::vector<int> bits;
  for (int j = -3; j <= 3; ++j) bits.push_back(w0.assignment.at(j));
  CHECK(bits == std::vector<int>{0, 0, 0, 0, 1, 1, 1});

  RayWindow w1 = build_ray(1, -1, 3, RayVariant::Standard);
  std::vector<int> b1;
  for (int j = 0; j <= 3; ++j) b1.push_back(w1.assignment.at(j));
  CHECK(b1 == std::vector<int>{1, 0, 1, 1});

  w0.tree.validate(true);
  CHECK(w0.tree.rec(w0.at.at(-3)).frontier);
  CHECK(w0.tree.rec(w0.at.at(3)).frontier);
}

TEST_CASE("poset variant: type gadgets on even indices, parity markers on odd ones") {
  RayWindow w = build_ray(0, -4, 4, RayVariant::Poset, true);
  w.tree.validate();
  for (int j = -3; j <= 3; ++j) {
    VertexId v = w.at.at(j);
    // hub fan identifies the gadget: type 0 -> 2, type 1 -> 3, parity -> 2 with pathlen 4
    int gadget_vertices = 0;
    for (VertexId x = 0; x < w.tree.size(); ++x) {
      const Address& a = w.tree.rec(x).address;
      const Address& va = w.tree.rec(v).address;
      if (a.moves.size() > va.moves.size() &&
          std::equal(va.moves.begin(), va.moves.end(), a.moves.begin()) &&
          a.moves[va.moves.size()].tag == MoveTag::GadgetStep)
        ++gadget_vertices;
    }
    if (j % 2 == 0)
      CHECK(gadget_vertices == (w.assignment.at(j) == 0 ? 5 : 6)); // PK(2,2) / PK(2,3) minus root
    else
      CHECK(gadget_vertices == 7); // PK(4,2) minus root
  }
}

TEST_CASE("centred maps: identity works, distinct families obstruct except the nested pair") {
  CHECK(centred_shift_embeds(0, 0, 8));
  CHECK(centred_shift_embeds(1, 1, 8));
  CHECK_FALSE(centred_shift_embeds(0, 1, 8));
  CHECK_FALSE(centred_shift_embeds(1, 0, 8));
  CHECK_FALSE(centred_shift_embeds(0, 2, 8));
  CHECK_FALSE(centred_shift_embeds(2, 0, 8));
  CHECK_FALSE(centred_shift_embeds(1, 2, 8));
  // The assignments are nested: every index with tp_2 = 1 also has tp_1 = 1,
  // so the centred map from family 2 into family 1 is valid. This boundary
  // is asserted here and surfaced (as a failure) by the acceptance check
  // that expects obstruction for every distinct pair.
  CHECK(centred_shift_embeds(2, 1, 8));
  CHECK_THROWS_AS(centred_shift_embeds(0, 1, 2), parameter_error);
}

TEST_CASE("gadget level reproduces the bit rule") {
  for (int s = 0; s <= 2; ++s)
    for (int s2 = 0; s2 <= 2; ++s2)
      for (int t = -2; t <= 2; ++t)
        CHECK(shift_embeds(s, s2, 8, t) == shift_embeds_gadget_level(s, s2, 8, t));
}

TEST_CASE("translation along the same ray is a valid non-centred embedding") {
  CHECK(shift_embeds(0, 0, 8, 1));
  CHECK(shift_embeds(0, 0, 8, 3));
  CHECK_FALSE(shift_embeds(0, 0, 8, -1)); // against the direction of growth
}

TEST_CASE("siblinghood: some shift embedding exists in each direction") {
  for (int s = 0; s <= 2; ++s)
    for (int s2 = 0; s2 <= 2; ++s2) {
      bool any = false;
      for (int t : valid_shifts(s, s2, 12)) any |= t != 0;
      CHECK(any);
    }
}

TEST_CASE("windows of distinct families are non-isomorphic") {
  for (int s = 0; s <= 2; ++s)
    for (int s2 = s + 1; s2 <= 2; ++s2) {
      RayWindow a = build_ray(s, -8, 8, RayVariant::Standard);
      RayWindow b = build_ray(s2, -8, 8, RayVariant::Standard);
      CHECK_FALSE(is_isomorphic(a.tree, b.tree, false));
    }
}

TEST_CASE("centre pattern: index 0 is the first 1-then-0 vertex for s >= 1, 0-then-1 for s = 0") {
  for (int s = 0; s <= 3; ++s) {
    int first = 99;
    for (int j = -12; j <= 12; ++j) {
      bool mark = s == 0 ? (tp(s, j) == 0 && tp(s, j + 1) == 1) : (tp(s, j) == 1 && tp(s, j + 1) == 0);
      if (mark) {
        first = j;
        break;
      }
    }
    CHECK(first == 0);
  }
}

TEST_CASE("engine check: centred window embedding matches the bit-level verdict") {
  for (int s = 0; s <= 2; ++s)
    for (int s2 = 0; s2 <= 2; ++s2) {
      RayWindow g = build_ray(s, -5, 5, RayVariant::Standard, true);
      RayWindow h = build_ray(s2, -5, 5, RayVariant::Standard, true);
      bool engine = find_embedding(g.tree, h.tree, true, FrontierPolicy::Closed).has_value();
      CHECK(engine == shift_embeds(s, s2, 5, 0));
    }
}
