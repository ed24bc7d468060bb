#pragma once

// Provenance-based vertex identity. A vertex is named by the sequence of
// construction moves that created it, starting from the structure's centre.
// Two vertices are equal iff their addresses are equal, and addresses are
// stable across rebuilds with the same configuration.

#include <compare>
#include <stdexcept>
#include <cstdint>
#include <string>
#include <vector>

namespace sibtree {

enum class MoveTag : std::uint8_t {
  EnterCopy,  // from an activated/amalgamated vertex into its copy (child slot)
  CopyStep,   // one step deeper inside a copy (child slot)
  RayStep,    // one step along a double ray (+1 / -1)
  GadgetStep, // into an attached gadget (path position, hub, or leaf)
};

enum class GadgetRole : std::int16_t { LabelGadget = 0, TypeGadget = 1, ParityGadget = 2 };

// GadgetStep payload b: path index i >= 1 for u_i, 0 for the hub, -(1+i) for leaf i.
struct Move {
  MoveTag tag;
  std::int16_t a = 0; // child slot / ray direction / gadget role
  std::int16_t b = 0; // gadget position

  friend auto operator<=>(const Move&, const Move&) = default;
};

struct Address {
  std::vector<Move> moves;

  friend auto operator<=>(const Address&, const Address&) = default;

  Address child(Move m) const {
    Address a = *this;
    a.moves.push_back(m);
    return a;
  }

  std::string str() const {
    std::string out;
    if (moves.empty()) return "z";
    for (const Move& m : moves) {
      if (!out.empty()) out += '.';
      switch (m.tag) {
        case MoveTag::EnterCopy: out += 'E' + std::to_string(m.a); break;
        case MoveTag::CopyStep: out += 'C' + std::to_string(m.a); break;
        case MoveTag::RayStep: out += m.a > 0 ? "R+" : "R-"; break;
        case MoveTag::GadgetStep: {
          out += 'G';
          out += m.a == 0 ? 'l' : (m.a == 1 ? 't' : 'p');
          if (m.b > 0)
            out += 'u' + std::to_string(m.b);
          else if (m.b == 0)
            out += 'h';
          else
            out += 'v' + std::to_string(-(m.b + 1));
          break;
        }
      }
    }
    return out;
  }
};

// Inverse of Address::str(); accepts exactly what str() produces.
inline Address parse_address(const std::string& s) {
  Address a;
  if (s == "z") return a;
  std::size_t i = 0;
  auto number = [&]() {
    int sign = 1;
    if (i < s.size() && s[i] == '-') {
      sign = -1;
      ++i;
    }
    int v = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') v = v * 10 + (s[i++] - '0');
    return sign * v;
  };
  while (i < s.size()) {
    char c = s[i++];
    Move m{};
    switch (c) {
      case 'E':
        m = {MoveTag::EnterCopy, static_cast<std::int16_t>(number()), 0};
        break;
      case 'C':
        m = {MoveTag::CopyStep, static_cast<std::int16_t>(number()), 0};
        break;
      case 'R':
        m = {MoveTag::RayStep, static_cast<std::int16_t>(s[i] == '+' ? 1 : -1), 0};
        ++i;
        break;
      case 'G': {
        char role = s[i++];
        std::int16_t r = role == 'l' ? 0 : (role == 't' ? 1 : 2);
        char pos = s[i++];
        std::int16_t b = 0;
        if (pos == 'u')
          b = static_cast<std::int16_t>(number());
        else if (pos == 'h')
          b = 0;
        else
          b = static_cast<std::int16_t>(-(number() + 1));
        m = {MoveTag::GadgetStep, r, b};
        break;
      }
      default: throw std::invalid_argument("bad address: " + s);
    }
    a.moves.push_back(m);
    if (i < s.size()) {
      if (s[i] != '.') throw std::invalid_argument("bad address: " + s);
      ++i;
    }
  }
  return a;
}

inline Address enter_copy(const Address& base, int slot) {
  return base.child({MoveTag::EnterCopy, static_cast<std::int16_t>(slot), 0});
}
inline Address copy_step(const Address& base, int slot) {
  return base.child({MoveTag::CopyStep, static_cast<std::int16_t>(slot), 0});
}
inline Address ray_step(const Address& base, int dir) {
  return base.child({MoveTag::RayStep, static_cast<std::int16_t>(dir), 0});
}
inline Address gadget_step(const Address& base, GadgetRole role, int pos) {
  return base.child({MoveTag::GadgetStep, static_cast<std::int16_t>(role),
                     static_cast<std::int16_t>(pos)});
}

} // namespace sibtree
