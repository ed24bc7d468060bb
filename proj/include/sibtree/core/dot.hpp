#pragma once

// Graphviz export. Trees render as undirected graphs with label / type /
// amalgamation / frontier shown as vertex attributes; poset overlays render
// as digraphs with covering pairs as arcs.

#include <ostream>
#include <string>
#include <vector>

#include "tree.hpp"

namespace sibtree {

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
} // namespace detail

inline void tree_to_dot(const DecoratedTree& t, std::ostream& os,
                        const std::string& name = "tree") {
  static const char* kFill[] = {"white", "lightgrey", "lightblue", "lightyellow"};
  os << "graph " << detail::dot_quote(name) << " {\n";
  os << "  node [shape=circle,width=.25,fontsize=9];\n";
  for (VertexId v = 0; v < t.size(); ++v) {
    const VertexRecord& r = t.rec(v);
    std::string lbl;
    if (r.label) lbl += std::to_string(*r.label);
    if (r.raytype) lbl += std::string(lbl.empty() ? "" : "/") + "t" + std::to_string(*r.raytype);
    os << "  n" << v << " [label=" << detail::dot_quote(lbl)
       << ",fillcolor=" << kFill[static_cast<int>(r.kind)] << ",style=filled";
    if (r.amalgamated) os << ",penwidth=2";
    if (r.frontier) os << ",shape=square";
    if (t.root && *t.root == v) os << ",color=red";
    os << ",tooltip=" << detail::dot_quote(r.address.str()) << "];\n";
  }
  for (VertexId v = 0; v < t.size(); ++v)
    for (VertexId w : t.neighbors(v))
      if (v < w) os << "  n" << v << " -- n" << w << ";\n";
  os << "}\n";
}

inline void covers_to_dot(const DecoratedTree& t,
                          const std::vector<std::pair<VertexId, VertexId>>& covers,
                          std::ostream& os, const std::string& name = "order") {
  os << "digraph " << detail::dot_quote(name) << " {\n";
  os << "  node [shape=circle,width=.25,fontsize=9];\n";
  for (VertexId v = 0; v < t.size(); ++v)
    os << "  n" << v << " [label=" << detail::dot_quote(t.rec(v).address.str()) << "];\n";
  for (auto [lo, hi] : covers) os << "  n" << lo << " -> n" << hi << ";\n";
  os << "}\n";
}

} // namespace sibtree
