#pragma once

// JSON serialization of decorated trees: vertices with decorations and
// addresses, plus an address-pair edge list. Deterministic (address-sorted)
// so exports are bit-stable for a fixed configuration.

#include <json.hpp>

#include <string>
#include <vector>

#include "tree.hpp"

namespace sibtree {

inline nlohmann::ordered_json tree_to_json(const DecoratedTree& t) {
  nlohmann::ordered_json j;
  std::vector<VertexId> by_addr(t.size());
  for (VertexId v = 0; v < t.size(); ++v) by_addr[v] = v;
  std::sort(by_addr.begin(), by_addr.end(),
            [&](VertexId a, VertexId b) { return t.rec(a).address < t.rec(b).address; });
  j["root"] = t.root ? nlohmann::ordered_json(t.rec(*t.root).address.str())
                     : nlohmann::ordered_json(nullptr);
  auto& verts = j["vertices"] = nlohmann::ordered_json::array();
  for (VertexId v : by_addr) {
    const VertexRecord& r = t.rec(v);
    nlohmann::ordered_json e;
    e["address"] = r.address.str();
    e["kind"] = kind_name(r.kind);
    if (r.label) e["label"] = *r.label;
    if (r.raytype) e["raytype"] = *r.raytype;
    if (r.amalgamated) e["amalgamated"] = true;
    if (r.frontier) e["frontier"] = true;
    verts.push_back(std::move(e));
  }
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  std::vector<std::pair<std::string, std::string>> es;
  for (VertexId v = 0; v < t.size(); ++v)
    for (VertexId w : t.neighbors(v))
      if (v < w) {
        std::string a = t.rec(v).address.str(), b = t.rec(w).address.str();
        if (b < a) std::swap(a, b);
        es.emplace_back(std::move(a), std::move(b));
      }
  std::sort(es.begin(), es.end());
  for (auto& [a, b] : es) edges.push_back(nlohmann::ordered_json::array({a, b}));
  return j;
}

inline DecoratedTree tree_from_json(const nlohmann::json& j) {
  DecoratedTree t;
  std::map<std::string, VertexId> by_addr;
  for (const auto& e : j.at("vertices")) {
    VertexRecord r;
    std::string k = e.at("kind").get<std::string>();
    if (k == "tree")
      r.kind = VertexKind::Tree;
    else if (k == "copy")
      r.kind = VertexKind::Copy;
    else if (k == "ray")
      r.kind = VertexKind::Ray;
    else if (k == "gadget")
      r.kind = VertexKind::Gadget;
    else
      throw structural_error("unknown vertex kind: " + k);
    if (e.contains("label")) r.label = e.at("label").get<int>();
    if (e.contains("raytype")) r.raytype = e.at("raytype").get<int>();
    r.amalgamated = e.value("amalgamated", false);
    r.frontier = e.value("frontier", false);
    std::string addr = e.at("address").get<std::string>();
    r.address = parse_address(addr);
    VertexId v = t.add_vertex(std::move(r));
    if (!by_addr.emplace(addr, v).second) throw structural_error("duplicate address: " + addr);
  }
  for (const auto& e : j.at("edges"))
    t.add_edge(by_addr.at(e.at(0).get<std::string>()), by_addr.at(e.at(1).get<std::string>()));
  if (!j.at("root").is_null()) t.root = by_addr.at(j.at("root").get<std::string>());
  t.validate();
  return t;
}

} // namespace sibtree
