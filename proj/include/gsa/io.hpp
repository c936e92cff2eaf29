#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gsa/graph.hpp"
#include "gsa/groupoid.hpp"
#include "gsa/partial_action.hpp"

namespace gsa {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), ErrorKind::Parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
}

// "zmod:n", "klein", "s3", "integers", "free:a,b"
inline GroupPtr parse_group_spec(const std::string& s) {
  if (s.rfind("zmod:", 0) == 0) {
    std::size_t n = 0;
    try {
      n = std::stoul(s.substr(5));
    } catch (...) {
      fail(ErrorKind::Parse, "bad group '" + s + "'");
    }
    require(n >= 1, ErrorKind::Parse, "bad group '" + s + "'");
    return Group::cyclic(n);
  }
  if (s == "klein") return Group::product(*Group::cyclic(2), *Group::cyclic(2));
  if (s == "s3") return Group::symmetric3();
  if (s == "integers") return Group::integers();
  if (s.rfind("free:", 0) == 0) {
    std::vector<std::string> alpha;
    std::stringstream ss(s.substr(5));
    for (std::string a; std::getline(ss, a, ',');) alpha.push_back(a);
    return Group::free_group(alpha);
  }
  fail(ErrorKind::Parse, "unknown group '" + s + "'");
}

inline GroupPtr parse_group(const json& j) {
  try {
    if (j.is_string()) return parse_group_spec(j.get<std::string>());
    std::string kind = j.at("kind");
    if (kind == "integers") return Group::integers();
    if (kind == "free") return Group::free_group(j.at("alphabet").get<std::vector<std::string>>());
    if (kind == "finite") {
      auto names = j.at("names").get<std::vector<std::string>>();
      Group::Table t;
      for (auto& row : j.at("table")) {
        std::vector<std::size_t> r;
        for (auto& c : row) {
          if (c.is_number_unsigned()) {
            r.push_back(c.get<std::size_t>());
            continue;
          }
          auto it = std::find(names.begin(), names.end(), c.get<std::string>());
          require(it != names.end(), ErrorKind::Parse, "unknown element in group table");
          r.push_back(std::size_t(it - names.begin()));
        }
        t.push_back(r);
      }
      return Group::finite(t, names);
    }
    fail(ErrorKind::Parse, "unknown group kind '" + kind + "'");
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("group: ") + e.what());
  }
}

inline json group_to_json(const Group& G) {
  switch (G.kind()) {
    case GroupKind::Integers: return {{"kind", "integers"}};
    case GroupKind::Free: return {{"kind", "free"}, {"alphabet", G.alphabet()}};
    default: {
      std::vector<std::string> names;
      for (auto& g : G.elements()) names.push_back(G.format(g));
      return {{"kind", "finite"}, {"table", G.table()}, {"names", names}};
    }
  }
}

inline SetPartialAction parse_instance(const json& j) {
  try {
    GroupPtr G = parse_group(j.at("group"));
    auto points = j.at("space").at("points").get<std::vector<std::string>>();
    SpacePtr X = FiniteSpace::make(points);
    auto point = [&](const std::string& s) {
      require(X->has(s), ErrorKind::Parse, "unknown point '" + s + "'");
      return X->index_of(s);
    };
    std::map<GroupElem, IndexSet> domains;
    std::map<GroupElem, PointMap> maps;
    if (j.contains("domains"))
      for (auto& [g, d] : j.at("domains").items()) {
        IndexSet s;
        for (auto& x : d) s.push_back(point(x.get<std::string>()));
        domains[G->parse(g)] = sets::normalized(s);
      }
    if (j.contains("maps"))
      for (auto& [g, m] : j.at("maps").items()) {
        PointMap pm;
        for (auto& [x, y] : m.items()) pm[point(x)] = point(y.get<std::string>());
        maps[G->parse(g)] = pm;
      }
    return SetPartialAction(G, X, domains, maps);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("instance: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(ErrorKind::Parse, std::string("instance: ") + e.what());
  }
}

inline json instance_to_json(const SetPartialAction& a) {
  const Group& G = *a.group();
  json dom = json::object(), maps = json::object();
  for (auto& [g, d] : a.domains()) {
    json pts = json::array();
    for (auto x : d) pts.push_back(a.space()->label(x));
    dom[G.format(g)] = pts;
  }
  for (auto& [g, m] : a.maps()) {
    json pm = json::object();
    for (auto& [x, y] : m) pm[a.space()->label(x)] = a.space()->label(y);
    maps[G.format(g)] = pm;
  }
  return {{"group", group_to_json(G)}, {"space", {{"points", a.space()->labels()}}}, {"domains", dom}, {"maps", maps}};
}

inline Graph parse_graph(const json& j) {
  try {
    auto vs = j.at("vertices").get<std::vector<std::string>>();
    std::vector<std::tuple<std::string, std::string, std::string>> es;
    for (auto& e : j.at("edges")) es.emplace_back(e.at("name"), e.at("src"), e.at("dst"));
    Graph g = Graph::from_names(vs, es);
    if (j.contains("weights")) {
      std::vector<long long> w(g.num_edges(), 1);
      for (auto& [e, v] : j.at("weights").items()) w[g.edge_index(e)] = v.get<long long>();
      g = g.with_weights(w);
    }
    return g;
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("graph: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(ErrorKind::Parse, std::string("graph: ") + e.what());
  }
}

inline json graph_to_json(const Graph& g) {
  json es = json::array(), w = json::object();
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    es.push_back({{"name", g.edge(e).name}, {"src", g.vertex(g.edge(e).src)}, {"dst", g.vertex(g.edge(e).dst)}});
    w[g.edge(e).name] = g.weight(e);
  }
  return {{"vertices", g.vertices()}, {"edges", es}, {"weights", w}};
}

inline json groupoid_to_json(const FiniteGroupoid& g) {
  json arrows = json::array();
  for (std::size_t a = 0; a < g.size(); ++a)
    arrows.push_back({{"arrow", g.label(a)},
                      {"r", g.units()->label(g.r(a))},
                      {"d", g.units()->label(g.d(a))},
                      {"grade", g.grading()->format(g.grade(a))}});
  return {{"units", g.units()->labels()}, {"arrows", arrows}};
}

// FNV-1a of the canonical serialization.
inline std::string content_hash(const json& j) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace gsa
