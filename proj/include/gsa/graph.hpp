#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gsa/error.hpp"
#include "gsa/space.hpp"

namespace gsa {

// Finite directed graph; an edge runs from s = src to r = dst.
class Graph {
 public:
  struct Edge {
    std::string name;
    std::size_t src, dst;
  };

  Graph() = default;

  Graph(std::vector<std::string> vertices, std::vector<Edge> edges, std::vector<long long> weights = {})
      : vertices_(std::move(vertices)), edges_(std::move(edges)), weights_(std::move(weights)) {
    std::set<std::string> names;
    for (auto& v : vertices_) require(names.insert(v).second, ErrorKind::IllFormed, "duplicate vertex '" + v + "'");
    for (auto& e : edges_) {
      require(!e.name.empty() && e.name != "1" && e.name.find_first_of(".^()*; ") == std::string::npos,
              ErrorKind::IllFormed, "bad edge name '" + e.name + "'");
      require(names.insert(e.name).second, ErrorKind::IllFormed, "edge name '" + e.name + "' already used");
      require(e.src < vertices_.size() && e.dst < vertices_.size(), ErrorKind::IllFormed,
              "edge '" + e.name + "' has an unknown endpoint");
    }
    if (weights_.empty()) weights_.assign(edges_.size(), 1);
    require(weights_.size() == edges_.size(), ErrorKind::IllFormed, "one weight per edge");
    out_.assign(vertices_.size(), {});
    in_.assign(vertices_.size(), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      out_[edges_[i].src].push_back(i);
      in_[edges_[i].dst].push_back(i);
    }
  }

  // Edges given as (name, src name, dst name).
  static Graph from_names(std::vector<std::string> vertices,
                          const std::vector<std::tuple<std::string, std::string, std::string>>& edges) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < vertices.size(); ++i) idx[vertices[i]] = i;
    std::vector<Edge> es;
    for (auto& [n, s, d] : edges) {
      require(idx.count(s) && idx.count(d), ErrorKind::IllFormed, "edge '" + n + "' has an unknown endpoint");
      es.push_back({n, idx[s], idx[d]});
    }
    return Graph(std::move(vertices), std::move(es));
  }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::string& vertex(std::size_t v) const { return vertices_.at(v); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  long long weight(std::size_t e) const { return weights_.at(e); }
  const std::vector<long long>& weights() const { return weights_; }
  const std::vector<std::size_t>& out(std::size_t v) const { return out_.at(v); }
  const std::vector<std::size_t>& in(std::size_t v) const { return in_.at(v); }
  bool is_sink(std::size_t v) const { return out_.at(v).empty(); }
  bool is_regular(std::size_t v) const { return !out_.at(v).empty(); }

  Graph with_weights(std::vector<long long> w) const {
    for (auto x : w) require(x > 0, ErrorKind::IllFormed, "weights must be positive");
    return Graph(vertices_, edges_, std::move(w));
  }

  std::size_t vertex_index(const std::string& n) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i] == n) return i;
    fail(ErrorKind::InstanceMismatch, "unknown vertex '" + n + "'");
  }

  std::size_t edge_index(const std::string& n) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].name == n) return i;
    fail(ErrorKind::InstanceMismatch, "unknown edge '" + n + "'");
  }

  bool is_acyclic() const {
    std::vector<int> state(vertices_.size(), 0);
    std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
      state[v] = 1;
      for (auto e : out_[v]) {
        std::size_t w = edges_[e].dst;
        if (state[w] == 1 || (state[w] == 0 && !dfs(w))) return false;
      }
      state[v] = 2;
      return true;
    };
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (state[v] == 0 && !dfs(v)) return false;
    return true;
  }

  // Lexicographically least edge name at a regular vertex.
  std::size_t special_edge(std::size_t v) const {
    require(is_regular(v), ErrorKind::IllFormed, "special edge at a sink");
    std::size_t best = out_[v].front();
    for (auto e : out_[v])
      if (edges_[e].name < edges_[best].name) best = e;
    return best;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<long long> weights_;
  std::vector<std::vector<std::size_t>> out_, in_;
};

// Finite path; a trivial path is its vertex.
struct Path {
  std::size_t start = 0;
  std::vector<std::size_t> edges;

  std::size_t length() const { return edges.size(); }
  bool trivial() const { return edges.empty(); }

  friend bool operator==(const Path& a, const Path& b) { return a.start == b.start && a.edges == b.edges; }
  friend bool operator!=(const Path& a, const Path& b) { return !(a == b); }
  friend bool operator<(const Path& a, const Path& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.edges < b.edges;
  }
};

namespace path {

inline Path vertex(std::size_t v) { return Path{v, {}}; }

inline Path edge(const Graph& g, std::size_t e) { return Path{g.edge(e).src, {e}}; }

inline std::size_t range(const Graph& g, const Path& p) { return p.edges.empty() ? p.start : g.edge(p.edges.back()).dst; }

inline Path concat(const Graph& g, const Path& a, const Path& b) {
  require(range(g, a) == b.start, ErrorKind::IllFormed, "paths do not compose");
  Path out = a;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

inline Path extend(const Graph& g, const Path& a, std::size_t e) {
  require(range(g, a) == g.edge(e).src, ErrorKind::IllFormed, "edge does not extend the path");
  Path out = a;
  out.edges.push_back(e);
  return out;
}

// a is an initial segment of b
inline bool is_prefix(const Path& a, const Path& b) {
  return a.start == b.start && a.edges.size() <= b.edges.size() &&
         std::equal(a.edges.begin(), a.edges.end(), b.edges.begin());
}

inline Path drop_prefix(const Graph& g, const Path& a, const Path& b) {
  require(is_prefix(a, b), ErrorKind::IllFormed, "not a prefix");
  return Path{range(g, a), std::vector<std::size_t>(b.edges.begin() + std::ptrdiff_t(a.edges.size()), b.edges.end())};
}

inline Path parent(const Graph& g, const Path& a) {
  require(!a.trivial(), ErrorKind::IllFormed, "trivial path has no parent");
  Path out = a;
  out.edges.pop_back();
  (void)g;
  return out;
}

inline std::string label(const Graph& g, const Path& p) {
  if (p.edges.empty()) return g.vertex(p.start);
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) out += (i ? "." : "") + g.edge(p.edges[i]).name;
  return out;
}

inline long long weight(const Graph& g, const Path& p) {
  long long w = 0;
  for (auto e : p.edges) w += g.weight(e);
  return w;
}

// All paths with at most max_len edges, from every vertex, in depth-first order.
inline std::vector<Path> enumerate(const Graph& g, std::size_t max_len) {
  std::vector<Path> out;
  std::function<void(Path&)> rec = [&](Path& p) {
    out.push_back(p);
    if (p.edges.size() == max_len) return;
    for (auto e : g.out(range(g, p))) {
      p.edges.push_back(e);
      rec(p);
      p.edges.pop_back();
    }
  };
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    Path p = vertex(v);
    rec(p);
  }
  return out;
}

}  // namespace path

// Boundary path: finite to a sink (empty cycle) or prefix followed by a repeated primitive cycle.
struct BoundaryPath {
  std::size_t start = 0;
  std::vector<std::size_t> prefix, cycle;

  bool finite() const { return cycle.empty(); }

  friend bool operator==(const BoundaryPath& a, const BoundaryPath& b) {
    return a.start == b.start && a.prefix == b.prefix && a.cycle == b.cycle;
  }
  friend bool operator!=(const BoundaryPath& a, const BoundaryPath& b) { return !(a == b); }
  friend bool operator<(const BoundaryPath& a, const BoundaryPath& b) {
    return std::tie(a.start, a.prefix, a.cycle) < std::tie(b.start, b.prefix, b.cycle);
  }
};

namespace boundary {

inline BoundaryPath canonical(BoundaryPath x) {
  auto& c = x.cycle;
  if (!c.empty()) {
    for (std::size_t p = 1; p <= c.size(); ++p) {
      if (c.size() % p) continue;
      bool periodic = true;
      for (std::size_t i = p; i < c.size() && periodic; ++i) periodic = c[i] == c[i - p];
      if (periodic) {
        c.resize(p);
        break;
      }
    }
    while (!x.prefix.empty() && x.prefix.back() == c.back()) {
      x.prefix.pop_back();
      std::rotate(c.begin(), c.end() - 1, c.end());
    }
  }
  return x;
}

inline BoundaryPath finite(const Graph& g, const Path& p) {
  require(g.is_sink(path::range(g, p)), ErrorKind::IllFormed, "finite boundary paths end at sinks");
  return BoundaryPath{p.start, p.edges, {}};
}

inline BoundaryPath periodic(const Graph& g, const Path& p, const std::vector<std::size_t>& cycle) {
  require(!cycle.empty(), ErrorKind::IllFormed, "empty cycle");
  std::size_t v = path::range(g, p);
  for (auto e : cycle) {
    require(g.edge(e).src == v, ErrorKind::IllFormed, "cycle does not compose");
    v = g.edge(e).dst;
  }
  require(v == path::range(g, p), ErrorKind::IllFormed, "cycle is not closed");
  return canonical(BoundaryPath{p.start, p.edges, cycle});
}

inline std::size_t edge_at(const BoundaryPath& x, std::size_t i) {
  if (i < x.prefix.size()) return x.prefix[i];
  return x.cycle.at((i - x.prefix.size()) % x.cycle.size());
}

inline bool has_length_at_least(const BoundaryPath& x, std::size_t n) { return !x.finite() || x.prefix.size() >= n; }

inline std::size_t source(const BoundaryPath& x) { return x.start; }

inline bool starts_with(const Graph& g, const BoundaryPath& x, const Path& mu) {
  (void)g;
  if (x.start != mu.start || !has_length_at_least(x, mu.length())) return false;
  for (std::size_t i = 0; i < mu.length(); ++i)
    if (edge_at(x, i) != mu.edges[i]) return false;
  return true;
}

// x with its first k edges removed
inline BoundaryPath drop(const Graph& g, const BoundaryPath& x, std::size_t k) {
  require(has_length_at_least(x, k), ErrorKind::IllFormed, "boundary path too short");
  BoundaryPath out;
  if (k <= x.prefix.size()) {
    out.prefix.assign(x.prefix.begin() + std::ptrdiff_t(k), x.prefix.end());
    out.cycle = x.cycle;
  } else {
    out.cycle = x.cycle;
    std::rotate(out.cycle.begin(), out.cycle.begin() + std::ptrdiff_t((k - x.prefix.size()) % x.cycle.size()),
                out.cycle.end());
  }
  if (k == 0)
    out.start = x.start;
  else
    out.start = g.edge(edge_at(x, k - 1)).dst;
  return canonical(out);
}

inline BoundaryPath prepend(const Graph& g, const Path& a, const BoundaryPath& x) {
  require(path::range(g, a) == x.start, ErrorKind::IllFormed, "path does not end where the boundary path starts");
  BoundaryPath out = x;
  out.start = a.start;
  out.prefix.insert(out.prefix.begin(), a.edges.begin(), a.edges.end());
  return canonical(out);
}

inline std::string label(const Graph& g, const BoundaryPath& x) {
  if (x.finite()) return path::label(g, Path{x.start, x.prefix});
  std::string out = x.prefix.empty() ? "" : path::label(g, Path{x.start, x.prefix}) + ".";
  std::size_t s = x.prefix.empty() ? x.start : g.edge(x.prefix.back()).dst;
  return out + "(" + path::label(g, Path{s, x.cycle}) + ")^inf";
}

// Eventually periodic witnesses: prefixes of length <= max_prefix, primitive cycles of length <= max_cycle.
inline std::vector<BoundaryPath> witnesses(const Graph& g, std::size_t max_prefix, std::size_t max_cycle) {
  std::set<BoundaryPath> out;
  auto prefixes = path::enumerate(g, max_prefix);
  std::map<std::size_t, std::vector<std::vector<std::size_t>>> cycles;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t u) {
      if (cur.size() == max_cycle) return;
      for (auto e : g.out(u)) {
        cur.push_back(e);
        if (g.edge(e).dst == v) cycles[v].push_back(cur);
        rec(g.edge(e).dst);
        cur.pop_back();
      }
    };
    rec(v);
  }
  for (auto& p : prefixes) {
    std::size_t v = path::range(g, p);
    if (g.is_sink(v)) out.insert(finite(g, p));
    for (auto& c : cycles[v]) out.insert(periodic(g, p, c));
  }
  return {out.begin(), out.end()};
}

// Paths to sinks, depth first from each vertex in order (the whole space for acyclic graphs).
inline std::vector<Path> finite_space(const Graph& g) {
  require(g.is_acyclic(), ErrorKind::IllFormed, "explicit boundary space needs an acyclic graph");
  std::vector<Path> out;
  std::function<void(Path&)> rec = [&](Path& p) {
    std::size_t v = path::range(g, p);
    if (g.is_sink(v)) out.push_back(p);
    for (auto e : g.out(v)) {
      p.edges.push_back(e);
      rec(p);
      p.edges.pop_back();
    }
  };
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    Path p = path::vertex(v);
    rec(p);
  }
  return out;
}

}  // namespace boundary

// Compact open subset of the boundary path space as a canonical antichain of cylinders Z(nu).
struct CylinderComplex {
  std::vector<Path> cylinders;

  bool is_empty() const { return cylinders.empty(); }
  friend bool operator==(const CylinderComplex& a, const CylinderComplex& b) { return a.cylinders == b.cylinders; }
  friend bool operator!=(const CylinderComplex& a, const CylinderComplex& b) { return !(a == b); }
};

namespace cyl {

inline std::vector<Path> children(const Graph& g, const Path& p) {
  std::vector<Path> out;
  for (auto e : g.out(path::range(g, p))) out.push_back(path::extend(g, p, e));
  return out;
}

inline CylinderComplex normalize(const Graph& g, std::vector<Path> ps) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<Path> keep;
    for (auto& p : ps) {
      bool covered = false;
      for (auto& q : ps)
        if (q != p && path::is_prefix(q, p)) covered = true;
      if (!covered) keep.push_back(p);
    }
    ps = std::move(keep);
    std::set<Path> present(ps.begin(), ps.end());
    for (auto& p : ps) {
      if (p.trivial()) continue;
      Path par = path::parent(g, p);
      auto ch = children(g, par);
      if (std::all_of(ch.begin(), ch.end(), [&](const Path& c) { return present.count(c) > 0; })) {
        ps.push_back(par);
        changed = true;
        break;
      }
    }
  }
  std::sort(ps.begin(), ps.end());
  return CylinderComplex{ps};
}

inline CylinderComplex cylinder(const Graph& g, const Path& mu) { return normalize(g, {mu}); }

// Z(mu \ F), F a set of edges leaving r(mu)
inline CylinderComplex basic(const Graph& g, const Path& mu, const std::vector<std::size_t>& F) {
  std::size_t v = path::range(g, mu);
  for (auto e : F) require(g.edge(e).src == v, ErrorKind::IllFormed, "excluded edge does not leave r(mu)");
  if (F.empty()) return cylinder(g, mu);
  std::vector<Path> ps;
  for (auto e : g.out(v))
    if (std::find(F.begin(), F.end(), e) == F.end()) ps.push_back(path::extend(g, mu, e));
  return normalize(g, ps);
}

inline CylinderComplex whole(const Graph& g) {
  std::vector<Path> ps;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) ps.push_back(path::vertex(v));
  return normalize(g, ps);
}

inline CylinderComplex unite(const Graph& g, const CylinderComplex& a, const CylinderComplex& b) {
  std::vector<Path> ps = a.cylinders;
  ps.insert(ps.end(), b.cylinders.begin(), b.cylinders.end());
  return normalize(g, ps);
}

inline CylinderComplex intersect(const Graph& g, const CylinderComplex& a, const CylinderComplex& b) {
  std::vector<Path> ps;
  for (auto& p : a.cylinders)
    for (auto& q : b.cylinders) {
      if (path::is_prefix(p, q))
        ps.push_back(q);
      else if (path::is_prefix(q, p))
        ps.push_back(p);
    }
  return normalize(g, ps);
}

// Z(p) \ Z(q)
inline std::vector<Path> subtract_one(const Graph& g, const Path& p, const Path& q) {
  if (path::is_prefix(q, p)) return {};
  if (!path::is_prefix(p, q)) return {p};
  std::vector<Path> out;
  Path cur = p;
  for (std::size_t i = p.length(); i < q.length(); ++i) {
    for (auto e : g.out(path::range(g, cur)))
      if (e != q.edges[i]) out.push_back(path::extend(g, cur, e));
    cur = path::extend(g, cur, q.edges[i]);
  }
  return out;
}

inline CylinderComplex minus(const Graph& g, const CylinderComplex& a, const CylinderComplex& b) {
  std::vector<Path> ps = a.cylinders;
  for (auto& q : b.cylinders) {
    std::vector<Path> next;
    for (auto& p : ps)
      for (auto& r : subtract_one(g, p, q)) next.push_back(r);
    ps = std::move(next);
  }
  return normalize(g, ps);
}

inline CylinderComplex complement(const Graph& g, const CylinderComplex& a) { return minus(g, whole(g), a); }

inline bool contains(const Graph& g, const CylinderComplex& a, const BoundaryPath& x) {
  for (auto& p : a.cylinders)
    if (boundary::starts_with(g, x, p)) return true;
  return false;
}

inline std::string format(const Graph& g, const CylinderComplex& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.cylinders.size(); ++i) out += (i ? "," : "") + ("Z(" + path::label(g, a.cylinders[i]) + ")");
  return out + "}";
}

}  // namespace cyl

}  // namespace gsa
