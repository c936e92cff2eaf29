#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gsa/algebra.hpp"
#include "gsa/function.hpp"
#include "gsa/group.hpp"
#include "gsa/space.hpp"

namespace gsa {

using PointMap = std::map<std::size_t, std::size_t>;

// (phi_g, X_g, X) on a finite space. Only nonempty domains are stored.
class SetPartialAction {
 public:
  SetPartialAction(GroupPtr group, SpacePtr space, std::map<GroupElem, IndexSet> domains,
                   std::map<GroupElem, PointMap> maps)
      : group_(std::move(group)), space_(std::move(space)) {
    const Group& G = *group_;
    GroupElem e = G.identity();
    for (auto& [g, d] : domains) G.check(g);
    for (auto& [g, m] : maps) G.check(g);
    // fill inverses of given maps
    std::map<GroupElem, PointMap> all = maps;
    for (auto& [g, m] : maps) {
      GroupElem gi = G.inv(g);
      if (all.count(gi)) continue;
      PointMap inv;
      for (auto& [x, y] : m) inv[y] = x;
      all[gi] = std::move(inv);
    }
    if (!domains.count(e)) domains[e] = space_->all();
    if (!all.count(e)) {
      PointMap id;
      for (auto x : domains[e]) id[x] = x;
      all[e] = std::move(id);
    }
    for (auto& [g, m] : all) {
      if (!domains.count(g)) {
        IndexSet img;
        for (auto& [x, y] : m) img.push_back(y);
        domains[g] = sets::normalized(std::move(img));
      }
    }
    for (auto& [g, d] : domains) {
      IndexSet n = sets::normalized(d);
      if (!n.empty()) domains_[g] = std::move(n);
    }
    for (auto& [g, m] : all)
      if (!m.empty()) maps_[g] = std::move(m);
  }

  const GroupPtr& group() const { return group_; }
  const SpacePtr& space() const { return space_; }

  const IndexSet& domain(const GroupElem& g) const {
    static const IndexSet none;
    auto it = domains_.find(g);
    return it == domains_.end() ? none : it->second;
  }

  const PointMap& map(const GroupElem& g) const {
    static const PointMap none;
    auto it = maps_.find(g);
    return it == maps_.end() ? none : it->second;
  }

  // phi_g(x) for x in X_{g^-1}
  std::optional<std::size_t> apply(const GroupElem& g, std::size_t x) const {
    auto it = maps_.find(g);
    if (it == maps_.end()) return std::nullopt;
    auto jt = it->second.find(x);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
  }

  std::size_t apply_or_throw(const GroupElem& g, std::size_t x) const {
    auto y = apply(g, x);
    if (!y) fail(ErrorKind::IllFormed, "phi_" + group_->format(g) + " undefined at " + space_->label(x));
    return *y;
  }

  // Elements with nonempty domain, in group order.
  std::vector<GroupElem> support() const {
    std::vector<GroupElem> out;
    for (auto& [g, d] : domains_) out.push_back(g);
    return out;
  }

  const std::map<GroupElem, IndexSet>& domains() const { return domains_; }
  const std::map<GroupElem, PointMap>& maps() const { return maps_; }

  std::string describe() const {
    std::string out;
    for (auto& [g, d] : domains_) out += "X_" + group_->format(g) + "=" + space_->format(d) + " ";
    return out;
  }

 private:
  GroupPtr group_;
  SpacePtr space_;
  std::map<GroupElem, IndexSet> domains_;
  std::map<GroupElem, PointMap> maps_;
};

struct ActionReport {
  bool pass = true;
  std::string axiom;  // "well-formed", "i", "ii", "iii", "iv"
  std::string witness;

  static ActionReport failure(std::string axiom, std::string witness) {
    return ActionReport{false, std::move(axiom), std::move(witness)};
  }
};

// Elements g for which a check over G has to look at phi_g: everything for finite G,
// otherwise the support together with inverses.
inline std::vector<GroupElem> relevant_elements(const SetPartialAction& a) {
  const Group& G = *a.group();
  if (G.is_finite()) return G.elements();
  std::set<GroupElem> s;
  for (auto& g : a.support()) {
    s.insert(g);
    s.insert(G.inv(g));
  }
  for (auto& [g, m] : a.maps()) s.insert(g);
  return {s.begin(), s.end()};
}

inline ActionReport validate_group_action(const SetPartialAction& a) {
  const Group& G = *a.group();
  const FiniteSpace& X = *a.space();
  auto fmt = [&](const GroupElem& g) { return G.format(g); };
  auto rel = relevant_elements(a);

  for (auto& g : rel) {
    const IndexSet& dom = a.domain(G.inv(g));
    const IndexSet& cod = a.domain(g);
    const PointMap& m = a.map(g);
    for (auto x : cod)
      if (x >= X.size()) return ActionReport::failure("well-formed", "X_" + fmt(g) + " leaves the space");
    IndexSet keys, img;
    for (auto& [x, y] : m) {
      keys.push_back(x);
      img.push_back(y);
      if (!sets::contains(cod, y))
        return ActionReport::failure("well-formed", "phi_" + fmt(g) + "(" + X.label(x) + ")=" + X.label(y) +
                                                        " not in X_" + fmt(g));
    }
    if (keys != dom)
      return ActionReport::failure("well-formed", "phi_" + fmt(g) + " is not defined exactly on X_" +
                                                      fmt(G.inv(g)));
    img = sets::normalized(img);
    if (img.size() != keys.size()) return ActionReport::failure("well-formed", "phi_" + fmt(g) + " not injective");
    if (img != cod) return ActionReport::failure("well-formed", "phi_" + fmt(g) + " not onto X_" + fmt(g));
  }

  GroupElem e = G.identity();
  if (a.domain(e) != X.all()) return ActionReport::failure("i", "X_e != X");
  for (auto& [x, y] : a.map(e))
    if (x != y) return ActionReport::failure("i", "phi_e moves " + X.label(x));

  // (ii) phi_g(X_{g^-1} ∩ X_h) = X_g ∩ X_{gh}
  for (auto& g : rel) {
    std::set<GroupElem> hs(rel.begin(), rel.end());
    if (!G.is_finite())
      for (auto& k : a.support()) hs.insert(G.mul(G.inv(g), k));
    for (auto& h : hs) {
      IndexSet lhs;
      for (auto x : sets::intersect(a.domain(G.inv(g)), a.domain(h))) lhs.push_back(a.apply_or_throw(g, x));
      lhs = sets::normalized(lhs);
      IndexSet rhs = sets::intersect(a.domain(g), a.domain(G.mul(g, h)));
      if (lhs != rhs) {
        IndexSet diff = sets::unite(sets::minus(lhs, rhs), sets::minus(rhs, lhs));
        return ActionReport::failure("ii", "g=" + fmt(g) + ", h=" + fmt(h) + ", x=" + X.label(diff.front()));
      }
    }
  }

  // (iii) phi_g(phi_h(x)) = phi_gh(x) on X_{h^-1} ∩ X_{h^-1 g^-1}
  for (auto& g : rel)
    for (auto& h : rel) {
      GroupElem gh = G.mul(g, h);
      for (auto x : sets::intersect(a.domain(G.inv(h)), a.domain(G.inv(gh)))) {
        auto y = a.apply(h, x);
        auto z = y ? a.apply(g, *y) : std::nullopt;
        auto w = a.apply(gh, x);
        if (!z || !w || *z != *w)
          return ActionReport::failure("iii", "g=" + fmt(g) + ", h=" + fmt(h) + ", x=" + X.label(x));
      }
    }
  return {};
}

// phi_g(f) = f o phi_{g^-1} on C_R(X_{g^-1}).
class AlgPartialAction {
 public:
  AlgPartialAction(SetPartialAction base, Ring ring) : base_(std::move(base)), ring_(ring) {}

  const SetPartialAction& base() const { return base_; }
  const Ring& ring() const { return ring_; }

  bool in_ideal(const GroupElem& g, const FnElem& f) const { return sets::subset(f.support(), base_.domain(g)); }

  FnElem apply(const GroupElem& g, const FnElem& f) const {
    const Group& G = *base_.group();
    require(same_space(f.space(), base_.space()), ErrorKind::InstanceMismatch, "function on another space");
    require(in_ideal(G.inv(g), f), ErrorKind::IllFormed,
            "argument outside C_R(X_" + G.format(G.inv(g)) + ")");
    FnElem out(base_.space(), ring_);
    for (auto& [x, v] : f.coeffs()) out.set(base_.apply_or_throw(g, x), v);
    return out;
  }

  FnElem indicator(const IndexSet& d) const { return FnElem::indicator(base_.space(), ring_, d); }

  // Each phi_g is a bijective multiplicative map between the ideals, checked on point indicators.
  std::vector<Check> verify() const {
    const Group& G = *base_.group();
    std::vector<Check> out;
    for (auto& g : base_.support()) {
      Check c{"phi_" + G.format(g) + " iso", true, ""};
      const IndexSet& dom = base_.domain(G.inv(g));
      IndexSet hit;
      for (auto x : dom) {
        FnElem img = apply(g, indicator({x}));
        if (img.support().size() != 1) c.pass = false;
        hit = sets::unite(hit, img.support());
        for (auto y : dom) {
          FnElem lhs = apply(g, indicator({x}) * indicator({y}));
          if (lhs != img * apply(g, indicator({y}))) c.pass = false;
        }
      }
      if (hit != base_.domain(g)) c.pass = false;
      if (!c.pass) c.detail = "fails on " + base_.space()->format(dom);
      out.push_back(c);
    }
    return out;
  }

 private:
  SetPartialAction base_;
  Ring ring_;
};

inline AlgPartialAction induce_on_functions(const SetPartialAction& a, Ring ring) { return AlgPartialAction(a, ring); }

// Induced action along a homomorphism: either the H-action or a kernel witness.
struct InduceResult {
  std::optional<SetPartialAction> action;
  std::optional<GroupElem> obstruction;  // element of G
  std::string detail;
  bool kernel_route_agrees = true;
};

// Kernel form of the condition: every g with psi(g)=e has X_g = X_{g^-1} and phi_g = id.
inline std::optional<GroupElem> kernel_violation(const SetPartialAction& a, const GroupHom& psi) {
  const Group& G = *a.group();
  const Group& H = *psi.target();
  for (auto& g : relevant_elements(a)) {
    if (!H.is_identity(psi.apply(g))) continue;
    if (a.domain(g) != a.domain(G.inv(g))) return g;
    for (auto& [x, y] : a.map(g))
      if (x != y) return g;
  }
  return std::nullopt;
}

inline InduceResult induce_via_hom(const SetPartialAction& a, const GroupHom& psi) {
  const Group& G = *a.group();
  const Group& H = *psi.target();
  require(psi.source()->id() == G.id(), ErrorKind::InstanceMismatch, "homomorphism source is not the acting group");
  InduceResult res;
  auto supp = a.support();
  // assigned[h][x] = (phi_g(x), g)
  std::map<GroupElem, std::map<std::size_t, std::pair<std::size_t, GroupElem>>> assigned;
  for (std::size_t x = 0; x < a.space()->size() && !res.obstruction; ++x) {
    for (auto& g : supp) {
      auto y = a.apply(g, x);
      if (!y) continue;
      GroupElem h = psi.apply(g);
      auto [it, fresh] = assigned[h].try_emplace(x, *y, g);
      if (!fresh && it->second.first != *y) {
        const GroupElem& g1 = it->second.second;
        res.obstruction = G.mul(g, G.inv(g1));
        res.detail = "phi_" + G.format(g1) + " and phi_" + G.format(g) + " disagree at " + a.space()->label(x) +
                     " but both map to " + H.format(h);
        break;
      }
    }
  }
  auto kv = kernel_violation(a, psi);
  res.kernel_route_agrees = res.obstruction.has_value() == kv.has_value();
  if (res.obstruction) return res;

  std::map<GroupElem, IndexSet> domains;
  std::map<GroupElem, PointMap> maps;
  for (auto& [h, m] : assigned) {
    PointMap pm;
    IndexSet img;
    for (auto& [x, yg] : m) {
      pm[x] = yg.first;
      img.push_back(yg.first);
    }
    maps[h] = std::move(pm);
    domains[h] = sets::normalized(std::move(img));
  }
  res.action.emplace(psi.target(), a.space(), std::move(domains), std::move(maps));
  return res;
}

// ---- invariant subsets

inline std::optional<std::pair<GroupElem, std::size_t>> invariance_witness(const SetPartialAction& a,
                                                                           const IndexSet& v) {
  for (auto& [g, m] : a.maps())
    for (auto& [x, y] : m)
      if (sets::contains(v, x) && !sets::contains(v, y)) return std::make_pair(g, x);
  return std::nullopt;
}

inline bool is_invariant(const SetPartialAction& a, const IndexSet& v) { return !invariance_witness(a, v); }

inline IndexSet invariant_closure(const SetPartialAction& a, const IndexSet& seed) {
  std::vector<bool> in(a.space()->size(), false);
  std::vector<std::size_t> stack;
  for (auto x : seed) {
    require(x < in.size(), ErrorKind::InstanceMismatch, "seed point outside space");
    if (!in[x]) {
      in[x] = true;
      stack.push_back(x);
    }
  }
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (auto& [g, m] : a.maps()) {
      auto it = m.find(x);
      if (it != m.end() && !in[it->second]) {
        in[it->second] = true;
        stack.push_back(it->second);
      }
    }
  }
  IndexSet out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

// All invariant subsets, by size then lexicographically. They are the unions of orbits.
inline std::vector<IndexSet> enumerate_invariant_subsets(const SetPartialAction& a) {
  std::vector<IndexSet> orbits;
  std::vector<bool> seen(a.space()->size(), false);
  for (std::size_t x = 0; x < seen.size(); ++x) {
    if (seen[x]) continue;
    IndexSet o = invariant_closure(a, {x});
    for (auto y : o) seen[y] = true;
    orbits.push_back(o);
  }
  require(orbits.size() < 24, ErrorKind::OracleBudget, "too many orbits to enumerate invariant subsets");
  std::vector<IndexSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << orbits.size()); ++m) {
    IndexSet s;
    for (std::size_t i = 0; i < orbits.size(); ++i)
      if (m >> i & 1) s = sets::unite(s, orbits[i]);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const IndexSet& p, const IndexSet& q) {
    return p.size() != q.size() ? p.size() < q.size() : p < q;
  });
  return out;
}

// (phi_g, X_g ∩ V, V) on a fresh space whose points are those of V.
inline SetPartialAction restrict_action(const SetPartialAction& a, const IndexSet& v) {
  if (auto w = invariance_witness(a, v))
    fail(ErrorKind::NotInvariant, "phi_" + a.group()->format(w->first) + " moves " + a.space()->label(w->second) +
                                      " out of " + a.space()->format(v));
  std::vector<std::string> labels;
  std::map<std::size_t, std::size_t> to_new;
  for (auto x : v) {
    to_new[x] = labels.size();
    labels.push_back(a.space()->label(x));
  }
  std::map<GroupElem, IndexSet> domains;
  std::map<GroupElem, PointMap> maps;
  for (auto& [g, d] : a.domains()) {
    IndexSet nd;
    for (auto x : sets::intersect(d, v)) nd.push_back(to_new[x]);
    domains[g] = nd;
  }
  for (auto& [g, m] : a.maps()) {
    PointMap nm;
    for (auto& [x, y] : m)
      if (sets::contains(v, x)) nm[to_new[x]] = to_new[y];
    maps[g] = nm;
  }
  return SetPartialAction(a.group(), FiniteSpace::make(labels), std::move(domains), std::move(maps));
}

// ---- inverse semigroup actions

template <class S>
struct InverseSemigroupOps {
  std::function<S(const S&, const S&)> mul;
  std::function<S(const S&)> star;
  std::function<bool(const S&, const S&)> leq;
  std::function<std::string(const S&)> format;
  std::function<bool(const S&)> is_zero;  // may be empty
  std::optional<S> unit;
};

template <class S>
struct SGSetAction {
  SpacePtr space;
  std::vector<S> elements;
  InverseSemigroupOps<S> ops;
  std::function<IndexSet(const S&)> domain;                                // X_s
  std::function<std::optional<std::size_t>(const S&, std::size_t)> apply;  // pi_s on X_{s*}
};

template <class S>
ActionReport validate_sg_action(const SGSetAction<S>& a) {
  const FiniteSpace& X = *a.space;
  auto& ops = a.ops;
  for (auto& s : a.elements) {
    IndexSet ds = a.domain(s), dstar = a.domain(ops.star(s));
    if (ops.is_zero && ops.is_zero(s) && !ds.empty()) return ActionReport::failure("zero", ops.format(s));
    IndexSet img;
    for (auto x : dstar) {
      auto y = a.apply(s, x);
      if (!y || !sets::contains(ds, *y))
        return ActionReport::failure("well-formed", "pi_" + ops.format(s) + " at " + X.label(x));
      img.push_back(*y);
      auto back = a.apply(ops.star(s), *y);
      if (!back || *back != x) return ActionReport::failure("i", "s=" + ops.format(s) + ", x=" + X.label(x));
    }
    img = sets::normalized(img);
    if (img != ds || img.size() != dstar.size())
      return ActionReport::failure("well-formed", "pi_" + ops.format(s) + " is not a bijection");
  }
  if (ops.unit) {
    if (a.domain(*ops.unit) != X.all()) return ActionReport::failure("unit", "X_unit != X");
    for (std::size_t x = 0; x < X.size(); ++x)
      if (a.apply(*ops.unit, x) != std::optional<std::size_t>(x)) return ActionReport::failure("unit", X.label(x));
  }
  for (auto& s : a.elements) {
    S ss = ops.star(s);
    IndexSet ds = a.domain(s), dss = a.domain(ss);
    for (auto& t : a.elements) {
      S st = ops.mul(s, t);
      IndexSet dst = a.domain(st), dt = a.domain(t);
      std::string w = "s=" + ops.format(s) + ", t=" + ops.format(t);
      for (auto x : sets::intersect(dss, dt)) {
        auto y = a.apply(s, x);
        if (!y || !sets::contains(dst, *y)) return ActionReport::failure("ii", w + ", x=" + X.label(x));
      }
      if (ops.leq(s, t) && !sets::subset(ds, dt)) return ActionReport::failure("iii", w);
      S ts = ops.star(t);
      for (auto x : sets::intersect(a.domain(ts), a.domain(ops.mul(ts, ss)))) {
        auto y = a.apply(t, x);
        auto z = y ? a.apply(s, *y) : std::nullopt;
        auto u = a.apply(st, x);
        if (!z || !u || *z != *u) return ActionReport::failure("iv", w + ", x=" + X.label(x));
      }
    }
  }
  return {};
}

}  // namespace gsa
