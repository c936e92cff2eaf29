#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gsa/exel.hpp"
#include "gsa/partial_action.hpp"

namespace gsa {

// Finite groupoid with a cocycle into a grading group. Units are indices into `units()`;
// arrows are indices into the arrow labels.
class FiniteGroupoid {
 public:
  using ComposeFn = std::function<std::optional<std::size_t>(std::size_t, std::size_t)>;

  // Without `compose`, a composite is looked up by (range, grade, source), which must be unique.
  FiniteGroupoid(GroupPtr grading, SpacePtr units, std::vector<std::string> arrow_labels, std::vector<std::size_t> r,
                 std::vector<std::size_t> d, std::vector<GroupElem> grades, ComposeFn compose = nullptr)
      : grading_(std::move(grading)),
        units_(std::move(units)),
        arrows_(FiniteSpace::make(std::move(arrow_labels))),
        r_(std::move(r)),
        d_(std::move(d)),
        grades_(std::move(grades)) {
    std::size_t n = arrows_->size();
    require(r_.size() == n && d_.size() == n && grades_.size() == n, ErrorKind::IllFormed,
            "groupoid: r, d and grades need one entry per arrow");
    for (std::size_t a = 0; a < n; ++a) {
      require(r_[a] < units_->size() && d_[a] < units_->size(), ErrorKind::IllFormed, "groupoid: unit out of range");
      grading_->check(grades_[a]);
    }
    std::map<std::tuple<std::size_t, GroupElem, std::size_t>, std::size_t> key;
    bool unique = true;
    for (std::size_t a = 0; a < n; ++a)
      if (!key.emplace(std::make_tuple(r_[a], grades_[a], d_[a]), a).second) unique = false;
    auto lookup = [&](std::size_t rr, const GroupElem& g, std::size_t dd) -> std::optional<std::size_t> {
      auto it = key.find(std::make_tuple(rr, g, dd));
      if (it == key.end()) return std::nullopt;
      return it->second;
    };
    if (!compose) {
      require(unique, ErrorKind::IllFormed, "groupoid: arrows not determined by (r, grade, d); pass a composition");
      compose = [&](std::size_t a, std::size_t b) -> std::optional<std::size_t> {
        return lookup(r_[a], grading_->mul(grades_[a], grades_[b]), d_[b]);
      };
    }
    table_.assign(n * n, npos);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (d_[a] != r_[b]) continue;
        auto c = compose(a, b);
        require(c.has_value() && *c < n, ErrorKind::IllFormed,
                "groupoid: composite of " + arrows_->label(a) + " and " + arrows_->label(b) + " missing");
        table_[a * n + b] = *c;
      }
    unit_arrow_.assign(units_->size(), npos);
    for (std::size_t a = 0; a < n; ++a)
      if (r_[a] == d_[a] && table_[a * n + a] == a) unit_arrow_[r_[a]] = a;
    for (std::size_t u = 0; u < units_->size(); ++u)
      require(unit_arrow_[u] != npos, ErrorKind::IllFormed, "groupoid: no identity at " + units_->label(u));
    inverse_.assign(n, npos);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n && inverse_[a] == npos; ++b)
        if (table_[a * n + b] == unit_arrow_[r_[a]] && table_[b * n + a] == unit_arrow_[d_[a]]) inverse_[a] = b;
    for (std::size_t a = 0; a < n; ++a)
      require(inverse_[a] != npos, ErrorKind::IllFormed, "groupoid: " + arrows_->label(a) + " has no inverse");
    origin_ = sets::range(n);
  }

  static constexpr std::size_t npos = std::size_t(-1);

  const GroupPtr& grading() const { return grading_; }
  const SpacePtr& units() const { return units_; }
  const SpacePtr& arrow_space() const { return arrows_; }
  std::size_t size() const { return arrows_->size(); }
  const std::string& label(std::size_t a) const { return arrows_->label(a); }
  std::size_t r(std::size_t a) const { return r_.at(a); }
  std::size_t d(std::size_t a) const { return d_.at(a); }
  const GroupElem& grade(std::size_t a) const { return grades_.at(a); }
  std::size_t unit_arrow(std::size_t u) const { return unit_arrow_.at(u); }
  std::size_t inverse(std::size_t a) const { return inverse_.at(a); }

  std::optional<std::size_t> compose(std::size_t a, std::size_t b) const {
    std::size_t c = table_.at(a * size() + b);
    if (c == npos) return std::nullopt;
    return c;
  }

  // Arrow of the parent groupoid this one was restricted from (identity otherwise).
  std::size_t origin(std::size_t a) const { return origin_.at(a); }
  const std::vector<std::size_t>& origins() const { return origin_; }

  std::vector<Check> verify() const {
    std::vector<Check> out;
    const Group& G = *grading_;
    std::size_t n = size();
    Check cat{"category", true, ""}, coc{"cocycle", true, ""}, inv{"inverses", true, ""};
    for (std::size_t a = 0; a < n; ++a) {
      if (!G.is_identity(grades_[unit_arrow_[r_[a]]]) && coc.pass) {
        coc.pass = false;
        coc.detail = "unit at " + units_->label(r_[a]) + " has nontrivial grade";
      }
      std::size_t ai = inverse_[a];
      if (r_[ai] != d_[a] || d_[ai] != r_[a] || grades_[ai] != G.inv(grades_[a])) {
        inv.pass = false;
        inv.detail = label(a);
      }
      for (std::size_t b = 0; b < n; ++b) {
        auto ab = compose(a, b);
        if (!ab) continue;
        if (r_[*ab] != r_[a] || d_[*ab] != d_[b]) {
          cat.pass = false;
          cat.detail = "endpoints of " + label(a) + label(b);
        }
        if (grades_[*ab] != G.mul(grades_[a], grades_[b])) {
          coc.pass = false;
          coc.detail = label(a) + " * " + label(b);
        }
        for (std::size_t c = 0; c < n; ++c) {
          auto bc = compose(b, c);
          if (!bc) continue;
          if (compose(*ab, c) != compose(a, *bc)) {
            cat.pass = false;
            cat.detail = "associativity at " + label(a) + "," + label(b) + "," + label(c);
          }
        }
      }
    }
    out.push_back(cat);
    out.push_back(inv);
    out.push_back(coc);
    return out;
  }

  IndexSet r_image(const IndexSet& arrows) const {
    IndexSet out;
    for (auto a : arrows) out.push_back(r_[a]);
    return sets::normalized(out);
  }

  IndexSet d_image(const IndexSet& arrows) const {
    IndexSet out;
    for (auto a : arrows) out.push_back(d_[a]);
    return sets::normalized(out);
  }

  IndexSet d_preimage(const IndexSet& us) const {
    IndexSet out;
    for (std::size_t a = 0; a < size(); ++a)
      if (sets::contains(us, d_[a])) out.push_back(a);
    return out;
  }

  IndexSet r_preimage(const IndexSet& us) const {
    IndexSet out;
    for (std::size_t a = 0; a < size(); ++a)
      if (sets::contains(us, r_[a])) out.push_back(a);
    return out;
  }

  // r(d^-1(U)) = U = d(r^-1(U))
  bool is_invariant(const IndexSet& us) const {
    return r_image(d_preimage(us)) == us && d_image(r_preimage(us)) == us;
  }

  std::vector<IndexSet> orbits() const {
    std::vector<IndexSet> out;
    std::vector<bool> seen(units_->size(), false);
    for (std::size_t u = 0; u < units_->size(); ++u) {
      if (seen[u]) continue;
      IndexSet o;
      for (std::size_t a = 0; a < size(); ++a)
        if (d_[a] == u) o.push_back(r_[a]);
      o = sets::normalized(o);
      for (auto v : o) seen[v] = true;
      out.push_back(o);
    }
    return out;
  }

 private:
  friend FiniteGroupoid restrict_groupoid(const FiniteGroupoid&, const IndexSet&);

  GroupPtr grading_;
  SpacePtr units_;
  SpacePtr arrows_;
  std::vector<std::size_t> r_, d_;
  std::vector<GroupElem> grades_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> unit_arrow_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> origin_;
};

using Bisection = IndexSet;

// G_U = d^-1(U), which equals r^-1(U) for invariant U.
inline FiniteGroupoid restrict_groupoid(const FiniteGroupoid& g, const IndexSet& us) {
  IndexSet U = sets::normalized(us);
  for (auto u : U) require(u < g.units()->size(), ErrorKind::InstanceMismatch, "unit outside the groupoid");
  if (!g.is_invariant(U)) {
    std::string w;
    for (std::size_t a = 0; a < g.size() && w.empty(); ++a)
      if (sets::contains(U, g.d(a)) != sets::contains(U, g.r(a))) w = g.label(a);
    fail(ErrorKind::NotInvariant, "unit set " + g.units()->format(U) + " is not invariant; arrow " + w);
  }
  IndexSet keep = g.d_preimage(U);
  require(keep == g.r_preimage(U), ErrorKind::NotInvariant, "d^-1(U) != r^-1(U)");
  std::vector<std::string> ulabels, alabels;
  std::map<std::size_t, std::size_t> unew, anew;
  for (auto u : U) {
    unew[u] = ulabels.size();
    ulabels.push_back(g.units()->label(u));
  }
  std::vector<std::size_t> r, d;
  std::vector<GroupElem> grades;
  for (auto a : keep) {
    anew[a] = alabels.size();
    alabels.push_back(g.label(a));
    r.push_back(unew[g.r(a)]);
    d.push_back(unew[g.d(a)]);
    grades.push_back(g.grade(a));
  }
  auto compose = [&](std::size_t a, std::size_t b) -> std::optional<std::size_t> {
    auto c = g.compose(keep[a], keep[b]);
    if (!c) return std::nullopt;
    return anew.at(*c);
  };
  FiniteGroupoid out(g.grading(), FiniteSpace::make(ulabels), alabels, r, d, grades, compose);
  for (std::size_t i = 0; i < keep.size(); ++i) out.origin_[i] = g.origin(keep[i]);
  return out;
}

// Arrows (g,x) with x in X_g; r(g,x) = x, d(g,x) = phi_{g^-1}(x), grade g.
inline FiniteGroupoid transformation_groupoid(const SetPartialAction& a) {
  const Group& G = *a.group();
  std::vector<std::string> labels;
  std::vector<std::size_t> r, d;
  std::vector<GroupElem> grades;
  for (auto& g : a.support())
    for (auto x : a.domain(g)) {
      labels.push_back("(" + G.format(g) + "," + a.space()->label(x) + ")");
      r.push_back(x);
      d.push_back(a.apply_or_throw(G.inv(g), x));
      grades.push_back(g);
    }
  return FiniteGroupoid(a.group(), a.space(), labels, r, d, grades);
}

inline std::optional<std::size_t> transformation_arrow(const FiniteGroupoid& gpd, const GroupElem& g, std::size_t x) {
  for (std::size_t a = 0; a < gpd.size(); ++a)
    if (gpd.r(a) == x && gpd.grade(a) == g) return a;
  return std::nullopt;
}

// A group as a groupoid with one unit.
inline FiniteGroupoid group_as_groupoid(const GroupPtr& G) {
  std::vector<std::string> labels;
  std::vector<GroupElem> grades;
  for (auto& g : G->elements()) {
    labels.push_back(G->format(g));
    grades.push_back(g);
  }
  std::size_t n = labels.size();
  return FiniteGroupoid(G, FiniteSpace::make({"*"}), labels, std::vector<std::size_t>(n, 0),
                        std::vector<std::size_t>(n, 0), grades);
}

// ---- bisections

namespace bisection {

inline bool is_bisection(const FiniteGroupoid& g, const Bisection& b) {
  return g.r_image(b).size() == b.size() && g.d_image(b).size() == b.size();
}

// Common grade of a nonempty homogeneous set.
inline std::optional<GroupElem> grade_of(const FiniteGroupoid& g, const Bisection& b) {
  if (b.empty()) return std::nullopt;
  for (auto a : b)
    if (g.grade(a) != g.grade(b.front())) return std::nullopt;
  return g.grade(b.front());
}

inline Bisection product(const FiniteGroupoid& g, const Bisection& u, const Bisection& v) {
  Bisection out;
  for (auto a : u)
    for (auto b : v)
      if (auto c = g.compose(a, b)) out.push_back(*c);
  out = sets::normalized(out);
  require(!is_bisection(g, u) || !is_bisection(g, v) || is_bisection(g, out), ErrorKind::IllFormed,
          "product of bisections is not a bisection");
  return out;
}

inline Bisection inverse(const FiniteGroupoid& g, const Bisection& u) {
  Bisection out;
  for (auto a : u) out.push_back(g.inverse(a));
  return sets::normalized(out);
}

// Unit arrows over a set of units.
inline Bisection units_over(const FiniteGroupoid& g, const IndexSet& us) {
  Bisection out;
  for (auto u : us) out.push_back(g.unit_arrow(u));
  return sets::normalized(out);
}

// Arrow of b with range x.
inline std::optional<std::size_t> at_range(const FiniteGroupoid& g, const Bisection& b, std::size_t x) {
  for (auto a : b)
    if (g.r(a) == x) return a;
  return std::nullopt;
}

inline std::string format(const FiniteGroupoid& g, const Bisection& b) { return g.arrow_space()->format(b); }

// Every graded bisection, the empty one first, then grade by grade.
inline std::vector<Bisection> enumerate_graded(const FiniteGroupoid& g, std::size_t cap = 20000) {
  std::vector<Bisection> out{{}};
  std::map<GroupElem, std::vector<std::size_t>> fibres;
  for (std::size_t a = 0; a < g.size(); ++a) fibres[g.grade(a)].push_back(a);
  std::size_t nu = g.units()->size();
  for (auto& [grade, arrows] : fibres) {
    std::vector<bool> used_r(nu, false), used_d(nu, false);
    Bisection cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == arrows.size()) {
        if (!cur.empty()) {
          out.push_back(cur);
          if (out.size() > cap)
            fail(ErrorKind::OracleBudget, "more than " + std::to_string(cap) + " graded bisections");
        }
        return;
      }
      rec(i + 1);
      std::size_t a = arrows[i];
      if (used_r[g.r(a)] || used_d[g.d(a)]) return;
      used_r[g.r(a)] = used_d[g.d(a)] = true;
      cur.push_back(a);
      rec(i + 1);
      cur.pop_back();
      used_r[g.r(a)] = used_d[g.d(a)] = false;
    };
    rec(0);
  }
  return out;
}

}  // namespace bisection

// pi_B(u) = r(b) for u = d(b), b in B, on U_B = r(B) ∩ U.
inline SGSetAction<Bisection> pi_action(const FiniteGroupoid& gpd, const IndexSet& U,
                                        std::vector<Bisection> elements) {
  IndexSet V = sets::normalized(U);
  if (!gpd.is_invariant(V)) fail(ErrorKind::NotInvariant, "unit set " + gpd.units()->format(V) + " is not invariant");
  const FiniteGroupoid* g = &gpd;
  SGSetAction<Bisection> act;
  act.space = gpd.units();
  act.elements = std::move(elements);
  act.ops.mul = [g](const Bisection& a, const Bisection& b) { return bisection::product(*g, a, b); };
  act.ops.star = [g](const Bisection& a) { return bisection::inverse(*g, a); };
  act.ops.leq = [](const Bisection& a, const Bisection& b) { return sets::subset(a, b); };
  act.ops.format = [g](const Bisection& a) { return bisection::format(*g, a); };
  act.ops.is_zero = [](const Bisection& a) { return a.empty(); };
  act.domain = [g, V](const Bisection& b) { return sets::intersect(g->r_image(b), V); };
  act.apply = [g, V](const Bisection& b, std::size_t u) -> std::optional<std::size_t> {
    if (!sets::contains(V, u)) return std::nullopt;
    for (auto a : b)
      if (g->d(a) == u) return g->r(a);
    return std::nullopt;
  };
  return act;
}

// S(G) acting on X by D_s = X_g ∩ X_{l_1} ∩ ... and phi'_s = phi_g there.
inline SGSetAction<SGElem> induce_sg_action(const SetPartialAction& a, std::vector<SGElem> elements) {
  const SetPartialAction* ap = &a;
  const Group* G = a.group().get();
  SGSetAction<SGElem> act;
  act.space = a.space();
  act.elements = std::move(elements);
  act.ops.mul = [G](const SGElem& s, const SGElem& t) { return sg_mul(*G, s, t); };
  act.ops.star = [G](const SGElem& s) { return sg_star(*G, s); };
  act.ops.leq = [G](const SGElem& s, const SGElem& t) { return sg_leq(*G, s, t); };
  act.ops.format = [G](const SGElem& s) { return sg_format(*G, s); };
  act.ops.unit = sg_bracket(*G, G->identity());
  auto dom = [ap](const SGElem& s) {
    IndexSet d = ap->domain(s.g);
    for (auto& l : s.eps) d = sets::intersect(d, ap->domain(l));
    return d;
  };
  act.domain = dom;
  act.apply = [ap, G, dom](const SGElem& s, std::size_t x) -> std::optional<std::size_t> {
    if (!sets::contains(dom(sg_star(*G, s)), x)) return std::nullopt;
    return ap->apply(s.g, x);
  };
  return act;
}

// S(G) elements whose head and eps-indices lie in the support of a.
inline std::vector<SGElem> sg_support_elements(const SetPartialAction& a) {
  auto supp = a.support();
  return sg_enumerate(*a.group(), supp, supp);
}

// ---- isotropy and effectiveness

inline IndexSet iso_group(const FiniteGroupoid& g, std::size_t u) {
  IndexSet out;
  for (std::size_t a = 0; a < g.size(); ++a)
    if (g.r(a) == u && g.d(a) == u) out.push_back(a);
  return out;
}

// Iso(G) = G^(0), the interior being the set itself in the discrete topology.
inline bool is_effective(const FiniteGroupoid& g) {
  for (std::size_t u = 0; u < g.units()->size(); ++u)
    if (iso_group(g, u).size() != 1) return false;
  return true;
}

// Every restriction to a nonempty invariant unit set is effective; unions of orbits suffice.
inline bool is_strongly_effective(const FiniteGroupoid& g) {
  for (auto& o : g.orbits())
    if (!is_effective(restrict_groupoid(g, o))) return false;
  return true;
}

}  // namespace gsa
