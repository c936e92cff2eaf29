#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gsa/algebra.hpp"
#include "gsa/function.hpp"
#include "gsa/groupoid.hpp"

namespace gsa {

// Elements of A_R(G) are functions on the arrow space.
using SteinbergElem = FnElem;

inline SteinbergElem steinberg_indicator(const FiniteGroupoid& g, const Ring& ring, const Bisection& b) {
  return FnElem::indicator(g.arrow_space(), ring, b);
}

// (f*h)(c) = sum over ab = c of f(a)h(b)
inline SteinbergElem convolve(const FiniteGroupoid& g, const SteinbergElem& f, const SteinbergElem& h) {
  require(same_space(f.space(), g.arrow_space()) && same_space(h.space(), g.arrow_space()),
          ErrorKind::InstanceMismatch, "convolution of functions on another groupoid");
  require(f.ring() == h.ring(), ErrorKind::InstanceMismatch, "convolution over different rings");
  std::map<std::size_t, Scalar> acc;
  for (auto& [a, x] : f.coeffs())
    for (auto& [b, y] : h.coeffs())
      if (auto c = g.compose(a, b)) {
        auto it = acc.find(*c);
        if (it == acc.end())
          acc.emplace(*c, x * y);
        else
          it->second += x * y;
      }
  SteinbergElem out(g.arrow_space(), f.ring());
  for (auto& [c, v] : acc) out.set(c, v);
  return out;
}

inline std::map<GroupElem, SteinbergElem> grade_decompose(const FiniteGroupoid& g, const SteinbergElem& f) {
  std::map<GroupElem, SteinbergElem> out;
  for (auto& [a, v] : f.coeffs()) {
    auto [it, fresh] = out.try_emplace(g.grade(a), g.arrow_space(), f.ring());
    it->second.set(a, v);
  }
  return out;
}

inline AlgebraPtr steinberg_algebra(const FiniteGroupoid& g, const Ring& ring) {
  const FiniteGroupoid* gp = &g;
  return std::make_shared<const FiniteAlgebra>(
      ring, g.grading(), g.arrow_space()->labels(),
      std::vector<GroupElem>([&] {
        std::vector<GroupElem> v;
        for (std::size_t a = 0; a < g.size(); ++a) v.push_back(g.grade(a));
        return v;
      }()),
      [gp, ring](std::size_t a, std::size_t b) {
        Sparse s;
        if (auto c = gp->compose(a, b)) s.emplace_back(*c, ring.one());
        return s;
      });
}

inline Vec to_vec(const SteinbergElem& f) {
  Vec v = zero_vec(f.ring(), f.space()->size());
  for (auto& [a, c] : f.coeffs()) v[a] = c;
  return v;
}

inline SteinbergElem from_vec(const FiniteGroupoid& g, const Ring& ring, const Vec& v) {
  SteinbergElem f(g.arrow_space(), ring);
  for (std::size_t a = 0; a < v.size(); ++a) f.set(a, v[a]);
  return f;
}

struct RepresentationReport {
  bool pass = true;
  bool r1 = true, r2 = true, r3 = true;
  bool faithful_on_units = true;  // t of a nonempty unit bisection is nonzero
  std::size_t pairs = 0;
  std::string witness;
};

// t_0 = 0, t_B t_C = t_BC, and t_B + t_C = t_{B∪C} for disjoint same-grade B, C
// whose union is a bisection. Exhaustive when the pair count is within budget, else seeded samples.
inline RepresentationReport check_representation(const FiniteGroupoid& g, const std::vector<Bisection>& family,
                                                 const FiniteAlgebra& target,
                                                 const std::function<Vec(const Bisection&)>& t,
                                                 std::size_t budget = 20000, std::uint64_t seed = 1) {
  RepresentationReport rep;
  std::map<Bisection, Vec> cache;
  auto T = [&](const Bisection& b) -> const Vec& {
    auto it = cache.find(b);
    if (it == cache.end()) it = cache.emplace(b, t(b)).first;
    return it->second;
  };
  if (!is_zero(T({}))) {
    rep.r1 = false;
    rep.witness = "t of the empty bisection";
  }
  for (auto& b : family)
    if (!b.empty() && bisection::grade_of(g, b) && g.grading()->is_identity(*bisection::grade_of(g, b)) &&
        is_zero(T(b)))
      rep.faithful_on_units = false;
  auto check_pair = [&](const Bisection& b, const Bisection& c) {
    ++rep.pairs;
    if (rep.r2 && target.mul(T(b), T(c)) != T(bisection::product(g, b, c))) {
      rep.r2 = false;
      rep.witness = "t_B t_C != t_BC at " + bisection::format(g, b) + ", " + bisection::format(g, c);
    }
    if (rep.r3 && !b.empty() && !c.empty() && sets::intersect(b, c).empty() &&
        bisection::grade_of(g, b) == bisection::grade_of(g, c)) {
      Bisection u = sets::unite(b, c);
      if (bisection::is_bisection(g, u) && add(T(b), T(c)) != T(u)) {
        rep.r3 = false;
        rep.witness = "t_B + t_C != t_(B u C) at " + bisection::format(g, b) + ", " + bisection::format(g, c);
      }
    }
  };
  std::size_t n = family.size();
  if (n * n <= budget) {
    for (auto& b : family)
      for (auto& c : family) check_pair(b, c);
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < budget; ++k) check_pair(family[rng() % n], family[rng() % n]);
  }
  rep.pass = rep.r1 && rep.r2 && rep.r3;
  return rep;
}

}  // namespace gsa
