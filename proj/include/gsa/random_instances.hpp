#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gsa/partial_action.hpp"

namespace gsa {

struct RandomInstance {
  std::string family;
  SetPartialAction action;
};

// Restriction of a global action to the finite subset X: phi_g(x) = g.x whenever both lie in X.
template <class P>
SetPartialAction restrict_global(const GroupPtr& G, const std::vector<P>& X,
                                 const std::function<std::string(const P&)>& label,
                                 const std::function<P(const GroupElem&, const P&)>& act,
                                 const std::vector<GroupElem>& candidates) {
  std::vector<std::string> labels;
  for (auto& x : X) labels.push_back(label(x));
  SpacePtr S = FiniteSpace::make(labels);
  std::map<GroupElem, PointMap> phi;
  for (auto& g : candidates)
    for (std::size_t i = 0; i < X.size(); ++i) {
      P y = act(g, X[i]);
      for (std::size_t j = 0; j < X.size(); ++j)
        if (X[j] == y) phi[g][i] = j;
    }
  return SetPartialAction(G, S, {}, phi);
}

template <class P>
std::vector<P> sample_subset(std::mt19937_64& rng, std::vector<P> pool, std::size_t k) {
  for (std::size_t i = 0; i + 1 < pool.size(); ++i) std::swap(pool[i], pool[i + std::size_t(rng() % (pool.size() - i))]);
  pool.resize(std::min(k, pool.size()));
  return pool;
}

inline GroupPtr random_finite_group(std::mt19937_64& rng) {
  switch (rng() % 7) {
    case 0: return Group::cyclic(2);
    case 1: return Group::cyclic(3);
    case 2: return Group::cyclic(4);
    case 3: return Group::product(*Group::cyclic(2), *Group::cyclic(2));
    case 4: return Group::cyclic(5);
    case 5: return Group::cyclic(6);
    default: return Group::symmetric3();
  }
}

// One seeded instance with |X| <= max_points and at most max_support elements acting nontrivially.
inline RandomInstance random_partial_action(std::mt19937_64& rng, std::size_t max_points = 6,
                                            std::size_t max_support = 6) {
  while (true) {
    std::size_t family = rng() % 3;
    std::size_t n = 1 + rng() % max_points;
    std::size_t colours = 1 + rng() % 2;
    std::optional<RandomInstance> inst;
    if (family == 0) {
      using P = std::pair<long long, long long>;
      GroupPtr Z = Group::integers();
      std::vector<P> pool;
      for (long long t = 0; t < 5; ++t)
        for (long long c = 0; c < (long long)colours; ++c) pool.push_back({t, c});
      auto X = sample_subset(rng, pool, n);
      std::vector<GroupElem> cand;
      for (long long k = -4; k <= 4; ++k) cand.push_back(Z->integer(k));
      inst = RandomInstance{"integers on a window",
                            restrict_global<P>(
                                Z, X, [](const P& p) { return std::to_string(p.first) + (p.second ? "'" : ""); },
                                [&](const GroupElem& g, const P& p) { return P{p.first + Z->as_integer(g), p.second}; },
                                cand)};
    } else if (family == 1) {
      using P = std::pair<std::size_t, std::size_t>;
      GroupPtr G = random_finite_group(rng);
      std::vector<P> pool;
      for (std::size_t i = 0; i < G->order(); ++i)
        for (std::size_t c = 0; c < colours; ++c) pool.push_back({i, c});
      auto X = sample_subset(rng, pool, n);
      inst = RandomInstance{"finite group on itself",
                            restrict_global<P>(
                                G, X,
                                [&](const P& p) { return G->format(G->element(p.first)) + (p.second ? "'" : ""); },
                                [&](const GroupElem& g, const P& p) {
                                  return P{G->index(G->mul(g, G->element(p.first))), p.second};
                                },
                                G->elements())};
    } else {
      GroupPtr F = Group::free_group({"a", "b"});
      std::vector<GroupElem> pool;
      for (int a : {1, -1, 2, -2}) {
        pool.push_back(F->word({a}));
        for (int b : {1, -1, 2, -2})
          if (a != -b) pool.push_back(F->word({a, b}));
      }
      pool.push_back(F->identity());
      auto X = sample_subset(rng, pool, std::min<std::size_t>(n, 3));
      std::vector<GroupElem> cand;
      for (auto& x : X)
        for (auto& y : X) cand.push_back(F->mul(x, F->inv(y)));
      inst = RandomInstance{"free group on its Cayley tree",
                            restrict_global<GroupElem>(
                                F, X, [&](const GroupElem& p) { return F->format(p); },
                                [&](const GroupElem& g, const GroupElem& p) { return F->mul(g, p); }, cand)};
    }
    if (inst->action.support().size() <= max_support) return *inst;
  }
}

}  // namespace gsa
