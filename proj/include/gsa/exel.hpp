#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "gsa/group.hpp"

namespace gsa {

// eps_{l_1}...eps_{l_n}[g] with the l_i sorted and distinct from the identity and from g.
struct SGElem {
  std::vector<GroupElem> eps;
  GroupElem g;

  friend bool operator==(const SGElem& a, const SGElem& b) { return a.g == b.g && a.eps == b.eps; }
  friend bool operator!=(const SGElem& a, const SGElem& b) { return !(a == b); }
  friend bool operator<(const SGElem& a, const SGElem& b) {
    if (a.g != b.g) return a.g < b.g;
    if (a.eps.size() != b.eps.size()) return a.eps.size() < b.eps.size();
    return a.eps < b.eps;
  }
};

inline SGElem sg_canonical(const Group& G, std::vector<GroupElem> full, const GroupElem& g) {
  G.check(g);
  SGElem s;
  s.g = g;
  GroupElem e = G.identity();
  for (auto& l : full) {
    G.check(l);
    if (l != e && l != g) s.eps.push_back(l);
  }
  std::sort(s.eps.begin(), s.eps.end());
  s.eps.erase(std::unique(s.eps.begin(), s.eps.end()), s.eps.end());
  return s;
}

inline SGElem sg_bracket(const Group& G, const GroupElem& g) { return sg_canonical(G, {}, g); }

inline SGElem sg_eps(const Group& G, const GroupElem& l) { return sg_canonical(G, {l}, G.identity()); }

// Index set including the absorbed identity and g.
inline std::vector<GroupElem> sg_full(const Group& G, const SGElem& s) {
  auto f = s.eps;
  f.push_back(G.identity());
  f.push_back(s.g);
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

inline SGElem sg_mul(const Group& G, const SGElem& a, const SGElem& b) {
  std::vector<GroupElem> full = a.eps;
  for (auto& m : b.eps) full.push_back(G.mul(a.g, m));
  full.push_back(a.g);
  return sg_canonical(G, std::move(full), G.mul(a.g, b.g));
}

inline SGElem sg_star(const Group& G, const SGElem& s) {
  GroupElem gi = G.inv(s.g);
  std::vector<GroupElem> full;
  for (auto& l : s.eps) full.push_back(G.mul(gi, l));
  full.push_back(gi);
  return sg_canonical(G, std::move(full), gi);
}

inline bool sg_leq(const Group& G, const SGElem& a, const SGElem& b) {
  if (a.g != b.g) return false;
  auto fa = sg_full(G, a), fb = sg_full(G, b);
  return std::includes(fa.begin(), fa.end(), fb.begin(), fb.end());
}

inline bool sg_is_idempotent(const Group& G, const SGElem& s) { return G.is_identity(s.g); }

inline std::string sg_format(const Group& G, const SGElem& s) {
  std::string out;
  for (auto& l : s.eps) out += "e_" + G.format(l) + " ";
  return out + "[" + G.format(s.g) + "]";
}

// All canonical elements whose eps-indices lie in `pool` (every element for finite G).
inline std::vector<SGElem> sg_enumerate(const Group& G, const std::vector<GroupElem>& pool,
                                        const std::vector<GroupElem>& heads) {
  std::vector<SGElem> out;
  for (auto& g : heads) {
    std::vector<GroupElem> avail;
    for (auto& l : pool)
      if (l != g && !G.is_identity(l)) avail.push_back(l);
    require(avail.size() < 24, ErrorKind::OracleBudget, "too many eps-indices to enumerate");
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << avail.size()); ++m) {
      std::vector<GroupElem> full;
      for (std::size_t i = 0; i < avail.size(); ++i)
        if (m >> i & 1) full.push_back(avail[i]);
      out.push_back(sg_canonical(G, std::move(full), g));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<SGElem> sg_enumerate(const Group& G) {
  auto all = G.elements();
  return sg_enumerate(G, all, all);
}

// Extension of f: G -> T to S(G) after checking the three hypotheses on `domain`.
template <class T>
std::function<T(const SGElem&)> universal_hom(const Group& G, const std::vector<GroupElem>& domain,
                                              std::function<T(const GroupElem&)> f,
                                              std::function<T(const T&, const T&)> mul,
                                              std::function<bool(const T&, const T&)> eq) {
  GroupElem e = G.identity();
  auto witness = [&](const char* cond, const GroupElem& g, const GroupElem& h) {
    fail(ErrorKind::ConditionViolated,
         std::string("(") + cond + ") fails at g=" + G.format(g) + ", h=" + G.format(h));
  };
  for (auto& g : domain)
    for (auto& h : domain) {
      GroupElem gi = G.inv(g), hi = G.inv(h);
      if (!eq(mul(mul(f(gi), f(g)), f(h)), mul(f(gi), f(G.mul(g, h))))) witness("i", g, h);
      if (!eq(mul(mul(f(g), f(h)), f(hi)), mul(f(G.mul(g, h)), f(hi)))) witness("ii", g, h);
    }
  for (auto& g : domain)
    if (!eq(mul(f(g), f(e)), f(g))) witness("iii", g, e);
  const Group* Gp = &G;
  return [Gp, f, mul](const SGElem& s) {
    T acc = f(s.g);
    for (auto it = s.eps.rbegin(); it != s.eps.rend(); ++it)
      acc = mul(mul(f(*it), f(Gp->inv(*it))), acc);
    return acc;
  };
}

// Congruence closure of the defining relations on words of bounded length.
struct ExelOracle {
  std::vector<std::vector<std::size_t>> reps;  // shortlex-least word per class (element indices)
  std::vector<std::vector<std::size_t>> table;
  bool closed = true;  // right multiplication by letters never leaves the reported classes
  std::size_t words = 0;
};

inline ExelOracle oracle_enumerate(const Group& G, std::size_t max_len, std::size_t budget = 6000000) {
  require(G.is_finite(), ErrorKind::IllFormed, "oracle needs a finite group");
  require(max_len >= 3, ErrorKind::IllFormed, "oracle needs max_len >= 3");
  const std::size_t n = G.order();
  std::vector<std::size_t> offset(max_len + 2, 0), power(max_len + 1, 1);
  for (std::size_t L = 1; L <= max_len; ++L) {
    power[L] = power[L - 1] * n;
    offset[L + 1] = offset[L] + power[L];
    if (offset[L + 1] > budget)
      fail(ErrorKind::OracleBudget, "word universe exceeds " + std::to_string(budget));
  }
  const std::size_t total = offset[max_len + 1];
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    std::size_t r = x;
    while (parent[r] != r) r = parent[r];
    while (parent[x] != r) {
      std::size_t nx = parent[x];
      parent[x] = r;
      x = nx;
    }
    return r;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;
  };
  auto index_of = [&](const std::vector<std::size_t>& w) {
    std::size_t v = 0;
    for (auto c : w) v = v * n + c;
    return offset[w.size()] + v;
  };
  const auto& tab = G.table();
  std::size_t e = G.index(G.identity());
  std::vector<std::size_t> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = G.index(G.inv(G.element(i)));

  std::vector<std::size_t> w, rhs;
  for (std::size_t L = 2; L <= max_len; ++L) {
    w.assign(L, 0);
    for (std::size_t v = 0; v < power[L]; ++v) {
      std::size_t here = offset[L] + v;
      for (std::size_t i = 0; i + 1 < L; ++i) {
        if (w[i + 1] == e) {  // [g][e] = [g]
          rhs = w;
          rhs.erase(rhs.begin() + std::ptrdiff_t(i) + 1);
          unite(here, index_of(rhs));
        }
        if (i + 2 < L) {
          if (w[i] == inv[w[i + 1]]) {  // [g^-1][g][h] = [g^-1][gh]
            rhs = w;
            rhs[i + 1] = tab[w[i + 1]][w[i + 2]];
            rhs.erase(rhs.begin() + std::ptrdiff_t(i) + 2);
            unite(here, index_of(rhs));
          }
          if (w[i + 2] == inv[w[i + 1]]) {  // [g][h][h^-1] = [gh][h^-1]
            rhs = w;
            rhs[i] = tab[w[i]][w[i + 1]];
            rhs.erase(rhs.begin() + std::ptrdiff_t(i) + 1);
            unite(here, index_of(rhs));
          }
        }
      }
      for (std::size_t k = L; k-- > 0;) {
        if (++w[k] < n) break;
        w[k] = 0;
      }
    }
  }

  ExelOracle out;
  out.words = total;
  std::vector<long> class_of_root(total, -1);
  for (std::size_t L = 1; L < max_len; ++L) {
    w.assign(L, 0);
    for (std::size_t v = 0; v < power[L]; ++v) {
      std::size_t r = find(offset[L] + v);
      if (class_of_root[r] < 0) {
        class_of_root[r] = long(out.reps.size());
        out.reps.push_back(w);
      }
      for (std::size_t k = L; k-- > 0;) {
        if (++w[k] < n) break;
        w[k] = 0;
      }
    }
  }
  std::size_t m = out.reps.size();
  std::vector<std::vector<std::size_t>> right(m, std::vector<std::size_t>(n, 0));
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t a = 0; a < n; ++a) {
      auto word = out.reps[c];
      word.push_back(a);
      long k = class_of_root[find(index_of(word))];
      if (k < 0) {
        out.closed = false;
        k = 0;
      }
      right[c][a] = std::size_t(k);
    }
  out.table.assign(m, std::vector<std::size_t>(m, 0));
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t d = 0; d < m; ++d) {
      std::size_t x = c;
      for (auto a : out.reps[d]) x = right[x][a];
      out.table[c][d] = x;
    }
  return out;
}

inline SGElem sg_from_word(const Group& G, const std::vector<std::size_t>& word) {
  SGElem acc = sg_bracket(G, G.element(word.at(0)));
  for (std::size_t i = 1; i < word.size(); ++i) acc = sg_mul(G, acc, sg_bracket(G, G.element(word[i])));
  return acc;
}

}  // namespace gsa
