#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gsa/scalar.hpp"

namespace gsa {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(const Ring& r, std::size_t n) { return Vec(n, r.zero()); }

inline Vec unit_vec(const Ring& r, std::size_t n, std::size_t i) {
  Vec v = zero_vec(r, n);
  v.at(i) = r.one();
  return v;
}

inline bool is_zero(const Vec& v) {
  for (auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec out = a;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) out[i] += b[i];
  return out;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec out = a;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) out[i] -= b[i];
  return out;
}

inline Vec scale(const Vec& a, const Scalar& c) {
  Vec out = a;
  for (auto& x : out)
    if (!x.is_zero()) x *= c;
  return out;
}

// Reduced row echelon form over a field. Columns are visited in `order`.
struct Echelon {
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;
};

inline Echelon rref(const Ring& ring, std::vector<Vec> rows, const std::vector<std::size_t>& order) {
  require(ring.is_field(), ErrorKind::NeedsField, "elimination over " + ring.name());
  Echelon e;
  std::size_t r = 0;
  for (std::size_t col : order) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Scalar inv = rows[r][col].inverse();
    if (!inv.is_one()) rows[r] = scale(rows[r], inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      rows[i] = sub(rows[i], scale(rows[r], rows[i][col]));
    }
    e.pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  e.rows = std::move(rows);
  return e;
}

inline std::vector<std::size_t> natural_order(std::size_t n) {
  std::vector<std::size_t> o(n);
  for (std::size_t i = 0; i < n; ++i) o[i] = i;
  return o;
}

inline std::size_t rank(const Ring& ring, const std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  return rref(ring, rows, natural_order(rows.front().size())).rows.size();
}

// Solve sum_j y_j cols[j] = b; free unknowns are set to zero. None if inconsistent.
inline std::optional<Vec> solve(const Ring& ring, const std::vector<Vec>& cols, const Vec& b) {
  std::size_t m = b.size(), k = cols.size();
  std::vector<Vec> rows(m, zero_vec(ring, k + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) rows[i][j] = cols[j][i];
    rows[i][k] = b[i];
  }
  Echelon e = rref(ring, std::move(rows), natural_order(k + 1));
  Vec y = zero_vec(ring, k);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == k) return std::nullopt;
    y[e.pivots[i]] = e.rows[i][k];
  }
  return y;
}

class Subspace {
 public:
  Subspace(Ring ring, std::size_t n) : ring_(ring), n_(n) {}

  static Subspace span(Ring ring, std::size_t n, const std::vector<Vec>& gens) {
    Subspace s(ring, n);
    for (auto& g : gens) s.add(g);
    return s;
  }

  const Ring& ring() const { return ring_; }
  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  Vec reduce(Vec v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Scalar& c = v[pivots_[i]];
      if (!c.is_zero()) v = sub(v, scale(rows_[i], c));
    }
    return v;
  }

  bool contains(const Vec& v) const { return is_zero(reduce(v)); }

  // Coordinates with respect to basis(); None if v is outside.
  std::optional<Vec> coordinates(const Vec& v) const {
    Vec c = zero_vec(ring_, rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
    Vec back = zero_vec(ring_, n_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!c[i].is_zero()) back = gsa::add(back, scale(rows_[i], c[i]));
    if (back != v) return std::nullopt;
    return c;
  }

  bool add(const Vec& v) {
    require(v.size() == n_, ErrorKind::InstanceMismatch, "vector length mismatch");
    require(ring_.is_field(), ErrorKind::NeedsField, "subspace over " + ring_.name());
    Vec r = reduce(v);
    std::size_t p = 0;
    while (p < n_ && r[p].is_zero()) ++p;
    if (p == n_) return false;
    r = scale(r, r[p].inverse());
    for (auto& row : rows_)
      if (!row[p].is_zero()) row = sub(row, scale(r, row[p]));
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < p) ++at;
    rows_.insert(rows_.begin() + std::ptrdiff_t(at), std::move(r));
    pivots_.insert(pivots_.begin() + std::ptrdiff_t(at), p);
    return true;
  }

  bool subset_of(const Subspace& o) const {
    for (auto& r : rows_)
      if (!o.contains(r)) return false;
    return true;
  }

  // Vectors of this space that vanish outside `keep`.
  Subspace restricted_to(const std::vector<bool>& keep) const {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n_; ++i)
      if (!keep[i]) order.push_back(i);
    for (std::size_t i = 0; i < n_; ++i)
      if (keep[i]) order.push_back(i);
    Subspace out(ring_, n_);
    if (rows_.empty()) return out;
    Echelon e = rref(ring_, rows_, order);
    for (std::size_t i = 0; i < e.rows.size(); ++i)
      if (keep[e.pivots[i]]) out.add(e.rows[i]);
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.ring_ == b.ring_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Ring ring_;
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

// Every subspace of F_p^n, each delivered once as RREF rows. Returns false if fn stopped early.
inline bool for_each_subspace(const Ring& ring, std::size_t n,
                              const std::function<bool(const std::vector<Vec>&)>& fn) {
  require(!ring.is_rational() && ring.is_field(), ErrorKind::NeedsField,
          "subspace enumeration needs a finite field");
  std::uint64_t p = ring.modulus();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    while (true) {
      std::vector<std::pair<std::size_t, std::size_t>> free_slots;
      std::vector<bool> is_piv(n, false);
      for (auto c : piv) is_piv[c] = true;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = piv[i] + 1; c < n; ++c)
          if (!is_piv[c]) free_slots.emplace_back(i, c);
      std::vector<std::uint64_t> digits(free_slots.size(), 0);
      while (true) {
        std::vector<Vec> rows(k, zero_vec(ring, n));
        for (std::size_t i = 0; i < k; ++i) rows[i][piv[i]] = ring.one();
        for (std::size_t s = 0; s < free_slots.size(); ++s)
          rows[free_slots[s].first][free_slots[s].second] = ring.from_int((long long)digits[s]);
        if (!fn(rows)) return false;
        std::size_t s = 0;
        while (s < digits.size() && ++digits[s] == p) digits[s++] = 0;
        if (s == digits.size()) break;
      }
      // next pivot combination
      std::ptrdiff_t i = std::ptrdiff_t(k) - 1;
      while (i >= 0 && piv[std::size_t(i)] == n - k + std::size_t(i)) --i;
      if (i < 0) break;
      ++piv[std::size_t(i)];
      for (std::size_t j = std::size_t(i) + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return true;
}

inline std::uint64_t count_subspaces(std::uint64_t p, std::size_t n) {
  // Gaussian binomials summed over k
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    long double num = 1, den = 1;
    for (std::size_t i = 0; i < k; ++i) {
      num *= (long double)std::pow((long double)p, (long double)(n - i)) - 1;
      den *= (long double)std::pow((long double)p, (long double)(i + 1)) - 1;
    }
    total += std::uint64_t(num / den + 0.5);
  }
  return total;
}

}  // namespace gsa
