#pragma once

#include <map>
#include <string>
#include <vector>

#include "gsa/scalar.hpp"
#include "gsa/space.hpp"

namespace gsa {

// Element of C_R(X): finitely many nonzero values on a finite discrete space.
class FnElem {
 public:
  FnElem(SpacePtr space, Ring ring) : space_(std::move(space)), ring_(ring) {}

  static FnElem indicator(SpacePtr space, Ring ring, const IndexSet& d) {
    FnElem f(std::move(space), ring);
    for (auto x : d) {
      require(x < f.space_->size(), ErrorKind::InstanceMismatch, "point outside space");
      f.coeffs_[x] = ring.one();
    }
    return f;
  }

  static FnElem indicator(SpacePtr space, Ring ring, const std::vector<std::string>& labels) {
    IndexSet d = space->subset(labels);
    return indicator(std::move(space), ring, d);
  }

  const SpacePtr& space() const { return space_; }
  const Ring& ring() const { return ring_; }
  const std::map<std::size_t, Scalar>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Scalar at(std::size_t x) const {
    auto it = coeffs_.find(x);
    return it == coeffs_.end() ? ring_.zero() : it->second;
  }

  void set(std::size_t x, const Scalar& v) {
    require(x < space_->size(), ErrorKind::InstanceMismatch, "point outside space");
    if (v.is_zero())
      coeffs_.erase(x);
    else
      coeffs_[x] = v;
  }

  IndexSet support() const {
    IndexSet s;
    for (auto& [x, _] : coeffs_) s.push_back(x);
    return s;
  }

  FnElem scaled(const Scalar& c) const {
    FnElem out(space_, ring_);
    for (auto& [x, v] : coeffs_) out.set(x, v * c);
    return out;
  }

  // value x -> f(x)^{-1} on supp(f), zero elsewhere
  FnElem pointwise_quasi_inverse() const {
    FnElem out(space_, ring_);
    for (auto& [x, v] : coeffs_) out.coeffs_[x] = v.inverse();
    return out;
  }

  FnElem restricted(const IndexSet& d) const {
    FnElem out(space_, ring_);
    for (auto& [x, v] : coeffs_)
      if (sets::contains(d, x)) out.coeffs_[x] = v;
    return out;
  }

  friend FnElem operator+(const FnElem& a, const FnElem& b) {
    a.same(b);
    FnElem out = a;
    for (auto& [x, v] : b.coeffs_) out.set(x, out.at(x) + v);
    return out;
  }

  friend FnElem operator-(const FnElem& a, const FnElem& b) { return a + b.scaled(-a.ring_.one()); }

  friend FnElem operator*(const FnElem& a, const FnElem& b) {
    a.same(b);
    FnElem out(a.space_, a.ring_);
    for (auto& [x, v] : a.coeffs_) {
      auto it = b.coeffs_.find(x);
      if (it != b.coeffs_.end()) out.set(x, v * it->second);
    }
    return out;
  }

  friend bool operator==(const FnElem& a, const FnElem& b) {
    return same_space(a.space_, b.space_) && a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const FnElem& a, const FnElem& b) { return !(a == b); }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (auto& [x, v] : coeffs_) {
      if (!out.empty()) out += " + ";
      out += v.str() + "*1_{" + space_->label(x) + "}";
    }
    return out;
  }

 private:
  void same(const FnElem& o) const {
    if (!same_space(space_, o.space_)) fail(ErrorKind::InstanceMismatch, "functions on different spaces");
    if (ring_ != o.ring_) fail(ErrorKind::InstanceMismatch, "functions over different rings");
  }

  SpacePtr space_;
  Ring ring_;
  std::map<std::size_t, Scalar> coeffs_;
};

inline FnElem fn_add(const FnElem& a, const FnElem& b) { return a + b; }
inline FnElem fn_mul(const FnElem& a, const FnElem& b) { return a * b; }
inline FnElem fn_scale(const FnElem& a, const Scalar& c) { return a.scaled(c); }

// 1 on the union of supports; fixes every input on both sides.
inline FnElem local_unit_for(const std::vector<FnElem>& fs) {
  require(!fs.empty(), ErrorKind::IllFormed, "local unit of an empty family");
  IndexSet u;
  for (auto& f : fs) {
    if (!same_space(f.space(), fs.front().space()) || f.ring() != fs.front().ring())
      fail(ErrorKind::InstanceMismatch, "local unit over mixed spaces");
    u = sets::unite(u, f.support());
  }
  return FnElem::indicator(fs.front().space(), fs.front().ring(), u);
}

}  // namespace gsa
