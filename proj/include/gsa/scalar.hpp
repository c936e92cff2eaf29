#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

#include "gsa/error.hpp"

namespace gsa {

class Scalar;

// Coefficient ring: Q when modulus is 0, otherwise Z/n. Only Q and prime n are fields.
class Ring {
 public:
  Ring() = default;

  static Ring rationals() { return Ring(0); }

  static Ring integers_mod(std::uint64_t n) {
    require(n >= 2, ErrorKind::IllFormed, "modulus must be at least 2");
    return Ring(n);
  }

  // "q", "f5", "z6"; "f" insists on a prime.
  static Ring parse(const std::string& s) {
    if (s == "q" || s == "Q") return rationals();
    if (s.size() >= 2 && (s[0] == 'f' || s[0] == 'F' || s[0] == 'z' || s[0] == 'Z')) {
      std::uint64_t n = 0;
      try {
        n = std::stoull(s.substr(1));
      } catch (...) {
        fail(ErrorKind::Parse, "bad field name '" + s + "'");
      }
      Ring r = integers_mod(n);
      if ((s[0] == 'f' || s[0] == 'F') && !r.is_field())
        fail(ErrorKind::Parse, "f" + std::to_string(n) + " is not a field");
      return r;
    }
    fail(ErrorKind::Parse, "bad field name '" + s + "'");
  }

  bool is_rational() const { return modulus_ == 0; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_field() const { return field_; }

  std::string name() const {
    if (is_rational()) return "q";
    return (field_ ? "f" : "z") + std::to_string(modulus_);
  }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_rational(const mpq_class& q) const;
  Scalar parse_value(const std::string& s) const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.modulus_ == b.modulus_; }
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

 private:
  explicit Ring(std::uint64_t n) : modulus_(n), field_(n == 0 || is_prime(n)) {}

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  std::uint64_t modulus_ = 0;
  bool field_ = true;
};

class Scalar {
 public:
  Scalar() : ring_(Ring::rationals()), value_(mpq_class(0)) {}

  const Ring& ring() const { return ring_; }

  bool is_zero() const {
    if (auto r = std::get_if<std::uint64_t>(&value_)) return *r == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
  }

  bool is_one() const {
    if (auto r = std::get_if<std::uint64_t>(&value_)) return *r == 1;
    return std::get<mpq_class>(value_) == 1;
  }

  // rationals only
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }

  Scalar inverse() const {
    require(ring_.is_field(), ErrorKind::NeedsField,
            "inverse requested over non-field " + ring_.name());
    require(!is_zero(), ErrorKind::IllFormed, "inverse of zero");
    if (ring_.is_rational()) return Scalar(ring_, mpq_class(1) / rational());
    // Fermat
    return Scalar(ring_, pow_mod(residue(), ring_.modulus() - 2, ring_.modulus()));
  }

  Scalar operator-() const {
    if (ring_.is_rational()) return Scalar(ring_, mpq_class(-rational()));
    std::uint64_t r = residue();
    return Scalar(ring_, r == 0 ? 0 : ring_.modulus() - r);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.same(b);
    if (a.ring_.is_rational()) return Scalar(a.ring_, mpq_class(a.rational() + b.rational()));
    unsigned __int128 s = (unsigned __int128)a.residue() + b.residue();
    return Scalar(a.ring_, std::uint64_t(s % a.ring_.modulus()));
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.same(b);
    if (a.ring_.is_rational()) return Scalar(a.ring_, mpq_class(a.rational() * b.rational()));
    unsigned __int128 p = (unsigned __int128)a.residue() * b.residue();
    return Scalar(a.ring_, std::uint64_t(p % a.ring_.modulus()));
  }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.ring_ == b.ring_ && a.value_ == b.value_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const {
    if (ring_.is_rational()) return rational().get_str();
    return std::to_string(residue());
  }

 private:
  friend class Ring;

  Scalar(Ring r, mpq_class q) : ring_(r), value_(std::move(q)) {
    std::get<mpq_class>(value_).canonicalize();
  }
  Scalar(Ring r, std::uint64_t v) : ring_(r), value_(v) {}

  void same(const Scalar& o) const {
    if (ring_ != o.ring_)
      fail(ErrorKind::InstanceMismatch, "scalars over " + ring_.name() + " and " + o.ring_.name());
  }

  static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 acc = 1, base = b % m;
    while (e) {
      if (e & 1) acc = acc * base % m;
      base = base * base % m;
      e >>= 1;
    }
    return std::uint64_t(acc);
  }

  Ring ring_;
  std::variant<std::uint64_t, mpq_class> value_;
};

inline Scalar Ring::zero() const { return from_int(0); }
inline Scalar Ring::one() const { return from_int(1); }

inline Scalar Ring::from_int(long long v) const {
  if (is_rational()) return Scalar(*this, mpq_class(static_cast<long>(v)));
  long long m = (long long)modulus_;
  long long r = v % m;
  if (r < 0) r += m;
  return Scalar(*this, std::uint64_t(r));
}

inline Scalar Ring::from_rational(const mpq_class& q) const {
  if (is_rational()) return Scalar(*this, q);
  mpz_class m = static_cast<unsigned long>(modulus_);
  mpz_class n = q.get_num() % m, d = q.get_den() % m;
  if (n < 0) n += m;
  Scalar num(*this, std::uint64_t(n.get_ui()));
  if (d == 1) return num;
  return num * Scalar(*this, std::uint64_t(d.get_ui())).inverse();
}

inline Scalar Ring::parse_value(const std::string& s) const {
  mpq_class q;
  if (q.set_str(s, 10) != 0) fail(ErrorKind::Parse, "bad scalar '" + s + "'");
  if (q.get_den() == 0) fail(ErrorKind::Parse, "zero denominator in '" + s + "'");
  q.canonicalize();
  return from_rational(q);
}

}  // namespace gsa
