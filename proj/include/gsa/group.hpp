#pragma once

#include <atomic>
#include <cstdlib>
#include <map>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gsa/error.hpp"

namespace gsa {

class GroupElem {
 public:
  // Letter +k is generator k-1, -k its inverse.
  using Word = std::vector<int>;

  GroupElem() = default;

  std::uint64_t group_id() const { return gid_; }
  std::int64_t number() const { return num_; }
  const Word& word() const { return word_; }

  friend bool operator==(const GroupElem& a, const GroupElem& b) {
    return a.gid_ == b.gid_ && a.num_ == b.num_ && a.word_ == b.word_;
  }
  friend bool operator!=(const GroupElem& a, const GroupElem& b) { return !(a == b); }

  // shortlex on words with a < a^-1 < b < ...
  friend bool operator<(const GroupElem& a, const GroupElem& b) {
    if (a.gid_ != b.gid_) return a.gid_ < b.gid_;
    if (a.num_ != b.num_) return a.num_ < b.num_;
    if (a.word_.size() != b.word_.size()) return a.word_.size() < b.word_.size();
    for (std::size_t i = 0; i < a.word_.size(); ++i) {
      int ca = code(a.word_[i]), cb = code(b.word_[i]);
      if (ca != cb) return ca < cb;
    }
    return false;
  }
  friend bool operator>(const GroupElem& a, const GroupElem& b) { return b < a; }
  friend bool operator<=(const GroupElem& a, const GroupElem& b) { return !(b < a); }

 private:
  friend class Group;
  static int code(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }

  std::uint64_t gid_ = 0;
  std::int64_t num_ = 0;
  Word word_;
};

enum class GroupKind { Finite, Integers, Free };

class Group;
using GroupPtr = std::shared_ptr<const Group>;

class Group {
 public:
  using Table = std::vector<std::vector<std::size_t>>;

  static GroupPtr finite(Table table, std::vector<std::string> names) {
    auto g = std::shared_ptr<Group>(new Group(GroupKind::Finite));
    std::size_t n = table.size();
    require(n > 0, ErrorKind::IllFormed, "empty group table");
    if (names.empty())
      for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    require(names.size() == n, ErrorKind::IllFormed, "group names do not match table size");
    for (auto& row : table) {
      require(row.size() == n, ErrorKind::IllFormed, "group table is not square");
      for (auto v : row) require(v < n, ErrorKind::IllFormed, "group table entry out of range");
    }
    std::optional<std::size_t> e;
    for (std::size_t i = 0; i < n && !e; ++i) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) ok = table[i][x] == x && table[x][i] == x;
      if (ok) e = i;
    }
    require(e.has_value(), ErrorKind::IllFormed, "group table has no identity");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]])
            fail(ErrorKind::IllFormed, "group table is not associative at (" + names[a] + "," +
                                           names[b] + "," + names[c] + ")");
    g->inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b)
        if (table[a][b] == *e && table[b][a] == *e) g->inverse_[a] = b;
      require(g->inverse_[a] < n, ErrorKind::IllFormed, "element " + names[a] + " has no inverse");
    }
    for (std::size_t i = 0; i < n; ++i)
      require(g->index_.emplace(names[i], i).second, ErrorKind::IllFormed, "duplicate element name");
    g->table_ = std::move(table);
    g->names_ = std::move(names);
    g->identity_index_ = *e;
    return g;
  }

  static GroupPtr cyclic(std::size_t n) {
    require(n >= 1, ErrorKind::IllFormed, "cyclic group of order 0");
    Table t(n, std::vector<std::size_t>(n));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(std::to_string(i));
      for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    }
    return finite(std::move(t), std::move(names));
  }

  static GroupPtr product(const Group& a, const Group& b) {
    require(a.is_finite() && b.is_finite(), ErrorKind::IllFormed, "product of infinite groups");
    std::size_t n = a.order(), m = b.order();
    Table t(n * m, std::vector<std::size_t>(n * m));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n * m; ++i) {
      names.push_back("(" + a.names_[i / m] + "," + b.names_[i % m] + ")");
      for (std::size_t j = 0; j < n * m; ++j)
        t[i][j] = a.table_[i / m][j / m] * m + b.table_[i % m][j % m];
    }
    return finite(std::move(t), std::move(names));
  }

  // Permutations of {0..k-1} closed under composition (p*q)(x) = p(q(x)).
  static GroupPtr from_permutations(std::vector<std::vector<std::size_t>> perms,
                                    std::vector<std::string> names) {
    std::size_t n = perms.size();
    auto compose = [](const std::vector<std::size_t>& p, const std::vector<std::size_t>& q) {
      std::vector<std::size_t> r(q.size());
      for (std::size_t x = 0; x < q.size(); ++x) r[x] = p[q[x]];
      return r;
    };
    Table t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto r = compose(perms[i], perms[j]);
        std::size_t k = 0;
        while (k < n && perms[k] != r) ++k;
        require(k < n, ErrorKind::IllFormed, "permutations not closed under composition");
        t[i][j] = k;
      }
    return finite(std::move(t), std::move(names));
  }

  static GroupPtr symmetric3() {
    return from_permutations({{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}},
                             {"e", "s", "t", "u", "r", "rr"});
  }

  static GroupPtr integers() { return std::shared_ptr<Group>(new Group(GroupKind::Integers)); }

  static GroupPtr free_group(std::vector<std::string> alphabet) {
    auto g = std::shared_ptr<Group>(new Group(GroupKind::Free));
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      auto& a = alphabet[i];
      require(!a.empty() && a.find('.') == std::string::npos && a.find('^') == std::string::npos &&
                  a != "1",
              ErrorKind::IllFormed, "bad generator name '" + a + "'");
      require(g->index_.emplace(a, i).second, ErrorKind::IllFormed, "duplicate generator");
    }
    g->names_ = std::move(alphabet);
    return g;
  }

  GroupKind kind() const { return kind_; }
  std::uint64_t id() const { return id_; }
  bool is_finite() const { return kind_ == GroupKind::Finite; }
  std::size_t order() const {
    require(is_finite(), ErrorKind::IllFormed, "order of an infinite group");
    return table_.size();
  }
  const std::vector<std::string>& alphabet() const { return names_; }
  const Table& table() const { return table_; }

  bool is_abelian() const {
    switch (kind_) {
      case GroupKind::Integers: return true;
      case GroupKind::Free: return names_.size() <= 1;
      case GroupKind::Finite:
        for (std::size_t a = 0; a < table_.size(); ++a)
          for (std::size_t b = 0; b < table_.size(); ++b)
            if (table_[a][b] != table_[b][a]) return false;
        return true;
    }
    return false;
  }

  GroupElem identity() const {
    GroupElem e = blank();
    if (kind_ == GroupKind::Finite) e.num_ = std::int64_t(identity_index_);
    return e;
  }

  bool is_identity(const GroupElem& g) const { return g == identity(); }

  GroupElem element(std::size_t i) const {
    require(is_finite() && i < table_.size(), ErrorKind::InstanceMismatch, "no such element");
    GroupElem e = blank();
    e.num_ = std::int64_t(i);
    return e;
  }

  std::size_t index(const GroupElem& g) const {
    check(g);
    require(is_finite(), ErrorKind::InstanceMismatch, "index in an infinite group");
    return std::size_t(g.num_);
  }

  std::vector<GroupElem> elements() const {
    std::vector<GroupElem> out;
    for (std::size_t i = 0; i < order(); ++i) out.push_back(element(i));
    return out;
  }

  GroupElem integer(std::int64_t k) const {
    require(kind_ == GroupKind::Integers, ErrorKind::InstanceMismatch, "not the integers");
    GroupElem e = blank();
    e.num_ = k;
    return e;
  }

  std::int64_t as_integer(const GroupElem& g) const {
    check(g);
    require(kind_ == GroupKind::Integers, ErrorKind::InstanceMismatch, "not the integers");
    return g.num_;
  }

  GroupElem word(GroupElem::Word w) const {
    require(kind_ == GroupKind::Free, ErrorKind::InstanceMismatch, "not a free group");
    for (int l : w)
      require(l != 0 && std::size_t(std::abs(l)) <= names_.size(), ErrorKind::InstanceMismatch,
              "letter outside alphabet");
    GroupElem e = blank();
    e.word_ = reduce(std::move(w));
    return e;
  }

  GroupElem generator(std::size_t i) const { return word({int(i) + 1}); }

  GroupElem mul(const GroupElem& a, const GroupElem& b) const {
    check(a);
    check(b);
    GroupElem out = blank();
    switch (kind_) {
      case GroupKind::Finite: out.num_ = std::int64_t(table_[a.num_][b.num_]); break;
      case GroupKind::Integers: out.num_ = a.num_ + b.num_; break;
      case GroupKind::Free: {
        auto w = a.word_;
        for (int l : b.word_) {
          if (!w.empty() && w.back() == -l)
            w.pop_back();
          else
            w.push_back(l);
        }
        out.word_ = std::move(w);
        break;
      }
    }
    return out;
  }

  GroupElem inv(const GroupElem& a) const {
    check(a);
    GroupElem out = blank();
    switch (kind_) {
      case GroupKind::Finite: out.num_ = std::int64_t(inverse_[a.num_]); break;
      case GroupKind::Integers: out.num_ = -a.num_; break;
      case GroupKind::Free:
        for (auto it = a.word_.rbegin(); it != a.word_.rend(); ++it) out.word_.push_back(-*it);
        break;
    }
    return out;
  }

  GroupElem pow(const GroupElem& a, std::int64_t k) const {
    GroupElem base = k < 0 ? inv(a) : a;
    GroupElem acc = identity();
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) acc = mul(acc, base);
    return acc;
  }

  // Free-group word reduction by a stack; also used to test confluence.
  static GroupElem::Word reduce(GroupElem::Word w) {
    GroupElem::Word out;
    for (int l : w) {
      if (!out.empty() && out.back() == -l)
        out.pop_back();
      else
        out.push_back(l);
    }
    return out;
  }

  std::string format(const GroupElem& g) const {
    check(g);
    switch (kind_) {
      case GroupKind::Finite: return names_[std::size_t(g.num_)];
      case GroupKind::Integers: return std::to_string(g.num_);
      case GroupKind::Free: {
        if (g.word_.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < g.word_.size(); ++i) {
          int l = g.word_[i];
          out += (i ? "." : "") + names_[std::size_t(std::abs(l) - 1)] + (l < 0 ? "^-1" : "");
        }
        return out;
      }
    }
    return "?";
  }

  GroupElem parse(const std::string& s) const {
    switch (kind_) {
      case GroupKind::Finite: {
        auto it = index_.find(s);
        if (it == index_.end()) fail(ErrorKind::Parse, "unknown group element '" + s + "'");
        return element(it->second);
      }
      case GroupKind::Integers: {
        std::size_t pos = 0;
        long long v = 0;
        try {
          v = std::stoll(s, &pos);
        } catch (...) {
          fail(ErrorKind::Parse, "bad integer '" + s + "'");
        }
        if (pos != s.size()) fail(ErrorKind::Parse, "bad integer '" + s + "'");
        return integer(v);
      }
      case GroupKind::Free: {
        if (s == "1" || s.empty()) return identity();
        GroupElem::Word w;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, '.')) {
          bool inverse = false;
          if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
            inverse = true;
            tok.resize(tok.size() - 3);
          }
          auto it = index_.find(tok);
          if (it == index_.end()) fail(ErrorKind::Parse, "unknown generator '" + tok + "'");
          int l = int(it->second) + 1;
          w.push_back(inverse ? -l : l);
        }
        return word(std::move(w));
      }
    }
    fail(ErrorKind::Parse, "unparseable element");
  }

  void check(const GroupElem& g) const {
    if (g.gid_ != id_) fail(ErrorKind::InstanceMismatch, "element belongs to another group");
  }

 private:
  explicit Group(GroupKind k) : kind_(k), id_(next_id()) {}

  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter++;
  }

  GroupElem blank() const {
    GroupElem e;
    e.gid_ = id_;
    return e;
  }

  GroupKind kind_;
  std::uint64_t id_;
  Table table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_index_ = 0;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
};

inline GroupElem group_op_mul(const Group& g, const GroupElem& a, const GroupElem& b) { return g.mul(a, b); }
inline GroupElem group_op_inv(const Group& g, const GroupElem& a) { return g.inv(a); }

class GroupHom {
 public:
  enum class Rule { Identity, Table, Generators };

  static GroupHom identity(GroupPtr g) { return GroupHom(g, g, Rule::Identity, {}); }

  // images[i] is the image of element(i) of a finite source
  static GroupHom from_table(GroupPtr src, GroupPtr dst, std::vector<GroupElem> images) {
    require(src->is_finite() && images.size() == src->order(), ErrorKind::IllFormed,
            "table homomorphism needs one image per element");
    for (auto& i : images) dst->check(i);
    return GroupHom(src, dst, Rule::Table, std::move(images));
  }

  // Free source: image per generator. Integers source: image of 1.
  static GroupHom on_generators(GroupPtr src, GroupPtr dst, std::vector<GroupElem> images) {
    require(src->kind() != GroupKind::Finite, ErrorKind::IllFormed, "use from_table for finite sources");
    std::size_t want = src->kind() == GroupKind::Free ? src->alphabet().size() : 1;
    require(images.size() == want, ErrorKind::IllFormed, "wrong number of generator images");
    for (auto& i : images) dst->check(i);
    return GroupHom(src, dst, Rule::Generators, std::move(images));
  }

  // psi(c) = (#generators) - (#inverse generators)
  static GroupHom letter_count(GroupPtr free_src, GroupPtr integers) {
    require(free_src->kind() == GroupKind::Free && integers->kind() == GroupKind::Integers,
            ErrorKind::IllFormed, "letter count runs from a free group to the integers");
    std::vector<GroupElem> images(free_src->alphabet().size(), integers->integer(1));
    return on_generators(free_src, integers, std::move(images));
  }

  const GroupPtr& source() const { return src_; }
  const GroupPtr& target() const { return dst_; }

  GroupElem apply(const GroupElem& c) const {
    src_->check(c);
    switch (rule_) {
      case Rule::Identity: return c;
      case Rule::Table: return images_[src_->index(c)];
      case Rule::Generators: {
        if (src_->kind() == GroupKind::Integers) return dst_->pow(images_[0], src_->as_integer(c));
        GroupElem acc = dst_->identity();
        for (int l : c.word()) {
          const GroupElem& g = images_[std::size_t(std::abs(l) - 1)];
          acc = dst_->mul(acc, l > 0 ? g : dst_->inv(g));
        }
        return acc;
      }
    }
    return dst_->identity();
  }

  // Exhaustive for finite sources; free and cyclic sources are homomorphisms by construction.
  std::optional<std::pair<GroupElem, GroupElem>> violation() const {
    if (!src_->is_finite()) return std::nullopt;
    for (auto& a : src_->elements())
      for (auto& b : src_->elements())
        if (apply(src_->mul(a, b)) != dst_->mul(apply(a), apply(b))) return std::make_pair(a, b);
    return std::nullopt;
  }

  bool is_identity_rule() const { return rule_ == Rule::Identity; }

 private:
  GroupHom(GroupPtr s, GroupPtr d, Rule r, std::vector<GroupElem> images)
      : src_(std::move(s)), dst_(std::move(d)), rule_(r), images_(std::move(images)) {}

  GroupPtr src_, dst_;
  Rule rule_;
  std::vector<GroupElem> images_;
};

inline GroupElem hom_apply(const GroupHom& h, const GroupElem& c) { return h.apply(c); }

}  // namespace gsa
