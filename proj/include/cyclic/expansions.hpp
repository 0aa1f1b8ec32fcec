#ifndef CYCLIC_EXPANSIONS_HPP
#define CYCLIC_EXPANSIONS_HPP

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"

namespace cyclic {

/// Face or morphism generator: kind is one of D (face), f, g, h.
struct FaceGen {
  char kind = 'D';
  SymTuple tuple;
  auto operator<=>(const FaceGen&) const = default;
};
using FaceWord = std::vector<FaceGen>;  // leftmost generator is applied last

/// Multilinear generator: kind is p (structure map), f, g, h or '1' (identity).
struct TensorGen {
  char kind = '1';
  int n = 0;
  auto operator<=>(const TensorGen&) const = default;
};

/// outer(slot_1 (x) ... (x) slot_r); no slots means outer alone.
struct TensorWord {
  TensorGen outer;
  std::vector<TensorGen> slots;
  auto operator<=>(const TensorWord&) const = default;
};

template <class W>
struct WordOrder {
  static size_t length(const FaceWord& w) { return w.size(); }
  static size_t length(const TensorWord& w) { return 1 + w.slots.size(); }
  bool operator()(const W& a, const W& b) const {
    size_t la = length(a), lb = length(b);
    if (la != lb) return la < lb;
    return a < b;
  }
};

/** \brief Integer combination of words in canonical order. */
template <class W>
class FormalSum {
 public:
  void add(const W& w, long c) {
    if (c == 0) return;
    long& x = terms_[w];
    x += c;
    if (x == 0) terms_.erase(w);
  }
  void add(const FormalSum& o, long c = 1) {
    for (auto& [w, x] : o.terms_) add(w, c * x);
  }
  const std::map<W, long, WordOrder<W>>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  friend bool operator==(const FormalSum& a, const FormalSum& b) { return a.terms_ == b.terms_; }

 private:
  std::map<W, long, WordOrder<W>> terms_;
};

using FaceSum = FormalSum<FaceWord>;
using TensorSum = FormalSum<TensorWord>;

inline long parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

// ---- face, morphism, composition and homotopy relations on index tuples ----

inline FaceSum expand_face_relation(int k) {
  FaceSum s;
  SymTuple t = symbolic_tuple(k);
  for (auto& sp : admissible_splits(k, false)) {
    auto [l, r] = split_symbolic(sp, t);
    s.add(FaceWord{{'D', l}, {'D', r}}, parity_sign(sp.sign + 1));
  }
  return s;
}

inline FaceSum expand_morphism_relation(int k, char f = 'f') {
  FaceSum s;
  if (k == 0) return s;
  SymTuple t = symbolic_tuple(k);
  s.add(FaceWord{{'D', t}, {f, {}}}, -1);
  s.add(FaceWord{{f, {}}, {'D', t}}, 1);
  for (auto& sp : admissible_splits(k, false)) {
    auto [l, r] = split_symbolic(sp, t);
    long c = parity_sign(sp.sign + 1);
    s.add(FaceWord{{'D', l}, {f, r}}, c);
    s.add(FaceWord{{f, l}, {'D', r}}, -c);
  }
  return s;
}

inline FaceSum expand_composition(int k) {
  FaceSum s;
  SymTuple t = symbolic_tuple(k);
  for (auto& sp : admissible_splits(k, true)) {
    auto [l, r] = split_symbolic(sp, t);
    s.add(FaceWord{{'g', l}, {'f', r}}, parity_sign(sp.sign));
  }
  return s;
}

inline FaceSum expand_homotopy_relation(int k) {
  FaceSum s;
  SymTuple t = symbolic_tuple(k);
  s.add(FaceWord{{'f', t}}, 1);
  s.add(FaceWord{{'g', t}}, -1);
  if (k == 0) return s;
  s.add(FaceWord{{'D', t}, {'h', {}}}, -1);
  s.add(FaceWord{{'h', {}}, {'D', t}}, -1);
  for (auto& sp : admissible_splits(k, false)) {
    auto [l, r] = split_symbolic(sp, t);
    long c = parity_sign(sp.sign + 1);
    s.add(FaceWord{{'D', l}, {'h', r}}, c);
    s.add(FaceWord{{'h', l}, {'D', r}}, c);
  }
  return s;
}

// ---- relations among multilinear maps ----

/// Compositions (n_1, ..., n_parts) of total with nonnegative parts.
inline std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  if (parts == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  std::vector<int> cur(parts, 0);
  auto rec = [&](auto& self, int pos, int left) -> void {
    if (pos == parts - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

/// sum_{i} (n_i + 1)(n_{i+1} + ... + n_last)
inline long epsilon_sign_exponent(const std::vector<int>& ns) {
  long e = 0, tail = 0;
  for (int i = static_cast<int>(ns.size()) - 1; i >= 0; --i) {
    e += (ns[i] + 1) * tail;
    tail += ns[i];
  }
  return e;
}

/// outer_m(1^{t-1} (x) p_{n-m} (x) 1^{...}) with `arity` slots in total.
inline TensorWord insertion_word(TensorGen outer, int arity, int t, int inner) {
  TensorWord w{outer, {}};
  for (int s = 1; s <= arity; ++s) w.slots.push_back(s == t ? TensorGen{'p', inner} : TensorGen{'1', 0});
  return w;
}

inline TensorSum expand_ainf_relation(int n) {
  TensorSum s;
  for (int m = 0; m <= n; ++m)
    for (int t = 1; t <= m + 2; ++t)
      s.add(insertion_word({'p', m}, m + 2, t, n - m), parity_sign(t * (n - m + 1) + n + 1));
  return s;
}

inline TensorSum expand_ainf_morphism_relation(int n, char f = 'f') {
  TensorSum s;
  for (int m = 0; m <= n; ++m)
    for (int t = 1; t <= m + 1; ++t)
      s.add(insertion_word({f, m}, m + 1, t, n - m), parity_sign(t * (n - m + 1) + n + 1));
  for (int m = 0; m <= n; ++m)
    for (auto& ns : compositions(n - m, m + 2)) {
      TensorWord w{{'p', m}, {}};
      for (int x : ns) w.slots.push_back({f, x});
      s.add(w, -parity_sign(epsilon_sign_exponent(ns)));
    }
  return s;
}

inline TensorSum expand_ainf_composition(int n) {
  TensorSum s;
  for (int m = -1; m <= n; ++m)
    for (auto& ns : compositions(n - m, m + 2)) {
      TensorWord w{{'g', m + 1}, {}};
      for (int x : ns) w.slots.push_back({'f', x});
      s.add(w, parity_sign(epsilon_sign_exponent(ns)));
    }
  return s;
}

inline TensorSum expand_ainf_homotopy_relation(int n) {
  TensorSum s;
  s.add(TensorWord{{'f', n + 1}, {}}, 1);
  s.add(TensorWord{{'g', n + 1}, {}}, -1);
  for (int m = 0; m <= n; ++m)
    for (int t = 1; t <= m + 1; ++t)
      s.add(insertion_word({'h', m}, m + 1, t, n - m), parity_sign(t * (n - m + 1) + n));
  for (int m = 0; m <= n; ++m)
    for (auto& ns : compositions(n - m, m + 2))
      for (int i = 1; i <= m + 2; ++i) {
        long rho = m + epsilon_sign_exponent(ns);
        for (int k = 1; k < i; ++k) rho += ns[k - 1];
        TensorWord w{{'p', m}, {}};
        for (int k = 1; k <= m + 2; ++k) w.slots.push_back({k < i ? 'g' : (k == i ? 'h' : 'f'), ns[k - 1]});
        s.add(w, parity_sign(rho));
      }
  return s;
}

// ---- text form ----

inline std::string to_string(const SymTuple& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + to_string(t[i]);
  return s + ")";
}

inline std::string to_string(const FaceWord& w) {
  std::string s;
  for (auto& g : w) s += std::string(1, g.kind) + to_string(g.tuple);
  return s;
}

inline std::string to_string(const TensorGen& g) {
  return g.kind == '1' ? "1" : std::string(1, g.kind) + std::to_string(g.n);
}

inline std::string to_string(const TensorWord& w) {
  std::string s = to_string(w.outer);
  if (w.slots.empty()) return s;
  s += "(";
  for (size_t i = 0; i < w.slots.size(); ++i) s += (i ? "," : "") + to_string(w.slots[i]);
  return s + ")";
}

template <class W>
std::vector<std::string> term_strings(const FormalSum<W>& s) {
  std::vector<std::string> out;
  for (auto& [w, c] : s.terms()) {
    std::string coef = c > 0 ? "+" : "-";
    if (c != 1 && c != -1) coef += std::to_string(c > 0 ? c : -c);
    out.push_back(coef + to_string(w));
  }
  return out;
}

template <class W>
std::string to_string(const FormalSum<W>& s) {
  if (s.empty()) return "0";
  std::string out;
  for (auto& t : term_strings(s)) out += (out.empty() ? "" : " ") + t;
  return out;
}

namespace detail {

class TermLexer {
 public:
  explicit TermLexer(const std::string& s) : s_(s) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  char peek() { return i_ < s_.size() ? s_[i_] : '\0'; }
  char get() {
    if (i_ >= s_.size()) fail("unexpected end");
    return s_[i_++];
  }
  void expect(char c) {
    if (get() != c) fail(std::string("expected '") + c + "'");
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i_;
      return true;
    }
    return false;
  }
  long number() {
    size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected a number");
    return std::stol(s_.substr(st, i_ - st));
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  /// Leading sign and optional integer multiplicity.
  long coefficient() {
    skip_ws();
    long c = 1;
    if (accept('-')) c = -1;
    else if (!accept('+')) fail("term must start with a sign");
    skip_ws();
    if (at_digit()) c *= number();
    skip_ws();
    return c;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw Error(Errc::parse, why + " at position " + std::to_string(i_) + " in '" + s_ + "'");
  }

 private:
  const std::string& s_;
  size_t i_ = 0;
};

}  // namespace detail

inline FaceSum parse_face_sum(const std::string& text) {
  FaceSum out;
  detail::TermLexer lx(text);
  if (text.find_first_not_of(" \t") != std::string::npos && text.substr(text.find_first_not_of(" \t")) == "0")
    return out;
  while (!lx.done()) {
    long c = lx.coefficient();
    FaceWord w;
    while (!lx.done() && lx.peek() != '+' && lx.peek() != '-') {
      FaceGen g;
      g.kind = lx.get();
      if (g.kind != 'D' && g.kind != 'f' && g.kind != 'g' && g.kind != 'h') lx.fail("unknown generator");
      lx.expect('(');
      while (!lx.accept(')')) {
        SymIndex x;
        if (lx.accept('i')) {
          x.var = static_cast<int>(lx.number());
          if (lx.accept('-')) x.offset = -static_cast<int>(lx.number());
          else if (lx.accept('+')) x.offset = static_cast<int>(lx.number());
        } else {
          x.offset = static_cast<int>(lx.number());
        }
        g.tuple.push_back(x);
        lx.accept(',');
      }
      w.push_back(g);
    }
    if (w.empty()) lx.fail("empty word");
    out.add(w, c);
  }
  return out;
}

inline TensorSum parse_tensor_sum(const std::string& text) {
  TensorSum out;
  detail::TermLexer lx(text);
  if (text.find_first_not_of(" \t") != std::string::npos && text.substr(text.find_first_not_of(" \t")) == "0")
    return out;
  auto gen = [&]() {
    TensorGen g;
    g.kind = lx.get();
    if (g.kind == '1') return g;
    if (g.kind != 'p' && g.kind != 'f' && g.kind != 'g' && g.kind != 'h') lx.fail("unknown generator");
    g.n = static_cast<int>(lx.number());
    return g;
  };
  while (!lx.done()) {
    long c = lx.coefficient();
    TensorWord w;
    w.outer = gen();
    if (lx.accept('(')) {
      while (!lx.accept(')')) {
        w.slots.push_back(gen());
        lx.accept(',');
      }
    }
    out.add(w, c);
  }
  return out;
}

}  // namespace cyclic

#endif
