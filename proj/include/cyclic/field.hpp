#ifndef CYCLIC_FIELD_HPP
#define CYCLIC_FIELD_HPP

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "error.hpp"

namespace cyclic {

/** \brief Exact rational number. */
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Accepts "a", "-a", "a/b". A zero denominator is a parse error.
  static Rational parse(std::string_view s) {
    std::string str(s);
    auto slash = str.find('/');
    mpz_class num, den(1);
    if (!valid_int(str.substr(0, slash)) ||
        (slash != std::string::npos && !valid_int(str.substr(slash + 1))))
      throw Error(Errc::parse, "bad rational '" + str + "'");
    num.set_str(str.substr(0, slash), 10);
    if (slash != std::string::npos) den.set_str(str.substr(slash + 1), 10);
    if (den == 0) throw Error(Errc::parse, "zero denominator in '" + str + "'");
    return Rational(mpq_class(num, den));
  }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  std::string to_string() const { return q_.get_str(); }
  const mpq_class& value() const { return q_; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

  static constexpr const char* field_name() { return "Q"; }

 private:
  static bool valid_int(const std::string& s) {
    size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  }

  mpq_class q_;
};

/** \brief Element of the prime field F_p; the prime is process-wide. */
class Zp {
 public:
  Zp() = default;
  Zp(long n) {
    long p = static_cast<long>(modulus());
    long r = n % p;
    v_ = static_cast<uint64_t>(r < 0 ? r + p : r);
  }

  static uint64_t modulus() { return modulus_.load(std::memory_order_relaxed); }
  static void set_modulus(uint64_t p) {
    if (p < 2 || p >= (uint64_t(1) << 31)) throw Error(Errc::parse, "prime out of range");
    for (uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw Error(Errc::parse, std::to_string(p) + " is not prime");
    modulus_.store(p, std::memory_order_relaxed);
  }

  /// Accepts integers and "a/b" with b invertible mod p.
  static Zp parse(std::string_view s) {
    Rational r = Rational::parse(s);
    mpz_class p(static_cast<unsigned long>(modulus()));
    mpz_class num = r.value().get_num() % p, den = r.value().get_den() % p;
    if (num < 0) num += p;
    if (den == 0) throw Error(Errc::parse, "denominator divisible by p in '" + std::string(s) + "'");
    Zp a, b;
    a.v_ = num.get_ui();
    b.v_ = den.get_ui();
    return a / b;
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  uint64_t value() const { return v_; }
  std::string to_string() const { return std::to_string(v_); }

  Zp& operator+=(const Zp& o) { v_ = (v_ + o.v_) % modulus(); return *this; }
  Zp& operator-=(const Zp& o) { v_ = (v_ + modulus() - o.v_) % modulus(); return *this; }
  Zp& operator*=(const Zp& o) { v_ = (v_ * o.v_) % modulus(); return *this; }
  Zp& operator/=(const Zp& o) { return *this *= o.inverse(); }
  friend Zp operator+(Zp a, const Zp& b) { return a += b; }
  friend Zp operator-(Zp a, const Zp& b) { return a -= b; }
  friend Zp operator*(Zp a, const Zp& b) { return a *= b; }
  friend Zp operator/(Zp a, const Zp& b) { return a /= b; }
  Zp operator-() const { Zp r; r.v_ = v_ ? modulus() - v_ : 0; return r; }
  friend bool operator==(const Zp& a, const Zp& b) { return a.v_ == b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const Zp& r) { return os << r.v_; }

  Zp inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero");
    uint64_t p = modulus(), r = 1, b = v_, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    Zp z;
    z.v_ = r;
    return z;
  }

  static constexpr const char* field_name() { return "Fp"; }

 private:
  uint64_t v_ = 0;
  static inline std::atomic<uint64_t> modulus_{2};
};

/// (-1)^e as a scalar.
template <class K>
K sign_of(long e) {
  return (e % 2 == 0) ? K(1) : K(-1);
}

/// Field description as written in input files: "Q" or "Fp:<p>".
struct FieldSpec {
  bool prime = false;
  uint64_t p = 0;

  static FieldSpec parse(std::string_view s) {
    if (s == "Q") return {};
    if (s.substr(0, 3) == "Fp:") {
      FieldSpec f;
      f.prime = true;
      try {
        f.p = std::stoull(std::string(s.substr(3)));
      } catch (...) {
        throw Error(Errc::parse, "bad field '" + std::string(s) + "'");
      }
      bool ok = f.p >= 2 && f.p < (uint64_t(1) << 31);
      for (uint64_t d = 2; ok && d * d <= f.p; ++d) ok = f.p % d != 0;
      if (!ok) throw Error(Errc::parse, "bad field '" + std::string(s) + "': modulus must be a prime below 2^31");
      return f;
    }
    throw Error(Errc::parse, "unknown field '" + std::string(s) + "'");
  }
  std::string to_string() const { return prime ? "Fp:" + std::to_string(p) : "Q"; }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

}  // namespace cyclic

#endif
