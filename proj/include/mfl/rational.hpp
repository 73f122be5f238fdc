#pragma once
#include <cstdint>
#include <numeric>
#include <string>

#include "mfl/error.hpp"

namespace mfl {

// Exact rational on int64. All hop counts and edge weights in this project
// are tiny powers of small integers (level caps keep every numerator and
// denominator far below 2^60), so int64 with __int128 intermediates is exact;
// the checked multiply turns any overflow into a hard error instead of a
// silent wrap.
struct Rat64 {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat64() = default;
  Rat64(std::int64_t n) : num(n), den(1) {}
  Rat64(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) fail_domain("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  static std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) fail_domain("rational overflow");
    return static_cast<std::int64_t>(v);
  }

  friend Rat64 operator*(const Rat64& a, const Rat64& b) {
    Rat64 r;
    r.num = checked(static_cast<__int128>(a.num) * b.num);
    r.den = checked(static_cast<__int128>(a.den) * b.den);
    r.normalize();
    return r;
  }
  friend Rat64 operator/(const Rat64& a, const Rat64& b) {
    if (b.num == 0) fail_domain("rational division by zero");
    Rat64 r;
    r.num = checked(static_cast<__int128>(a.num) * b.den);
    r.den = checked(static_cast<__int128>(a.den) * b.num);
    r.normalize();
    return r;
  }
  friend Rat64 operator+(const Rat64& a, const Rat64& b) {
    Rat64 r;
    r.num = checked(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den);
    r.den = checked(static_cast<__int128>(a.den) * b.den);
    r.normalize();
    return r;
  }
  friend Rat64 operator-(const Rat64& a, const Rat64& b) {
    Rat64 r;
    r.num = checked(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den);
    r.den = checked(static_cast<__int128>(a.den) * b.den);
    r.normalize();
    return r;
  }

  // Exact comparison via cross-multiplication; denominators are positive.
  friend bool operator<(const Rat64& a, const Rat64& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rat64& a, const Rat64& b) { return b < a; }
  friend bool operator<=(const Rat64& a, const Rat64& b) { return !(b < a); }
  friend bool operator>=(const Rat64& a, const Rat64& b) { return !(a < b); }
  friend bool operator==(const Rat64& a, const Rat64& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat64& a, const Rat64& b) { return !(a == b); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

inline Rat64 rat_max(const Rat64& a, const Rat64& b) { return a < b ? b : a; }
inline Rat64 rat_min(const Rat64& a, const Rat64& b) { return a < b ? a : b; }

// A rational extended with an "infinite" point, used for the distortion of
// non-injective maps.
struct ExtRat {
  bool infinite = false;
  Rat64 value;

  static ExtRat inf() { ExtRat e; e.infinite = true; return e; }
  static ExtRat finite(Rat64 v) { ExtRat e; e.value = v; return e; }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return a == b || a < b; }

  std::string str() const { return infinite ? "infinite" : value.str(); }
};

}  // namespace mfl
