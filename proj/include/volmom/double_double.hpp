#pragma once

// Unevaluated sum hi + lo of two doubles with |lo| <= ulp(hi)/2, giving about
// 106 significand bits. Arithmetic follows the error-free transformations of
// Dekker and Knuth (two_sum, two_prod). Only what the interior-point
// iteration and Eigen's dense decompositions use is provided.

#include <Eigen/Core>
#include <cmath>
#include <concepts>
#include <limits>
#include <ostream>

namespace volmom {

class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double v) : hi_(v) {}  // NOLINT: implicit like a builtin float
  template <std::integral I>
  constexpr DoubleDouble(I v) : hi_(static_cast<double>(v)) {}  // NOLINT
  constexpr DoubleDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  explicit constexpr operator double() const { return hi_ + lo_; }
  explicit operator long() const { return static_cast<long>(hi_) + static_cast<long>(lo_); }
  explicit operator int() const { return static_cast<int>(static_cast<long>(*this)); }

  friend DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi_, -a.lo_}; }
  friend DoubleDouble operator+(const DoubleDouble& a) { return a; }

  [[gnu::always_inline]] friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    double s1, s2, t1, t2;
    two_sum(a.hi_, b.hi_, s1, s2);
    if (!std::isfinite(s1)) [[unlikely]]
      return {s1, 0.0};
    two_sum(a.lo_, b.lo_, t1, t2);
    s2 += t1;
    quick_two_sum(s1, s2, s1, s2);
    s2 += t2;
    quick_two_sum(s1, s2, s1, s2);
    return {s1, s2};
  }
  [[gnu::always_inline]] friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

  [[gnu::always_inline]] friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
    const double p1 = a.hi_ * b.hi_;
    if (!std::isfinite(p1)) [[unlikely]]
      return {p1, 0.0};
    double p2 = two_prod_error(a.hi_, b.hi_, p1);
    p2 += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    double s, e;
    quick_two_sum(p1, p2, s, e);
    return {s, e};
  }

  friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
    const double q1 = a.hi_ / b.hi_;
    if (!std::isfinite(q1) || !std::isfinite(b.hi_)) return {q1, 0.0};
    DoubleDouble r = a - b * q1;
    const double q2 = r.hi_ / b.hi_;
    r = r - b * q2;
    const double q3 = r.hi_ / b.hi_;
    double s, e;
    quick_two_sum(q1, q2, s, e);
    return DoubleDouble(s, e) + q3;
  }

  DoubleDouble& operator+=(const DoubleDouble& b) { return *this = *this + b; }
  DoubleDouble& operator-=(const DoubleDouble& b) { return *this = *this - b; }
  DoubleDouble& operator*=(const DoubleDouble& b) { return *this = *this * b; }
  DoubleDouble& operator/=(const DoubleDouble& b) { return *this = *this / b; }

  friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend bool operator!=(const DoubleDouble& a, const DoubleDouble& b) { return !(a == b); }
  friend bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_);
  }
  friend bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }
  friend bool operator<=(const DoubleDouble& a, const DoubleDouble& b) { return !(b < a); }
  friend bool operator>=(const DoubleDouble& a, const DoubleDouble& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const DoubleDouble& a) {
    return os << static_cast<double>(a);
  }

 private:
  [[gnu::always_inline]] static void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
  }
  // Exact a*b - p: a hardware fma when available, Dekker's splitting otherwise.
  [[gnu::always_inline]] static double two_prod_error(double a, double b, double p) {
#ifdef __FP_FAST_FMA
    return std::fma(a, b, -p);
#else
    constexpr double split = 134217729.0;  // 2^27 + 1
    const double ta = split * a, tb = split * b;
    const double ah = ta - (ta - a), al = a - ah;
    const double bh = tb - (tb - b), bl = b - bh;
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl;
#endif
  }
  [[gnu::always_inline]] static void quick_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

inline DoubleDouble abs(const DoubleDouble& a) { return a.hi() < 0.0 ? -a : a; }
inline DoubleDouble fabs(const DoubleDouble& a) { return abs(a); }

inline DoubleDouble sqrt(const DoubleDouble& a) {
  if (a.hi() <= 0.0) return a.hi() == 0.0 ? DoubleDouble(0.0) : DoubleDouble(std::nan(""));
  if (!std::isfinite(a.hi())) return a;
  // One Newton step from the double square root.
  const double x = 1.0 / std::sqrt(a.hi());
  const double ax = a.hi() * x;
  const DoubleDouble ax2 = DoubleDouble(ax) * DoubleDouble(ax);
  return DoubleDouble(ax) + (a - ax2).hi() * (x * 0.5);
}

inline bool isfinite(const DoubleDouble& a) { return std::isfinite(a.hi()); }
inline bool isnan(const DoubleDouble& a) { return std::isnan(a.hi()); }
inline bool isinf(const DoubleDouble& a) { return std::isinf(a.hi()); }

// Double accuracy is enough where these appear (step heuristics, logging).
inline DoubleDouble pow(const DoubleDouble& a, const DoubleDouble& b) {
  return std::pow(static_cast<double>(a), static_cast<double>(b));
}
inline DoubleDouble exp(const DoubleDouble& a) { return std::exp(static_cast<double>(a)); }
inline DoubleDouble log(const DoubleDouble& a) { return std::log(static_cast<double>(a)); }

inline DoubleDouble floor(const DoubleDouble& a) {
  const double f = std::floor(a.hi());
  if (f != a.hi()) return f;
  return DoubleDouble(f) + std::floor(a.lo());
}
inline DoubleDouble ceil(const DoubleDouble& a) { return -floor(-a); }

}  // namespace volmom

template <>
class std::numeric_limits<volmom::DoubleDouble> {
 public:
  static constexpr bool is_specialized = true;
  static constexpr bool is_signed = true;
  static constexpr bool is_integer = false;
  static constexpr bool is_exact = false;
  static constexpr bool has_infinity = true;
  static constexpr bool has_quiet_NaN = true;
  static constexpr int digits = 106;
  static constexpr int digits10 = 31;
  static constexpr int max_digits10 = 33;
  static constexpr int radix = 2;
  static constexpr int min_exponent = std::numeric_limits<double>::min_exponent + 53;
  static constexpr int max_exponent = std::numeric_limits<double>::max_exponent;
  static constexpr volmom::DoubleDouble epsilon() { return 4.93038065763132e-32; }
  static constexpr volmom::DoubleDouble min() { return 2.0041683600089728e-292; }
  static constexpr volmom::DoubleDouble max() { return std::numeric_limits<double>::max(); }
  static constexpr volmom::DoubleDouble lowest() { return -std::numeric_limits<double>::max(); }
  static constexpr volmom::DoubleDouble infinity() {
    return std::numeric_limits<double>::infinity();
  }
  static constexpr volmom::DoubleDouble quiet_NaN() {
    return std::numeric_limits<double>::quiet_NaN();
  }
  static constexpr volmom::DoubleDouble round_error() { return 0.5; }
  static constexpr volmom::DoubleDouble denorm_min() { return min(); }
};

namespace Eigen {

template <>
struct NumTraits<volmom::DoubleDouble> : GenericNumTraits<volmom::DoubleDouble> {
  using Real = volmom::DoubleDouble;
  using NonInteger = volmom::DoubleDouble;
  using Literal = volmom::DoubleDouble;
  using Nested = volmom::DoubleDouble;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 20,
    MulCost = 10,
  };
  static inline Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static inline Real dummy_precision() { return 1e-28; }
  static inline Real highest() { return std::numeric_limits<Real>::max(); }
  static inline Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static inline Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static inline Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static inline int digits10() { return 31; }
  static inline int digits() { return 106; }
};

}  // namespace Eigen
