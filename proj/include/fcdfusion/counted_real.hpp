#pragma once

#include <cmath>
#include <cstdint>

namespace fcdf {

// Tallies of floating-point work. A FLOP here is one multiply or divide;
// adds, subtractions, comparisons, floor and power-of-two scaling are free.
// Exponentiations are tracked separately.
struct FlopCount {
  std::uint64_t multiplies = 0;
  std::uint64_t divides = 0;
  std::uint64_t exponentiations = 0;

  std::uint64_t flops() const { return multiplies + divides; }

  FlopCount &operator+=(const FlopCount &o) {
    multiplies += o.multiplies;
    divides += o.divides;
    exponentiations += o.exponentiations;
    return *this;
  }
  friend FlopCount operator-(FlopCount a, const FlopCount &b) {
    a.multiplies -= b.multiplies;
    a.divides -= b.divides;
    a.exponentiations -= b.exponentiations;
    return a;
  }
  friend bool operator==(const FlopCount &, const FlopCount &) = default;
};

/// A double that counts the multiplies and divides performed on it.
///
/// The fusion kernels are templates over their scalar type; instantiating
/// them with CountedReal instead of double runs the exact same code while
/// the per-thread tally in `counter()` records every counted operation.
class CountedReal {
public:
  CountedReal() = default;
  CountedReal(double v) : v_(v) {}  // NOLINT: implicit lift mirrors double

  double value() const { return v_; }

  static FlopCount &counter() {
    thread_local FlopCount c;
    return c;
  }

  friend CountedReal operator+(CountedReal a, CountedReal b) { return a.v_ + b.v_; }
  friend CountedReal operator-(CountedReal a, CountedReal b) { return a.v_ - b.v_; }
  friend CountedReal operator-(CountedReal a) { return -a.v_; }
  friend CountedReal operator*(CountedReal a, CountedReal b) {
    ++counter().multiplies;
    return a.v_ * b.v_;
  }
  friend CountedReal operator/(CountedReal a, CountedReal b) {
    ++counter().divides;
    return a.v_ / b.v_;
  }
  CountedReal &operator+=(CountedReal o) { v_ += o.v_; return *this; }
  CountedReal &operator-=(CountedReal o) { v_ -= o.v_; return *this; }

  friend auto operator<=>(CountedReal a, CountedReal b) { return a.v_ <=> b.v_; }
  friend bool operator==(CountedReal a, CountedReal b) { return a.v_ == b.v_; }

  friend CountedReal floor(CountedReal a) { return std::floor(a.v_); }
  friend CountedReal pow(CountedReal a, double e) {
    ++counter().exponentiations;
    return std::pow(a.v_, e);
  }
  // Exact exponent adjustment, i.e. a floating-point shift.
  friend CountedReal ldexp(CountedReal a, int e) { return std::ldexp(a.v_, e); }

private:
  double v_ = 0.0;
};

inline double to_double(double x) { return x; }
inline double to_double(CountedReal x) { return x.value(); }

} // namespace fcdf
