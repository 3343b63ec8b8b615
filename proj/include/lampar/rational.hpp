#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lampar {

// Arbitrary-precision signed integer. Magnitude is little-endian base 2^32.
// Only the operations the exact-rational layer needs.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);
  static BigInt from_string(const std::string& digits);

  bool is_zero() const { return mag_.empty(); }
  bool is_negative() const { return negative_; }
  BigInt negated() const;
  BigInt abs() const;

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  // Truncated division; remainder has the dividend's sign.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);

  static int compare(const BigInt& a, const BigInt& b);
  friend bool operator==(const BigInt& a, const BigInt& b) { return compare(a, b) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return compare(a, b) != 0; }
  friend bool operator<(const BigInt& a, const BigInt& b) { return compare(a, b) < 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return compare(a, b) <= 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return compare(a, b) > 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return compare(a, b) >= 0; }

  static BigInt gcd(BigInt a, BigInt b);

  std::string to_string() const;

 private:
  static int compare_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  // Requires |a| >= |b|.
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  void trim();

  bool negative_ = false;
  std::vector<uint32_t> mag_;  // empty means zero
};

// Exact rational number, always normalized (reduced, positive denominator).
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}
  Rational(BigInt num, BigInt den);
  static Rational parse(const std::string& text);  // "7", "-3/4"

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  static int compare(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return compare(a, b) != 0; }
  friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }

  std::string to_string() const;  // "7" or "-3/4"

 private:
  void normalize();
  BigInt num_, den_;
};

// Rational extended with +infinity: the edge weights and path lengths of the
// shortest-path rows. Infinity absorbs addition and is maximal for min.
struct ExtRat {
  bool infinite = false;
  Rational value;

  static ExtRat inf() { return ExtRat{true, Rational()}; }
  static ExtRat of(Rational q) { return ExtRat{false, std::move(q)}; }

  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.infinite || b.infinite) return inf();
    return of(a.value + b.value);
  }
  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  static ExtRat min(const ExtRat& a, const ExtRat& b) {
    if (a.infinite) return b;
    if (b.infinite) return a;
    return a.value <= b.value ? a : b;
  }
  std::string to_string() const { return infinite ? "inf" : value.to_string(); }
};

// One row of the all-pairs-shortest-path matrix, tagged with the node it
// belongs to and the stage of the computation. Entries are optional: absent
// entries mean the row is a symbolic token only.
struct RowValue {
  int source = 0;
  int stage = 0;
  std::vector<ExtRat> entries;  // empty in symbolic mode

  bool numeric() const { return !entries.empty(); }
  friend bool operator==(const RowValue& a, const RowValue& b) {
    return a.source == b.source && a.stage == b.stage && a.entries == b.entries;
  }
  std::string tag() const {
    return "I" + std::to_string(source) + "(" + std::to_string(stage) + ")";
  }
};

}  // namespace lampar
