#include "lampar/rational.hpp"

#include <algorithm>

namespace lampar {

BigInt::BigInt(long long v) {
  negative_ = v < 0;
  unsigned long long u = negative_ ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
  while (u != 0) {
    mag_.push_back(static_cast<uint32_t>(u & 0xffffffffu));
    u >>= 32;
  }
}

BigInt BigInt::from_string(const std::string& digits) {
  BigInt r;
  size_t i = 0;
  bool neg = false;
  if (i < digits.size() && (digits[i] == '-' || digits[i] == '+')) {
    neg = digits[i] == '-';
    ++i;
  }
  if (i == digits.size()) throw std::invalid_argument("empty integer literal");
  for (; i < digits.size(); ++i) {
    char c = digits[i];
    if (c < '0' || c > '9') throw std::invalid_argument("bad digit in integer literal");
    // r = r * 10 + (c - '0')
    uint64_t carry = static_cast<uint64_t>(c - '0');
    for (auto& limb : r.mag_) {
      uint64_t cur = static_cast<uint64_t>(limb) * 10 + carry;
      limb = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    if (carry) r.mag_.push_back(static_cast<uint32_t>(carry));
  }
  r.negative_ = neg && !r.mag_.empty();
  return r;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) negative_ = false;
}

BigInt BigInt::negated() const {
  BigInt r = *this;
  if (!r.mag_.empty()) r.negative_ = !r.negative_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.negative_ = false;
  return r;
}

int BigInt::compare_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r;
  r.reserve(std::max(a.size(), b.size()) + 1);
  uint64_t carry = 0;
  for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    uint64_t cur = carry;
    if (i < a.size()) cur += a[i];
    if (i < b.size()) cur += b[i];
    r.push_back(static_cast<uint32_t>(cur & 0xffffffffu));
    carry = cur >> 32;
  }
  if (carry) r.push_back(static_cast<uint32_t>(carry));
  return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r;
  r.reserve(a.size());
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t cur = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (cur < 0) {
      cur += (1ll << 32);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.push_back(static_cast<uint32_t>(cur));
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t cur = static_cast<uint64_t>(a[i]) * b[j] + r[i + j] + carry;
      r[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    size_t k = i + b.size();
    while (carry) {
      uint64_t cur = r[k] + carry;
      r[k] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  BigInt r;
  if (a.negative_ == b.negative_) {
    r.mag_ = BigInt::add_mag(a.mag_, b.mag_);
    r.negative_ = a.negative_;
  } else {
    int c = BigInt::compare_mag(a.mag_, b.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
      r.negative_ = a.negative_;
    } else {
      r.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
      r.negative_ = b.negative_;
    }
  }
  r.trim();
  return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + b.negated(); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  BigInt r;
  r.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
  r.negative_ = !r.mag_.empty() && (a.negative_ != b.negative_);
  return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  // Schoolbook binary long division on magnitudes.
  q = BigInt();
  r = BigInt();
  if (compare_mag(a.mag_, b.mag_) < 0) {
    r = a;
    return;
  }
  const size_t bits = a.mag_.size() * 32;
  std::vector<uint32_t> rem;
  std::vector<uint32_t> quo(a.mag_.size(), 0);
  BigInt babs = b.abs();
  for (size_t i = bits; i-- > 0;) {
    // rem = rem << 1 | bit_i(a)
    uint32_t carry = (a.mag_[i / 32] >> (i % 32)) & 1u;
    for (auto& limb : rem) {
      uint32_t next = limb >> 31;
      limb = (limb << 1) | carry;
      carry = next;
    }
    if (carry) rem.push_back(carry);
    if (compare_mag(rem, babs.mag_) >= 0) {
      rem = sub_mag(rem, babs.mag_);
      quo[i / 32] |= (1u << (i % 32));
    }
  }
  q.mag_ = std::move(quo);
  q.trim();
  r.mag_ = std::move(rem);
  r.trim();
  q.negative_ = !q.mag_.empty() && (a.negative_ != b.negative_);
  r.negative_ = !r.mag_.empty() && a.negative_;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return r;
}

int BigInt::compare(const BigInt& a, const BigInt& b) {
  if (a.negative_ != b.negative_) return a.negative_ ? -1 : 1;
  int c = compare_mag(a.mag_, b.mag_);
  return a.negative_ ? -c : c;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a.negative_ = false;
  b.negative_ = false;
  while (!b.is_zero()) {
    BigInt q, r;
    divmod(a, b, q, r);
    a = b;
    b = r;
  }
  return a;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  BigInt cur = abs();
  BigInt ten(10);
  while (!cur.is_zero()) {
    BigInt q, r;
    divmod(cur, ten, q, r);
    int digit = r.mag_.empty() ? 0 : static_cast<int>(r.mag_[0]);
    out.push_back(static_cast<char>('0' + digit));
    cur = q;
  }
  if (negative_) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_.is_negative()) {
    den_ = den_.negated();
    num_ = num_.negated();
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (g != BigInt(1)) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt::from_string(text), BigInt(1));
  return Rational(BigInt::from_string(text.substr(0, slash)),
                  BigInt::from_string(text.substr(slash + 1)));
}

bool Rational::is_integer() const { return den_ == BigInt(1); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

int Rational::compare(const Rational& a, const Rational& b) {
  return BigInt::compare(a.num_ * b.den_, b.num_ * a.den_);
}

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

}  // namespace lampar
