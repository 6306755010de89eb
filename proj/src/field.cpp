#include "nilder/field.hpp"

#include <charconv>
#include <limits>
#include <numeric>

namespace nilder {

namespace {

constexpr std::int64_t kMaxModulus = std::int64_t{1} << 31;

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto begin = text.data();
  auto end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) {
    throw std::invalid_argument("malformed field element '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

Field Field::make(std::int64_t characteristic) {
  if (characteristic == 0) return Field(0);
  if (characteristic < 0) {
    throw FieldError("negative characteristic " + std::to_string(characteristic));
  }
  if (characteristic >= kMaxModulus) {
    throw FieldError("characteristic " + std::to_string(characteristic) + " exceeds 2^31");
  }
  if (!is_prime(characteristic)) {
    throw FieldError("characteristic " + std::to_string(characteristic) +
                     " is not prime (composite characteristic)");
  }
  return Field(static_cast<std::uint32_t>(characteristic));
}

Scalar Field::zero() const { return Scalar(characteristic_, 0, 1); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(std::int64_t value) const {
  if (characteristic_ == 0) return Scalar(0, value, 1);
  std::int64_t r = value % static_cast<std::int64_t>(characteristic_);
  if (r < 0) r += characteristic_;
  return Scalar(characteristic_, r, 1);
}

Scalar Field::from_fraction(std::int64_t num, std::int64_t den) const {
  if (den == 0) throw std::domain_error("zero denominator");
  if (characteristic_ == 0) {
    Scalar s = Scalar::make_rational(num, den);
    return s;
  }
  return from_int(num) / from_int(den);
}

Scalar Field::parse(std::string_view text) const {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_int(parse_integer(text, text));
  auto num = parse_integer(text.substr(0, slash), text);
  auto den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return from_fraction(num, den);
}

std::string Field::name() const {
  return characteristic_ == 0 ? "Q" : "GF(" + std::to_string(characteristic_) + ")";
}

Field Scalar::field() const { return Field(modulus_); }

Scalar Scalar::make_rational(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr __int128 lo = std::numeric_limits<std::int64_t>::min() + 1;
  constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return Scalar(0, static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

void Scalar::check_compatible(const Scalar& other) const {
  if (modulus_ != other.modulus_) {
    throw std::invalid_argument("arithmetic between elements of different fields");
  }
}

Scalar Scalar::inverse() const {
  if (num_ == 0) throw std::domain_error("division by zero: inverse of 0");
  if (modulus_ == 0) return make_rational(den_, num_);
  // Fermat: a^(p-2) = a^-1.
  return pow(modulus_ - 2);
}

Scalar Scalar::pow(std::uint64_t exponent) const {
  Scalar result = field().one();
  Scalar base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

std::string Scalar::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::operator-() const {
  if (modulus_ == 0) return Scalar(0, -num_, den_);
  return Scalar(modulus_, num_ == 0 ? 0 : modulus_ - num_, 1);
}

Scalar& Scalar::operator+=(const Scalar& other) {
  check_compatible(other);
  if (modulus_ != 0) {
    num_ = (num_ + other.num_) % modulus_;
    return *this;
  }
  if (den_ == 1 && other.den_ == 1) {
    std::int64_t sum;
    if (!__builtin_add_overflow(num_, other.num_, &sum)) {
      num_ = sum;
      return *this;
    }
  }
  *this = make_rational(static_cast<__int128>(num_) * other.den_ +
                            static_cast<__int128>(other.num_) * den_,
                        static_cast<__int128>(den_) * other.den_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
  check_compatible(other);
  if (modulus_ != 0) {
    num_ = static_cast<std::int64_t>(static_cast<std::uint64_t>(num_) *
                                     static_cast<std::uint64_t>(other.num_) % modulus_);
    return *this;
  }
  *this = make_rational(static_cast<__int128>(num_) * other.num_,
                        static_cast<__int128>(den_) * other.den_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  check_compatible(other);
  return *this *= other.inverse();
}

}  // namespace nilder
