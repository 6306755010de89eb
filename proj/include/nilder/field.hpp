#ifndef NILDER_FIELD_HPP
#define NILDER_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nilder {

class Scalar;

/// Thrown when a field characteristic is neither 0 nor a supported prime.
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The active coefficient field: GF(p) for a prime p < 2^31, or the rationals (characteristic 0).
class Field {
 public:
  /// Validates the characteristic; composite, negative or oversized values throw FieldError.
  static Field make(std::int64_t characteristic);
  static Field rationals() { return Field(0); }

  std::uint32_t characteristic() const { return characteristic_; }
  bool is_rational() const { return characteristic_ == 0; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t value) const;
  Scalar from_fraction(std::int64_t num, std::int64_t den) const;

  /// Parses "a" or "a/b" (decimal, optional sign). Reduces modulo p for GF(p).
  Scalar parse(std::string_view text) const;

  /// "GF(5)" or "Q".
  std::string name() const;

  friend bool operator==(Field a, Field b) = default;

 private:
  friend class Scalar;
  explicit Field(std::uint32_t c) : characteristic_(c) {}
  std::uint32_t characteristic_;
};

bool is_prime(std::int64_t n);

/// An exact field element. GF(p) elements keep a residue in [0, p); rationals are kept
/// in lowest terms with a positive denominator, so equality is structural.
/// Rational arithmetic is overflow-checked and throws std::overflow_error instead of wrapping.
class Scalar {
 public:
  Field field() const;
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  /// Throws std::domain_error for zero.
  Scalar inverse() const;
  Scalar pow(std::uint64_t exponent) const;

  /// Decimal residue for GF(p); "num/den" (or "num" when den = 1) for rationals.
  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) = default;

 private:
  friend class Field;
  Scalar(std::uint32_t modulus, std::int64_t num, std::int64_t den)
      : modulus_(modulus), num_(num), den_(den) {}
  static Scalar make_rational(__int128 num, __int128 den);
  void check_compatible(const Scalar& other) const;

  std::uint32_t modulus_;
  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace nilder

#endif  // NILDER_FIELD_HPP
