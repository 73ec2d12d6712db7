#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace mvph {

using Coeff = std::uint32_t;

// Arithmetic in the prime field F_p. Values are residues in [0, p).
// Copies are cheap; the inverse table (small p only) is shared.
class Field {
 public:
  static constexpr Coeff kMaxModulus = (Coeff{1} << 31) - 1;

  explicit Field(Coeff p = 2);

  Coeff modulus() const { return p_; }

  Coeff add(Coeff a, Coeff b) const {
    Coeff s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const { return a >= b ? a - b : a + p_ - b; }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>((std::uint64_t{a} * b) % p_);
  }
  // Throws DataError on a == 0.
  Coeff inv(Coeff a) const;
  Coeff from_int(std::int64_t v) const;
  // (-1)^i
  Coeff sign(std::size_t i) const { return (i & 1) ? neg(1) : 1; }

  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  Coeff p_;
  std::shared_ptr<const std::vector<Coeff>> inverses_;
};

bool is_prime(std::uint64_t n);

// A residue tagged with its field; the value type for user-facing scalar
// arithmetic. Bulk code works on raw Coeff with a Field in hand.
class FieldElement {
 public:
  FieldElement(Field field, std::int64_t value)
      : field_(field), value_(field.from_int(value)) {}

  Coeff value() const { return value_; }
  const Field& field() const { return field_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement inverse() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  Field field_;
  Coeff value_;
};

}  // namespace mvph
