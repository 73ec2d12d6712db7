#include "mvph/core/field.hpp"

#include <string>

#include "mvph/core/error.hpp"

namespace mvph {

namespace {

constexpr Coeff kInverseTableLimit = 1u << 16;

Coeff pow_mod(Coeff base, Coeff exp, Coeff p) {
  std::uint64_t result = 1, b = base % p;
  while (exp > 0) {
    if (exp & 1) result = (result * b) % p;
    b = (b * b) % p;
    exp >>= 1;
  }
  return static_cast<Coeff>(result);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(Coeff p) : p_(p) {
  if (p > kMaxModulus || !is_prime(p))
    throw DataError("field modulus " + std::to_string(p) + " is not a supported prime");
  if (p < kInverseTableLimit) {
    std::vector<Coeff> table(p, 0);
    if (p > 1) table[1] = 1;
    // inv(a) = -(p / a) * inv(p mod a)
    for (Coeff a = 2; a < p; ++a)
      table[a] = static_cast<Coeff>(
          (p - (std::uint64_t{p / a} * table[p % a]) % p) % p);
    inverses_ = std::make_shared<const std::vector<Coeff>>(std::move(table));
  }
}

Coeff Field::inv(Coeff a) const {
  if (a == 0) throw DataError("inverse of zero in F_" + std::to_string(p_));
  if (inverses_) return (*inverses_)[a];
  return pow_mod(a, p_ - 2, p_);
}

Coeff Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Coeff>(r);
}

FieldElement FieldElement::inverse() const {
  return FieldElement(field_, field_.inv(value_));
}

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (!(a.field() == b.field())) throw DataError("field elements over different moduli");
}
}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return FieldElement(a.field_, a.field_.add(a.value_, b.value_));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return FieldElement(a.field_, a.field_.sub(a.value_, b.value_));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return FieldElement(a.field_, a.field_.mul(a.value_, b.value_));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return FieldElement(a.field_, a.field_.mul(a.value_, a.field_.inv(b.value_)));
}

FieldElement FieldElement::operator-() const {
  return FieldElement(field_, field_.neg(value_));
}

}  // namespace mvph
