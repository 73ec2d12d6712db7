#include "mvph/core/chain.hpp"

#include <algorithm>
#include <sstream>

#include "mvph/core/error.hpp"

namespace mvph {

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw DataError("simplex with no vertices");
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i - 1] >= vertices_[i])
      throw DataError("simplex vertices must be strictly increasing: " + to_string());
}

Simplex Simplex::face(std::size_t i) const {
  std::vector<Vertex> out;
  out.reserve(vertices_.size() - 1);
  for (std::size_t k = 0; k < vertices_.size(); ++k)
    if (k != i) out.push_back(vertices_[k]);
  return Simplex(std::move(out), Unchecked{});
}

Simplex Simplex::extended(Vertex v) const {
  if (!vertices_.empty() && v <= vertices_.back())
    throw DataError("extension vertex must exceed the current maximum");
  std::vector<Vertex> out(vertices_);
  out.push_back(v);
  return Simplex(std::move(out), Unchecked{});
}

std::string Simplex::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < vertices_.size(); ++i) os << (i ? "," : "") << vertices_[i];
  os << ']';
  return os.str();
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (Vertex v : s.vertices()) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

Chain Chain::of(const Simplex& s, Field field, Coeff c) {
  Chain out(field, s.dim());
  out.add_term(s, c);
  return out;
}

Coeff Chain::coefficient(const Simplex& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? 0 : it->second;
}

void Chain::add_term(const Simplex& s, Coeff c) {
  if (s.dim() != dim_)
    throw DataError("simplex " + s.to_string() + " added to a chain of dimension " +
                    std::to_string(dim_));
  c %= field_.modulus();
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second = field_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

void Chain::check_compatible(const Chain& other) const {
  if (!(field_ == other.field_)) throw DataError("chains over different fields");
  if (dim_ != other.dim_)
    throw DataError("chain dimension mismatch: " + std::to_string(dim_) + " vs " +
                    std::to_string(other.dim_));
}

void Chain::axpy(Coeff c, const Chain& other) {
  check_compatible(other);
  c %= field_.modulus();
  if (c == 0) return;
  for (const auto& [s, v] : other.terms_) {
    const Coeff add = field_.mul(c, v);
    auto [it, inserted] = terms_.try_emplace(s, add);
    if (!inserted) {
      it->second = field_.add(it->second, add);
      if (it->second == 0) terms_.erase(it);
    }
  }
}

Chain& Chain::operator+=(const Chain& other) {
  axpy(1, other);
  return *this;
}

Chain& Chain::operator-=(const Chain& other) {
  axpy(field_.neg(1), other);
  return *this;
}

Chain Chain::scaled(Coeff c) const {
  Chain out(field_, dim_);
  out.axpy(c, *this);
  return out;
}

Chain chain_add(const Chain& a, const Chain& b) {
  Chain out = a;
  out += b;
  return out;
}

Chain chain_sub(const Chain& a, const Chain& b) {
  Chain out = a;
  out -= b;
  return out;
}

Chain chain_scale(const Chain& a, Coeff c) { return a.scaled(c); }

Chain boundary(const Simplex& s, const Field& field) {
  Chain out(field, s.dim() - 1);
  if (s.dim() == 0) return out;
  for (std::size_t i = 0; i < s.size(); ++i) out.add_term(s.face(i), field.sign(i));
  return out;
}

Chain boundary(const Chain& c) {
  Chain out(c.field(), c.dim() - 1);
  if (c.dim() <= 0) return out;
  const Field& f = c.field();
  for (const auto& [s, v] : c.terms())
    for (std::size_t i = 0; i < s.size(); ++i) out.add_term(s.face(i), f.mul(v, f.sign(i)));
  return out;
}

}  // namespace mvph
