#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mvph/core/field.hpp"
#include "mvph/core/point_cloud.hpp"

namespace mvph {

// An oriented simplex: a strictly increasing tuple of global point indices.
class Simplex {
 public:
  Simplex() = default;
  explicit Simplex(std::vector<Vertex> vertices);
  Simplex(std::initializer_list<Vertex> vertices)
      : Simplex(std::vector<Vertex>(vertices)) {}

  int dim() const { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t size() const { return vertices_.size(); }
  std::span<const Vertex> vertices() const { return vertices_; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }
  Vertex back() const { return vertices_.back(); }

  // The face obtained by deleting the i-th vertex.
  Simplex face(std::size_t i) const;
  // Appends a vertex larger than every current one.
  Simplex extended(Vertex v) const;

  std::string to_string() const;

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
  friend bool operator==(const Simplex&, const Simplex&) = default;

 private:
  struct Unchecked {};
  Simplex(std::vector<Vertex> vertices, Unchecked) : vertices_(std::move(vertices)) {}

  std::vector<Vertex> vertices_;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

// A homogeneous formal sum of n-simplices with nonzero coefficients in F_p.
class Chain {
 public:
  using Terms = std::map<Simplex, Coeff>;

  Chain(Field field, int dim) : field_(field), dim_(dim) {}
  static Chain of(const Simplex& s, Field field, Coeff c = 1);

  const Field& field() const { return field_; }
  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  Coeff coefficient(const Simplex& s) const;

  // Adds c * s; the simplex dimension must match.
  void add_term(const Simplex& s, Coeff c);
  // this += c * other
  void axpy(Coeff c, const Chain& other);

  Chain& operator+=(const Chain& other);
  Chain& operator-=(const Chain& other);
  Chain scaled(Coeff c) const;

  friend bool operator==(const Chain& a, const Chain& b) {
    return a.field_ == b.field_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const Chain& other) const;

  Field field_;
  int dim_;
  Terms terms_;
};

Chain chain_add(const Chain& a, const Chain& b);
Chain chain_sub(const Chain& a, const Chain& b);
Chain chain_scale(const Chain& a, Coeff c);

// Alternating-sign face sum; the boundary of a vertex is the zero chain of
// dimension -1.
Chain boundary(const Simplex& s, const Field& field);
Chain boundary(const Chain& c);

}  // namespace mvph
