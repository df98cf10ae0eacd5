#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgi/ring.hpp"

namespace mgi {

// Square matrix over a RingSpec. Row-major storage; public indices are 1-based.
class Matrix {
 public:
  Matrix() = default;
  Matrix(RingSpec spec, std::uint32_t n)
      : spec_(spec), n_(n), entries_(std::size_t{n} * n, ring_zero(spec)) {}

  const RingSpec& ring() const { return spec_; }
  std::uint32_t n() const { return n_; }

  const RingElem& at(std::uint32_t i, std::uint32_t j) const {
    return entries_[idx(i, j)];
  }
  void set(std::uint32_t i, std::uint32_t j, RingElem v) {
    entries_[idx(i, j)] = std::move(v);
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::size_t idx(std::uint32_t i, std::uint32_t j) const {
    return std::size_t{i - 1} * n_ + (j - 1);
  }
  RingSpec spec_;
  std::uint32_t n_ = 0;
  std::vector<RingElem> entries_;
};

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const { return m.hash(); }
};

Matrix identity(const RingSpec& spec, std::uint32_t n);

// I + alpha * e_{ij}; requires i != j (BadIndex otherwise).
Matrix transvection(const RingSpec& spec, std::uint32_t n, std::uint32_t i,
                    std::uint32_t j, const RingElem& alpha);

// d_i(u): identity with entry (i,i) = u; u must be a unit (NonUnit).
Matrix diag_elem(const RingSpec& spec, std::uint32_t n, std::uint32_t i,
                 const RingElem& u);

// u * I; u must be a unit.
Matrix scalar_elem(const RingSpec& spec, std::uint32_t n, const RingElem& u);

// diag(u_1, ..., u_n); every u_i must be a unit.
Matrix diag_full(const RingSpec& spec, const std::vector<RingElem>& us);

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_pow(const Matrix& a, std::uint64_t e);

// Inverse via the adjugate; valid over any commutative ring, requires det to
// be a unit (NotInvertible otherwise).
Matrix mat_inv(const Matrix& a);

RingElem det(const Matrix& a);

// [a, b] = a^{-1} b^{-1} a b.
Matrix commutator(const Matrix& a, const Matrix& b);

// a conjugated by b: b^{-1} a b.
Matrix conjugate(const Matrix& a, const Matrix& b);

bool is_identity(const Matrix& a);
bool is_upper_unitriangular(const Matrix& a);
bool is_diagonal(const Matrix& a);
bool is_scalar(const Matrix& a);

}  // namespace mgi
