#include "mgi/matrix.hpp"

#include <sstream>

namespace mgi {

namespace {

void check_index(std::uint32_t n, std::uint32_t i) {
  if (i < 1 || i > n)
    fail(errc::bad_index, "index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
}

// Determinant of the minor obtained by deleting row `di` and column `dj`
// (0-based internal coordinates), by cofactor expansion along the first
// remaining row. Matrix sizes here stay small (n <= 5 in practice).
RingElem minor_det(const Matrix& a, std::vector<std::uint32_t> rows,
                   std::vector<std::uint32_t> cols) {
  const RingSpec& R = a.ring();
  if (rows.size() == 1) return a.at(rows[0], cols[0]);
  RingElem acc = ring_zero(R);
  std::vector<std::uint32_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const RingElem& pivot = a.at(rows[0], cols[c]);
    if (is_zero(R, pivot)) continue;
    std::vector<std::uint32_t> sub_cols;
    sub_cols.reserve(cols.size() - 1);
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (k != c) sub_cols.push_back(cols[k]);
    RingElem term = ring_mul(R, pivot, minor_det(a, sub_rows, sub_cols));
    if (c % 2 == 1) term = ring_neg(R, term);
    acc = ring_add(R, acc, term);
  }
  return acc;
}

}  // namespace

std::size_t Matrix::hash() const {
  std::size_t h = std::hash<std::uint32_t>{}(n_);
  for (const RingElem& e : entries_)
    h = h * 1000003u + elem_hash(e);
  return h;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::uint32_t i = 1; i <= n_; ++i) {
    os << (i == 1 ? "[" : " [");
    for (std::uint32_t j = 1; j <= n_; ++j) {
      if (j > 1) os << " ";
      os << elem_to_string(spec_, at(i, j));
    }
    os << "]";
    if (i < n_) os << "\n";
  }
  os << "]";
  return os.str();
}

Matrix identity(const RingSpec& spec, std::uint32_t n) {
  Matrix m(spec, n);
  for (std::uint32_t i = 1; i <= n; ++i) m.set(i, i, ring_one(spec));
  return m;
}

Matrix transvection(const RingSpec& spec, std::uint32_t n, std::uint32_t i,
                    std::uint32_t j, const RingElem& alpha) {
  check_index(n, i);
  check_index(n, j);
  if (i == j) fail(errc::bad_index, "transvection requires i != j");
  Matrix m = identity(spec, n);
  m.set(i, j, alpha);
  return m;
}

Matrix diag_elem(const RingSpec& spec, std::uint32_t n, std::uint32_t i,
                 const RingElem& u) {
  check_index(n, i);
  if (!is_unit(spec, u))
    fail(errc::non_unit, "diagonal entry " + elem_to_string(spec, u) + " is not a unit");
  Matrix m = identity(spec, n);
  m.set(i, i, u);
  return m;
}

Matrix scalar_elem(const RingSpec& spec, std::uint32_t n, const RingElem& u) {
  if (!is_unit(spec, u))
    fail(errc::non_unit, "scalar " + elem_to_string(spec, u) + " is not a unit");
  Matrix m(spec, n);
  for (std::uint32_t i = 1; i <= n; ++i) m.set(i, i, u);
  return m;
}

Matrix diag_full(const RingSpec& spec, const std::vector<RingElem>& us) {
  Matrix m(spec, static_cast<std::uint32_t>(us.size()));
  for (std::uint32_t i = 1; i <= m.n(); ++i) {
    if (!is_unit(spec, us[i - 1]))
      fail(errc::non_unit,
           "diagonal entry " + elem_to_string(spec, us[i - 1]) + " is not a unit");
    m.set(i, i, us[i - 1]);
  }
  return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const RingSpec& R = a.ring();
  const std::uint32_t n = a.n();
  Matrix c(R, n);
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t k = 1; k <= n; ++k) {
      const RingElem& aik = a.at(i, k);
      if (is_zero(R, aik)) continue;
      for (std::uint32_t j = 1; j <= n; ++j) {
        const RingElem& bkj = b.at(k, j);
        if (is_zero(R, bkj)) continue;
        c.set(i, j, ring_add(R, c.at(i, j), ring_mul(R, aik, bkj)));
      }
    }
  return c;
}

Matrix mat_pow(const Matrix& a, std::uint64_t e) {
  Matrix acc = identity(a.ring(), a.n());
  Matrix base = a;
  while (e > 0) {
    if (e & 1) acc = mat_mul(acc, base);
    base = mat_mul(base, base);
    e >>= 1;
  }
  return acc;
}

RingElem det(const Matrix& a) {
  std::vector<std::uint32_t> all;
  for (std::uint32_t i = 1; i <= a.n(); ++i) all.push_back(i);
  return minor_det(a, all, all);
}

Matrix mat_inv(const Matrix& a) {
  const RingSpec& R = a.ring();
  const std::uint32_t n = a.n();
  RingElem d = det(a);
  if (!is_unit(R, d))
    fail(errc::not_invertible, "determinant " + elem_to_string(R, d) + " is not a unit");
  RingElem d_inv = ring_inv(R, d);
  Matrix inv(R, n);
  if (n == 1) {
    inv.set(1, 1, d_inv);
    return inv;
  }
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j) {
      std::vector<std::uint32_t> rows, cols;
      for (std::uint32_t k = 1; k <= n; ++k) {
        if (k != j) rows.push_back(k);  // adjugate: cofactor of (j, i)
        if (k != i) cols.push_back(k);
      }
      RingElem cof = minor_det(a, rows, cols);
      if ((i + j) % 2 == 1) cof = ring_neg(R, cof);
      inv.set(i, j, ring_mul(R, d_inv, cof));
    }
  return inv;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  return mat_mul(mat_mul(mat_inv(a), mat_inv(b)), mat_mul(a, b));
}

Matrix conjugate(const Matrix& a, const Matrix& b) {
  return mat_mul(mat_mul(mat_inv(b), a), b);
}

bool is_identity(const Matrix& a) {
  const RingSpec& R = a.ring();
  for (std::uint32_t i = 1; i <= a.n(); ++i)
    for (std::uint32_t j = 1; j <= a.n(); ++j) {
      if (i == j ? !is_one(R, a.at(i, j)) : !is_zero(R, a.at(i, j))) return false;
    }
  return true;
}

bool is_upper_unitriangular(const Matrix& a) {
  const RingSpec& R = a.ring();
  for (std::uint32_t i = 1; i <= a.n(); ++i) {
    if (!is_one(R, a.at(i, i))) return false;
    for (std::uint32_t j = 1; j < i; ++j)
      if (!is_zero(R, a.at(i, j))) return false;
  }
  return true;
}

bool is_diagonal(const Matrix& a) {
  const RingSpec& R = a.ring();
  for (std::uint32_t i = 1; i <= a.n(); ++i)
    for (std::uint32_t j = 1; j <= a.n(); ++j)
      if (i != j && !is_zero(R, a.at(i, j))) return false;
  return true;
}

bool is_scalar(const Matrix& a) {
  if (!is_diagonal(a)) return false;
  for (std::uint32_t i = 2; i <= a.n(); ++i)
    if (!(a.at(i, i) == a.at(1, 1))) return false;
  return true;
}

}  // namespace mgi
