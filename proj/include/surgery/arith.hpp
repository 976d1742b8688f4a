#pragma once

// Exact arithmetic kernel: Hirzebruch-Jung continued fractions of p^2/(pq-1),
// lens-space labels, fraction-free determinants and the Smith normal form.

#include "surgery/integer.hpp"

#include <span>
#include <string>
#include <vector>

namespace surgery {

/// Hirzebruch-Jung expansion p^2/(pq-1) = [b_k, ..., b_1], every b_i >= 2.
/// `entries` is stored leftmost first, i.e. entries[0] = b_k.
struct CFrac {
  std::vector<int> entries;
  int p = 0;
  int q = 0;

  [[nodiscard]] std::size_t length() const { return entries.size(); }
  friend bool operator==(const CFrac&, const CFrac&) = default;
};

/// Lens space L(order, twist); the twist is kept as the least non-negative
/// residue modulo the order.
struct LensLabel {
  Integer order;
  Integer twist;

  /// The representative in (-order, 0], the form used when printing labels.
  [[nodiscard]] Integer negative_twist() const;
  /// "L(93025, -5184)".
  [[nodiscard]] std::string str() const;
  friend bool operator==(const LensLabel&, const LensLabel&) = default;
};

/// Throws std::invalid_argument unless p > q > 0 and gcd(p, q) = 1.
void require_coprime_pair(int p, int q);

CFrac cfrac_expand(int p, int q);

/// b_k - 1/(b_{k-1} - 1/(... - 1/b_1)); throws std::invalid_argument on an
/// empty list or an entry below 2.
Rational cfrac_eval(std::span<const int> entries);

LensLabel lens_label(int p, int q);

/// Compresses runs: {18, 19, 2, 2, 2} -> "18, 19, 2^3".
std::string run_length_string(std::span<const int> values);

// ---------------------------------------------------------------------------
// Dense exact linear algebra.

/// Determinant by Bareiss fraction-free elimination (exact for integer
/// scalars, including int64_t when the caller knows the minors fit).
template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return Scalar(1);
  Scalar sign(1);
  Scalar prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == Scalar(0)) {
      Eigen::Index swap = k + 1;
      while (swap < n && m(swap, k) == Scalar(0)) ++swap;
      if (swap == n) return Scalar(0);
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Leading principal minors det(M[0..i, 0..i]) for i = 0..n-1.
/// Uses the three-term continuant recurrence when M is tridiagonal and
/// Bareiss elimination otherwise.
std::vector<Integer> leading_minors(const IntMatrix& m);

bool is_symmetric(const IntMatrix& m);
bool is_tridiagonal(const IntMatrix& m);

/// Adjugate of a symmetric tridiagonal matrix together with its determinant,
/// from the forward/backward continuants. adj * m = det * I.
struct TridiagonalInverse {
  Integer det;
  IntMatrix adjugate;
};
TridiagonalInverse tridiagonal_inverse(const IntMatrix& m);

// ---------------------------------------------------------------------------
// Smith normal form.

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...,
/// all d_i >= 0. Pivoting is deterministic: the smallest-magnitude nonzero
/// entry of the remaining block, first in row-major order.
struct SmithForm {
  IntMatrix left;   // U
  IntMatrix diag;   // D
  IntMatrix right;  // V
  Eigen::Index rank = 0;

  [[nodiscard]] std::vector<Integer> invariant_factors() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Cokernel Z^n / M Z^n of a nondegenerate square matrix, written as a sum of
/// cyclic groups Z/d_i with d_i > 1, plus the projection of integer vectors.
class SmithCokernel {
 public:
  explicit SmithCokernel(const IntMatrix& m);

  [[nodiscard]] const std::vector<Integer>& factors() const { return factors_; }
  /// Order of the cokernel (product of the factors).
  [[nodiscard]] Integer order() const;
  /// Residues of v, one per factor, each in [0, d_i).
  [[nodiscard]] std::vector<Integer> project(const IntVector& v) const;
  /// Row i of U restricted to the nontrivial factors: project(v)[i] = row(i).v mod d_i.
  [[nodiscard]] const IntMatrix& projection() const { return projection_; }
  /// "Z/93025", "Z/2 + Z/4", or "0".
  [[nodiscard]] std::string str() const;

 private:
  std::vector<Integer> factors_;
  IntMatrix projection_;
};

SmithCokernel smith_cokernel(const IntMatrix& m);

/// Basis (as columns) of the integer kernel {x in Z^n : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

}  // namespace surgery
