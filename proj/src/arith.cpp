#include "surgery/arith.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace surgery {

Integer LensLabel::negative_twist() const { return twist.is_zero() ? twist : twist - order; }

std::string LensLabel::str() const { return "L(" + order.str() + ", " + negative_twist().str() + ")"; }

void require_coprime_pair(int p, int q) {
  if (!(p > q && q > 0)) {
    throw std::invalid_argument("expected p > q > 0, got (" + std::to_string(p) + ", " + std::to_string(q) + ")");
  }
  if (std::gcd(p, q) != 1) {
    throw std::invalid_argument("p and q must be coprime, got (" + std::to_string(p) + ", " + std::to_string(q) + ")");
  }
}

CFrac cfrac_expand(int p, int q) {
  require_coprime_pair(p, q);
  CFrac out{.entries = {}, .p = p, .q = q};
  // a/d walks through the tail values of the expansion; ceil keeps every entry >= 2.
  std::int64_t a = std::int64_t{p} * p;
  std::int64_t d = std::int64_t{p} * q - 1;
  while (d != 0) {
    const std::int64_t b = (a + d - 1) / d;
    out.entries.push_back(static_cast<int>(b));
    const std::int64_t next = b * d - a;
    a = d;
    d = next;
  }
  return out;
}

Rational cfrac_eval(std::span<const int> entries) {
  if (entries.empty()) throw std::invalid_argument("cfrac_eval of an empty list");
  for (int b : entries) {
    if (b < 2) throw std::invalid_argument("continued fraction entry " + std::to_string(b) + " is below 2");
  }
  Rational x(entries.back());
  for (auto it = entries.rbegin() + 1; it != entries.rend(); ++it) {
    x = Rational(*it) - Rational(1) / x;
  }
  return x;
}

LensLabel lens_label(int p, int q) {
  require_coprime_pair(p, q);
  const Integer order = Integer(p) * p;
  return LensLabel{order, mod(Integer(1) - Integer(p) * q, order)};
}

std::string run_length_string(std::span<const int> values) {
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < values.size()) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    if (!first) os << ", ";
    first = false;
    const std::size_t run = j - i;
    // Runs of length 2 print both entries; the ^ form is reserved for longer runs.
    if (run >= 3) {
      os << values[i] << '^' << run;
    } else {
      for (std::size_t r = 0; r < run; ++r) os << (r ? ", " : "") << values[i];
    }
    i = j;
  }
  return os.str();
}

bool is_symmetric(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

bool is_tridiagonal(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if ((i > j + 1 || j > i + 1) && !m(i, j).is_zero()) return false;
  return true;
}

std::vector<Integer> leading_minors(const IntMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("leading minors of a non-square matrix");
  std::vector<Integer> minors;
  minors.reserve(static_cast<std::size_t>(n));
  if (is_tridiagonal(m)) {
    Integer before(1);
    Integer current(1);
    for (Eigen::Index i = 0; i < n; ++i) {
      Integer next = m(i, i) * current;
      if (i > 0) next -= m(i, i - 1) * m(i - 1, i) * before;
      before = current;
      current = next;
      minors.push_back(current);
    }
    return minors;
  }
  // Bareiss without pivoting: after step k the pivot equals the (k+1)-th
  // leading minor. A zero pivot means the minor vanishes; the remaining
  // minors are then computed directly.
  IntMatrix a = m;
  Integer prev(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (a(k, k).is_zero()) {
      for (Eigen::Index r = k; r < n; ++r) minors.push_back(determinant<Integer>(m.topLeftCorner(r + 1, r + 1)));
      return minors;
    }
    minors.push_back(a(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return minors;
}

TridiagonalInverse tridiagonal_inverse(const IntMatrix& m) {
  if (!is_symmetric(m) || !is_tridiagonal(m)) {
    throw std::invalid_argument("tridiagonal_inverse expects a symmetric tridiagonal matrix");
  }
  const Eigen::Index n = m.rows();
  // theta[i]: leading i x i minor; phi[i]: trailing minor on rows i..n-1.
  std::vector<Integer> theta(static_cast<std::size_t>(n) + 1);
  std::vector<Integer> phi(static_cast<std::size_t>(n) + 2);
  theta[0] = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    theta[i + 1] = m(i, i) * theta[i];
    if (i > 0) theta[i + 1] -= m(i, i - 1) * m(i, i - 1) * theta[i - 1];
  }
  phi[n + 1] = 0;
  phi[n] = 1;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    phi[i] = m(i, i) * phi[i + 1];
    if (i + 1 < n) phi[i] -= m(i, i + 1) * m(i, i + 1) * phi[i + 2];
  }
  TridiagonalInverse out{theta[n], IntMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    Integer chain(1);
    for (Eigen::Index j = i; j < n; ++j) {
      if (j > i) chain *= m(j - 1, j);
      Integer entry = chain * theta[i] * phi[j + 1];
      if ((i + j) % 2 == 1) entry = -entry;
      out.adjugate(i, j) = entry;
      out.adjugate(j, i) = entry;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void swap_rows(IntMatrix& d, IntMatrix& u, Eigen::Index a, Eigen::Index b) {
  if (a == b) return;
  d.row(a).swap(d.row(b));
  u.row(a).swap(u.row(b));
}

void swap_cols(IntMatrix& d, IntMatrix& v, Eigen::Index a, Eigen::Index b) {
  if (a == b) return;
  d.col(a).swap(d.col(b));
  v.col(a).swap(v.col(b));
}

// row[target] += factor * row[source] on both D and U.
void add_row(IntMatrix& d, IntMatrix& u, Eigen::Index target, Eigen::Index source, const Integer& factor) {
  for (Eigen::Index j = 0; j < d.cols(); ++j)
    if (!d(source, j).is_zero()) d(target, j) += factor * d(source, j);
  for (Eigen::Index j = 0; j < u.cols(); ++j)
    if (!u(source, j).is_zero()) u(target, j) += factor * u(source, j);
}

void add_col(IntMatrix& d, IntMatrix& v, Eigen::Index target, Eigen::Index source, const Integer& factor) {
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    if (!d(i, source).is_zero()) d(i, target) += factor * d(i, source);
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    if (!v(i, source).is_zero()) v(i, target) += factor * v(i, source);
}

// Smallest-magnitude nonzero entry of the block d[t.., t..], first in row-major order.
bool find_pivot(const IntMatrix& d, Eigen::Index t, Eigen::Index& pi, Eigen::Index& pj) {
  bool found = false;
  Integer best;
  for (Eigen::Index i = t; i < d.rows(); ++i) {
    for (Eigen::Index j = t; j < d.cols(); ++j) {
      if (d(i, j).is_zero()) continue;
      Integer mag = abs(d(i, j));
      if (!found || mag < best) {
        found = true;
        best = mag;
        pi = i;
        pj = j;
        if (best == 1) return true;
      }
    }
  }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  SmithForm out{IntMatrix::Identity(rows, rows), m, IntMatrix::Identity(cols, cols), 0};
  IntMatrix& d = out.diag;
  IntMatrix& u = out.left;
  IntMatrix& v = out.right;

  Eigen::Index t = 0;
  for (; t < std::min(rows, cols); ++t) {
    Eigen::Index pi = 0;
    Eigen::Index pj = 0;
    if (!find_pivot(d, t, pi, pj)) break;
    swap_rows(d, u, t, pi);
    swap_cols(d, v, t, pj);

    for (;;) {
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (d(i, t).is_zero()) continue;
        add_row(d, u, i, t, -(d(i, t) / d(t, t)));
        if (!d(i, t).is_zero()) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (d(t, j).is_zero()) continue;
        add_col(d, v, j, t, -(d(t, j) / d(t, t)));
        if (!d(t, j).is_zero()) clean = false;
      }
      if (!clean) {
        // A remainder survived: move the smallest entry of row/column t to the pivot.
        Eigen::Index bi = t;
        Eigen::Index bj = t;
        Integer best = abs(d(t, t));
        for (Eigen::Index i = t + 1; i < rows; ++i)
          if (!d(i, t).is_zero() && abs(d(i, t)) < best) { best = abs(d(i, t)); bi = i; bj = t; }
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (!d(t, j).is_zero() && abs(d(t, j)) < best) { best = abs(d(t, j)); bi = t; bj = j; }
        swap_rows(d, u, t, bi);
        swap_cols(d, v, t, bj);
        continue;
      }
      if (abs(d(t, t)) == 1) break;
      bool divides = true;
      for (Eigen::Index i = t + 1; i < rows && divides; ++i) {
        for (Eigen::Index j = t + 1; j < cols; ++j) {
          if (!(d(i, j) % d(t, t)).is_zero()) {
            add_row(d, u, t, i, Integer(1));
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (d(t, t).sign() < 0) {
      for (Eigen::Index j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (Eigen::Index j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }
  out.rank = t;
  return out;
}

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> f;
  for (Eigen::Index i = 0; i < std::min(diag.rows(), diag.cols()); ++i) f.push_back(diag(i, i));
  return f;
}

SmithCokernel::SmithCokernel(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("smith_cokernel expects a square matrix");
  if (!is_symmetric(m)) throw std::invalid_argument("smith_cokernel expects a symmetric matrix");
  SmithForm s = smith_normal_form(m);
  if (s.rank < m.rows()) throw std::domain_error("smith_cokernel: matrix is singular");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (s.diag(i, i) != 1) {
      factors_.push_back(s.diag(i, i));
      keep.push_back(i);
    }
  }
  projection_.resize(static_cast<Eigen::Index>(keep.size()), m.cols());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    projection_.row(row) = s.left.row(keep[r]);
    for (Eigen::Index j = 0; j < m.cols(); ++j) projection_(row, j) = mod(projection_(row, j), factors_[r]);
  }
}

Integer SmithCokernel::order() const {
  Integer o(1);
  for (const auto& f : factors_) o *= f;
  return o;
}

std::vector<Integer> SmithCokernel::project(const IntVector& v) const {
  if (v.size() != projection_.cols()) throw std::invalid_argument("projection of a vector of the wrong length");
  std::vector<Integer> out;
  out.reserve(factors_.size());
  for (std::size_t r = 0; r < factors_.size(); ++r) {
    Integer acc(0);
    const auto row = static_cast<Eigen::Index>(r);
    for (Eigen::Index j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) acc += projection_(row, j) * v[j];
    out.push_back(mod(acc, factors_[r]));
  }
  return out;
}

std::string SmithCokernel::str() const {
  if (factors_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? " + Z/" : "Z/") + factors_[i].str();
  return s;
}

SmithCokernel smith_cokernel(const IntMatrix& m) { return SmithCokernel(m); }

IntMatrix integer_kernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  return s.right.rightCols(a.cols() - s.rank);
}

}  // namespace surgery
