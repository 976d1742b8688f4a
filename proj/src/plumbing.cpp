#include "surgery/plumbing.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace surgery {

LinearPlumbing::LinearPlumbing(std::vector<int> weights, std::optional<std::pair<int, int>> source)
    : weights_(std::move(weights)), source_(source) {
  if (weights_.empty()) throw std::invalid_argument("a linear plumbing needs at least one vertex");
  for (int w : weights_) {
    if (w > -2) throw std::invalid_argument("plumbing weight " + std::to_string(w) + " is above -2");
  }
  if (source_) {
    const CFrac expected = cfrac_expand(source_->first, source_->second);
    std::vector<int> negated;
    for (int b : expected.entries) negated.push_back(-b);
    if (negated != weights_) {
      throw std::invalid_argument("weights " + str() + " do not match C(" + std::to_string(source_->first) + "," +
                                  std::to_string(source_->second) + ")");
    }
  }
}

std::optional<std::pair<int, int>> LinearPlumbing::pq() const {
  if (source_) return source_;
  std::vector<int> entries;
  for (int w : weights_) entries.push_back(-w);
  const Rational value = cfrac_eval(entries);
  // p^2 and pq - 1 are coprime, so the reduced fraction exposes both.
  const Integer p = isqrt(value.num());
  if (p * p != value.num()) return std::nullopt;
  const Integer pq_value = value.den() + 1;
  if (!(pq_value % p).is_zero()) return std::nullopt;
  const Integer q = pq_value / p;
  if (!(q.sign() > 0 && q < p) || gcd(p, q) != 1 || !p.fits_int64() || p > Integer(1 << 30)) return std::nullopt;
  return std::make_pair(static_cast<int>(p.to_int64()), static_cast<int>(q.to_int64()));
}

std::string LinearPlumbing::str() const {
  std::vector<int> w = weights_;
  return "(" + run_length_string(w) + ")";
}

LinearPlumbing from_pq(int p, int q) {
  const CFrac c = cfrac_expand(p, q);
  std::vector<int> weights;
  weights.reserve(c.entries.size());
  for (int b : c.entries) weights.push_back(-b);
  return LinearPlumbing(std::move(weights), std::make_pair(p, q));
}

IntMatrix intersection_matrix(const LinearPlumbing& plumbing) {
  const auto n = static_cast<Eigen::Index>(plumbing.length());
  IntMatrix q = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    q(i, i) = plumbing.weights()[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      q(i, i + 1) = 1;
      q(i + 1, i) = 1;
    }
  }
  return q;
}

bool is_negative_definite(const IntMatrix& q) {
  if (!is_symmetric(q)) throw std::invalid_argument("is_negative_definite expects a symmetric matrix");
  for (const Integer& minor : leading_minors(-q)) {
    if (minor.sign() <= 0) return false;
  }
  return true;
}

LensLabel boundary(const LinearPlumbing& plumbing) {
  const auto pq = plumbing.pq();
  if (!pq) throw std::invalid_argument("plumbing " + plumbing.str() + " is not of the form p^2/(pq-1)");
  return lens_label(pq->first, pq->second);
}

std::vector<int> parse_weight_tuple(const std::string& text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& what) -> std::invalid_argument {
    return std::invalid_argument("bad plumbing tuple '" + text + "': " + what);
  };
  auto read_int = [&]() -> long {
    skip();
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == digits) throw fail("expected an integer");
    return std::stol(text.substr(start, i - start));
  };
  skip();
  if (i >= text.size() || text[i] != '(') throw fail("expected '('");
  ++i;
  std::vector<int> out;
  for (;;) {
    const long value = read_int();
    long repeat = 1;
    skip();
    if (i < text.size() && text[i] == '^') {
      ++i;
      repeat = read_int();
      if (repeat < 1) throw fail("repeat count must be positive");
    }
    for (long r = 0; r < repeat; ++r) out.push_back(static_cast<int>(value));
    skip();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    if (i < text.size() && text[i] == ')') {
      ++i;
      break;
    }
    throw fail("expected ',' or ')'");
  }
  skip();
  if (i != text.size()) throw fail("trailing characters");
  return out;
}

std::string describe_configuration(int p, int q) {
  const LinearPlumbing plumbing = from_pq(p, q);
  const IntMatrix m = intersection_matrix(plumbing);
  const Integer det = determinant(m);
  std::ostringstream os;
  os << "C(" << p << "," << q << ")\n";
  os << "plumbing: " << plumbing.str() << "\n";
  os << "vertices: " << plumbing.length() << "\n";
  os << "boundary: " << boundary(plumbing).str() << "\n";
  os << "determinant: " << det << " (|det| = " << abs(det) << ")\n";
  os << "negative definite: " << (is_negative_definite(m) ? "yes" : "no") << "\n";
  os << "cokernel: " << smith_cokernel(m).str() << "\n";
  return os.str();
}

}  // namespace surgery
