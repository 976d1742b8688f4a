#pragma once

// Seiberg-Witten functions as finite Laurent series over a lattice:
// sum_L SW(L) e^L. Knot surgery multiplies by an Alexander polynomial in
// e^{2F}; each blow-up multiplies by (e^E + e^{-E}).

#include "surgery/lattice.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace surgery {

/// Symmetric Laurent polynomial in one variable t.
class AlexPoly {
 public:
  /// The constant polynomial 1.
  AlexPoly();
  /// Zero coefficients are dropped. Throws std::invalid_argument unless
  /// coeff(d) = coeff(-d) for every d.
  explicit AlexPoly(std::map<int, Integer> coefficients);

  [[nodiscard]] const std::map<int, Integer>& coefficients() const { return coeffs_; }
  [[nodiscard]] Integer coefficient(int exponent) const;
  [[nodiscard]] int degree() const;
  /// Delta(1); normalized Alexander polynomials give +-1.
  [[nodiscard]] Integer value_at_one() const;
  [[nodiscard]] bool is_normalized() const { return abs(value_at_one()) == 1; }
  /// "3t - 5 + 3t^-1".
  [[nodiscard]] std::string str() const;
  /// Same polynomial written in e^{2F}: "3 e^{2T} - 5 + 3 e^{-2T}".
  [[nodiscard]] std::string exponential_str(const std::string& fiber) const;

  friend bool operator==(const AlexPoly&, const AlexPoly&) = default;

 private:
  std::map<int, Integer> coeffs_;
};

/// n t - (2n - 1) + n t^-1; throws std::invalid_argument for n < 0.
AlexPoly alexander_twist(int n);

/// Finite map class -> nonzero integer coefficient.
class SWFunction {
 public:
  using Terms = std::map<IntVector, Integer, LexLess>;

  explicit SWFunction(LatticePtr lattice);

  /// Adds c e^L, dropping the term if the coefficient cancels to zero.
  void add(const Cls& l, const Integer& c);
  void add(const IntVector& coords, const Integer& c);

  [[nodiscard]] Integer coefficient(const Cls& l) const;
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool empty() const { return terms_.empty(); }
  [[nodiscard]] const LatticePtr& lattice() const { return lattice_; }

  /// coeff(-L) = coeff(L) for every L.
  [[nodiscard]] bool is_charge_symmetric() const;
  /// sum of coefficients, i.e. the function with every e^x set to 1.
  [[nodiscard]] Integer coefficient_sum() const;
  /// "{6T -> 1, 4T -> -3, ...}".
  [[nodiscard]] std::string str() const;

  friend bool operator==(const SWFunction& a, const SWFunction& b) {
    return a.lattice_ == b.lattice_ && a.terms_ == b.terms_;
  }

 private:
  LatticePtr lattice_;
  Terms terms_;
};

/// SW of the K3 surface: the zero class with coefficient 1.
SWFunction sw_k3(const LatticePtr& lattice);

/// sw * Delta(e^{2 fiber}). Throws std::invalid_argument unless fiber^2 = 0.
SWFunction knot_surgery(const SWFunction& sw, const Cls& fiber, const AlexPoly& delta);

/// sw * (e^E + e^{-E}). Throws std::invalid_argument unless E is a single
/// generator of square -1 that pairs to zero with, and does not appear in,
/// the existing support.
SWFunction blow_up(const SWFunction& sw, const Cls& exceptional);

/// Nonzero terms in lexicographic order of coordinates.
std::vector<std::pair<Cls, Integer>> basic_classes(const SWFunction& sw);

/// base * prod_i (e^{E_i} + e^{-E_i}) with the blow-up factors unexpanded.
/// The exceptional generators never appear in the base support, so every
/// product term is a distinct class and no cancellation occurs.
class FactoredSW {
 public:
  struct KnotFactor {
    std::string fiber;
    AlexPoly delta;
  };

  explicit FactoredSW(SWFunction base);

  [[nodiscard]] const SWFunction& base() const { return base_; }
  [[nodiscard]] const std::vector<Eigen::Index>& exceptionals() const { return exceptionals_; }
  [[nodiscard]] const LatticePtr& lattice() const { return base_.lattice(); }

  /// Number of basic classes: |base| * 2^(number of factors).
  [[nodiscard]] Integer term_count() const;
  /// Coefficient of an arbitrary class in the expanded product.
  [[nodiscard]] Integer coefficient(const Cls& l) const;
  /// Full expansion; throws std::length_error above `limit` terms.
  [[nodiscard]] SWFunction expand(std::size_t limit = 1u << 20) const;
  /// Multiset of |SW(L)| over all basic classes: value -> multiplicity.
  [[nodiscard]] std::map<Integer, Integer> abs_value_multiset() const;
  [[nodiscard]] bool is_charge_symmetric() const { return base_.is_charge_symmetric(); }

  /// The function in product notation, e.g.
  /// "(2 e^{2T} - 3 + 2 e^{-2T})^3 * prod_{i=1..24} (e^{E_i}+e^{-E_i})".
  [[nodiscard]] std::string notation() const;

  FactoredSW with_knot_surgery(const Cls& fiber, const std::string& fiber_name, const AlexPoly& delta) const;
  FactoredSW with_blow_up(const Cls& exceptional) const;
  /// Replaces the function after a rational blow-down: explicit base terms
  /// and the blow-up factors that remain untouched.
  static FactoredSW descended(SWFunction base, std::vector<Eigen::Index> remaining_factors);

 private:
  SWFunction base_;
  std::vector<Eigen::Index> exceptionals_;
  std::vector<KnotFactor> knots_;
  bool symbolic_base_ = true;  // base is still sw_k3 times the recorded knot factors
};

}  // namespace surgery
