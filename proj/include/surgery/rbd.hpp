#pragma once

// Rational blow-down descent: which basic classes of X induce basic classes
// of the manifold obtained by replacing a configuration C_{p,q} with the
// rational ball B_{p,q}.

#include "surgery/swcalc.hpp"

#include <string>
#include <vector>

namespace surgery {

enum class DescentMode { PlusPattern, MinusPattern, TheoremOnly, Fails };

std::string to_string(DescentMode mode);

struct DescentVerdict {
  DescentMode mode = DescentMode::Fails;
  /// m or -m is congruent to p - 1 mod 2 (least residues mod p).
  bool m_parity_ok = false;
  Rational restriction_square;
  bool square_ok = false;    // restriction_square == -k
  bool boundary_ok = false;  // the boundary class is a multiple of p
  Integer boundary_residue;  // c_1 of the restriction, in [0, p^2)
  Integer m;                 // boundary_residue / p when boundary_ok
  /// The symmetric-residue reading of m (m in (-p/2, p/2]) gives the same parity answer.
  bool interpretations_agree = true;
};

/// Per-configuration data shared by every class tested against it: the
/// intersection matrix Q, its adjugate and determinant, and the projection
/// onto H^2 of the boundary lens space.
class ConfigurationAnalysis {
 public:
  /// Throws std::invalid_argument when the chain is not of the form p^2/(pq-1).
  explicit ConfigurationAnalysis(const LinearPlumbing& plumbing);

  [[nodiscard]] const LinearPlumbing& plumbing() const { return plumbing_; }
  [[nodiscard]] int p() const { return p_; }
  [[nodiscard]] int q() const { return q_; }
  [[nodiscard]] Eigen::Index length() const { return matrix_.rows(); }
  [[nodiscard]] const IntMatrix& matrix() const { return matrix_; }
  [[nodiscard]] const Integer& det() const { return det_; }
  [[nodiscard]] const IntMatrix& adjugate() const { return adjugate_; }
  /// Row vector phi with c_1(L|boundary) = phi . v mod p^2.
  [[nodiscard]] const IntVector& boundary_projection() const { return projection_; }
  [[nodiscard]] const Integer& boundary_order() const { return order_; }

  /// v^T Q^{-1} v.
  [[nodiscard]] Rational restriction_square(const IntVector& v) const;
  /// PlusPattern iff v_i = b_i - 2 for all i, MinusPattern iff v_i = -(b_i - 2).
  [[nodiscard]] DescentMode corollary(const IntVector& v) const;
  /// Full verdict. Throws std::logic_error if a corollary pattern ever fails
  /// the general criteria.
  [[nodiscard]] DescentVerdict verdict(const IntVector& v) const;

 private:
  LinearPlumbing plumbing_;
  int p_ = 0;
  int q_ = 0;
  IntMatrix matrix_;
  Integer det_;
  IntMatrix adjugate_;
  IntVector projection_;
  Integer order_;
};

/// Throws std::invalid_argument for an invalid embedding.
Rational restriction_square(const Cls& l, const EmbeddedConfiguration& cfg);
DescentMode corollary_condition(const Cls& l, const EmbeddedConfiguration& cfg);
DescentVerdict theorem_condition(const Cls& l, const EmbeddedConfiguration& cfg);

/// Keeps the terms of an explicit function whose classes pass theorem_condition.
SWFunction descend(const SWFunction& sw, const EmbeddedConfiguration& cfg);

struct DescentRow {
  Cls cls;
  Integer coefficient;
  DescentVerdict verdict;
};

struct DescentOutcome {
  FactoredSW result;
  /// Surviving classes in their explicit part (blow-up factors untouched by
  /// the configuration are left out and still multiply each row).
  std::vector<DescentRow> rows;
  Integer candidates;            // sign assignments examined, over all base terms
  std::size_t met_factors = 0;   // blow-up factors meeting the configuration
  std::size_t free_factors = 0;  // blow-up factors orthogonal to it
  bool machine_integers = false; // the int64 kernel was provably overflow-free
};

/// Descends a factored function without expanding it. Blow-up factors that
/// meet the configuration are enumerated (exceptionals with identical pairing
/// columns are enumerated by their sum); factors orthogonal to the
/// configuration stay factored. Every hit of the quadratic test is confirmed
/// with the exact Integer verdict.
DescentOutcome descend(const FactoredSW& sw, const EmbeddedConfiguration& cfg);

}  // namespace surgery
