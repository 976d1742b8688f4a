#pragma once

// Linear plumbings of disk bundles over spheres: the configurations C_{p,q}.

#include "surgery/arith.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace surgery {

/// Chain of spheres u_k, ..., u_1 with self-intersections weights[0..k-1]
/// (weights[0] is the leftmost vertex u_k). Every weight is <= -2.
class LinearPlumbing {
 public:
  /// Throws std::invalid_argument for an empty chain or a weight above -2.
  explicit LinearPlumbing(std::vector<int> weights, std::optional<std::pair<int, int>> source = std::nullopt);

  [[nodiscard]] const std::vector<int>& weights() const { return weights_; }
  [[nodiscard]] const std::optional<std::pair<int, int>>& source() const { return source_; }
  [[nodiscard]] std::size_t length() const { return weights_.size(); }

  /// The (p, q) this chain realizes: the recorded provenance, or else the
  /// pair recovered from the value of the continued fraction. Empty when the
  /// chain is not of the form p^2/(pq-1).
  [[nodiscard]] std::optional<std::pair<int, int>> pq() const;

  /// "(-18, -19, -2^14, -3, -2^16)".
  [[nodiscard]] std::string str() const;

  friend bool operator==(const LinearPlumbing&, const LinearPlumbing&) = default;

 private:
  std::vector<int> weights_;
  std::optional<std::pair<int, int>> source_;
};

LinearPlumbing from_pq(int p, int q);

/// Tridiagonal Q with Q_ii = weights[i] and ones next to the diagonal.
IntMatrix intersection_matrix(const LinearPlumbing& plumbing);

/// All leading principal minors of -Q positive. Throws std::invalid_argument
/// for a non-symmetric matrix.
bool is_negative_definite(const IntMatrix& q);

/// Lens space bounding the plumbing. Throws std::invalid_argument when the
/// chain does not come from any coprime p > q > 0.
LensLabel boundary(const LinearPlumbing& plumbing);

/// Multi-line summary of C(p, q): plumbing, vertex count, boundary,
/// determinant, definiteness and cokernel. Throws std::invalid_argument.
std::string describe_configuration(int p, int q);

/// Parses "(-18, -19, -2^14, -3, -2^16)"; throws std::invalid_argument.
std::vector<int> parse_weight_tuple(const std::string& text);

}  // namespace surgery
