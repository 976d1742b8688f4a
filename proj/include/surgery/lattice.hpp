#pragma once

// Second-cohomology model of the ambient manifold: named generators with an
// integer Gram pairing, classes as coordinate vectors, and embedded
// configurations whose sphere classes must realize a plumbing.

#include "surgery/plumbing.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace surgery {

class AmbientLattice;
using LatticePtr = std::shared_ptr<const AmbientLattice>;

/// Finitely generated lattice with a symmetric Gram matrix. Generators marked
/// exceptional have square -1 and pair to zero with every other generator.
class AmbientLattice {
 public:
  /// Validates symmetry, unique names and the exceptional-generator rules;
  /// throws std::invalid_argument.
  AmbientLattice(std::vector<std::string> names, IntMatrix gram, std::vector<bool> exceptional);

  [[nodiscard]] Eigen::Index rank() const { return static_cast<Eigen::Index>(names_.size()); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const IntMatrix& gram() const { return gram_; }
  [[nodiscard]] bool is_exceptional(Eigen::Index i) const { return exceptional_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] std::optional<Eigen::Index> index_of(const std::string& name) const;
  /// Throws std::out_of_range for unknown names.
  [[nodiscard]] Eigen::Index require_index(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  IntMatrix gram_;
  std::vector<bool> exceptional_;
  std::map<std::string, Eigen::Index> index_;
};

/// Cohomology class: integer coordinates over a lattice's generators.
class Cls {
 public:
  Cls() = default;
  Cls(LatticePtr lattice, IntVector coords);

  static Cls zero(const LatticePtr& lattice);
  static Cls generator(const LatticePtr& lattice, const std::string& name);
  static Cls generator(const LatticePtr& lattice, Eigen::Index index);

  [[nodiscard]] const LatticePtr& lattice() const { return lattice_; }
  [[nodiscard]] const IntVector& coords() const { return coords_; }
  [[nodiscard]] const Integer& operator[](Eigen::Index i) const { return coords_[i]; }
  [[nodiscard]] bool is_zero() const;

  Cls& operator+=(const Cls& o);
  Cls& operator-=(const Cls& o);
  friend Cls operator+(Cls a, const Cls& b) { return a += b; }
  friend Cls operator-(Cls a, const Cls& b) { return a -= b; }
  friend Cls operator-(const Cls& a);
  friend Cls operator*(const Integer& k, const Cls& a);
  friend bool operator==(const Cls& a, const Cls& b);

  /// "6T + E1..E6 - E7 + E8..E24"; runs of consecutively indexed generators
  /// with the same unit coefficient print as ranges.
  [[nodiscard]] std::string str() const;

 private:
  LatticePtr lattice_;
  IntVector coords_;
};

/// L^T G M. Throws std::invalid_argument when the classes live on different lattices.
Integer pair(const Cls& l, const Cls& m);
Integer square(const Cls& l);

/// A plumbing together with one class per vertex, in the plumbing's order.
struct EmbeddedConfiguration {
  std::string name;
  LinearPlumbing plumbing;
  std::vector<std::string> sphere_names;
  std::vector<Cls> spheres;
};

struct EmbeddingMismatch {
  std::size_t i = 0;  // 1-based positions in the sphere list
  std::size_t j = 0;
  Integer expected;
  Integer got;
};

struct EmbeddingReport {
  bool ok = true;
  std::vector<EmbeddingMismatch> mismatches;
  [[nodiscard]] std::string str() const;
};

/// Compares the Gram matrix of the sphere classes with the plumbing's
/// intersection matrix. A size mismatch is reported as a single entry (0, 0).
EmbeddingReport validate_embedding(const EmbeddedConfiguration& cfg);

/// (L . u_i)_i for the spheres of a configuration.
IntVector pairing_vector(const Cls& l, const EmbeddedConfiguration& cfg);

/// Basis (as classes) of the classes orthogonal to every class in `against`.
std::vector<Cls> orthogonal_complement(const LatticePtr& lattice, const std::vector<Cls>& against);

/// A class of odd square in the span of `basis`, if any. The form on a
/// lattice is odd exactly when some basis vector has odd square.
std::optional<Cls> find_odd_class(const std::vector<Cls>& basis);

}  // namespace surgery
