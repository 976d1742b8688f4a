#pragma once

// Text format for lattices and embedded configurations.
//
//   generators T S F Fp Sigma0..Sigma15 E1..E24
//   exceptional E1..E24
//   row S: S=-2 T=1 F=1 Fp=1 Sigma0=1
//   class u1 = Fp - 2E7 - E5
//   config C31 plumbing=(-5, -2) spheres=[u1, u2]
//
// Rows list the nonzero Gram entries of one generator; a mirrored entry is
// filled in automatically and must agree when both rows state it. The full
// grammar lives in docs/grammar.md.

#include "surgery/lattice.hpp"
#include "surgery/text.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace surgery {

/// One summand of a class expression: coefficient times a generator or class
/// name, or times the sum over a name range "E1..E24".
struct ClassTerm {
  Integer coefficient;
  std::string first;
  std::string last;  // empty unless this is a range

  friend bool operator==(const ClassTerm&, const ClassTerm&) = default;
};

struct ClassExpr {
  std::vector<ClassTerm> terms;

  /// Every name the expression mentions, ranges expanded.
  [[nodiscard]] std::vector<std::string> names() const;
  /// Canonical source form, e.g. "Fp - 2E7 - E5".
  [[nodiscard]] std::string str() const;
  friend bool operator==(const ClassExpr&, const ClassExpr&) = default;
};

/// Reads `[sign] [coef ['*']] name ['..' name] { ('+'|'-') ... }` up to the end of the line
/// or a token in `stop`.
ClassExpr parse_class_expr(TokenCursor& cursor);

/// Resolves names against generators first, then named classes.
/// Throws std::invalid_argument for an unknown name.
Cls evaluate_class_expr(const ClassExpr& expr, const LatticePtr& lattice, const std::map<std::string, Cls>& classes);

/// Lattice plus the named classes and configurations declared with it.
struct Dataset {
  LatticePtr lattice;
  std::vector<std::string> class_order;
  std::map<std::string, Cls> classes;
  std::map<std::string, ClassExpr> class_sources;
  std::vector<std::string> config_order;
  std::map<std::string, EmbeddedConfiguration> configs;
};

/// Throws ParseError with the line and column of the offending token.
Dataset parse_dataset(std::string_view text);
Dataset load_dataset(const std::filesystem::path& path);

/// Builds a configuration from named classes; the plumbing records the (p, q)
/// it realizes when that can be recovered. Throws std::invalid_argument.
EmbeddedConfiguration make_configuration(const std::string& name, const std::vector<int>& weights,
                                         const std::vector<std::string>& sphere_names,
                                         const std::map<std::string, Cls>& classes, const LatticePtr& lattice);

}  // namespace surgery
