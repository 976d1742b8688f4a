#pragma once

// Surgery scripts: one statement per line, key=value arguments, '#' comments.
//
//   lattice "data/z_lattice.lat"
//   start E2
//   knot_surgery fiber=T alexander=twist(n)
//   blowup E1 at="double point of S + F"
//   rbd C305
//   assert_sw 6T + E1..E24 abs=n^3
//
// docs/grammar.md has the full grammar.

#include "surgery/dataset.hpp"
#include "surgery/expr.hpp"
#include "surgery/ledger.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace surgery {

struct LatticeStmt {
  std::string path;
  friend bool operator==(const LatticeStmt&, const LatticeStmt&) = default;
};

struct StartStmt {
  std::string model;
  friend bool operator==(const StartStmt&, const StartStmt&) = default;
};

/// twist(expr) or poly(Laurent expression in t).
struct AlexanderSpec {
  bool twist = true;
  Expr arg;
  friend bool operator==(const AlexanderSpec&, const AlexanderSpec&) = default;
};

struct KnotSurgeryStmt {
  ClassExpr fiber;
  AlexanderSpec alexander;
  friend bool operator==(const KnotSurgeryStmt&, const KnotSurgeryStmt&) = default;
};

struct BlowupStmt {
  std::string name;
  std::optional<std::string> at;
  friend bool operator==(const BlowupStmt&, const BlowupStmt&) = default;
};

struct DeclareClassStmt {
  std::string name;
  ClassExpr expr;
  friend bool operator==(const DeclareClassStmt&, const DeclareClassStmt&) = default;
};

struct DeclareConfigStmt {
  std::string name;
  std::vector<int> weights;
  std::vector<std::string> spheres;
  std::optional<std::pair<int, int>> pq;
  friend bool operator==(const DeclareConfigStmt&, const DeclareConfigStmt&) = default;
};

struct RbdStmt {
  std::string config;
  friend bool operator==(const RbdStmt&, const RbdStmt&) = default;
};

struct LinkStmt {
  std::string first;
  std::string second;
  ClassExpr via;
  friend bool operator==(const LinkStmt&, const LinkStmt&) = default;
};

struct AssertLedgerStmt {
  std::optional<long> e, sigma, b_plus, b_minus;
  friend bool operator==(const AssertLedgerStmt&, const AssertLedgerStmt&) = default;
};

/// `assert_type a=3 b=8`, or `assert_type refused`.
struct AssertTypeStmt {
  std::optional<std::pair<long, long>> type;
  friend bool operator==(const AssertTypeStmt&, const AssertTypeStmt&) = default;
};

struct AssertPi1Stmt {
  Pi1Status status = Pi1Status::Unknown;
  friend bool operator==(const AssertPi1Stmt&, const AssertPi1Stmt&) = default;
};

struct AssertParityStmt {
  Parity parity = Parity::Unknown;
  friend bool operator==(const AssertParityStmt&, const AssertParityStmt&) = default;
};

struct AssertEmbeddingStmt {
  std::string config;
  friend bool operator==(const AssertEmbeddingStmt&, const AssertEmbeddingStmt&) = default;
};

struct AssertDisjointStmt {
  std::string first;
  std::string second;
  friend bool operator==(const AssertDisjointStmt&, const AssertDisjointStmt&) = default;
};

struct AssertPairStmt {
  ClassExpr first;
  ClassExpr second;
  long value = 0;
  friend bool operator==(const AssertPairStmt&, const AssertPairStmt&) = default;
};

struct AssertBasicCountStmt {
  Expr count;
  friend bool operator==(const AssertBasicCountStmt&, const AssertBasicCountStmt&) = default;
};

struct AssertSWStmt {
  ClassExpr cls;
  Expr abs;
  friend bool operator==(const AssertSWStmt&, const AssertSWStmt&) = default;
};

struct AssertSymmetricStmt {
  friend bool operator==(const AssertSymmetricStmt&, const AssertSymmetricStmt&) = default;
};

using Statement =
    std::variant<LatticeStmt, StartStmt, KnotSurgeryStmt, BlowupStmt, DeclareClassStmt, DeclareConfigStmt, RbdStmt, LinkStmt,
                 AssertLedgerStmt, AssertTypeStmt, AssertPi1Stmt, AssertParityStmt, AssertEmbeddingStmt, AssertDisjointStmt,
                 AssertPairStmt, AssertBasicCountStmt, AssertSWStmt, AssertSymmetricStmt>;

/// A statement and its source line; equality ignores the line.
struct Step {
  int line = 0;
  Statement stmt;
  friend bool operator==(const Step& a, const Step& b) { return a.stmt == b.stmt; }
};

using DatasetPtr = std::shared_ptr<const Dataset>;
/// Resolves the path of a `lattice` statement.
using DatasetLoader = std::function<DatasetPtr(const std::string& path)>;

struct PipelineScript {
  std::vector<Step> steps;
  DatasetPtr dataset;

  friend bool operator==(const PipelineScript& a, const PipelineScript& b) { return a.steps == b.steps; }
};

/// Parses and checks scoping: names are declared before use, `lattice`
/// precedes `start`, surgeries follow `start`, blow-ups name fresh
/// exceptional generators, and each configuration is blown down at most once.
/// Throws ParseError.
PipelineScript parse_script(std::string_view text, const DatasetLoader& loader);

/// Canonical text of one statement / of a whole script.
std::string print_statement(const Statement& stmt);
std::string print_script(const PipelineScript& script);

/// Loads dataset paths relative to `base_dir`.
DatasetLoader file_loader(const std::string& base_dir);

}  // namespace surgery
