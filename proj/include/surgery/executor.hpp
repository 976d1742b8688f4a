#pragma once

// Runs a parsed surgery script for one value of n and records every
// intermediate state.

#include "surgery/rbd.hpp"
#include "surgery/script.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace surgery {

/// A module error raised while executing a statement.
class ExecutionError : public std::runtime_error {
 public:
  ExecutionError(std::size_t step, int line, const std::string& message);
  [[nodiscard]] std::size_t step() const { return step_; }
  [[nodiscard]] int line() const { return line_; }

 private:
  std::size_t step_;
  int line_;
};

struct DescentTable {
  std::string config;
  std::string plumbing;
  std::string boundary;
  Integer candidates;
  std::size_t met_factors = 0;
  std::size_t free_factors = 0;
  bool machine_integers = false;
  std::vector<DescentRow> rows;
};

struct StepRecord {
  std::size_t index = 0;  // 1-based
  int line = 0;
  std::string statement;
  InvariantLedger ledger;
  std::string sw;
  Integer basic_classes;
  std::vector<std::string> notes;
  std::optional<DescentTable> descent;
};

struct AssertionOutcome {
  std::size_t step = 0;
  int line = 0;
  std::string statement;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string script;
  long n = 0;
  std::vector<StepRecord> steps;
  std::vector<AssertionOutcome> assertions;
  std::vector<std::string> certificates;

  InvariantLedger final_ledger;
  std::optional<FreedmanType> type;
  std::string type_refusal;
  std::string final_sw;
  Integer final_count;
  bool symmetric = true;
  /// |SW| value -> number of basic classes.
  std::map<Integer, Integer> abs_values;
  /// Explicit part of the final function (blow-up factors left aside).
  std::vector<std::pair<Cls, Integer>> final_classes;
  std::vector<std::string> final_factors;

  [[nodiscard]] bool all_passed() const;
  /// Ledger table, SW states, descent tables, assertions, final section and
  /// the key=value block.
  [[nodiscard]] std::string text() const;
  /// Depends only on the final state; identical for equivalent pipelines.
  [[nodiscard]] std::string final_section() const;
  [[nodiscard]] std::string key_values() const;
};

/// Throws ExecutionError.
Report execute(const PipelineScript& script, long n, const std::string& name = "script");

/// Reports grouped by the multiset of |SW| values over the final basic classes.
struct NondiffeoGroup {
  std::string signature;  // "{1: 2}" = two classes with |SW| = 1
  std::vector<std::string> members;  // "z_construction n=1"
};

struct NondiffeoCertificate {
  std::vector<NondiffeoGroup> groups;
  /// Different groups are pairwise nondiffeomorphic; members of one group are
  /// not distinguished.
  [[nodiscard]] std::string str() const;
};

/// Throws std::invalid_argument for fewer than two reports.
NondiffeoCertificate nondiffeo_certificate(const std::vector<Report>& reports);

std::string abs_signature(const std::map<Integer, Integer>& values);

}  // namespace surgery
