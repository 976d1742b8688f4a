#include "surgery/executor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace surgery {

ExecutionError::ExecutionError(std::size_t step, int line, const std::string& message)
    : std::runtime_error("step " + std::to_string(step) + " (line " + std::to_string(line) + "): " + message),
      step_(step),
      line_(line) {}

namespace {

struct Link {
  std::string first;
  std::string second;
  LinkCertificate cert;
};

class Executor {
 public:
  Executor(const PipelineScript& script, long n, std::string name) : script_(script) {
    report_.script = std::move(name);
    report_.n = n;
    bindings_["n"] = Integer(n);
  }

  Report run() {
    for (std::size_t i = 0; i < script_.steps.size(); ++i) {
      const Step& step = script_.steps[i];
      record_ = StepRecord{i + 1, step.line, print_statement(step.stmt), ledger_, "", Integer(0), {}, std::nullopt};
      try {
        std::visit([this](const auto& s) { apply(s); }, step.stmt);
      } catch (const ExecutionError&) {
        throw;
      } catch (const std::exception& e) {
        throw ExecutionError(i + 1, step.line, e.what());
      }
      record_.ledger = ledger_;
      if (!ledger_.consistent() && started_) throw ExecutionError(i + 1, step.line, "ledger identities violated: " + ledger_.str());
      if (sw_) {
        record_.sw = sw_->notation();
        record_.basic_classes = sw_->term_count();
      }
      report_.steps.push_back(std::move(record_));
    }
    finish();
    return std::move(report_);
  }

 private:
  [[nodiscard]] Cls eval(const ClassExpr& e) const { return evaluate_class_expr(e, lattice_, classes_); }

  const EmbeddedConfiguration& config(const std::string& name) const { return configs_.at(name); }

  void assertion(bool passed, std::string detail) {
    report_.assertions.push_back({record_.index, record_.line, record_.statement, passed, std::move(detail)});
  }

  void apply(const LatticeStmt&) {
    dataset_ = script_.dataset;
    lattice_ = dataset_->lattice;
    classes_ = dataset_->classes;
    configs_ = dataset_->configs;
    record_.notes.push_back(std::to_string(lattice_->rank()) + " generators, " + std::to_string(classes_.size()) + " classes, " +
                            std::to_string(configs_.size()) + " configurations");
  }

  void apply(const StartStmt&) {
    if (!lattice_) {
      apply(LatticeStmt{});
      record_.notes.back() += " (built-in)";
    }
    started_ = true;
    ledger_ = ledger_e2();
    sw_ = FactoredSW(sw_k3(lattice_));
  }

  void apply(const KnotSurgeryStmt& s) {
    const Cls fiber = eval(s.fiber);
    AlexPoly delta;
    if (s.alexander.twist) {
      const Integer k = evaluate_int(s.alexander.arg, bindings_);
      if (!k.fits_int64() || abs(k) > Integer(1L << 30)) throw std::invalid_argument("twist parameter out of range");
      delta = alexander_twist(static_cast<int>(k.to_int64()));
    } else {
      std::map<int, Integer> coeffs;
      for (const auto& [d, c] : evaluate_laurent(s.alexander.arg, bindings_, "t")) coeffs.emplace(d, c);
      delta = AlexPoly(std::move(coeffs));
    }
    if (!delta.is_normalized()) record_.notes.push_back("Delta(1) = " + delta.value_at_one().str() + ", not normalized");
    sw_ = sw_->with_knot_surgery(fiber, s.fiber.str(), delta);
    ledger_ = ledger_knot_surgery(ledger_);
    record_.notes.push_back("Delta = " + delta.str());
  }

  void apply(const BlowupStmt& s) {
    sw_ = sw_->with_blow_up(Cls::generator(lattice_, s.name));
    ledger_ = ledger_blow_up(ledger_);
    if (s.at) record_.notes.push_back(s.name + ": " + *s.at);
  }

  void apply(const DeclareClassStmt& s) { classes_.emplace(s.name, eval(s.expr)); }

  void apply(const DeclareConfigStmt& s) {
    EmbeddedConfiguration cfg = make_configuration(s.name, s.weights, s.spheres, classes_, lattice_);
    if (s.pq && cfg.plumbing.pq() != s.pq) {
      throw std::invalid_argument("plumbing " + cfg.plumbing.str() + " does not realize the declared (p, q)");
    }
    configs_.emplace(s.name, std::move(cfg));
  }

  void apply(const LinkStmt& s) {
    const LinkCertificate cert = link_certificate(config(s.first), config(s.second), eval(s.via));
    links_.push_back({s.first, s.second, cert});
    const std::string line = "link " + s.first + " " + s.second + ": " + (cert.holds ? "holds" : "fails") + " (" + cert.detail + ")";
    record_.notes.push_back(line);
    report_.certificates.push_back(line);
  }

  void apply(const RbdStmt& s) {
    const EmbeddedConfiguration& cfg = config(s.config);
    const EmbeddingReport emb = validate_embedding(cfg);
    if (!emb.ok) throw std::invalid_argument("configuration " + cfg.name + " is not embedded: " + emb.str());
    for (const Cls& u : cfg.spheres) {
      for (const Cls& b : blown_down_) {
        if (!pair(u, b).is_zero()) throw std::invalid_argument("configuration " + cfg.name + " meets a blown-down sphere");
      }
    }

    const DescentOutcome outcome = descend(*sw_, cfg);
    DescentTable table{cfg.name,           cfg.plumbing.str(), boundary(cfg.plumbing).str(), outcome.candidates,
                       outcome.met_factors, outcome.free_factors, outcome.machine_integers, outcome.rows};
    std::size_t disagree = 0;
    for (const DescentRow& r : outcome.rows) disagree += r.verdict.interpretations_agree ? 0 : 1;
    if (disagree > 0) {
      record_.notes.push_back("symmetric-residue reading of m gives the other parity on " + std::to_string(disagree) + " of " +
                              std::to_string(outcome.rows.size()) + " surviving classes");
    }
    record_.notes.push_back("descended classes are written in ambient coordinates");
    record_.descent = std::move(table);
    sw_ = outcome.result;

    const InvariantLedger before = ledger_;
    if (rbd_done_.empty()) pi1_initial_ = before.pi1;
    const std::vector<Cls> earlier = blown_down_;
    rbd_done_.insert(s.config);
    blown_down_.insert(blown_down_.end(), cfg.spheres.begin(), cfg.spheres.end());
    ledger_ = ledger_rbd(before, static_cast<long>(cfg.spheres.size()));

    if (pi1_initial_ == Pi1Status::SimplyConnected && linked_closed()) {
      ledger_.pi1 = Pi1Status::SimplyConnected;
      record_.notes.push_back("pi1: every blown-down configuration is linked with a coprime partner");
    } else if (before.pi1 == Pi1Status::SimplyConnected || before.pi1 == Pi1Status::H1Zero) {
      const H1Certificate h1 = h1_certificate(cfg, earlier);
      if (h1.vanishes) {
        ledger_.pi1 = Pi1Status::H1Zero;
        record_.notes.push_back("H1: surviving classes pair onto Z^" + std::to_string(cfg.spheres.size()));
      } else {
        record_.notes.push_back("H1: pairing cokernel " + h1.cokernel + ", not certified");
      }
    }

    if (const auto odd = odd_survivor(lattice_, blown_down_)) {
      ledger_.parity = Parity::Odd;
      record_.notes.push_back("parity: " + odd->str() + " has square " + square(*odd).str());
    } else if (before.parity == Parity::Odd) {
      ledger_.parity = Parity::Odd;
      record_.notes.push_back("parity: no odd class in the modeled complement, defaulted to Odd");
    }
  }

  [[nodiscard]] bool linked_closed() const {
    return std::all_of(rbd_done_.begin(), rbd_done_.end(), [&](const std::string& c) {
      return std::any_of(links_.begin(), links_.end(), [&](const Link& l) {
        return l.cert.holds && (l.first == c || l.second == c) && rbd_done_.contains(l.first) && rbd_done_.contains(l.second);
      });
    });
  }

  void apply(const AssertLedgerStmt& s) {
    bool ok = true;
    auto check = [&](const std::optional<long>& want, long got) { ok = ok && (!want || *want == got); };
    check(s.e, ledger_.e);
    check(s.sigma, ledger_.sigma);
    check(s.b_plus, ledger_.b_plus);
    check(s.b_minus, ledger_.b_minus);
    assertion(ok, "ledger " + ledger_.str());
  }

  void apply(const AssertTypeStmt& s) {
    const auto t = freedman_type(ledger_);
    if (!s.type) {
      assertion(!t, t ? "type " + t->str() : freedman_refusal(ledger_));
      return;
    }
    assertion(t && t->a == s.type->first && t->b == s.type->second, t ? "type " + t->str() : freedman_refusal(ledger_));
  }

  void apply(const AssertPi1Stmt& s) { assertion(ledger_.pi1 == s.status, "pi1 " + to_string(ledger_.pi1)); }

  void apply(const AssertParityStmt& s) { assertion(ledger_.parity == s.parity, "parity " + to_string(ledger_.parity)); }

  void apply(const AssertEmbeddingStmt& s) {
    const EmbeddingReport r = validate_embedding(config(s.config));
    assertion(r.ok, r.str());
  }

  void apply(const AssertDisjointStmt& s) {
    const auto& a = config(s.first);
    const auto& b = config(s.second);
    std::string bad;
    for (std::size_t i = 0; i < a.spheres.size(); ++i) {
      for (std::size_t j = 0; j < b.spheres.size(); ++j) {
        const Integer x = pair(a.spheres[i], b.spheres[j]);
        if (!x.is_zero() && bad.empty()) bad = a.sphere_names[i] + " . " + b.sphere_names[j] + " = " + x.str();
      }
    }
    assertion(bad.empty(), bad.empty() ? "all pairings vanish" : bad);
  }

  void apply(const AssertPairStmt& s) {
    const Integer x = pair(eval(s.first), eval(s.second));
    assertion(x == Integer(s.value), "pairing " + x.str());
  }

  void apply(const AssertBasicCountStmt& s) {
    const Integer want = evaluate_int(s.count, bindings_);
    assertion(sw_->term_count() == want, "count " + sw_->term_count().str());
  }

  void apply(const AssertSWStmt& s) {
    const Integer c = sw_->coefficient(eval(s.cls));
    const Integer want = evaluate_int(s.abs, bindings_);
    assertion(abs(c) == want && !c.is_zero(), "SW = " + c.str());
  }

  void apply(const AssertSymmetricStmt&) {
    const bool sym = sw_->is_charge_symmetric();
    assertion(sym, sym ? "coeff(-L) = coeff(L)" : "not charge symmetric");
  }

  void finish() {
    report_.final_ledger = ledger_;
    report_.type = freedman_type(ledger_);
    report_.type_refusal = freedman_refusal(ledger_);
    if (!sw_) return;
    report_.final_sw = sw_->notation();
    report_.final_count = sw_->term_count();
    report_.symmetric = sw_->is_charge_symmetric();
    report_.abs_values = sw_->abs_value_multiset();
    report_.final_classes = basic_classes(sw_->base());
    for (Eigen::Index e : sw_->exceptionals()) report_.final_factors.push_back(lattice_->names()[static_cast<std::size_t>(e)]);
    std::sort(report_.certificates.begin(), report_.certificates.end());
  }

  const PipelineScript& script_;
  Report report_;
  StepRecord record_;
  std::map<std::string, Integer> bindings_;
  DatasetPtr dataset_;
  LatticePtr lattice_;
  std::map<std::string, Cls> classes_;
  std::map<std::string, EmbeddedConfiguration> configs_;
  bool started_ = false;
  InvariantLedger ledger_;
  std::optional<FactoredSW> sw_;
  std::vector<Cls> blown_down_;
  std::set<std::string> rbd_done_;
  Pi1Status pi1_initial_ = Pi1Status::Unknown;
  std::vector<Link> links_;
};

std::string pad(const std::string& s, std::size_t width) { return s.size() >= width ? s : s + std::string(width - s.size(), ' '); }

std::string rpad(const std::string& s, std::size_t width) { return s.size() >= width ? s : std::string(width - s.size(), ' ') + s; }

}  // namespace

Report execute(const PipelineScript& script, long n, const std::string& name) { return Executor(script, n, name).run(); }

bool Report::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const AssertionOutcome& a) { return a.passed; });
}

std::string abs_signature(const std::map<Integer, Integer>& values) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, count] : values) {
    out += (first ? "" : ", ") + v.str() + ": " + count.str();
    first = false;
  }
  return out + "}";
}

std::string Report::final_section() const {
  std::ostringstream os;
  os << "[final]\n";
  os << "ledger: " << final_ledger.str() << "\n";
  os << "type: " << (type ? type->str() : type_refusal) << "\n";
  os << "SW: " << (final_sw.empty() ? "none" : final_sw) << "\n";
  os << "basic classes: " << final_count << "\n";
  for (const auto& [cls, c] : final_classes) os << "  " << cls.str() << " -> " << c << "\n";
  if (!final_factors.empty()) {
    os << "  each times";
    for (const std::string& f : final_factors) os << " (e^{" << f << "}+e^{-" << f << "})";
    os << "\n";
  }
  os << "|SW| values: " << abs_signature(abs_values) << "\n";
  os << "charge symmetric: " << (symmetric ? "yes" : "no") << "\n";
  for (const std::string& c : certificates) os << "certificate: " << c << "\n";
  return os.str();
}

std::string Report::key_values() const {
  std::ostringstream os;
  os << "[key-values]\n";
  os << "script=" << script << "\n";
  os << "n=" << n << "\n";
  for (const StepRecord& s : steps) {
    if (s.sw.empty()) continue;
    os << "step." << s.index << ".ledger=" << s.ledger.e << "," << s.ledger.sigma << "," << s.ledger.b_plus << "," << s.ledger.b_minus
       << "," << to_string(s.ledger.pi1) << "," << to_string(s.ledger.parity) << "\n";
    os << "step." << s.index << ".basic_classes=" << s.basic_classes << "\n";
  }
  os << "final.e=" << final_ledger.e << "\n";
  os << "final.sigma=" << final_ledger.sigma << "\n";
  os << "final.b2plus=" << final_ledger.b_plus << "\n";
  os << "final.b2minus=" << final_ledger.b_minus << "\n";
  os << "final.pi1=" << to_string(final_ledger.pi1) << "\n";
  os << "final.parity=" << to_string(final_ledger.parity) << "\n";
  os << "final.type=" << (type ? std::to_string(type->a) + "," + std::to_string(type->b) : "refused") << "\n";
  os << "final.basic_classes=" << final_count << "\n";
  os << "final.abs_values=" << abs_signature(abs_values) << "\n";
  os << "final.symmetric=" << (symmetric ? "true" : "false") << "\n";
  const auto passed = std::count_if(assertions.begin(), assertions.end(), [](const AssertionOutcome& a) { return a.passed; });
  os << "assertions.passed=" << passed << "\n";
  os << "assertions.failed=" << static_cast<long>(assertions.size()) - passed << "\n";
  return os.str();
}

std::string Report::text() const {
  std::ostringstream os;
  os << "== " << script << " (n = " << n << ") ==\n\n";
  os << rpad("step", 4) << rpad("line", 6) << "  " << pad("statement", 48) << rpad("e", 5) << rpad("sigma", 7) << rpad("b2+", 5)
     << rpad("b2-", 5) << "  " << pad("pi1", 16) << pad("parity", 9) << "basic classes\n";
  for (const StepRecord& s : steps) {
    std::string stmt = s.statement;
    if (stmt.size() > 46) stmt = stmt.substr(0, 43) + "...";
    os << rpad(std::to_string(s.index), 4) << rpad(std::to_string(s.line), 6) << "  " << pad(stmt, 48);
    if (s.sw.empty()) {
      os << "\n";
      continue;
    }
    os << rpad(std::to_string(s.ledger.e), 5) << rpad(std::to_string(s.ledger.sigma), 7) << rpad(std::to_string(s.ledger.b_plus), 5)
       << rpad(std::to_string(s.ledger.b_minus), 5) << "  " << pad(to_string(s.ledger.pi1), 16) << pad(to_string(s.ledger.parity), 9)
       << s.basic_classes << "\n";
  }

  os << "\n-- SW states --\n";
  std::string last;
  for (const StepRecord& s : steps) {
    if (s.sw.empty() || s.sw == last) continue;
    os << "after step " << s.index << ": " << s.sw << "\n";
    last = s.sw;
  }

  for (const StepRecord& s : steps) {
    if (!s.descent) continue;
    const DescentTable& t = *s.descent;
    os << "\n-- descent through " << t.config << " " << t.plumbing << ", boundary " << t.boundary << " --\n";
    os << "candidates " << t.candidates << ": " << t.met_factors << " blow-up factors enumerated, " << t.free_factors
       << " kept factored, " << (t.machine_integers ? "int64" : "big-integer") << " search\n";
    os << pad("class", 44) << rpad("SW", 8) << "  " << pad("mode", 14) << rpad("L|C^2", 7) << rpad("m", 6) << "  "
       << "parity  residues agree\n";
    for (const DescentRow& r : t.rows) {
      os << pad(r.cls.str(), 44) << rpad(r.coefficient.str(), 8) << "  " << pad(to_string(r.verdict.mode), 14)
         << rpad(r.verdict.restriction_square.str(), 7) << rpad(r.verdict.m.str(), 6) << "  " << pad(r.verdict.m_parity_ok ? "ok" : "bad", 8)
         << (r.verdict.interpretations_agree ? "yes" : "no") << "\n";
    }
    if (t.rows.empty()) os << "(no class descends)\n";
  }

  bool any_notes = false;
  for (const StepRecord& s : steps) {
    for (const std::string& note : s.notes) {
      if (!any_notes) os << "\n-- notes --\n";
      any_notes = true;
      os << "step " << s.index << ": " << note << "\n";
    }
  }

  if (!assertions.empty()) {
    os << "\n-- assertions --\n";
    for (const AssertionOutcome& a : assertions) {
      os << (a.passed ? "[PASS] " : "[FAIL] ") << "line " << a.line << ": " << a.statement << "  (" << a.detail << ")\n";
    }
  }

  os << "\n" << final_section() << "\n" << key_values();
  return os.str();
}

std::string NondiffeoCertificate::str() const {
  std::ostringstream os;
  os << "[nondiffeomorphism]\n";
  os << groups.size() << " groups by |SW| multiset\n";
  for (const NondiffeoGroup& g : groups) {
    os << "  " << g.signature << ":";
    for (const std::string& m : g.members) os << " [" << m << "]";
    if (g.members.size() > 1) os << "  not distinguished";
    os << "\n";
  }
  if (groups.size() > 1) os << "members of different groups are pairwise nondiffeomorphic\n";
  return os.str();
}

NondiffeoCertificate nondiffeo_certificate(const std::vector<Report>& reports) {
  if (reports.size() < 2) throw std::invalid_argument("a nondiffeomorphism certificate needs at least two reports");
  std::map<std::map<Integer, Integer>, std::vector<std::string>> by_values;
  std::vector<std::map<Integer, Integer>> order;
  for (const Report& r : reports) {
    auto [it, inserted] = by_values.try_emplace(r.abs_values);
    if (inserted) order.push_back(r.abs_values);
    it->second.push_back(r.script + " n=" + std::to_string(r.n));
  }
  NondiffeoCertificate out;
  for (const auto& values : order) out.groups.push_back({abs_signature(values), by_values.at(values)});
  return out;
}

}  // namespace surgery
