// One line per acceptance criterion: [PASS] or [FAIL], the criterion, the
// measured time against its budget, and a short detail.

#include "oracle.hpp"
#include "surgery/executor.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace surgery;

namespace {

const std::filesystem::path kScripts = std::filesystem::path(SURGERY_SOURCE_DIR) / "scripts";

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (passed) detail.clear();
    if (!detail.empty()) detail += "; ";
    detail += what;
    passed = false;
  }
};

PipelineScript load(const std::string& name) {
  std::ifstream in(kScripts / name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str(), file_loader(kScripts.string()));
}

Report run(const std::string& name, long n) { return execute(load(name), n, std::filesystem::path(name).stem().string()); }

bool ends_at_13_5_3_8(const Report& r) {
  const InvariantLedger& l = r.final_ledger;
  return l.e == 13 && l.sigma == -5 && l.b_plus == 3 && l.b_minus == 8;
}

oracle::Q as_q(const Rational& x) { return oracle::Q(x.num().raw(), x.den().raw()); }

Outcome configuration_fidelity() {
  Outcome o;
  const std::string expected =
      "C(305,17)\n"
      "plumbing: (-18, -19, -2^14, -3, -2^16)\n"
      "vertices: 33\n"
      "boundary: L(93025, -5184)\n"
      "determinant: -93025 (|det| = 93025)\n"
      "negative definite: yes\n"
      "cokernel: Z/93025\n";
  o.require(describe_configuration(305, 17) == expected, "check-config output differs");
  o.detail = o.passed ? "(-18, -19, -2^14, -3, -2^16), 33 vertices, L(93025, -5184), |det| = 93025" : o.detail;
  return o;
}

Outcome ledger_endpoint() {
  Outcome o;
  for (const char* name : {"z_construction.surg", "ztilde_construction.surg"}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Report r = run(name, 1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < 1.0, std::string(name) + " took " + std::to_string(secs) + " s");
    o.require(ends_at_13_5_3_8(r), std::string(name) + " ends at " + r.final_ledger.str());
    o.require(r.type && r.type->a == 3 && r.type->b == 8, std::string(name) + " type " + (r.type ? r.type->str() : r.type_refusal));
  }
  if (o.passed) o.detail = "both end at (13, -5, 3, 8), type 3CP^2 # 8(-CP^2)";
  return o;
}

Outcome sw_endpoint() {
  Outcome o;
  const PipelineScript script = load("z_construction.surg");
  std::ostringstream values;
  for (long n = 1; n <= 5; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const Report r = execute(script, n, "z_construction");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const Integer cube = Integer(n) * n * n;
    o.require(r.final_count == 2, "n=" + std::to_string(n) + ": " + r.final_count.str() + " final classes");
    o.require(r.abs_values == std::map<Integer, Integer>{{cube, 2}}, "n=" + std::to_string(n) + ": |SW| " + abs_signature(r.abs_values));
    bool pair_ok = r.final_classes.size() == 2;
    for (const auto& [cls, c] : r.final_classes) {
      const std::string s = cls.str();
      pair_ok = pair_ok && (s == "6T + E1..E24" || s == "-6T - E1..E24") && abs(c) == cube;
    }
    o.require(pair_ok, "n=" + std::to_string(n) + ": final classes are not +-(6T + E1..E24)");
    const StepRecord* y = nullptr;
    for (const StepRecord& s : r.steps)
      if (s.statement == "rbd C305") y = &s;
    o.require(y && y->basic_classes == 4, "n=" + std::to_string(n) + ": intermediate stage does not have 4 classes");
    o.require(secs < 10.0, "n=" + std::to_string(n) + " took " + std::to_string(secs) + " s");
    values << (n > 1 ? ", " : "") << cube;
  }
  if (o.passed) o.detail = "one pair +-(6T + E1..E24), |SW| = " + values.str() + "; intermediate stage 4 classes";
  return o;
}

Outcome nondiffeomorphism() {
  Outcome o;
  const PipelineScript script = load("z_construction.surg");
  std::vector<Report> reports;
  for (long n = 1; n <= 10; ++n) reports.push_back(execute(script, n, "z_construction"));
  const NondiffeoCertificate c = nondiffeo_certificate(reports);
  o.require(c.groups.size() == 10, std::to_string(c.groups.size()) + " groups");
  for (const NondiffeoGroup& g : c.groups) o.require(g.members.size() == 1, g.signature + " has several members");
  if (o.passed) o.detail = "10 singleton groups";
  return o;
}

Outcome property_suite() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coef(-3, 3);
  std::size_t configs = 0;
  std::size_t pattern_hits = 0;
  for (auto [p, q] : oracle::coprime_pairs(50)) {
    ++configs;
    const std::string tag = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    const CFrac cf = cfrac_expand(p, q);
    const oracle::Q target(oracle::Big(p) * p, oracle::Big(p) * q - 1);
    o.require(oracle::hj_value(cf.entries) == target && as_q(cfrac_eval(cf.entries)) == target, tag + " cfrac round trip");

    const LinearPlumbing plumbing = from_pq(p, q);
    const IntMatrix qm = intersection_matrix(plumbing);
    const oracle::Big p2 = oracle::Big(p) * p;
    const oracle::Q det = oracle::det([&] {
      oracle::Mat m(qm.rows(), std::vector<oracle::Q>(static_cast<std::size_t>(qm.cols())));
      for (Eigen::Index i = 0; i < qm.rows(); ++i)
        for (Eigen::Index j = 0; j < qm.cols(); ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = oracle::Q(qm(i, j).raw());
      return m;
    }());
    o.require(abs(determinant(qm)).raw() == p2 && (det < 0 ? oracle::Q(-det) : det) == oracle::Q(p2), tag + " |det| != p^2");
    o.require(is_negative_definite(qm), tag + " not negative definite");

    const ConfigurationAnalysis a(plumbing);
    const auto k = static_cast<Eigen::Index>(plumbing.length());
    std::vector<long> pattern_l;
    IntVector pattern(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      pattern[i] = cf.entries[static_cast<std::size_t>(i)] - 2;
      pattern_l.push_back(cf.entries[static_cast<std::size_t>(i)] - 2);
    }
    const oracle::Q minus_k(-k);
    o.require(oracle::chain_inverse_form(plumbing.weights(), pattern_l) == minus_k, tag + " oracle pattern square");
    o.require(as_q(a.restriction_square(pattern)) == minus_k, tag + " pattern square");

    for (int trial = 0; trial < 1000; ++trial) {
      // L . u = Q a + c for L = sum a_i u_i + sum c_i d_i, d_i dual to u_i.
      IntVector av(k), cv(k);
      for (Eigen::Index i = 0; i < k; ++i) av[i] = coef(rng);
      switch (trial % 4) {
        case 0: cv = pattern - qm * av; break;
        case 1: cv = -pattern - qm * av; break;
        case 2:
          for (Eigen::Index i = 0; i < k; ++i) cv[i] = coef(rng) * p;
          break;
        default:
          for (Eigen::Index i = 0; i < k; ++i) cv[i] = coef(rng);
      }
      const IntVector v = qm * av + cv;
      DescentVerdict verdict;
      try {
        verdict = a.verdict(v);
      } catch (const std::logic_error& e) {
        o.require(false, tag + " " + e.what());
        continue;
      }
      if (verdict.mode == DescentMode::PlusPattern || verdict.mode == DescentMode::MinusPattern) {
        ++pattern_hits;
        std::vector<long> vl;
        for (Eigen::Index i = 0; i < k; ++i) vl.push_back(v[i].to_int64());
        const bool square = oracle::chain_inverse_form(plumbing.weights(), vl) == minus_k;
        o.require(square && verdict.square_ok && verdict.boundary_ok && verdict.m_parity_ok, tag + " corollary without theorem");
      }
    }
  }
  if (o.passed) {
    o.detail = std::to_string(configs) + " configurations, " + std::to_string(pattern_hits) +
               " pattern classes, all pass the general criteria";
  }
  return o;
}

Outcome embedding_validation() {
  Outcome o;
  for (const char* file : {"z_lattice.lat", "ztilde_lattice.lat", "ss_lattice.lat"}) {
    const Dataset d = load_dataset(kScripts / "data" / file);
    for (const auto& [name, cfg] : d.configs) o.require(validate_embedding(cfg).ok, std::string(file) + " " + name + " invalid");
  }
  auto disjoint = [](const EmbeddedConfiguration& a, const EmbeddedConfiguration& b) {
    for (const Cls& u : a.spheres)
      for (const Cls& v : b.spheres)
        if (!pair(u, v).is_zero()) return false;
    return true;
  };
  const Dataset z = load_dataset(kScripts / "data" / "z_lattice.lat");
  o.require(disjoint(z.configs.at("C31"), z.configs.at("C305")), "C31 meets C305");
  const Dataset zt = load_dataset(kScripts / "data" / "ztilde_lattice.lat");
  o.require(disjoint(zt.configs.at("C31"), zt.configs.at("C31p")) && disjoint(zt.configs.at("C31"), zt.configs.at("C305")) &&
                disjoint(zt.configs.at("C31p"), zt.configs.at("C305")),
            "ztilde configurations not pairwise disjoint");
  const Cls e6 = Cls::generator(z.lattice, "E6");
  o.require(square(e6) == -1 && pair(e6, z.classes.at("u2")) == 1 && pair(e6, z.classes.at("Semb")) == 1,
            "E6 does not join u2 and the -18 sphere");
  if (o.passed) o.detail = "all shipped configurations validate; disjoint; E6 meets u2 and the -18 sphere once";
  return o;
}

Outcome order_independence() {
  Outcome o;
  for (long n = 1; n <= 3; ++n) {
    const Report a = run("z_construction.surg", n);
    const Report b = run("z_construction_swapped.surg", n);
    o.require(a.final_section() == b.final_section(), "final sections differ at n=" + std::to_string(n));
  }
  if (o.passed) o.detail = "identical final sections for n = 1..3";
  return o;
}

Outcome coprimality() {
  Outcome o;
  o.require(coprimality_certificate(3, 305), "gcd(9, 93025) != 1");
  const Report z = run("z_construction.surg", 1);
  o.require(z.final_ledger.pi1 == Pi1Status::SimplyConnected, "Z ends with pi1 " + to_string(z.final_ledger.pi1));
  bool cited = false;
  for (const std::string& c : z.certificates) cited = cited || c.find("93025") != std::string::npos;
  o.require(cited, "no certificate mentions 93025");
  const Report y = run("ss_y.surg", 1);
  o.require(y.final_ledger.pi1 == Pi1Status::H1Zero, "ss_y ends with pi1 " + to_string(y.final_ledger.pi1));
  o.require(!y.type.has_value(), "ss_y was typed");
  if (o.passed) o.detail = "Z: SimplyConnected via gcd(9, 93025) = 1; ss_y: H1Zero, type refused";
  return o;
}

Outcome z_vs_ztilde() {
  Outcome o;
  const NondiffeoCertificate c = nondiffeo_certificate({run("z_construction.surg", 2), run("ztilde_construction.surg", 2)});
  o.require(c.groups.size() == 1 && c.str().find("not distinguished") != std::string::npos, "Z and Z~ separated");
  if (o.passed) o.detail = "same |SW| multiset at n = 2, not distinguished";
  return o;
}

Outcome e2_type() {
  Outcome o;
  const auto as_odd = freedman_type(make_ledger(3, 19, Pi1Status::SimplyConnected, Parity::Odd));
  o.require(as_odd && as_odd->a == 3 && as_odd->b == 19, "odd (3, 19) ledger not typed as (3, 19)");
  o.require(!freedman_type(ledger_e2()).has_value(), "even E(2) ledger was typed");
  if (o.passed) o.detail = "odd (3, 19) -> 3CP^2 # 19(-CP^2); even E(2) refused";
  return o;
}

struct Criterion {
  std::string label;
  double budget;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1 configuration fidelity", 1.0, configuration_fidelity},
      {"2 ledger endpoint", 2.0, ledger_endpoint},
      {"3 SW endpoint n = 1..5", 50.0, sw_endpoint},
      {"4 nondiffeomorphism n = 1..10", 60.0, nondiffeomorphism},
      {"5 property suite p <= 50", 120.0, property_suite},
      {"6 embedding validation", 1.0, embedding_validation},
      {"7 order independence", 60.0, order_independence},
      {"8 coprimality certificate", 60.0, coprimality},
      {"extra: Z vs Z~ at equal n", 60.0, z_vs_ztilde},
      {"extra: E(2) topological type", 1.0, e2_type},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.passed && secs > c.budget) {
      o.passed = false;
      o.detail = "over budget; " + o.detail;
    }
    failures += o.passed ? 0 : 1;
    std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << c.label << "  (" << std::fixed << std::setprecision(3) << secs << " s, budget "
              << std::setprecision(0) << c.budget << " s)  " << o.detail << "\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
