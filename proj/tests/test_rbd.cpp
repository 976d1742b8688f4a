#include "support.hpp"
#include "surgery/rbd.hpp"

#include <random>

using namespace surgery;
using namespace test_support;

namespace {

Cls expr(const Dataset& d, const std::string& text) {
  const auto lines = tokenize(text);
  TokenCursor cur(lines.at(0));
  return evaluate_class_expr(parse_class_expr(cur), d.lattice, d.classes);
}

IntVector ivec(std::initializer_list<long> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v[i++] = x;
  return v;
}

/// Chain spheres u_1..u_k plus dual classes d_i with u_i . d_j = delta_ij and
/// d_i . d_j = 0: Gram [[Q, I], [I, 0]].
EmbeddedConfiguration extended(const LinearPlumbing& plumbing) {
  const auto k = static_cast<Eigen::Index>(plumbing.length());
  IntMatrix g = IntMatrix::Zero(2 * k, 2 * k);
  g.topLeftCorner(k, k) = intersection_matrix(plumbing);
  for (Eigen::Index i = 0; i < k; ++i) g(i, k + i) = g(k + i, i) = 1;
  std::vector<std::string> names;
  for (Eigen::Index i = 0; i < k; ++i) names.push_back("u" + std::to_string(i + 1));
  for (Eigen::Index i = 0; i < k; ++i) names.push_back("d" + std::to_string(i + 1));
  auto lattice = std::make_shared<const AmbientLattice>(names, g, std::vector<bool>(static_cast<std::size_t>(2 * k), false));
  EmbeddedConfiguration cfg{"C", plumbing, {}, {}};
  for (Eigen::Index i = 0; i < k; ++i) {
    cfg.sphere_names.push_back(names[static_cast<std::size_t>(i)]);
    cfg.spheres.push_back(Cls::generator(lattice, i));
  }
  return cfg;
}

FactoredSW z_function(const Dataset& z, int n) {
  FactoredSW f(sw_k3(z.lattice));
  const Cls t = Cls::generator(z.lattice, "T");
  for (int i = 0; i < 3; ++i) f = f.with_knot_surgery(t, "T", alexander_twist(n));
  for (int i = 1; i <= 24; ++i) f = f.with_blow_up(Cls::generator(z.lattice, "E" + std::to_string(i)));
  return f;
}

}  // namespace

TEST_SUITE("rbd") {

TEST_CASE("restriction squares") {
  const ConfigurationAnalysis c21(from_pq(2, 1));
  CHECK(c21.restriction_square(ivec({2})) == Rational(-1));
  const ConfigurationAnalysis c31(from_pq(3, 1));
  CHECK(c31.restriction_square(ivec({3, 0})) == Rational(-2));
  CHECK(c31.restriction_square(ivec({0, 0})) == Rational(0));
  CHECK(c31.det() == 9);
  CHECK(c31.boundary_order() == 9);
  CHECK_THROWS_AS(ConfigurationAnalysis(LinearPlumbing({-2, -2})), std::invalid_argument);
}

TEST_CASE("restriction square through the lattice") {
  const Dataset& z = dataset("z_lattice.lat");
  const EmbeddedConfiguration& c31 = z.configs.at("C31");
  CHECK(restriction_square(expr(z, "6T + E1..E24"), c31) == Rational(-2));
  EmbeddedConfiguration broken = c31;
  std::swap(broken.spheres[0], broken.spheres[1]);
  CHECK_THROWS_AS(restriction_square(expr(z, "T"), broken), std::invalid_argument);
}

TEST_CASE("corollary patterns on the shipped configurations") {
  const Dataset& z = dataset("z_lattice.lat");
  const EmbeddedConfiguration& c305 = z.configs.at("C305");
  const EmbeddedConfiguration& c31 = z.configs.at("C31");
  const Cls plus = expr(z, "6T + E1..E24");
  const Cls minus7 = expr(z, "6T + E1..E6 - E7 + E8..E24");
  CHECK(corollary_condition(plus, c305) == DescentMode::PlusPattern);
  CHECK(corollary_condition(minus7, c305) == DescentMode::PlusPattern);
  CHECK(corollary_condition(-plus, c305) == DescentMode::MinusPattern);
  CHECK(pairing_vector(plus, c31) == ivec({3, 0}));
  CHECK(corollary_condition(plus, c31) == DescentMode::PlusPattern);
  CHECK(pairing_vector(minus7, c31) == ivec({-1, 0}));
  CHECK(corollary_condition(minus7, c31) == DescentMode::Fails);
  CHECK(corollary_condition(Cls::zero(z.lattice), c31) == DescentMode::Fails);
  CHECK(corollary_condition(Cls::zero(z.lattice), c305) == DescentMode::Fails);
}

TEST_CASE("theorem verdicts") {
  const Dataset& z = dataset("z_lattice.lat");
  const EmbeddedConfiguration& c31 = z.configs.at("C31");
  const DescentVerdict v = theorem_condition(expr(z, "6T + E1..E24"), c31);
  CHECK(v.mode == DescentMode::PlusPattern);
  CHECK(v.restriction_square == Rational(-2));
  CHECK(v.square_ok);
  CHECK(v.boundary_ok);
  CHECK(v.m_parity_ok);

  const DescentVerdict zero = theorem_condition(Cls::zero(z.lattice), c31);
  CHECK(zero.mode == DescentMode::Fails);
  CHECK(zero.restriction_square == Rational(0));
  CHECK_FALSE(zero.square_ok);

  const DescentVerdict failed = theorem_condition(expr(z, "6T + E1..E6 - E7 + E8..E24"), c31);
  CHECK(failed.mode == DescentMode::Fails);
}

TEST_CASE("pattern vector squares to -k for p <= 200") {
  for (auto [p, q] : oracle::coprime_pairs(200)) {
    CAPTURE(p);
    CAPTURE(q);
    const CFrac c = cfrac_expand(p, q);
    const ConfigurationAnalysis a(from_pq(p, q));
    std::vector<long> pattern;
    IntVector v(static_cast<Eigen::Index>(c.length()));
    for (std::size_t i = 0; i < c.length(); ++i) {
      pattern.push_back(c.entries[i] - 2);
      v[static_cast<Eigen::Index>(i)] = c.entries[i] - 2;
    }
    const oracle::Q k(static_cast<long>(c.length()));
    REQUIRE(oracle::chain_inverse_form(negated(c.entries), pattern) == -k);
    REQUIRE(rat(a.restriction_square(v)) == -k);
    REQUIRE(a.corollary(v) == DescentMode::PlusPattern);
    REQUIRE(a.corollary(-v) == DescentMode::MinusPattern);
  }
}

TEST_CASE("corollary implies theorem on random classes, p <= 50") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coef(-3, 3);
  std::size_t patterns = 0;
  std::size_t theorem_only = 0;
  for (auto [p, q] : oracle::coprime_pairs(50)) {
    CAPTURE(p);
    CAPTURE(q);
    const LinearPlumbing plumbing = from_pq(p, q);
    const EmbeddedConfiguration cfg = extended(plumbing);
    REQUIRE(validate_embedding(cfg).ok);
    const ConfigurationAnalysis a(plumbing);
    const auto k = static_cast<Eigen::Index>(plumbing.length());
    const IntMatrix& qm = a.matrix();
    const oracle::Mat oq = to_oracle(qm);

    IntVector pattern(k);
    for (Eigen::Index i = 0; i < k; ++i) pattern[i] = -plumbing.weights()[static_cast<std::size_t>(i)] - 2;

    for (int trial = 0; trial < 1000; ++trial) {
      // a: sphere coordinates, c: dual coordinates; L . u = Q a + c.
      IntVector av(k), cv(k);
      for (Eigen::Index i = 0; i < k; ++i) av[i] = coef(rng);
      const int kind = trial % 4;
      if (kind == 0) {
        cv = pattern - qm * av;
      } else if (kind == 1) {
        cv = -pattern - qm * av;
      } else if (kind == 2) {
        for (Eigen::Index i = 0; i < k; ++i) cv[i] = coef(rng);
        cv = cv * Integer(p);  // boundary class divisible by p more often
      } else {
        for (Eigen::Index i = 0; i < k; ++i) cv[i] = coef(rng);
      }
      const LatticePtr& lat = cfg.spheres[0].lattice();
      IntVector coords(2 * k);
      coords << av, cv;
      const Cls l(lat, coords);
      const IntVector v = qm * av + cv;
      if (trial < 4) REQUIRE(pairing_vector(l, cfg) == v);

      DescentVerdict verdict;
      REQUIRE_NOTHROW(verdict = a.verdict(v));
      if (trial < 4) REQUIRE(theorem_condition(l, cfg).mode == verdict.mode);
      if (verdict.mode == DescentMode::PlusPattern || verdict.mode == DescentMode::MinusPattern) {
        ++patterns;
        REQUIRE(verdict.square_ok);
        REQUIRE(verdict.boundary_ok);
        REQUIRE(verdict.m_parity_ok);
        if (trial < 2) {
          // p Q^{-1} v integral: the boundary class is p times an element.
          std::vector<oracle::Q> rhs;
          for (Eigen::Index i = 0; i < k; ++i) rhs.emplace_back(v[i].raw());
          for (const oracle::Q& y : oracle::solve(oq, rhs)) REQUIRE(boost::multiprecision::denominator(oracle::Q(y * p)) == 1);
        }
      } else if (verdict.mode == DescentMode::TheoremOnly) {
        ++theorem_only;
        REQUIRE(verdict.square_ok);
        REQUIRE(verdict.boundary_ok);
        REQUIRE(verdict.m_parity_ok);
      }
      if (verdict.square_ok) {
        std::vector<long> vl;
        for (Eigen::Index i = 0; i < k; ++i) vl.push_back(v[i].to_int64());
        REQUIRE(oracle::chain_inverse_form(plumbing.weights(), vl) == oracle::Q(-k));
      }
    }
  }
  CHECK(patterns > 0);
  MESSAGE("pattern classes: " << patterns << ", theorem-only classes: " << theorem_only);
}

TEST_CASE("explicit descent keeps coefficients") {
  const Dataset& z = dataset("z_lattice.lat");
  const EmbeddedConfiguration& c31 = z.configs.at("C31");
  SWFunction sw = sw_k3(z.lattice);
  CHECK(descend(sw, c31).empty());

  const Cls t = Cls::generator(z.lattice, "T");
  for (int i = 0; i < 3; ++i) sw = knot_surgery(sw, t, alexander_twist(2));
  for (const char* e : {"E1", "E5", "E6", "E7"}) sw = blow_up(sw, Cls::generator(z.lattice, e));
  const SWFunction down = descend(sw, c31);
  CHECK_FALSE(down.empty());
  for (const auto& [l, c] : basic_classes(down)) {
    REQUIRE(c == sw.coefficient(l));
    REQUIRE(theorem_condition(l, c31).mode != DescentMode::Fails);
  }
  for (const auto& [l, c] : basic_classes(sw))
    if (down.coefficient(l).is_zero()) REQUIRE(theorem_condition(l, c31).mode == DescentMode::Fails);
}

TEST_CASE("factored descent matches explicit descent") {
  const Dataset& z = dataset("z_lattice.lat");
  const EmbeddedConfiguration& c31 = z.configs.at("C31");
  const Cls t = Cls::generator(z.lattice, "T");
  SWFunction sw = sw_k3(z.lattice);
  FactoredSW f(sw_k3(z.lattice));
  for (int i = 0; i < 3; ++i) {
    sw = knot_surgery(sw, t, alexander_twist(3));
    f = f.with_knot_surgery(t, "T", alexander_twist(3));
  }
  for (const char* e : {"E1", "E2", "E5", "E6", "E7"}) {
    sw = blow_up(sw, Cls::generator(z.lattice, e));
    f = f.with_blow_up(Cls::generator(z.lattice, e));
  }
  const DescentOutcome out = descend(f, c31);
  CHECK(out.met_factors == 3);
  CHECK(out.free_factors == 2);
  CHECK(out.result.expand() == descend(sw, c31));
}

TEST_CASE("two-stage descent of the Z function") {
  const Dataset& z = dataset("z_lattice.lat");
  const EmbeddedConfiguration& c305 = z.configs.at("C305");
  const EmbeddedConfiguration& c31 = z.configs.at("C31");
  const FactoredSW f = z_function(z, 2);

  const DescentOutcome first = descend(f, c305);
  CHECK(first.candidates == Integer(7) * Integer(1 << 23));
  CHECK(first.result.term_count() == 4);
  const SWFunction y = first.result.expand();
  REQUIRE(y.size() == 4);
  for (const char* s : {"6T + E1..E24", "6T + E1..E6 - E7 + E8..E24", "-6T - E1..E24", "-6T - E1..E6 + E7 - E8..E24"})
    CHECK(abs(y.coefficient(expr(z, s))) == 8);

  const DescentOutcome second = descend(first.result, c31);
  const SWFunction final_sw = second.result.expand();
  REQUIRE(final_sw.size() == 2);
  CHECK(abs(final_sw.coefficient(expr(z, "6T + E1..E24"))) == 8);
  CHECK(abs(final_sw.coefficient(expr(z, "-6T - E1..E24"))) == 8);
  CHECK(final_sw.is_charge_symmetric());

  const DescentOutcome swapped = descend(descend(f, c31).result, c305);
  CHECK(swapped.result.expand() == final_sw);
}

TEST_CASE("mode names") {
  CHECK(to_string(DescentMode::PlusPattern) == "PlusPattern");
  CHECK(to_string(DescentMode::Fails) == "Fails");
}

}
