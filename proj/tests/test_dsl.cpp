#include "support.hpp"
#include "surgery/script.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace surgery;
using namespace test_support;

namespace {

Expr parse_text(const std::string& text, const std::set<std::string>& vars) {
  const auto lines = tokenize(text);
  TokenCursor cur(lines.at(0));
  Expr e = parse_expr(cur, vars);
  cur.expect_end();
  return e;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PipelineScript parse_text_script(const std::string& text) { return parse_script(text, file_loader(scripts_dir().string())); }

std::string parse_error(const std::string& text) {
  try {
    parse_text_script(text);
  } catch (const ParseError& e) {
    return e.message();
  }
  return "";
}

Expr random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 1);
  switch (pick(rng)) {
    case 0: return Expr::number(Integer(static_cast<long>(rng() % 20)));
    case 1: return Expr::var("n");
    case 2: {
      Expr e{Expr::Kind::Neg, 0, "", {random_expr(rng, depth - 1)}};
      return e;
    }
    case 3: return Expr{Expr::Kind::Add, 0, "", {random_expr(rng, depth - 1), random_expr(rng, depth - 1)}};
    case 4: return Expr{Expr::Kind::Sub, 0, "", {random_expr(rng, depth - 1), random_expr(rng, depth - 1)}};
    case 5: return Expr{Expr::Kind::Mul, 0, "", {random_expr(rng, depth - 1), random_expr(rng, depth - 1)}};
    default: return Expr{Expr::Kind::Pow, 0, "", {random_expr(rng, depth - 1), Expr::number(Integer(static_cast<long>(rng() % 4)))}};
  }
}

Integer direct_eval(const Expr& e, long n) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.value;
    case Expr::Kind::Var: return n;
    case Expr::Kind::Neg: return -direct_eval(e.args[0], n);
    case Expr::Kind::Add: return direct_eval(e.args[0], n) + direct_eval(e.args[1], n);
    case Expr::Kind::Sub: return direct_eval(e.args[0], n) - direct_eval(e.args[1], n);
    case Expr::Kind::Mul: return direct_eval(e.args[0], n) * direct_eval(e.args[1], n);
    case Expr::Kind::Pow: {
      Integer out = 1;
      const Integer base = direct_eval(e.args[0], n);
      for (Integer i = 0; i < e.args[1].value; i += 1) out *= base;
      return out;
    }
  }
  return 0;
}

}  // namespace

TEST_SUITE("dsl") {

TEST_CASE("integer expressions") {
  const std::set<std::string> n{"n"};
  CHECK(evaluate_int(parse_text("n^3", n), {{"n", 4}}) == 64);
  CHECK(evaluate_int(parse_text("7*2^24", n), {}) == Integer(7) * Integer(1 << 24));
  CHECK(evaluate_int(parse_text("2n - 1", n), {{"n", 5}}) == 9);
  CHECK(evaluate_int(parse_text("14 * 2^21", n), {}) == Integer(14) * Integer(1 << 21));
  CHECK(print_expr(parse_text("2n - 1", n)) == "2*n - 1");
  CHECK_THROWS_AS(evaluate_int(parse_text("n", n), {}), std::invalid_argument);
  CHECK(expr_vars(parse_text("n^2 + 3", n)) == std::set<std::string>{"n"});
}

TEST_CASE("laurent expressions") {
  const Expr e = parse_text("n t - (2n - 1) + n t^-1", {"n", "t"});
  const Laurent l = evaluate_laurent(e, {{"n", 3}}, "t");
  CHECK(l == Laurent{{1, 3}, {0, -5}, {-1, 3}});
  const Laurent sq = evaluate_laurent(parse_text("(t + t^-1)^2", {"t"}), {}, "t");
  CHECK(sq == Laurent{{2, 1}, {0, 2}, {-2, 1}});
  CHECK_THROWS_AS(evaluate_laurent(parse_text("(t + 1)^-1", {"t"}), {}, "t"), std::invalid_argument);
}

TEST_CASE("expression printing round trips") {
  std::mt19937 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const Expr e = random_expr(rng, 4);
    const std::string text = print_expr(e);
    CAPTURE(text);
    const Expr back = parse_text(text, {"n"});
    REQUIRE(print_expr(back) == text);
    for (long n : {-2L, 0L, 3L}) REQUIRE(evaluate_int(back, {{"n", n}}) == direct_eval(e, n));
  }
}

TEST_CASE("minimal script") {
  const PipelineScript s = parse_text_script("start E2\nknot_surgery fiber=T alexander=twist(n)\n");
  REQUIRE(s.steps.size() == 2);
  CHECK(std::holds_alternative<StartStmt>(s.steps[0].stmt));
  CHECK(std::holds_alternative<KnotSurgeryStmt>(s.steps[1].stmt));
  CHECK(s.steps[1].line == 2);
}

TEST_CASE("errors carry positions") {
  try {
    parse_text_script("lattice \"data/z_lattice.lat\"\nstart E2\n\nrbd C_unknown\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.message() == "undeclared config C_unknown");
    CHECK(e.line() == 4);
    CHECK(e.column() == 5);
  }
  CHECK(parse_error("frobnicate X\n") == "unknown statement 'frobnicate'");
  CHECK(parse_error("lattice \"data/z_lattice.lat\"\nassert_disjoint C31\n").find("configuration name") != std::string::npos);
  CHECK(parse_error("lattice \"data/z_lattice.lat\"\nstart E2\nblowup S\n") == "S is not an exceptional generator");
  CHECK(parse_error("lattice \"data/z_lattice.lat\"\nstart E2\nblowup E1\nblowup E1\n") == "E1 is already blown up");
  CHECK(parse_error("lattice \"data/z_lattice.lat\"\nstart E2\nrbd C31\nrbd C31\n") == "config C31 already blown down");
  CHECK(parse_error("lattice \"data/z_lattice.lat\"\nassert_pair Q, T = 0\n") == "undeclared class Q");
  CHECK(parse_error("lattice \"data/z_lattice.lat\"\nrbd C31\n") == "'rbd' before start");
  CHECK(parse_error("start E2\nlattice \"data/z_lattice.lat\"\n") == "lattice must precede start");
  CHECK(parse_error("start K3\n") == "unknown model K3 (supported: E2)");
  CHECK(parse_error("lattice \"data/missing.lat\"\n").find("missing.lat") != std::string::npos);
  CHECK(parse_error("lattice \"data/z_lattice.lat\"\nstart E2\nassert_ledger e=1 e=2\n") == "ledger field e given twice");
  CHECK(parse_error("lattice \"data/z_lattice.lat\"\nstart E2 extra\n") != "");
}

TEST_CASE("shipped scripts round trip") {
  for (const char* name : {"z_construction.surg", "z_construction_swapped.surg", "ztilde_construction.surg", "ss_y.surg"}) {
    CAPTURE(name);
    const PipelineScript s = parse_text_script(slurp(scripts_dir() / name));
    const std::string printed = print_script(s);
    const PipelineScript again = parse_text_script(printed);
    CHECK(again == s);
    CHECK(print_script(again) == printed);
  }
}

TEST_CASE("declare-before-use holds under every shuffle") {
  struct Line {
    std::string text;
    std::vector<int> needs;
  };
  // 0 lattice, 1 start, 2..4 classes, 5 config, then uses.
  const std::vector<Line> lines{
      {"lattice \"data/z_lattice.lat\"", {}},
      {"start E2", {}},
      {"declare_class A1 = Fp - 2E7 - E5", {0}},
      {"declare_class A2 = E5 - E6", {0}},
      {"declare_class A3 = A1 + A2", {0, 2, 3}},
      {"declare_config X plumbing=(-5, -2) spheres=[A1, A2]", {0, 2, 3}},
      {"rbd X", {1, 5}},
      {"assert_pair A3, E6 = 1", {0, 4}},
      {"knot_surgery fiber=T alexander=twist(n)", {1}},
      {"assert_sw A3 abs=0", {1, 4}},
      {"assert_embedding X", {5}},
      {"link_configs X C31 via=A2", {0, 5}},
  };
  std::vector<int> order(lines.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 rng(99);
  int accepted = 0;
  int rejected = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> pos(lines.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    bool ok = pos[0] < pos[1];
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (int d : lines[i].needs) ok = ok && pos[static_cast<std::size_t>(d)] < pos[i];
    std::string text;
    for (int i : order) text += lines[static_cast<std::size_t>(i)].text + "\n";
    CAPTURE(text);
    bool parsed = true;
    try {
      parse_text_script(text);
    } catch (const ParseError&) {
      parsed = false;
    }
    REQUIRE(parsed == ok);
    (ok ? accepted : rejected) += 1;
  }
  CHECK(accepted > 0);
  CHECK(rejected > 0);
}

TEST_CASE("dataset format errors") {
  CHECK_THROWS_AS(parse_dataset("generators T S\nrow T: S=1\nrow S: T=2\n"), ParseError);
  CHECK_THROWS_AS(parse_dataset("generators T\nclass U = T + Q\n"), ParseError);
  const Dataset d = parse_dataset("generators A B E1..E3\nexceptional E1..E3\nrow A: A=-4\nclass U = A - E1\n");
  CHECK(d.lattice->rank() == 5);
  CHECK(square(d.classes.at("U")) == -5);
  CHECK(expand_name_range("E1", "E3") == std::vector<std::string>{"E1", "E2", "E3"});
  CHECK_THROWS_AS(expand_name_range("E3", "E1"), std::invalid_argument);
}

}
