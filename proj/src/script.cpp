#include "surgery/script.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <sstream>

namespace surgery {

namespace {

const std::set<std::string> kIntVars{"n"};
const std::set<std::string> kPolyVars{"n", "t"};

// Used by `start` when no lattice statement came first: fiber and section.
constexpr const char* kDefaultLattice = "generators T S\nrow T: S=1\nrow S: S=-2\n";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

class ScriptParser {
 public:
  explicit ScriptParser(const DatasetLoader& loader) : loader_(loader) {}

  PipelineScript run(std::string_view text) {
    PipelineScript script;
    for (const SourceLine& line : tokenize(text)) {
      TokenCursor cur(line);
      script.steps.push_back({line.number, statement(cur)});
      cur.expect_end();
    }
    script.dataset = dataset_;
    return script;
  }

 private:
  Statement statement(TokenCursor& cur) {
    const Token& head = cur.peek();
    const std::string kw = cur.expect_ident("a statement keyword");
    if (kw == "lattice") return lattice(cur, head);
    if (kw == "start") return start(cur, head);
    if (kw == "knot_surgery") return knot_surgery(cur, head);
    if (kw == "blowup") return blowup(cur, head);
    if (kw == "declare_class") return declare_class(cur);
    if (kw == "declare_config") return declare_config(cur);
    if (kw == "rbd") return rbd(cur, head);
    if (kw == "link_configs") return link(cur);
    if (kw == "assert_ledger") return assert_ledger(cur, head);
    if (kw == "assert_type") return assert_type(cur, head);
    if (kw == "assert_pi1") return assert_flag<AssertPi1Stmt>(cur, head, parse_pi1);
    if (kw == "assert_parity") return assert_flag<AssertParityStmt>(cur, head, parse_parity);
    if (kw == "assert_embedding") return AssertEmbeddingStmt{config_name(cur)};
    if (kw == "assert_disjoint") {
      std::string a = config_name(cur);
      return AssertDisjointStmt{std::move(a), config_name(cur)};
    }
    if (kw == "assert_pair") return assert_pair(cur);
    if (kw == "assert_basic_count") {
      require_started(head);
      return AssertBasicCountStmt{int_expr(cur)};
    }
    if (kw == "assert_sw") return assert_sw(cur, head);
    if (kw == "assert_sw_symmetric") {
      require_started(head);
      return AssertSymmetricStmt{};
    }
    throw cur.error_at(head, "unknown statement '" + kw + "'");
  }

  void require_lattice(const Token& at) const {
    if (!dataset_) throw ParseError(at.line, at.column, "no lattice loaded");
  }

  void require_started(const Token& at) const {
    if (!started_) throw ParseError(at.line, at.column, "'" + at.text + "' before start");
  }

  Expr int_expr(TokenCursor& cur) { return parse_expr(cur, kIntVars); }

  ClassExpr class_expr(TokenCursor& cur) {
    const Token& at = cur.peek();
    require_lattice(at);
    ClassExpr expr = parse_class_expr(cur);
    for (const std::string& name : expr.names()) {
      if (!dataset_->lattice->index_of(name) && !classes_.contains(name)) {
        throw cur.error_at(at, "undeclared class " + name);
      }
    }
    return expr;
  }

  std::string config_name(TokenCursor& cur) {
    const Token& at = cur.peek();
    std::string name = cur.expect_ident("a configuration name");
    if (!configs_.contains(name)) throw cur.error_at(at, "undeclared config " + name);
    return name;
  }

  std::string keyword(TokenCursor& cur, const char* want) {
    const Token& at = cur.peek();
    const std::string key = cur.expect_ident(std::string(want) + "=");
    if (key != want) throw cur.error_at(at, "expected " + std::string(want) + "=, got " + key);
    cur.expect_punct("=");
    return key;
  }

  Statement lattice(TokenCursor& cur, const Token& head) {
    if (started_) throw cur.error_at(head, "lattice must precede start");
    if (dataset_) throw cur.error_at(head, "lattice already loaded");
    const Token& at = cur.peek();
    if (at.kind != TokenKind::String) throw cur.error_at(at, "expected a quoted dataset path");
    std::string path = cur.next().text;
    try {
      dataset_ = loader_(path);
    } catch (const ParseError& e) {
      throw cur.error_at(at, path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.message());
    } catch (const std::exception& e) {
      throw cur.error_at(at, e.what());
    }
    for (const auto& [name, cls] : dataset_->classes) classes_.insert(name);
    for (const auto& [name, cfg] : dataset_->configs) configs_.insert(name);
    return LatticeStmt{std::move(path)};
  }

  Statement start(TokenCursor& cur, const Token& head) {
    if (!dataset_) dataset_ = std::make_shared<const Dataset>(parse_dataset(kDefaultLattice));
    if (started_) throw cur.error_at(head, "start appears twice");
    const Token& at = cur.peek();
    std::string model = cur.expect_ident("a model name");
    if (model != "E2") throw cur.error_at(at, "unknown model " + model + " (supported: E2)");
    started_ = true;
    return StartStmt{std::move(model)};
  }

  Statement knot_surgery(TokenCursor& cur, const Token& head) {
    require_started(head);
    keyword(cur, "fiber");
    ClassExpr fiber = class_expr(cur);
    keyword(cur, "alexander");
    const Token& at = cur.peek();
    const std::string kind = cur.expect_ident("twist(...) or poly(...)");
    if (kind != "twist" && kind != "poly") throw cur.error_at(at, "expected twist(...) or poly(...)");
    cur.expect_punct("(");
    AlexanderSpec spec{kind == "twist", parse_expr(cur, kind == "twist" ? kIntVars : kPolyVars)};
    cur.expect_punct(")");
    return KnotSurgeryStmt{std::move(fiber), std::move(spec)};
  }

  Statement blowup(TokenCursor& cur, const Token& head) {
    require_started(head);
    const Token& at = cur.peek();
    std::string name = cur.expect_ident("an exceptional generator");
    const auto idx = dataset_->lattice->index_of(name);
    if (!idx || !dataset_->lattice->is_exceptional(*idx)) throw cur.error_at(at, name + " is not an exceptional generator");
    if (!blown_up_.insert(name).second) throw cur.error_at(at, name + " is already blown up");
    BlowupStmt out{std::move(name), std::nullopt};
    if (!cur.at_end()) {
      keyword(cur, "at");
      const Token& s = cur.peek();
      if (s.kind != TokenKind::String) throw cur.error_at(s, "expected a quoted description");
      out.at = cur.next().text;
    }
    return out;
  }

  Statement declare_class(TokenCursor& cur) {
    const Token& at = cur.peek();
    require_lattice(at);
    std::string name = cur.expect_ident("a class name");
    if (dataset_->lattice->index_of(name) || classes_.contains(name)) throw cur.error_at(at, "class " + name + " already declared");
    cur.expect_punct("=");
    ClassExpr expr = class_expr(cur);
    classes_.insert(name);
    return DeclareClassStmt{std::move(name), std::move(expr)};
  }

  Statement declare_config(TokenCursor& cur) {
    const Token& at = cur.peek();
    require_lattice(at);
    std::string name = cur.expect_ident("a configuration name");
    if (configs_.contains(name)) throw cur.error_at(at, "config " + name + " already declared");
    DeclareConfigStmt out{std::move(name), {}, {}, std::nullopt};
    keyword(cur, "plumbing");
    const Token& w = cur.peek();
    out.weights = cur.expect_weight_tuple();
    try {
      (void)LinearPlumbing(out.weights);
    } catch (const std::invalid_argument& e) {
      throw cur.error_at(w, e.what());
    }
    keyword(cur, "spheres");
    const Token& s = cur.peek();
    out.spheres = cur.expect_ident_list();
    for (const std::string& sphere : out.spheres) {
      if (!dataset_->lattice->index_of(sphere) && !classes_.contains(sphere)) throw cur.error_at(s, "undeclared class " + sphere);
    }
    if (out.spheres.size() != out.weights.size()) throw cur.error_at(s, "sphere count does not match the plumbing");
    if (!cur.at_end()) {
      keyword(cur, "pq");
      const long p = cur.expect_signed_int();
      cur.expect_punct(",");
      const long q = cur.expect_signed_int();
      out.pq = std::make_pair(static_cast<int>(p), static_cast<int>(q));
    }
    configs_.insert(out.name);
    return out;
  }

  Statement rbd(TokenCursor& cur, const Token& head) {
    require_started(head);
    const Token& at = cur.peek();
    std::string name = config_name(cur);
    if (!blown_down_.insert(name).second) throw cur.error_at(at, "config " + name + " already blown down");
    return RbdStmt{std::move(name)};
  }

  Statement link(TokenCursor& cur) {
    std::string a = config_name(cur);
    std::string b = config_name(cur);
    keyword(cur, "via");
    return LinkStmt{std::move(a), std::move(b), class_expr(cur)};
  }

  Statement assert_ledger(TokenCursor& cur, const Token& head) {
    require_started(head);
    AssertLedgerStmt out;
    if (cur.at_end()) throw cur.error("assert_ledger needs at least one of e=, sigma=, bplus=, bminus=");
    while (!cur.at_end()) {
      const Token& at = cur.peek();
      const std::string key = cur.expect_ident("e=, sigma=, bplus= or bminus=");
      cur.expect_punct("=");
      std::optional<long>* slot = key == "e"        ? &out.e
                                  : key == "sigma"  ? &out.sigma
                                  : key == "bplus"  ? &out.b_plus
                                  : key == "bminus" ? &out.b_minus
                                                    : nullptr;
      if (!slot) throw cur.error_at(at, "unknown ledger field " + key);
      if (slot->has_value()) throw cur.error_at(at, "ledger field " + key + " given twice");
      *slot = cur.expect_signed_int();
    }
    return out;
  }

  Statement assert_type(TokenCursor& cur, const Token& head) {
    require_started(head);
    if (cur.peek().kind == TokenKind::Ident && cur.peek().text == "refused") {
      cur.next();
      return AssertTypeStmt{std::nullopt};
    }
    keyword(cur, "a");
    const long a = cur.expect_signed_int();
    keyword(cur, "b");
    const long b = cur.expect_signed_int();
    return AssertTypeStmt{std::make_pair(a, b)};
  }

  template <class Stmt, class Parse>
  Statement assert_flag(TokenCursor& cur, const Token& head, Parse parse) {
    require_started(head);
    const Token& at = cur.peek();
    const std::string text = cur.expect_ident("a status name");
    try {
      return Stmt{parse(text)};
    } catch (const std::invalid_argument& e) {
      throw cur.error_at(at, e.what());
    }
  }

  Statement assert_pair(TokenCursor& cur) {
    ClassExpr a = class_expr(cur);
    cur.expect_punct(",");
    ClassExpr b = class_expr(cur);
    cur.expect_punct("=");
    return AssertPairStmt{std::move(a), std::move(b), cur.expect_signed_int()};
  }

  Statement assert_sw(TokenCursor& cur, const Token& head) {
    require_started(head);
    ClassExpr cls = class_expr(cur);
    keyword(cur, "abs");
    return AssertSWStmt{std::move(cls), int_expr(cur)};
  }

  const DatasetLoader& loader_;
  DatasetPtr dataset_;
  bool started_ = false;
  std::set<std::string> classes_;
  std::set<std::string> configs_;
  std::set<std::string> blown_up_;
  std::set<std::string> blown_down_;
};

std::string weight_tuple(const std::vector<int>& weights) { return "(" + run_length_string(weights) + ")"; }

}  // namespace

PipelineScript parse_script(std::string_view text, const DatasetLoader& loader) { return ScriptParser(loader).run(text); }

std::string print_statement(const Statement& stmt) {
  return std::visit(
      Overloaded{
          [](const LatticeStmt& s) { return "lattice \"" + s.path + "\""; },
          [](const StartStmt& s) { return "start " + s.model; },
          [](const KnotSurgeryStmt& s) {
            return "knot_surgery fiber=" + s.fiber.str() + " alexander=" + (s.alexander.twist ? "twist(" : "poly(") +
                   print_expr(s.alexander.arg) + ")";
          },
          [](const BlowupStmt& s) { return "blowup " + s.name + (s.at ? " at=\"" + *s.at + "\"" : ""); },
          [](const DeclareClassStmt& s) { return "declare_class " + s.name + " = " + s.expr.str(); },
          [](const DeclareConfigStmt& s) {
            std::string out = "declare_config " + s.name + " plumbing=" + weight_tuple(s.weights) + " spheres=[";
            for (std::size_t i = 0; i < s.spheres.size(); ++i) out += (i ? ", " : "") + s.spheres[i];
            out += "]";
            if (s.pq) out += " pq=" + std::to_string(s.pq->first) + "," + std::to_string(s.pq->second);
            return out;
          },
          [](const RbdStmt& s) { return "rbd " + s.config; },
          [](const LinkStmt& s) { return "link_configs " + s.first + " " + s.second + " via=" + s.via.str(); },
          [](const AssertLedgerStmt& s) {
            std::string out = "assert_ledger";
            if (s.e) out += " e=" + std::to_string(*s.e);
            if (s.sigma) out += " sigma=" + std::to_string(*s.sigma);
            if (s.b_plus) out += " bplus=" + std::to_string(*s.b_plus);
            if (s.b_minus) out += " bminus=" + std::to_string(*s.b_minus);
            return out;
          },
          [](const AssertTypeStmt& s) {
            return s.type ? "assert_type a=" + std::to_string(s.type->first) + " b=" + std::to_string(s.type->second)
                          : std::string("assert_type refused");
          },
          [](const AssertPi1Stmt& s) { return "assert_pi1 " + to_string(s.status); },
          [](const AssertParityStmt& s) { return "assert_parity " + to_string(s.parity); },
          [](const AssertEmbeddingStmt& s) { return "assert_embedding " + s.config; },
          [](const AssertDisjointStmt& s) { return "assert_disjoint " + s.first + " " + s.second; },
          [](const AssertPairStmt& s) { return "assert_pair " + s.first.str() + ", " + s.second.str() + " = " + std::to_string(s.value); },
          [](const AssertBasicCountStmt& s) { return "assert_basic_count " + print_expr(s.count); },
          [](const AssertSWStmt& s) { return "assert_sw " + s.cls.str() + " abs=" + print_expr(s.abs); },
          [](const AssertSymmetricStmt&) { return std::string("assert_sw_symmetric"); },
      },
      stmt);
}

std::string print_script(const PipelineScript& script) {
  std::string out;
  for (const Step& s : script.steps) out += print_statement(s.stmt) + "\n";
  return out;
}

DatasetLoader file_loader(const std::string& base_dir) {
  auto cache = std::make_shared<std::map<std::string, DatasetPtr>>();
  return [base_dir, cache](const std::string& path) -> DatasetPtr {
    std::filesystem::path p(path);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    const std::string key = p.lexically_normal().string();
    if (auto it = cache->find(key); it != cache->end()) return it->second;
    auto ds = std::make_shared<const Dataset>(load_dataset(p));
    cache->emplace(key, ds);
    return ds;
  };
}

}  // namespace surgery
