#include "surgery/dataset.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace surgery {

std::vector<std::string> ClassExpr::names() const {
  std::vector<std::string> out;
  for (const auto& t : terms) {
    if (t.last.empty()) {
      out.push_back(t.first);
    } else {
      for (auto& n : expand_name_range(t.first, t.last)) out.push_back(std::move(n));
    }
  }
  return out;
}

std::string ClassExpr::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const ClassTerm& t = terms[i];
    const bool negative = t.coefficient.sign() < 0;
    if (i == 0) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    const Integer mag = abs(t.coefficient);
    if (mag != 1) os << mag;
    os << t.first;
    if (!t.last.empty()) os << ".." << t.last;
  }
  return terms.empty() ? "0" : os.str();
}

ClassExpr parse_class_expr(TokenCursor& cursor) {
  ClassExpr expr;
  bool first = true;
  for (;;) {
    int sign = 1;
    if (cursor.accept_punct("-")) {
      sign = -1;
    } else if (!cursor.accept_punct("+") && !first) {
      break;
    }
    ClassTerm term{Integer(sign), "", ""};
    if (cursor.peek().kind == TokenKind::Number) {
      term.coefficient *= Integer::from_string(cursor.next().text);
      cursor.accept_punct("*");
    }
    term.first = cursor.expect_ident("a generator or class name");
    if (cursor.accept_punct("..")) term.last = cursor.expect_ident("the end of a name range");
    if (!term.last.empty()) {
      try {
        (void)expand_name_range(term.first, term.last);
      } catch (const std::invalid_argument& e) {
        throw cursor.error(e.what());
      }
    }
    expr.terms.push_back(std::move(term));
    first = false;
  }
  return expr;
}

Cls evaluate_class_expr(const ClassExpr& expr, const LatticePtr& lattice, const std::map<std::string, Cls>& classes) {
  Cls out = Cls::zero(lattice);
  for (const ClassTerm& t : expr.terms) {
    std::vector<std::string> names = t.last.empty() ? std::vector<std::string>{t.first} : expand_name_range(t.first, t.last);
    for (const std::string& name : names) {
      if (auto idx = lattice->index_of(name)) {
        out += t.coefficient * Cls::generator(lattice, *idx);
      } else if (auto it = classes.find(name); it != classes.end()) {
        out += t.coefficient * it->second;
      } else {
        throw std::invalid_argument("undeclared class " + name);
      }
    }
  }
  return out;
}

EmbeddedConfiguration make_configuration(const std::string& name, const std::vector<int>& weights,
                                         const std::vector<std::string>& sphere_names,
                                         const std::map<std::string, Cls>& classes, const LatticePtr& lattice) {
  LinearPlumbing probe(weights);
  LinearPlumbing plumbing = probe.pq() ? LinearPlumbing(weights, probe.pq()) : probe;
  EmbeddedConfiguration cfg{name, std::move(plumbing), sphere_names, {}};
  for (const std::string& s : sphere_names) {
    if (auto idx = lattice->index_of(s)) {
      cfg.spheres.push_back(Cls::generator(lattice, *idx));
    } else if (auto it = classes.find(s); it != classes.end()) {
      cfg.spheres.push_back(it->second);
    } else {
      throw std::invalid_argument("undeclared class " + s);
    }
  }
  return cfg;
}

namespace {

struct PendingLattice {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  std::set<std::string> exceptional;
  std::map<std::pair<std::size_t, std::size_t>, long> entries;
};

std::vector<std::string> read_name_list(TokenCursor& cur) {
  std::vector<std::string> out;
  while (!cur.at_end()) {
    const Token& at = cur.peek();
    std::string first = cur.expect_ident("a generator name");
    if (cur.accept_punct("..")) {
      std::string last = cur.expect_ident("the end of a name range");
      try {
        for (auto& n : expand_name_range(first, last)) out.push_back(std::move(n));
      } catch (const std::invalid_argument& e) {
        throw cur.error_at(at, e.what());
      }
    } else {
      out.push_back(std::move(first));
    }
    cur.accept_punct(",");
  }
  return out;
}

}  // namespace

Dataset parse_dataset(std::string_view text) {
  Dataset ds;
  PendingLattice pending;
  auto freeze = [&](const TokenCursor& cur) {
    if (ds.lattice) return;
    const auto n = static_cast<Eigen::Index>(pending.names.size());
    if (n == 0) throw cur.error("classes and configurations need a preceding 'generators' line");
    IntMatrix gram = IntMatrix::Zero(n, n);
    std::vector<bool> exceptional(pending.names.size(), false);
    for (const auto& e : pending.exceptional) {
      const auto i = static_cast<Eigen::Index>(pending.index.at(e));
      exceptional[static_cast<std::size_t>(i)] = true;
      gram(i, i) = -1;
    }
    for (const auto& [key, value] : pending.entries) {
      gram(static_cast<Eigen::Index>(key.first), static_cast<Eigen::Index>(key.second)) = value;
      gram(static_cast<Eigen::Index>(key.second), static_cast<Eigen::Index>(key.first)) = value;
    }
    try {
      ds.lattice = std::make_shared<const AmbientLattice>(pending.names, gram, exceptional);
    } catch (const std::invalid_argument& e) {
      throw cur.error(e.what());
    }
  };

  for (const SourceLine& line : tokenize(text)) {
    TokenCursor cur(line);
    const Token& head = cur.peek();
    const std::string keyword = cur.expect_ident("a declaration keyword");
    if (keyword == "lattice") {
      cur.expect_ident("a lattice name");
    } else if (keyword == "generators" || keyword == "exceptional") {
      if (ds.lattice) throw cur.error_at(head, "generators must be declared before classes and configurations");
      std::vector<std::string> names = read_name_list(cur);
      if (names.empty()) throw cur.error("expected at least one name");
      for (const std::string& n : names) {
        if (keyword == "generators") {
          if (!pending.index.emplace(n, pending.names.size()).second) throw cur.error_at(head, "duplicate generator " + n);
          pending.names.push_back(n);
        } else {
          if (!pending.index.contains(n)) throw cur.error_at(head, "undeclared generator " + n);
          pending.exceptional.insert(n);
        }
      }
    } else if (keyword == "row") {
      if (ds.lattice) throw cur.error_at(head, "Gram rows must precede classes and configurations");
      const Token& row_tok = cur.peek();
      const std::string row = cur.expect_ident("a generator name");
      auto ri = pending.index.find(row);
      if (ri == pending.index.end()) throw cur.error_at(row_tok, "undeclared generator " + row);
      cur.expect_punct(":");
      while (!cur.at_end()) {
        const Token& col_tok = cur.peek();
        const std::string col = cur.expect_ident("a generator name");
        auto ci = pending.index.find(col);
        if (ci == pending.index.end()) throw cur.error_at(col_tok, "undeclared generator " + col);
        cur.expect_punct("=");
        const long value = cur.expect_signed_int();
        auto key = std::minmax(ri->second, ci->second);
        auto [it, inserted] = pending.entries.emplace(key, value);
        if (!inserted && it->second != value) {
          throw cur.error_at(col_tok, "Gram entry (" + row + ", " + col + ") declared as both " + std::to_string(it->second) +
                                          " and " + std::to_string(value));
        }
      }
    } else if (keyword == "class") {
      freeze(cur);
      const Token& name_tok = cur.peek();
      const std::string name = cur.expect_ident("a class name");
      if (ds.lattice->index_of(name) || ds.classes.contains(name)) throw cur.error_at(name_tok, "class " + name + " already declared");
      cur.expect_punct("=");
      const Token& expr_tok = cur.peek();
      ClassExpr expr = parse_class_expr(cur);
      cur.expect_end();
      try {
        ds.classes.emplace(name, evaluate_class_expr(expr, ds.lattice, ds.classes));
      } catch (const std::invalid_argument& e) {
        throw cur.error_at(expr_tok, e.what());
      }
      ds.class_order.push_back(name);
      ds.class_sources.emplace(name, std::move(expr));
    } else if (keyword == "config") {
      freeze(cur);
      const Token& name_tok = cur.peek();
      const std::string name = cur.expect_ident("a configuration name");
      if (ds.configs.contains(name)) throw cur.error_at(name_tok, "configuration " + name + " already declared");
      std::vector<int> weights;
      std::vector<std::string> spheres;
      std::optional<std::pair<int, int>> pq;
      bool have_weights = false;
      bool have_spheres = false;
      while (!cur.at_end()) {
        const Token& key_tok = cur.peek();
        const std::string key = cur.expect_ident("plumbing=, spheres= or pq=");
        cur.expect_punct("=");
        if (key == "plumbing") {
          weights = cur.expect_weight_tuple();
          have_weights = true;
        } else if (key == "spheres") {
          spheres = cur.expect_ident_list();
          have_spheres = true;
        } else if (key == "pq") {
          const long p = cur.expect_signed_int();
          cur.expect_punct(",");
          const long q = cur.expect_signed_int();
          pq = std::make_pair(static_cast<int>(p), static_cast<int>(q));
        } else {
          throw cur.error_at(key_tok, "unknown configuration field " + key);
        }
      }
      if (!have_weights || !have_spheres) throw cur.error_at(name_tok, "configuration needs plumbing= and spheres=");
      try {
        EmbeddedConfiguration cfg = make_configuration(name, weights, spheres, ds.classes, ds.lattice);
        if (pq && cfg.plumbing.pq() != pq) {
          throw std::invalid_argument("plumbing " + cfg.plumbing.str() + " does not realize the declared (p, q)");
        }
        ds.configs.emplace(name, std::move(cfg));
      } catch (const std::invalid_argument& e) {
        throw cur.error_at(name_tok, e.what());
      }
      ds.config_order.push_back(name);
    } else {
      throw cur.error_at(head, "unknown declaration '" + keyword + "'");
    }
  }
  if (!ds.lattice) {
    if (pending.names.empty()) throw ParseError(1, 1, "dataset declares no generators");
    const SourceLine eof{0, "", {}};
    freeze(TokenCursor(eof));
  }
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_dataset(buffer.str());
}

}  // namespace surgery
