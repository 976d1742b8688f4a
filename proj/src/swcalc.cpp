#include "surgery/swcalc.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace surgery {

AlexPoly::AlexPoly() : coeffs_{{0, Integer(1)}} {}

AlexPoly::AlexPoly(std::map<int, Integer> coefficients) {
  for (auto& [d, c] : coefficients) {
    if (!c.is_zero()) coeffs_.emplace(d, c);
  }
  for (const auto& [d, c] : coeffs_) {
    if (coefficient(-d) != c) throw std::invalid_argument("Alexander polynomial is not symmetric: " + str());
  }
}

Integer AlexPoly::coefficient(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

int AlexPoly::degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

Integer AlexPoly::value_at_one() const {
  Integer s(0);
  for (const auto& [d, c] : coeffs_) s += c;
  return s;
}

namespace {

// Shared printer: terms from the highest exponent down, "c X" style.
template <class MonomialFn>
std::string print_laurent(const std::map<int, Integer>& coeffs, MonomialFn monomial) {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    const auto& [d, c] = *it;
    const bool negative = c.sign() < 0;
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    const Integer mag = abs(c);
    if (d == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag;
      os << monomial(d, mag != 1);
    }
    first = false;
  }
  return os.str();
}

}  // namespace

std::string AlexPoly::str() const {
  return print_laurent(coeffs_, [](int d, bool) { return d == 1 ? std::string("t") : "t^" + std::to_string(d); });
}

std::string AlexPoly::exponential_str(const std::string& fiber) const {
  return print_laurent(coeffs_, [&](int d, bool spaced) {
    std::string e = "e^{" + (d < 0 ? std::string("-") : std::string()) + (std::abs(2 * d) != 1 ? std::to_string(std::abs(2 * d)) : "") + fiber + "}";
    return spaced ? " " + e : e;
  });
}

AlexPoly alexander_twist(int n) {
  if (n < 0) throw std::invalid_argument("twist knot parameter must be non-negative, got " + std::to_string(n));
  return AlexPoly({{1, Integer(n)}, {0, Integer(1 - 2 * n)}, {-1, Integer(n)}});
}

// ---------------------------------------------------------------------------

SWFunction::SWFunction(LatticePtr lattice) : lattice_(std::move(lattice)) {
  if (!lattice_) throw std::invalid_argument("SW function without a lattice");
}

void SWFunction::add(const IntVector& coords, const Integer& c) {
  if (coords.size() != lattice_->rank()) throw std::invalid_argument("class has the wrong number of coordinates");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(coords, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void SWFunction::add(const Cls& l, const Integer& c) {
  if (l.lattice() != lattice_) throw std::invalid_argument("class lives on a different lattice");
  add(l.coords(), c);
}

Integer SWFunction::coefficient(const Cls& l) const {
  if (l.lattice() != lattice_) throw std::invalid_argument("class lives on a different lattice");
  auto it = terms_.find(l.coords());
  return it == terms_.end() ? Integer(0) : it->second;
}

bool SWFunction::is_charge_symmetric() const {
  for (const auto& [coords, c] : terms_) {
    auto it = terms_.find(IntVector(-coords));
    if (it == terms_.end() || it->second != c) return false;
  }
  return true;
}

Integer SWFunction::coefficient_sum() const {
  Integer s(0);
  for (const auto& [coords, c] : terms_) s += c;
  return s;
}

std::string SWFunction::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [coords, c] : terms_) {
    os << (first ? "" : ", ") << Cls(lattice_, coords).str() << " -> " << c;
    first = false;
  }
  os << "}";
  return os.str();
}

SWFunction sw_k3(const LatticePtr& lattice) {
  SWFunction sw(lattice);
  sw.add(Cls::zero(lattice), Integer(1));
  return sw;
}

SWFunction knot_surgery(const SWFunction& sw, const Cls& fiber, const AlexPoly& delta) {
  if (fiber.lattice() != sw.lattice()) throw std::invalid_argument("fiber lives on a different lattice");
  if (!square(fiber).is_zero()) {
    throw std::invalid_argument("knot surgery fiber " + fiber.str() + " has square " + square(fiber).str() + ", expected 0");
  }
  SWFunction out(sw.lattice());
  for (const auto& [coords, c] : sw.terms()) {
    for (const auto& [d, a] : delta.coefficients()) {
      out.add(IntVector(coords + fiber.coords() * Integer(2 * d)), c * a);
    }
  }
  return out;
}

namespace {

// Index of the single generator making up `e`, after checking it is a fresh
// exceptional class for `support_base`.
Eigen::Index require_fresh_exceptional(const SWFunction& base, const Cls& e) {
  if (e.lattice() != base.lattice()) throw std::invalid_argument("exceptional class lives on a different lattice");
  Eigen::Index index = -1;
  for (Eigen::Index i = 0; i < e.coords().size(); ++i) {
    if (e[i].is_zero()) continue;
    if (index >= 0 || e[i] != 1) throw std::invalid_argument("blow-up class " + e.str() + " is not a single generator");
    index = i;
  }
  if (index < 0) throw std::invalid_argument("blow-up class is zero");
  if (square(e) != -1) throw std::invalid_argument("blow-up class " + e.str() + " does not have square -1");
  for (const auto& [coords, c] : base.terms()) {
    const Cls l(base.lattice(), coords);
    if (!l[index].is_zero() || !pair(l, e).is_zero()) {
      throw std::invalid_argument("blow-up class " + e.str() + " is not orthogonal to the support class " + l.str());
    }
  }
  return index;
}

}  // namespace

SWFunction blow_up(const SWFunction& sw, const Cls& exceptional) {
  (void)require_fresh_exceptional(sw, exceptional);
  SWFunction out(sw.lattice());
  for (const auto& [coords, c] : sw.terms()) {
    out.add(IntVector(coords + exceptional.coords()), c);
    out.add(IntVector(coords - exceptional.coords()), c);
  }
  return out;
}

std::vector<std::pair<Cls, Integer>> basic_classes(const SWFunction& sw) {
  std::vector<std::pair<Cls, Integer>> out;
  out.reserve(sw.size());
  for (const auto& [coords, c] : sw.terms()) out.emplace_back(Cls(sw.lattice(), coords), c);
  return out;
}

// ---------------------------------------------------------------------------

FactoredSW::FactoredSW(SWFunction base) : base_(std::move(base)) {
  symbolic_base_ = base_.size() == 1 && std::all_of(base_.terms().begin()->first.begin(), base_.terms().begin()->first.end(), [](const Integer& x) { return x.is_zero(); }) && base_.terms().begin()->second == 1;
}

Integer FactoredSW::term_count() const {
  Integer n(static_cast<std::uint64_t>(base_.size()));
  for (std::size_t i = 0; i < exceptionals_.size(); ++i) n *= 2;
  return n;
}

Integer FactoredSW::coefficient(const Cls& l) const {
  if (l.lattice() != lattice()) throw std::invalid_argument("class lives on a different lattice");
  IntVector rest = l.coords();
  for (Eigen::Index e : exceptionals_) {
    if (abs(rest[e]) != 1) return Integer(0);
    rest[e] = 0;
  }
  auto it = base_.terms().find(rest);
  return it == base_.terms().end() ? Integer(0) : it->second;
}

SWFunction FactoredSW::expand(std::size_t limit) const {
  if (term_count() > Integer(static_cast<std::uint64_t>(limit))) {
    throw std::length_error("expansion would produce " + term_count().str() + " terms");
  }
  SWFunction out = base_;
  for (Eigen::Index e : exceptionals_) out = blow_up(out, Cls::generator(lattice(), e));
  return out;
}

std::map<Integer, Integer> FactoredSW::abs_value_multiset() const {
  Integer multiplicity(1);
  for (std::size_t i = 0; i < exceptionals_.size(); ++i) multiplicity *= 2;
  std::map<Integer, Integer> out;
  for (const auto& [coords, c] : base_.terms()) out[abs(c)] += multiplicity;
  return out;
}

namespace {

std::pair<std::string, long> split_index(const std::string& name) {
  std::size_t cut = name.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
  if (cut == name.size() || cut == 0) return {name, -1};
  return {name.substr(0, cut), std::stol(name.substr(cut))};
}

std::string blow_up_factors(const AmbientLattice& lattice, const std::vector<Eigen::Index>& exceptionals) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < exceptionals.size()) {
    const std::string& name = lattice.names()[static_cast<std::size_t>(exceptionals[i])];
    const auto [prefix, index] = split_index(name);
    std::size_t j = i + 1;
    if (index >= 0) {
      while (j < exceptionals.size()) {
        const auto [p2, i2] = split_index(lattice.names()[static_cast<std::size_t>(exceptionals[j])]);
        if (p2 != prefix || i2 != index + static_cast<long>(j - i)) break;
        ++j;
      }
    }
    if (j - i >= 2) {
      parts.push_back("prod_{i=" + std::to_string(index) + ".." + std::to_string(index + static_cast<long>(j - i) - 1) +
                      "} (e^{" + prefix + "_i}+e^{-" + prefix + "_i})");
    } else {
      parts.push_back("(e^{" + name + "}+e^{-" + name + "})");
    }
    i = j;
  }
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? " * " : "") + parts[k];
  return out;
}

}  // namespace

std::string FactoredSW::notation() const {
  std::string base;
  if (symbolic_base_) {
    std::size_t i = 0;
    while (i < knots_.size()) {
      std::size_t j = i + 1;
      while (j < knots_.size() && knots_[j].fiber == knots_[i].fiber && knots_[j].delta == knots_[i].delta) ++j;
      std::string factor = "(" + knots_[i].delta.exponential_str(knots_[i].fiber) + ")";
      if (j - i > 1) factor += "^" + std::to_string(j - i);
      base += (base.empty() ? "" : " * ") + factor;
      i = j;
    }
    if (base.empty()) base = "1";
  } else if (base_.empty()) {
    base = "0";
  } else if (base_.size() <= 8) {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (const auto& [coords, c] : base_.terms()) {
      os << (first ? "" : (c.sign() < 0 ? " - " : " + "));
      if (first && c.sign() < 0) os << "-";
      if (abs(c) != 1) os << abs(c) << " ";
      os << "e^{" << Cls(lattice(), coords).str() << "}";
      first = false;
    }
    os << ")";
    base = os.str();
  } else {
    base = "[" + std::to_string(base_.size()) + " explicit terms]";
  }
  if (exceptionals_.empty()) return base;
  return base + " * " + blow_up_factors(*lattice(), exceptionals_);
}

FactoredSW FactoredSW::with_knot_surgery(const Cls& fiber, const std::string& fiber_name, const AlexPoly& delta) const {
  FactoredSW out = *this;
  out.base_ = knot_surgery(base_, fiber, delta);
  if (out.symbolic_base_) out.knots_.push_back({fiber_name, delta});
  return out;
}

FactoredSW FactoredSW::with_blow_up(const Cls& exceptional) const {
  const Eigen::Index index = require_fresh_exceptional(base_, exceptional);
  for (Eigen::Index e : exceptionals_) {
    if (e == index) throw std::invalid_argument("exceptional class " + exceptional.str() + " was already blown up");
  }
  FactoredSW out = *this;
  out.exceptionals_.push_back(index);
  return out;
}

FactoredSW FactoredSW::descended(SWFunction base, std::vector<Eigen::Index> remaining_factors) {
  FactoredSW out(std::move(base));
  out.exceptionals_ = std::move(remaining_factors);
  out.symbolic_base_ = false;
  return out;
}

}  // namespace surgery
