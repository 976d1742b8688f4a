#include "surgery/rbd.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace surgery {

std::string to_string(DescentMode mode) {
  switch (mode) {
    case DescentMode::PlusPattern: return "PlusPattern";
    case DescentMode::MinusPattern: return "MinusPattern";
    case DescentMode::TheoremOnly: return "TheoremOnly";
    case DescentMode::Fails: return "Fails";
  }
  return "?";
}

namespace {

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

Integer quadratic(const IntMatrix& m, const IntVector& v) {
  Integer s(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    Integer row(0);
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      if (!v[j].is_zero()) row += m(i, j) * v[j];
    }
    s += v[i] * row;
  }
  return s;
}

void require_valid(const EmbeddedConfiguration& cfg) {
  const EmbeddingReport report = validate_embedding(cfg);
  if (!report.ok) throw std::invalid_argument("configuration " + cfg.name + " is not embedded: " + report.str());
}

bool parity_matches(const Integer& m, int p) { return mod(m, Integer(2)) == mod(Integer(p - 1), Integer(2)); }

}  // namespace

ConfigurationAnalysis::ConfigurationAnalysis(const LinearPlumbing& plumbing) : plumbing_(plumbing) {
  const auto pq = plumbing_.pq();
  if (!pq) throw std::invalid_argument("plumbing " + plumbing_.str() + " is not of the form p^2/(pq-1)");
  p_ = pq->first;
  q_ = pq->second;
  matrix_ = intersection_matrix(plumbing_);
  TridiagonalInverse inv = tridiagonal_inverse(matrix_);
  det_ = std::move(inv.det);
  adjugate_ = std::move(inv.adjugate);
  const SmithCokernel cokernel(matrix_);
  order_ = Integer(p_) * Integer(p_);
  if (cokernel.factors().size() != 1 || cokernel.factors()[0] != order_) {
    throw std::logic_error("cokernel of " + plumbing_.str() + " is " + cokernel.str() + ", expected Z/" + order_.str());
  }
  projection_ = cokernel.projection().row(0).transpose();
}

Rational ConfigurationAnalysis::restriction_square(const IntVector& v) const {
  if (v.size() != length()) throw std::invalid_argument("pairing vector has the wrong length");
  return Rational(quadratic(adjugate_, v), det_);
}

DescentMode ConfigurationAnalysis::corollary(const IntVector& v) const {
  if (v.size() != length()) throw std::invalid_argument("pairing vector has the wrong length");
  bool plus = true;
  bool minus = true;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Integer want(-plumbing_.weights()[static_cast<std::size_t>(i)] - 2);
    plus = plus && v[i] == want;
    minus = minus && v[i] == -want;
  }
  if (plus) return DescentMode::PlusPattern;
  if (minus) return DescentMode::MinusPattern;
  return DescentMode::Fails;
}

DescentVerdict ConfigurationAnalysis::verdict(const IntVector& v) const {
  DescentVerdict out;
  out.restriction_square = restriction_square(v);
  out.square_ok = out.restriction_square == Rational(-static_cast<long>(length()));
  out.boundary_residue = mod(dot(projection_, v), order_);
  out.boundary_ok = mod(out.boundary_residue, Integer(p_)).is_zero();
  if (out.boundary_ok) {
    out.m = out.boundary_residue / Integer(p_);
    const Integer neg = mod(-out.m, Integer(p_));
    out.m_parity_ok = parity_matches(out.m, p_) || parity_matches(neg, p_);
    const Integer symmetric = out.m * 2 > Integer(p_) ? out.m - Integer(p_) : out.m;
    out.interpretations_agree = out.m_parity_ok == parity_matches(symmetric, p_);
  }
  const bool theorem = out.square_ok && out.boundary_ok && out.m_parity_ok;
  const DescentMode pattern = corollary(v);
  if (pattern != DescentMode::Fails) {
    if (!theorem) throw std::logic_error("corollary pattern fails the general descent criteria on " + plumbing_.str());
    out.mode = pattern;
  } else {
    out.mode = theorem ? DescentMode::TheoremOnly : DescentMode::Fails;
  }
  return out;
}

Rational restriction_square(const Cls& l, const EmbeddedConfiguration& cfg) {
  require_valid(cfg);
  const IntVector v = pairing_vector(l, cfg);
  const TridiagonalInverse inv = tridiagonal_inverse(intersection_matrix(cfg.plumbing));
  return Rational(quadratic(inv.adjugate, v), inv.det);
}

DescentMode corollary_condition(const Cls& l, const EmbeddedConfiguration& cfg) {
  require_valid(cfg);
  const IntVector v = pairing_vector(l, cfg);
  const auto& w = cfg.plumbing.weights();
  bool plus = true;
  bool minus = true;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Integer want(-w[static_cast<std::size_t>(i)] - 2);
    plus = plus && v[i] == want;
    minus = minus && v[i] == -want;
  }
  if (plus) return DescentMode::PlusPattern;
  if (minus) return DescentMode::MinusPattern;
  return DescentMode::Fails;
}

DescentVerdict theorem_condition(const Cls& l, const EmbeddedConfiguration& cfg) {
  require_valid(cfg);
  return ConfigurationAnalysis(cfg.plumbing).verdict(pairing_vector(l, cfg));
}

SWFunction descend(const SWFunction& sw, const EmbeddedConfiguration& cfg) {
  require_valid(cfg);
  const ConfigurationAnalysis analysis(cfg.plumbing);
  SWFunction out(sw.lattice());
  for (const auto& [coords, c] : sw.terms()) {
    const Cls l(sw.lattice(), coords);
    if (analysis.verdict(pairing_vector(l, cfg)).mode != DescentMode::Fails) out.add(coords, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factored descent.

namespace {

struct Group {
  IntVector column;                  // pairings of one member with the spheres
  std::vector<Eigen::Index> members; // exceptional generator indices
};

template <class Scalar>
Scalar narrow(const Integer& x) {
  if constexpr (std::is_same_v<Scalar, Integer>) {
    return x;
  } else {
    return static_cast<Scalar>(x.to_int64());
  }
}

/// Enumerates the group sums s_g in {-n_g, -n_g + 2, ..., n_g} for which
/// (v0 + sum s_g c_g)^T adj (v0 + sum s_g c_g) equals the target.
template <class Scalar>
class QuadraticSearch {
 public:
  QuadraticSearch(const IntMatrix& adj, const std::vector<Group>& groups, const Integer& target)
      : adj_(adj.rows(), adj.cols()), target_(narrow<Scalar>(target)) {
    for (Eigen::Index i = 0; i < adj.rows(); ++i) {
      for (Eigen::Index j = 0; j < adj.cols(); ++j) adj_(i, j) = narrow<Scalar>(adj(i, j));
    }
    for (const Group& g : groups) {
      Level lv;
      lv.size = static_cast<int>(g.members.size());
      Vector<Scalar> c(g.column.size());
      for (Eigen::Index j = 0; j < g.column.size(); ++j) {
        c[j] = narrow<Scalar>(g.column[j]);
        if (!g.column[j].is_zero()) {
          lv.nz.push_back(j);
          lv.nz_values.push_back(c[j]);
        }
      }
      lv.adj_c = adj_ * c;
      lv.c_adj_c = Scalar(0);
      for (std::size_t t = 0; t < lv.nz.size(); ++t) lv.c_adj_c += lv.nz_values[t] * lv.adj_c[lv.nz[t]];
      levels_.push_back(std::move(lv));
    }
    work_.resize(levels_.size() + 1);
    sums_.resize(levels_.size());
  }

  template <class Hit>
  void run(const IntVector& v0, Hit hit) {
    Vector<Scalar> v(v0.size());
    for (Eigen::Index j = 0; j < v0.size(); ++j) v[j] = narrow<Scalar>(v0[j]);
    work_[0] = adj_ * v;
    Scalar g(0);
    for (Eigen::Index j = 0; j < v.size(); ++j) g += v[j] * work_[0][j];
    recurse(0, g, hit);
  }

 private:
  struct Level {
    int size = 0;
    std::vector<Eigen::Index> nz;
    std::vector<Scalar> nz_values;
    Vector<Scalar> adj_c;
    Scalar c_adj_c;
  };

  template <class Hit>
  void recurse(std::size_t level, const Scalar& g, Hit& hit) {
    if (level == levels_.size()) {
      if (g == target_) hit(sums_);
      return;
    }
    const Level& lv = levels_[level];
    const Vector<Scalar>& w = work_[level];
    Scalar cw(0);
    for (std::size_t t = 0; t < lv.nz.size(); ++t) cw += lv.nz_values[t] * w[lv.nz[t]];
    const bool last = level + 1 == levels_.size();
    for (int s = -lv.size; s <= lv.size; s += 2) {
      const Scalar ss(s);
      const Scalar g2 = g + Scalar(2) * ss * cw + ss * ss * lv.c_adj_c;
      sums_[level] = s;
      if (last) {
        if (g2 == target_) hit(sums_);
      } else {
        work_[level + 1] = w + ss * lv.adj_c;
        recurse(level + 1, g2, hit);
      }
    }
  }

  Matrix<Scalar> adj_;
  Scalar target_;
  std::vector<Level> levels_;
  std::vector<Vector<Scalar>> work_;
  std::vector<int> sums_;
};

/// Upper bound on every intermediate of the search, in absolute value.
Integer search_bound(const IntMatrix& adj, const std::vector<Group>& groups, const std::vector<IntVector>& base_vectors) {
  const Eigen::Index k = adj.rows();
  IntVector reach = IntVector::Zero(k);
  for (const IntVector& v : base_vectors) {
    for (Eigen::Index j = 0; j < k; ++j) reach[j] = std::max(reach[j], abs(v[j]));
  }
  for (const Group& g : groups) {
    for (Eigen::Index j = 0; j < k; ++j) reach[j] += Integer(static_cast<std::int64_t>(g.members.size())) * abs(g.column[j]);
  }
  Integer total(0);
  Integer widest(0);
  for (Eigen::Index i = 0; i < k; ++i) {
    Integer w(0);
    for (Eigen::Index j = 0; j < k; ++j) w += abs(adj(i, j)) * reach[j];
    widest = std::max(widest, w);
    total += reach[i] * w;
  }
  return std::max(total, widest);
}

/// Every way of choosing signs for `members` with the given sum, in
/// lexicographic order of the chosen plus positions.
std::vector<std::vector<int>> sign_choices(std::size_t n, int sum) {
  const auto plus = static_cast<std::size_t>((static_cast<int>(n) + sum) / 2);
  std::vector<std::vector<int>> out;
  std::vector<int> signs(n, -1);
  std::fill(signs.begin(), signs.begin() + static_cast<std::ptrdiff_t>(plus), 1);
  // prev_permutation over a descending start enumerates every arrangement once
  do {
    out.push_back(signs);
  } while (std::prev_permutation(signs.begin(), signs.end()));
  return out;
}

}  // namespace

DescentOutcome descend(const FactoredSW& sw, const EmbeddedConfiguration& cfg) {
  require_valid(cfg);
  const LatticePtr& lattice = sw.lattice();
  for (const Cls& u : cfg.spheres) {
    if (u.lattice() != lattice) throw std::invalid_argument("configuration " + cfg.name + " lives on a different lattice");
  }
  const ConfigurationAnalysis analysis(cfg.plumbing);
  const Eigen::Index k = analysis.length();

  // rows of sphere coordinates times the Gram matrix: v(L) = P L
  IntMatrix pairing(k, lattice->rank());
  for (Eigen::Index i = 0; i < k; ++i) {
    const Cls& u = cfg.spheres[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < lattice->rank(); ++j) pairing(i, j) = pair(u, Cls::generator(lattice, j));
  }

  std::vector<Group> groups;
  std::vector<Eigen::Index> free;
  for (Eigen::Index e : sw.exceptionals()) {
    IntVector column = pairing.col(e);
    if (std::all_of(column.begin(), column.end(), [](const Integer& x) { return x.is_zero(); })) {
      free.push_back(e);
      continue;
    }
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return g.column == column; });
    if (it == groups.end()) {
      groups.push_back({std::move(column), {e}});
    } else {
      it->members.push_back(e);
    }
  }

  std::vector<IntVector> base_vectors;
  for (const auto& [coords, c] : sw.base().terms()) {
    IntVector v = IntVector::Zero(k);
    for (Eigen::Index j = 0; j < coords.size(); ++j) {
      if (coords[j].is_zero()) continue;
      for (Eigen::Index i = 0; i < k; ++i) {
        if (!pairing(i, j).is_zero()) v[i] += pairing(i, j) * coords[j];
      }
    }
    base_vectors.push_back(std::move(v));
  }

  DescentOutcome out{FactoredSW(SWFunction(lattice)), {}, Integer(0), 0, free.size(), false};
  for (const Group& g : groups) out.met_factors += g.members.size();
  Integer per_term(1);
  for (std::size_t i = 0; i < out.met_factors; ++i) per_term *= 2;
  out.candidates = per_term * Integer(static_cast<std::uint64_t>(sw.base().size()));

  const Integer target = -Integer(static_cast<std::int64_t>(k)) * analysis.det();
  const Integer limit(std::int64_t{1} << 58);
  out.machine_integers = search_bound(analysis.adjugate(), groups, base_vectors) * 4 < limit && abs(target) < limit;

  SWFunction survivors(lattice);
  auto scan = [&](auto& search) {
    std::size_t term_index = 0;
    for (const auto& [coords, coefficient] : sw.base().terms()) {
      const IntVector& v0 = base_vectors[term_index++];
      search.run(v0, [&, &coords = coords, &coefficient = coefficient](const std::vector<int>& sums) {
        IntVector v = v0;
        for (std::size_t g = 0; g < groups.size(); ++g) v += Integer(sums[g]) * groups[g].column;
        const DescentVerdict verdict = analysis.verdict(v);
        if (!verdict.square_ok) throw std::logic_error("descent search disagrees with the exact restriction square");
        if (verdict.mode == DescentMode::Fails) return;
        std::vector<std::vector<std::vector<int>>> choices;
        for (std::size_t g = 0; g < groups.size(); ++g) choices.push_back(sign_choices(groups[g].members.size(), sums[g]));
        std::vector<std::size_t> pick(groups.size(), 0);
        for (;;) {
          IntVector full = coords;
          for (std::size_t g = 0; g < groups.size(); ++g) {
            const auto& signs = choices[g][pick[g]];
            for (std::size_t t = 0; t < signs.size(); ++t) full[groups[g].members[t]] = Integer(signs[t]);
          }
          survivors.add(full, coefficient);
          out.rows.push_back({Cls(lattice, full), coefficient, verdict});
          std::size_t g = 0;
          while (g < groups.size() && ++pick[g] == choices[g].size()) pick[g++] = 0;
          if (g == groups.size()) break;
        }
      });
    }
  };
  if (out.machine_integers) {
    QuadraticSearch<std::int64_t> search(analysis.adjugate(), groups, target);
    scan(search);
  } else {
    QuadraticSearch<Integer> search(analysis.adjugate(), groups, target);
    scan(search);
  }
  std::sort(out.rows.begin(), out.rows.end(),
            [](const DescentRow& a, const DescentRow& b) { return LexLess{}(a.cls.coords(), b.cls.coords()); });
  out.result = FactoredSW::descended(std::move(survivors), std::move(free));
  return out;
}

}  // namespace surgery
