#include "surgery/lattice.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace surgery {

AmbientLattice::AmbientLattice(std::vector<std::string> names, IntMatrix gram, std::vector<bool> exceptional)
    : names_(std::move(names)), gram_(std::move(gram)), exceptional_(std::move(exceptional)) {
  const auto n = static_cast<Eigen::Index>(names_.size());
  if (gram_.rows() != n || gram_.cols() != n) throw std::invalid_argument("Gram matrix size does not match generators");
  if (exceptional_.size() != names_.size()) throw std::invalid_argument("exceptional flags do not match generators");
  if (!is_symmetric(gram_)) throw std::invalid_argument("Gram matrix is not symmetric");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!index_.emplace(names_[static_cast<std::size_t>(i)], i).second) {
      throw std::invalid_argument("duplicate generator " + names_[static_cast<std::size_t>(i)]);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!is_exceptional(i)) continue;
    const std::string& name = names_[static_cast<std::size_t>(i)];
    if (gram_(i, i) != -1) throw std::invalid_argument("exceptional generator " + name + " must have square -1");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i && !gram_(i, j).is_zero()) {
        throw std::invalid_argument("exceptional generator " + name + " pairs nontrivially with " +
                                    names_[static_cast<std::size_t>(j)]);
      }
    }
  }
}

std::optional<Eigen::Index> AmbientLattice::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Eigen::Index AmbientLattice::require_index(const std::string& name) const {
  auto idx = index_of(name);
  if (!idx) throw std::out_of_range("unknown generator " + name);
  return *idx;
}

Cls::Cls(LatticePtr lattice, IntVector coords) : lattice_(std::move(lattice)), coords_(std::move(coords)) {
  if (!lattice_) throw std::invalid_argument("class without a lattice");
  if (coords_.size() != lattice_->rank()) throw std::invalid_argument("class has the wrong number of coordinates");
}

Cls Cls::zero(const LatticePtr& lattice) { return Cls(lattice, IntVector::Zero(lattice->rank())); }

Cls Cls::generator(const LatticePtr& lattice, const std::string& name) {
  return generator(lattice, lattice->require_index(name));
}

Cls Cls::generator(const LatticePtr& lattice, Eigen::Index index) {
  IntVector v = IntVector::Zero(lattice->rank());
  v[index] = 1;
  return Cls(lattice, std::move(v));
}

bool Cls::is_zero() const {
  for (Eigen::Index i = 0; i < coords_.size(); ++i)
    if (!coords_[i].is_zero()) return false;
  return true;
}

namespace {

void require_same(const Cls& a, const Cls& b) {
  if (a.lattice() != b.lattice()) throw std::invalid_argument("classes live on different lattices");
}

// Splits "E12" into ("E", 12); index -1 when there is no numeric suffix.
std::pair<std::string, long> split_index(const std::string& name) {
  std::size_t cut = name.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
  if (cut == name.size() || cut == 0) return {name, -1};
  return {name.substr(0, cut), std::stol(name.substr(cut))};
}

}  // namespace

Cls& Cls::operator+=(const Cls& o) {
  require_same(*this, o);
  coords_ += o.coords_;
  return *this;
}

Cls& Cls::operator-=(const Cls& o) {
  require_same(*this, o);
  coords_ -= o.coords_;
  return *this;
}

Cls operator-(const Cls& a) { return Cls(a.lattice_, -a.coords_); }

Cls operator*(const Integer& k, const Cls& a) { return Cls(a.lattice_, a.coords_ * k); }

bool operator==(const Cls& a, const Cls& b) { return a.lattice_ == b.lattice_ && a.coords_ == b.coords_; }

std::string Cls::str() const {
  if (!lattice_) return "<null>";
  const auto& names = lattice_->names();
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Integer& c, const std::string& label) {
    const bool negative = c.sign() < 0;
    const Integer mag = abs(c);
    if (first) {
      os << (negative ? "-" : "");
    } else {
      os << (negative ? " - " : " + ");
    }
    if (mag != 1) os << mag;
    os << label;
    first = false;
  };
  Eigen::Index i = 0;
  const Eigen::Index n = coords_.size();
  while (i < n) {
    if (coords_[i].is_zero()) {
      ++i;
      continue;
    }
    const auto [prefix, index] = split_index(names[static_cast<std::size_t>(i)]);
    Eigen::Index j = i + 1;
    if (index >= 0) {
      while (j < n && coords_[j] == coords_[i]) {
        const auto [p2, i2] = split_index(names[static_cast<std::size_t>(j)]);
        if (p2 != prefix || i2 != index + (j - i)) break;
        ++j;
      }
    }
    if (j - i >= 3) {
      emit(coords_[i], names[static_cast<std::size_t>(i)] + ".." + names[static_cast<std::size_t>(j - 1)]);
      i = j;
    } else {
      emit(coords_[i], names[static_cast<std::size_t>(i)]);
      ++i;
    }
  }
  return first ? "0" : os.str();
}

Integer pair(const Cls& l, const Cls& m) {
  require_same(l, m);
  const IntMatrix& g = l.lattice()->gram();
  const IntVector& a = l.coords();
  const IntVector& b = m.coords();
  Integer acc(0);
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    if (b[j].is_zero()) continue;
    Integer col(0);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (!a[i].is_zero() && !g(i, j).is_zero()) col += a[i] * g(i, j);
    }
    acc += col * b[j];
  }
  return acc;
}

Integer square(const Cls& l) { return pair(l, l); }

std::string EmbeddingReport::str() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << "mismatch";
  for (const auto& m : mismatches) os << " (" << m.i << "," << m.j << "): expected " << m.expected << ", got " << m.got << ";";
  return os.str();
}

EmbeddingReport validate_embedding(const EmbeddedConfiguration& cfg) {
  EmbeddingReport report;
  const IntMatrix q = intersection_matrix(cfg.plumbing);
  if (static_cast<Eigen::Index>(cfg.spheres.size()) != q.rows()) {
    report.ok = false;
    report.mismatches.push_back({0, 0, Integer(static_cast<long>(q.rows())), Integer(static_cast<long>(cfg.spheres.size()))});
    return report;
  }
  for (std::size_t i = 0; i < cfg.spheres.size(); ++i) {
    for (std::size_t j = i; j < cfg.spheres.size(); ++j) {
      const Integer got = pair(cfg.spheres[i], cfg.spheres[j]);
      const Integer& expected = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (got != expected) {
        report.ok = false;
        report.mismatches.push_back({i + 1, j + 1, expected, got});
      }
    }
  }
  return report;
}

IntVector pairing_vector(const Cls& l, const EmbeddedConfiguration& cfg) {
  IntVector v(static_cast<Eigen::Index>(cfg.spheres.size()));
  for (std::size_t i = 0; i < cfg.spheres.size(); ++i) v[static_cast<Eigen::Index>(i)] = pair(l, cfg.spheres[i]);
  return v;
}

std::vector<Cls> orthogonal_complement(const LatticePtr& lattice, const std::vector<Cls>& against) {
  const Eigen::Index n = lattice->rank();
  std::vector<Cls> out;
  if (against.empty()) {
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(Cls::generator(lattice, i));
    return out;
  }
  IntMatrix a(static_cast<Eigen::Index>(against.size()), n);
  for (std::size_t r = 0; r < against.size(); ++r) {
    if (against[r].lattice() != lattice) throw std::invalid_argument("class lives on a different lattice");
    a.row(static_cast<Eigen::Index>(r)) = (lattice->gram() * against[r].coords()).transpose();
  }
  const IntMatrix kernel = integer_kernel(a);
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) out.emplace_back(lattice, kernel.col(c));
  return out;
}

std::optional<Cls> find_odd_class(const std::vector<Cls>& basis) {
  for (const Cls& c : basis) {
    if (square(c).is_odd()) return c;
  }
  return std::nullopt;
}

}  // namespace surgery
