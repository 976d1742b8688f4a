#include "surgery/ledger.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace surgery {

std::string to_string(Pi1Status s) {
  switch (s) {
    case Pi1Status::SimplyConnected: return "SimplyConnected";
    case Pi1Status::H1Zero: return "H1Zero";
    case Pi1Status::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Odd: return "Odd";
    case Parity::Even: return "Even";
    case Parity::Unknown: return "Unknown";
  }
  return "?";
}

Pi1Status parse_pi1(const std::string& text) {
  for (Pi1Status s : {Pi1Status::SimplyConnected, Pi1Status::H1Zero, Pi1Status::Unknown}) {
    if (to_string(s) == text) return s;
  }
  throw std::invalid_argument("unknown pi1 status " + text);
}

Parity parse_parity(const std::string& text) {
  for (Parity p : {Parity::Odd, Parity::Even, Parity::Unknown}) {
    if (to_string(p) == text) return p;
  }
  throw std::invalid_argument("unknown parity " + text);
}

bool InvariantLedger::consistent() const {
  return b_plus >= 0 && b_minus >= 0 && e == 2 + b_plus + b_minus && sigma == b_plus - b_minus;
}

std::string InvariantLedger::str() const {
  std::ostringstream os;
  os << "(e=" << e << ", sigma=" << sigma << ", b2+=" << b_plus << ", b2-=" << b_minus << ", pi1=" << to_string(pi1)
     << ", parity=" << to_string(parity) << ")";
  return os.str();
}

InvariantLedger make_ledger(long b_plus, long b_minus, Pi1Status pi1, Parity parity) {
  if (b_plus < 0 || b_minus < 0) throw std::invalid_argument("Betti numbers must be non-negative");
  return {2 + b_plus + b_minus, b_plus - b_minus, b_plus, b_minus, pi1, parity};
}

InvariantLedger ledger_e2() { return make_ledger(3, 19, Pi1Status::SimplyConnected, Parity::Even); }

InvariantLedger ledger_blow_up(const InvariantLedger& l) {
  InvariantLedger out = l;
  out.e += 1;
  out.sigma -= 1;
  out.b_minus += 1;
  out.parity = Parity::Odd;
  return out;
}

InvariantLedger ledger_knot_surgery(const InvariantLedger& l) {
  InvariantLedger out = l;
  out.pi1 = Pi1Status::SimplyConnected;
  return out;
}

InvariantLedger ledger_rbd(const InvariantLedger& l, long k) {
  if (k < 0) throw std::invalid_argument("configuration length must be non-negative");
  if (k > l.b_minus) {
    throw std::invalid_argument("cannot blow down " + std::to_string(k) + " spheres with b2- = " + std::to_string(l.b_minus));
  }
  InvariantLedger out = l;
  out.e -= k;
  out.sigma += k;
  out.b_minus -= k;
  out.pi1 = Pi1Status::Unknown;
  out.parity = Parity::Unknown;
  return out;
}

bool coprimality_certificate(int p1, int p2) {
  const Integer a = Integer(p1) * Integer(p1);
  const Integer b = Integer(p2) * Integer(p2);
  return gcd(a, b) == 1;
}

std::string FreedmanType::str() const {
  return std::to_string(a) + "CP^2 # " + std::to_string(b) + "(-CP^2)";
}

std::string freedman_refusal(const InvariantLedger& l) {
  if (l.pi1 != Pi1Status::SimplyConnected) return "not determined: pi1 is " + to_string(l.pi1);
  if (l.parity != Parity::Odd) return "not determined: intersection form parity is " + to_string(l.parity);
  if (l.b_plus < 1 || l.b_minus < 1) return "not determined: the form is definite";
  return "";
}

std::optional<FreedmanType> freedman_type(const InvariantLedger& l) {
  if (!freedman_refusal(l).empty()) return std::nullopt;
  const long b2 = l.b_plus + l.b_minus;
  return FreedmanType{(b2 + l.sigma) / 2, (b2 - l.sigma) / 2};
}

H1Certificate h1_certificate(const EmbeddedConfiguration& cfg, const std::vector<Cls>& blown_down_before) {
  if (cfg.spheres.empty()) throw std::invalid_argument("empty configuration");
  const LatticePtr& lattice = cfg.spheres.front().lattice();
  const std::vector<Cls> basis = orthogonal_complement(lattice, blown_down_before);
  const auto k = static_cast<Eigen::Index>(cfg.spheres.size());
  H1Certificate out;
  if (basis.empty()) {
    out.cokernel = "Z^" + std::to_string(k);
    return out;
  }
  IntMatrix p(k, static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) p(i, j) = pair(cfg.spheres[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
  }
  const SmithForm sf = smith_normal_form(p);
  std::vector<std::string> parts;
  for (Eigen::Index i = 0; i < k; ++i) {
    const Integer d = i < sf.rank ? abs(sf.diag(i, i)) : Integer(0);
    if (d == 1) continue;
    parts.push_back(d.is_zero() ? "Z" : "Z/" + d.str());
  }
  out.vanishes = parts.empty();
  if (out.vanishes) {
    out.cokernel = "0";
  } else {
    for (std::size_t i = 0; i < parts.size(); ++i) out.cokernel += (i ? " + " : "") + parts[i];
  }
  return out;
}

namespace {

/// Index of the single end sphere `via` meets with +-1, if it meets nothing else.
std::optional<std::size_t> transverse_end(const EmbeddedConfiguration& cfg, const Cls& via) {
  std::optional<std::size_t> hit;
  for (std::size_t i = 0; i < cfg.spheres.size(); ++i) {
    const Integer x = pair(via, cfg.spheres[i]);
    if (x.is_zero()) continue;
    if (hit || abs(x) != 1) return std::nullopt;
    hit = i;
  }
  if (!hit || (*hit != 0 && *hit + 1 != cfg.spheres.size())) return std::nullopt;
  return hit;
}

}  // namespace

LinkCertificate link_certificate(const EmbeddedConfiguration& c1, const EmbeddedConfiguration& c2, const Cls& via) {
  LinkCertificate out;
  const auto pq1 = c1.plumbing.pq();
  const auto pq2 = c2.plumbing.pq();
  if (!pq1 || !pq2) {
    out.detail = "a configuration has no (p, q)";
    return out;
  }
  out.coprime = coprimality_certificate(pq1->first, pq2->first);
  const auto end1 = transverse_end(c1, via);
  const auto end2 = transverse_end(c2, via);
  out.transverse = end1.has_value() && end2.has_value();
  out.holds = out.coprime && out.transverse;
  std::ostringstream os;
  os << "gcd(" << pq1->first * pq1->first << ", " << Integer(pq2->first) * Integer(pq2->first) << ") = "
     << std::gcd(static_cast<long>(pq1->first) * pq1->first, static_cast<long>(pq2->first) * pq2->first) << "; "
     << via.str();
  if (out.transverse) {
    os << " meets " << c1.sphere_names[*end1] << " and " << c2.sphere_names[*end2] << " once";
  } else {
    os << " does not meet exactly one end sphere of each configuration once";
  }
  out.detail = os.str();
  return out;
}

std::optional<Cls> odd_survivor(const LatticePtr& lattice, const std::vector<Cls>& blown_down) {
  return find_odd_class(orthogonal_complement(lattice, blown_down));
}

}  // namespace surgery
