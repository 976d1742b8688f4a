#pragma once

// Characteristic numbers of the manifold under construction and the
// certificates that upgrade its fundamental-group and parity flags.

#include "surgery/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace surgery {

enum class Pi1Status { SimplyConnected, H1Zero, Unknown };
enum class Parity { Odd, Even, Unknown };

std::string to_string(Pi1Status s);
std::string to_string(Parity p);
/// Accepts the names printed by to_string; throws std::invalid_argument.
Pi1Status parse_pi1(const std::string& text);
Parity parse_parity(const std::string& text);

struct InvariantLedger {
  long e = 0;
  long sigma = 0;
  long b_plus = 0;
  long b_minus = 0;
  Pi1Status pi1 = Pi1Status::Unknown;
  Parity parity = Parity::Unknown;

  /// e = 2 + b2+ + b2- and sigma = b2+ - b2- (b1 = 0 throughout).
  [[nodiscard]] bool consistent() const;
  /// "(e=13, sigma=-5, b2+=3, b2-=8, pi1=SimplyConnected, parity=Odd)".
  [[nodiscard]] std::string str() const;

  friend bool operator==(const InvariantLedger&, const InvariantLedger&) = default;
};

/// From b2+ and b2-; throws std::invalid_argument for negative Betti numbers.
InvariantLedger make_ledger(long b_plus, long b_minus, Pi1Status pi1, Parity parity);

/// The elliptic surface E(2) (the K3 surface): b2+ = 3, b2- = 19, even, simply connected.
InvariantLedger ledger_e2();

InvariantLedger ledger_blow_up(const InvariantLedger& l);
InvariantLedger ledger_knot_surgery(const InvariantLedger& l);
/// Replaces k negative-definite spheres by a rational ball. The result has
/// pi1 = Unknown and parity = Unknown until a certificate says otherwise.
/// Throws std::invalid_argument when k exceeds b2-.
InvariantLedger ledger_rbd(const InvariantLedger& l, long k);

/// gcd(p1^2, p2^2) = 1.
bool coprimality_certificate(int p1, int p2);

struct FreedmanType {
  long a = 0;  // copies of CP^2
  long b = 0;  // copies of CP^2-bar
  [[nodiscard]] std::string str() const;  // "3CP^2 # 8(-CP^2)"
};

/// a CP^2 # b (-CP^2), or empty when pi1 or parity are not certified
/// (freedman_refusal explains why).
std::optional<FreedmanType> freedman_type(const InvariantLedger& l);
std::string freedman_refusal(const InvariantLedger& l);

// ---------------------------------------------------------------------------
// Certificates computed from the lattice model.

/// H_1 of the rational blow-down of `cfg` vanishes when the classes
/// orthogonal to every previously blown-down sphere pair onto all of Z^k
/// (the cokernel of the pairing map is trivial). Requires H_1 = 0 before the
/// surgery; the caller checks that.
struct H1Certificate {
  bool vanishes = false;
  std::string cokernel;  // "0" when vanishes
};
H1Certificate h1_certificate(const EmbeddedConfiguration& cfg, const std::vector<Cls>& blown_down_before);

/// Two configurations joined by a class meeting one end sphere of each
/// exactly once and no other sphere, with coprime boundary orders.
struct LinkCertificate {
  bool holds = false;
  bool coprime = false;
  bool transverse = false;
  std::string detail;
};
LinkCertificate link_certificate(const EmbeddedConfiguration& c1, const EmbeddedConfiguration& c2, const Cls& via);

/// A class of odd square orthogonal to every blown-down sphere; such a class
/// survives the surgeries, so the final form is odd.
std::optional<Cls> odd_survivor(const LatticePtr& lattice, const std::vector<Cls>& blown_down);

}  // namespace surgery
