#include "support.hpp"
#include "surgery/ledger.hpp"

using namespace surgery;
using namespace test_support;

namespace {

InvariantLedger blow_ups(InvariantLedger l, int count) {
  for (int i = 0; i < count; ++i) l = ledger_blow_up(l);
  return l;
}

}  // namespace

TEST_SUITE("ledger") {

TEST_CASE("E(2)") {
  const InvariantLedger e2 = ledger_e2();
  CHECK(e2.e == 24);
  CHECK(e2.sigma == -16);
  CHECK(e2.b_plus == 3);
  CHECK(e2.b_minus == 19);
  CHECK(e2.pi1 == Pi1Status::SimplyConnected);
  CHECK(e2.parity == Parity::Even);
  CHECK(e2.consistent());
}

TEST_CASE("blow-ups") {
  const InvariantLedger l = blow_ups(ledger_e2(), 24);
  CHECK(l.e == 48);
  CHECK(l.sigma == -40);
  CHECK(l.parity == Parity::Odd);
  const InvariantLedger s = ledger_blow_up(make_ledger(1, 1, Pi1Status::SimplyConnected, Parity::Odd));
  CHECK(s.e == 5);
  CHECK(s.sigma == -1);
  CHECK(blow_ups(ledger_e2(), 26).e == 50);
  CHECK(blow_ups(ledger_e2(), 26).sigma == -42);
}

TEST_CASE("knot surgery is the identity on numbers") {
  for (const InvariantLedger& l : {ledger_e2(), make_ledger(3, 8, Pi1Status::Unknown, Parity::Odd),
                                   make_ledger(1, 1, Pi1Status::H1Zero, Parity::Odd)}) {
    const InvariantLedger k = ledger_knot_surgery(l);
    CHECK(k.e == l.e);
    CHECK(k.sigma == l.sigma);
    CHECK(k.pi1 == Pi1Status::SimplyConnected);
  }
  CHECK(ledger_knot_surgery(ledger_e2()).e == 24);
  CHECK(make_ledger(3, 8, Pi1Status::Unknown, Parity::Odd).e == 13);
  CHECK(make_ledger(1, 1, Pi1Status::Unknown, Parity::Odd).e == 4);
}

TEST_CASE("rational blow-downs") {
  const InvariantLedger x = blow_ups(ledger_e2(), 24);
  const InvariantLedger y = ledger_rbd(x, 33);
  CHECK(y.e == 15);
  CHECK(y.sigma == -7);
  CHECK(y.pi1 == Pi1Status::Unknown);
  CHECK(y.parity == Parity::Unknown);
  const InvariantLedger z = ledger_rbd(y, 2);
  CHECK(z.e == 13);
  CHECK(z.sigma == -5);
  CHECK(z.b_plus == 3);
  CHECK(z.b_minus == 8);

  const InvariantLedger zt = ledger_rbd(ledger_rbd(ledger_rbd(blow_ups(ledger_e2(), 26), 2), 2), 33);
  CHECK(zt.e == 13);
  CHECK(zt.sigma == -5);
  const InvariantLedger ss = ledger_rbd(blow_ups(ledger_e2(), 22), 33);
  CHECK(ss.e == 13);
  CHECK(ss.sigma == -5);
  CHECK_THROWS_AS(ledger_rbd(ledger_e2(), 20), std::invalid_argument);
}

TEST_CASE("ledger identities and b2+ preserved") {
  InvariantLedger l = ledger_e2();
  for (int step = 0; step < 40; ++step) {
    if (step % 7 == 3) l = ledger_knot_surgery(l);
    else if (step % 5 == 4 && l.b_minus >= 2) l = ledger_rbd(l, 2);
    else l = ledger_blow_up(l);
    REQUIRE(l.consistent());
    REQUIRE(l.b_plus == 3);
  }
  CHECK_THROWS_AS(make_ledger(-1, 2, Pi1Status::Unknown, Parity::Odd), std::invalid_argument);
}

TEST_CASE("coprimality") {
  CHECK(coprimality_certificate(3, 305));
  CHECK_FALSE(coprimality_certificate(3, 3));
  CHECK(coprimality_certificate(2, 5));
  CHECK_FALSE(coprimality_certificate(6, 15));
}

TEST_CASE("Freedman types") {
  const auto z = freedman_type(make_ledger(3, 8, Pi1Status::SimplyConnected, Parity::Odd));
  REQUIRE(z.has_value());
  CHECK(z->a == 3);
  CHECK(z->b == 8);
  CHECK(z->str() == "3CP^2 # 8(-CP^2)");

  const auto one = freedman_type(make_ledger(1, 1, Pi1Status::SimplyConnected, Parity::Odd));
  REQUIRE(one.has_value());
  CHECK(one->a == 1);
  CHECK(one->b == 1);

  // Read as an odd form, the E(2) numbers give 3CP^2 # 19(-CP^2); the real
  // E(2) ledger is even and is refused.
  const auto as_odd = freedman_type(make_ledger(3, 19, Pi1Status::SimplyConnected, Parity::Odd));
  REQUIRE(as_odd.has_value());
  CHECK(as_odd->b == 19);
  CHECK_FALSE(freedman_type(ledger_e2()).has_value());
  CHECK_FALSE(freedman_refusal(ledger_e2()).empty());

  CHECK_FALSE(freedman_type(make_ledger(3, 8, Pi1Status::H1Zero, Parity::Odd)).has_value());
  CHECK_FALSE(freedman_type(make_ledger(3, 8, Pi1Status::SimplyConnected, Parity::Unknown)).has_value());
  CHECK_FALSE(freedman_type(make_ledger(3, 0, Pi1Status::SimplyConnected, Parity::Odd)).has_value());
}

TEST_CASE("names round trip") {
  for (Pi1Status s : {Pi1Status::SimplyConnected, Pi1Status::H1Zero, Pi1Status::Unknown}) CHECK(parse_pi1(to_string(s)) == s);
  for (Parity p : {Parity::Odd, Parity::Even, Parity::Unknown}) CHECK(parse_parity(to_string(p)) == p);
  CHECK_THROWS_AS(parse_pi1("Trivial"), std::invalid_argument);
  CHECK(make_ledger(3, 8, Pi1Status::SimplyConnected, Parity::Odd).str() ==
        "(e=13, sigma=-5, b2+=3, b2-=8, pi1=SimplyConnected, parity=Odd)");
}

TEST_CASE("H1 certificates") {
  const Dataset& z = dataset("z_lattice.lat");
  const EmbeddedConfiguration& c305 = z.configs.at("C305");
  const EmbeddedConfiguration& c31 = z.configs.at("C31");
  CHECK(h1_certificate(c305, {}).vanishes);
  CHECK(h1_certificate(c31, c305.spheres).vanishes);

  const Dataset& ss = dataset("ss_lattice.lat");
  CHECK(h1_certificate(ss.configs.at("C305"), {}).vanishes);
}

TEST_CASE("link certificates") {
  const Dataset& z = dataset("z_lattice.lat");
  const EmbeddedConfiguration& c305 = z.configs.at("C305");
  const EmbeddedConfiguration& c31 = z.configs.at("C31");
  const LinkCertificate ok = link_certificate(c31, c305, Cls::generator(z.lattice, "E6"));
  CHECK(ok.holds);
  CHECK(ok.coprime);
  CHECK(ok.transverse);
  const LinkCertificate far = link_certificate(c31, c305, Cls::generator(z.lattice, "E1"));
  CHECK_FALSE(far.holds);
  CHECK_FALSE(far.transverse);
  const LinkCertificate same = link_certificate(c31, c31, Cls::generator(z.lattice, "E6"));
  CHECK_FALSE(same.coprime);
  CHECK_FALSE(same.holds);

  const Dataset& zt = dataset("ztilde_lattice.lat");
  CHECK(link_certificate(zt.configs.at("C31"), zt.configs.at("C305"), Cls::generator(zt.lattice, "E5")).holds);
  CHECK(link_certificate(zt.configs.at("C31p"), zt.configs.at("C305"), Cls::generator(zt.lattice, "E7")).holds);
}

TEST_CASE("odd survivors") {
  const Dataset& z = dataset("z_lattice.lat");
  std::vector<Cls> down = z.configs.at("C305").spheres;
  for (const Cls& u : z.configs.at("C31").spheres) down.push_back(u);
  const auto odd = odd_survivor(z.lattice, down);
  REQUIRE(odd.has_value());
  CHECK(square(*odd).is_odd());
  for (const Cls& u : down) CHECK(pair(*odd, u) == 0);
}

}
