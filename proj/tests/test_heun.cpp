#include <doctest.h>

#include <cmath>
#include <random>

#include "qes/errors.hpp"
#include "qes/heun.hpp"

using namespace qes;

namespace {

bool same(const HeunParams& a, const HeunParams& b, double tol = 1e-12) {
  auto eq = [tol](double x, double y) { return std::abs(x - y) <= tol * (1.0 + std::abs(x)); };
  return eq(a.a, b.a) && eq(a.q, b.q) && eq(a.alpha, b.alpha) && eq(a.beta, b.beta) && eq(a.gamma, b.gamma) &&
         eq(a.delta, b.delta) && eq(a.epsilon, b.epsilon);
}

double eps_defect(const HeunParams& p) { return p.epsilon - (p.alpha + p.beta + 1.0 - p.gamma - p.delta); }

}  // namespace

TEST_CASE("HeunParams validates its constraint") {
  CHECK_NOTHROW(HeunParams(2.0, 0.1, 3.0, 2.5, 0.5, 2.5, 3.5));
  CHECK_THROWS_AS(HeunParams(2.0, 0.1, 3.0, 2.5, 0.5, 2.5, 3.6), ArgumentError);
  CHECK_THROWS_AS(HeunParams::derived(1.0, 0.1, 3.0, 2.5, 0.5, 2.5), ArgumentError);
  CHECK_THROWS_AS(HeunParams::derived(0.0, 0.1, 3.0, 2.5, 0.5, 2.5), ArgumentError);
  CHECK(HeunParams::derived(2.0, 0.1, 3.0, 2.5, 0.5, 2.5).epsilon == 3.5);
}

TEST_CASE("make_spec rejects bad moduli") {
  CHECK_THROWS_AS(make_spec(PotentialKind::V1, 0.0, 1.5), DomainError);
  CHECK_THROWS_AS(make_spec(PotentialKind::V2, 0.0, 0.0), DomainError);
}

TEST_CASE("potentials") {
  const PotentialSpec v1 = make_spec(PotentialKind::V1, 0.0, 0.5);
  const double K = complete_K(0.5);
  // 2/sn^2 K - (1 - k^2) 6 / dn^2 K = 2 - 6
  CHECK(printed_potential(v1, K) == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK_THROWS_AS(potential_value(v1, K), SingularPointError);
  CHECK_THROWS_AS(potential_value(make_spec(PotentialKind::V2, 0.0, 0.5), 0.0), SingularPointError);

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ld(-8.0, 3.0), md(0.05, 0.95), fd(0.05, 0.95);
  for (int i = 0; i < 500; ++i) {
    const double l = ld(rng), m = md(rng);
    const double u = fd(rng) * complete_K(m);
    for (PotentialKind kind : {PotentialKind::V1, PotentialKind::V2}) {
      const PotentialSpec a = make_spec(kind, l, m), b = make_spec(kind, -l - 5, m);
      CHECK(potential_value(a, u) == doctest::Approx(potential_value(b, u)).epsilon(1e-12));
    }
    // Darboux forms equal the other written forms with the labels exchanged.
    const JacobiTriple j = jacobi(u, m);
    const double L = (l + 2) * (l + 3);
    const double w1 = 2 * (1 - m) / (j.cn * j.cn) - L + L * m * j.cn * j.cn / (j.dn * j.dn);
    const double w2 = 2 / (j.sn * j.sn) - L + L * m * j.cn * j.cn / (j.dn * j.dn);
    CHECK(potential_value(make_spec(PotentialKind::V1, l, m), u) == doctest::Approx(w1).epsilon(1e-12));
    CHECK(potential_value(make_spec(PotentialKind::V2, l, m), u) == doctest::Approx(w2).epsilon(1e-12));
    CHECK(printed_potential(make_spec(PotentialKind::V1, l, m), u) == doctest::Approx(w2).epsilon(1e-12));
    CHECK(printed_potential(make_spec(PotentialKind::V2, l, m), u) == doctest::Approx(w1).epsilon(1e-12));
  }
}

TEST_CASE("darboux_params") {
  const HeunParams p = darboux_params(make_spec(PotentialKind::V1, 0.0, 0.5), 0.0);
  CHECK(p.a == 2.0);
  CHECK(p.alpha == 3.0);
  CHECK(p.beta == 2.5);
  CHECK(p.gamma == 0.5);
  CHECK(p.delta == 2.5);
  CHECK(p.epsilon == 3.5);
  CHECK(p.q == doctest::Approx(0.75).epsilon(1e-15));

  const HeunParams v2 = darboux_params(make_spec(PotentialKind::V2, -5.0, 0.5), 1.3);
  CHECK(v2.q == doctest::Approx(-(1.3 + 2.0) / 2.0).epsilon(1e-14));
  CHECK(v2.gamma == 2.5);
  CHECK(v2.delta == 0.5);

  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> ld(-9.0, 6.0), ed(-30.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    const double l = ld(rng), E = ed(rng);
    for (PotentialKind kind : {PotentialKind::V1, PotentialKind::V2}) {
      const HeunParams h = darboux_params(make_spec(kind, l, 0.3), E);
      CHECK(h.epsilon == doctest::Approx(l + 3.5).epsilon(1e-14));
      CHECK(std::abs(eps_defect(h)) < 1e-12);
    }
    // l -> -l-5 fixes l^2 + 5l and (l+2)(l+3)
    CHECK((-l - 5) * (-l - 5) + 5 * (-l - 5) == doctest::Approx(l * l + 5 * l).epsilon(1e-13));
    CHECK(coupling(-l - 5) == doctest::Approx(coupling(l)).epsilon(1e-13));
  }
}

TEST_CASE("homotopic transformations") {
  const HeunParams p = darboux_params(make_spec(PotentialKind::V1, 0.0, 0.5), 0.0);
  CHECK(same(homotopic(1, p).params, p));
  CHECK(homotopic(1, p).power.on_x == 0.0);

  const HomotopicResult t2 = homotopic(2, p);
  CHECK(t2.params.gamma == doctest::Approx(1.5));
  CHECK(t2.params.q == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(t2.power.on_x == doctest::Approx(0.5));
  CHECK(same(homotopic(2, t2.params).params, p));

  CHECK_THROWS_AS(homotopic(0, p), ArgumentError);
  CHECK_THROWS_AS(homotopic(9, p), ArgumentError);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const HeunParams r = HeunParams::derived(2.0 + d(rng) * d(rng), d(rng), d(rng), d(rng), d(rng), d(rng));
    for (int i = 1; i <= 8; ++i) CHECK(std::abs(eps_defect(homotopic(i, r).params)) < 1e-12);
    CHECK(std::abs(eps_defect(fractional_m49(r))) < 1e-12);
    const HeunParams m = fractional_m49(r);
    CHECK(m.gamma == r.delta);
    CHECK(m.delta == r.gamma);
    CHECK(same(fractional_m49(m), r));
    CHECK(same(homotopic(2, homotopic(2, r).params).params, r));
  }
}

TEST_CASE("fractional_m49 example") {
  const HeunParams p = darboux_params(make_spec(PotentialKind::V1, 0.0, 0.5), 0.0);
  const HeunParams m = fractional_m49(p);
  CHECK(m.a == -1.0);
  CHECK(m.q == doctest::Approx(27.0 / 4.0).epsilon(1e-14));
  CHECK(m.gamma == 2.5);
  CHECK(m.delta == 0.5);
}

TEST_CASE("family prefactors") {
  struct Row {
    PotentialKind kind;
    const char* fam;
    double sn, cn;
    bool plus;  // dn power l+3 (true) or -l-2
  };
  const Row rows[] = {
      {PotentialKind::V1, "ring5", 0, 2, false}, {PotentialKind::V1, "ring6", 1, 2, false},
      {PotentialKind::V1, "ring1", 0, 2, true},  {PotentialKind::V1, "ring2", 1, 2, true},
      {PotentialKind::V2, "ring5", 2, 0, false}, {PotentialKind::V2, "ring7", 2, 1, false},
      {PotentialKind::V2, "ring1", 2, 0, true},  {PotentialKind::V2, "ring3", 2, 1, true},
      // hypergeometric: odd members are stored after the Euler relation
      {PotentialKind::V1, "bold5", 0, 2, false}, {PotentialKind::V1, "bold6", 0, 2, false},
      {PotentialKind::V1, "bold1", 0, 2, true},  {PotentialKind::V1, "bold2", 0, 2, true},
      {PotentialKind::V2, "bar5", 2, 0, false},  {PotentialKind::V2, "bar7", 2, 0, false},
      {PotentialKind::V2, "bar1", 2, 0, true},   {PotentialKind::V2, "bar3", 2, 0, true},
  };
  for (double l : {0.0, 2.0, -1.5, 0.3}) {
    for (const Row& r : rows) {
      const PotentialSpec spec = make_spec(r.kind, l, 0.5);
      const Prefactor p = family_prefactor(spec, parse_family(r.fam));
      CAPTURE(r.fam);
      CHECK(p.p_sn == r.sn);
      CHECK(p.p_cn == r.cn);
      CHECK(p.p_dn == doctest::Approx(r.plus ? l + 3 : -l - 2));
    }
  }
  const Prefactor b1 = base_prefactor(make_spec(PotentialKind::V1, 1.0, 0.5));
  CHECK(b1.p_sn == 0);
  CHECK(b1.p_cn == 2);
  CHECK(b1.p_dn == 4);
  CHECK_THROWS_AS(family_prefactor(make_spec(PotentialKind::V1, 0, 0.5), parse_family("ring3")), ArgumentError);
  CHECK_THROWS_AS(family_prefactor(make_spec(PotentialKind::V2, 0, 0.5), parse_family("bold5")), ArgumentError);
}

TEST_CASE("classify_l") {
  CHECK(classify_l(3.0) == LClass::Integer);
  CHECK(classify_l(-2.5) == LClass::HalfOdd);
  CHECK(classify_l(0.3) == LClass::Generic);
  CHECK(classify_l(2.0 + 1e-11) == LClass::Integer);
}

TEST_CASE("family names") {
  for (PotentialKind kind : {PotentialKind::V1, PotentialKind::V2})
    for (const ExpansionFamily& f : supported_families(kind)) CHECK(parse_family(family_name(f)) == f);
  CHECK_THROWS_AS(parse_family("ring9"), ArgumentError);
  CHECK_THROWS_AS(parse_family("wave1"), ArgumentError);
  CHECK(parse_potential("v2") == PotentialKind::V2);
  CHECK(euler_stored(parse_family("bold6")));
  CHECK_FALSE(euler_stored(parse_family("bold5")));
}
