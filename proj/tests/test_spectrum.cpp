#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "qes/errors.hpp"
#include "qes/shooting.hpp"
#include "qes/spectrum.hpp"

using namespace qes;

namespace {

ExpansionFamily fam(const char* s) { return parse_family(s); }

// Dense (N+1)x(N+1) determinant by LU.
double dense_det(const PotentialSpec& s, const ExpansionFamily& f, double E, int N) {
  const Recurrence r = recurrence(s, f, E);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n) {
    M(n, n) = r.beta(n);
    if (n < N) M(n, n + 1) = r.alpha(n);
    if (n > 0) M(n, n - 1) = r.gamma(n);
  }
  return M.determinant();
}

// Roots of the dense determinant by plain bisection on a fine scan.
std::vector<double> det_roots(const PotentialSpec& s, const ExpansionFamily& f, int N, double lo, double hi) {
  std::vector<double> out;
  const int steps = 20000;
  double a = lo, fa = dense_det(s, f, a, N);
  for (int i = 1; i <= steps; ++i) {
    const double b = lo + (hi - lo) * i / steps, fb = dense_det(s, f, b, N);
    if (fa == 0.0) out.push_back(a);
    else if (fa * fb < 0) {
      double x = a, y = b, fx = fa;
      for (int k = 0; k < 200; ++k) {
        const double m = 0.5 * (x + y), fm = dense_det(s, f, m, N);
        if (fm * fx <= 0) y = m;
        else x = m, fx = fm;
      }
      out.push_back(0.5 * (x + y));
    }
    a = b, fa = fb;
  }
  return out;
}

}  // namespace

TEST_CASE("characteristic determinant") {
  const PotentialSpec s = make_spec(PotentialKind::V1, -0.5, 0.5);
  for (double E : {-3.0, 0.2, 4.0}) {
    const Recurrence r = recurrence(s, fam("bold5"), E);
    CHECK(characteristic_det(s, fam("bold5"), E, 0) == doctest::Approx(r.beta(0)));
    CHECK(characteristic_det(s, fam("bold5"), E, 1) ==
          doctest::Approx(r.beta(0) * r.beta(1) - r.alpha(0) * r.gamma(1)).epsilon(1e-13));
  }
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ed(-40, 40);
  const PotentialSpec s8 = make_spec(PotentialKind::V2, 6.5, 0.3);
  for (int i = 0; i < 20; ++i) {
    const double E = ed(rng);
    for (int N = 0; N <= 8; ++N) {
      const double d = dense_det(s8, fam("ring5"), E, N);
      CHECK(characteristic_det(s8, fam("ring5"), E, N) == doctest::Approx(d).epsilon(1e-9));
    }
  }
}

TEST_CASE("characteristic polynomial degree") {
  // (N+2)-th finite difference of a degree-(N+1) polynomial vanishes, the (N+1)-th does not
  const PotentialSpec s = make_spec(PotentialKind::V1, 6.0, 0.5);
  const int N = *truncation_order(s, fam("ring5"));
  auto diff = [&](int order) {
    double acc = 0.0, binom = 1.0;
    for (int j = 0; j <= order; ++j) {
      acc += ((order - j) % 2 ? -1.0 : 1.0) * binom * characteristic_det(s, fam("ring5"), 0.5 * j, N);
      binom = binom * (order - j) / (j + 1);
    }
    return acc;
  };
  const double lead = diff(N + 1);
  CHECK(std::abs(lead) > 1e-6);
  CHECK(std::abs(diff(N + 2)) < 1e-9 * std::abs(lead) * 1e3);
  const double slope = recurrence(s, fam("ring5"), 0.0).slope();
  double fact = 1.0;
  for (int j = 2; j <= N + 1; ++j) fact *= j;
  CHECK(lead == doctest::Approx(fact * std::pow(slope * 0.5, N + 1)).epsilon(1e-8));
}

TEST_CASE("sturm utilities") {
  const std::vector<double> d{2, 2, 2, 2}, o{-1, -1, -1};
  const auto ev = sturm_eigenvalues(d, o);
  REQUIRE(ev.size() == 4);
  for (int j = 1; j <= 4; ++j) CHECK(ev[j - 1] == doctest::Approx(2 - 2 * std::cos(j * M_PI / 5)).epsilon(1e-13));
  CHECK(sturm_count(d, o, 0.0) == 0);
  CHECK(sturm_count(d, o, 2.0 + 1e-9) == 2);
  CHECK(sturm_count(d, o, 10.0) == 4);
}

TEST_CASE("closed forms") {
  for (double m : {0.25, 0.5, 0.75}) {
    const auto v1a = finite_spectrum(make_spec(PotentialKind::V1, -1.5, m), fam("bold5"));
    REQUIRE(v1a.energies.size() == 1);
    CHECK(v1a.energies[0] == doctest::Approx(-0.5 - 1.75 * m).epsilon(1e-12));
    const auto v1b = finite_spectrum(make_spec(PotentialKind::V1, -0.5, m), fam("bold6"));
    const double r = std::sqrt(1 + 7 * m + m * m);
    REQUIRE(v1b.energies.size() == 2);
    CHECK(v1b.energies[0] == doctest::Approx(-2.5 - 0.75 * m - r).epsilon(1e-12));
    CHECK(v1b.energies[1] == doctest::Approx(-2.5 - 0.75 * m + r).epsilon(1e-12));
    const auto v2a = finite_spectrum(make_spec(PotentialKind::V2, -1.5, m), fam("bar7"));
    CHECK(v2a.energies[0] == doctest::Approx(-0.5 + 2.25 * m).epsilon(1e-12));
    // negative discriminant 1 - 9k^2 + 9k^4 for these moduli: complex pair, no real energy
    const auto v2b = finite_spectrum(make_spec(PotentialKind::V2, -0.5, m), fam("bar5"));
    CHECK(v2b.energies.empty());
    REQUIRE(v2b.complex_roots.size() == 2);
    const std::complex<double> disc = std::sqrt(std::complex<double>(1 - 9 * m + 9 * m * m, 0));
    for (const auto& z : v2b.complex_roots) {
      const bool hit = std::abs(z - (-2.5 + 3.25 * m + disc)) < 1e-10 || std::abs(z - (-2.5 + 3.25 * m - disc)) < 1e-10;
      CHECK(hit);
    }
  }
  const auto g = finite_spectrum(make_spec(PotentialKind::V1, 0.0, 0.5), fam("ring5")).energies;
  REQUIRE(g.size() == 1);
  CHECK(g[0] == doctest::Approx(2 * 0.5 - 2));
  CHECK_THROWS_AS(finite_spectrum(make_spec(PotentialKind::V1, 0.3, 0.5), fam("ring5")), ArgumentError);
}

TEST_CASE("Arscott flags") {
  for (int l = 0; l <= 12; ++l)
    for (const char* f : {"ring5", "ring6"}) {
      const PotentialSpec s = make_spec(PotentialKind::V1, l, 0.5);
      if (truncation_order(s, fam(f))) CHECK(arscott_check(s, fam(f)).ok);
    }
  for (int j = 0; j <= 8; ++j) {
    const double l = -0.5 + j;
    CHECK(arscott_check(make_spec(PotentialKind::V1, l, 0.5), fam("bold5")).ok == (j % 2 == 0));
  }
  const ArscottReport v2 = arscott_check(make_spec(PotentialKind::V2, 2.5, 0.5), fam("bar5"));
  CHECK_FALSE(v2.ok);
  CHECK_FALSE(v2.violating.empty());
  for (int n : v2.violating) CHECK((n >= 1 && n <= 4));
}

TEST_CASE("finite spectra agree with dense determinant roots") {
  for (PotentialKind k : {PotentialKind::V1, PotentialKind::V2})
    for (int twice = -3; twice <= 20; ++twice) {
      const PotentialSpec s = make_spec(k, twice / 2.0, 0.5);
      for (const ExpansionFamily& f : supported_families(k)) {
        const auto N = truncation_order(s, f);
        if (!N || *N > 10) continue;
        const SpectrumResult r = finite_spectrum(s, f);
        if (!r.arscott_ok) continue;
        CAPTURE(family_name(f));
        CAPTURE(s.l);
        REQUIRE(static_cast<int>(r.energies.size()) == *N + 1);
        const double lo = r.energies.front() - 1.0, hi = r.energies.back() + 1.0;
        const auto ref = det_roots(s, f, *N, lo, hi);
        REQUIRE(ref.size() == r.energies.size());
        for (std::size_t i = 0; i < ref.size(); ++i)
          CHECK(r.energies[i] == doctest::Approx(ref[i]).epsilon(1e-10).scale(1 + std::abs(ref[i])));
        for (std::size_t i = 1; i < r.energies.size(); ++i)
          CHECK(r.energies[i] - r.energies[i - 1] > 1e-8 * (1 + std::abs(r.energies[i])));
      }
    }
}

TEST_CASE("continued fraction") {
  const PotentialSpec s = make_spec(PotentialKind::V1, -3.0, 0.5);
  for (double E : {-2.0, 1.0, 7.5}) CHECK(continued_fraction(s, fam("ring5"), E, 1) == recurrence(s, fam("ring5"), E).beta(0));
  const auto roots = infinite_spectrum(s, fam("ring5"), std::nullopt, 3);
  REQUIRE(roots.size() == 3);
  for (double E : roots) {
    const double d = 1e-3;
    const InfiniteRoot r = infinite_energy(s, fam("ring5"), {E - d, E + d});
    CHECK(r.E == doctest::Approx(E).epsilon(1e-12));
    // roots of the fraction truncated at depth D and 2D, by bisection here
    auto root_at = [&](int depth) {
      double a = E - 1e-6, b = E + 1e-6;
      double fa = continued_fraction(s, fam("ring5"), a, depth);
      for (int k = 0; k < 100; ++k) {
        const double m = 0.5 * (a + b), fm = continued_fraction(s, fam("ring5"), m, depth);
        if (fa * fm <= 0) b = m;
        else a = m, fa = fm;
      }
      return 0.5 * (a + b);
    };
    CHECK(std::abs(root_at(r.depth) - root_at(2 * r.depth)) < 1e-10);
    CHECK(std::abs(root_at(r.depth) - E) < 1e-10);
  }
  CHECK_THROWS_AS(infinite_energy(s, fam("ring5"), {roots[0] + 0.01, roots[0] + 0.02}), NoRootError);
  CHECK_THROWS_AS(infinite_spectrum(make_spec(PotentialKind::V1, 2.0, 0.5), fam("ring5")), ArgumentError);
}

TEST_CASE("infinite-series energies match the shooting oracle") {
  for (PotentialKind k : {PotentialKind::V1, PotentialKind::V2})
    for (double l : {-3.0, 0.3}) {
      const PotentialSpec s = make_spec(k, l, 0.5);
      const int odd = k == PotentialKind::V1 ? 6 : 7;
      for (auto [f, par] : {std::pair{ExpansionFamily{FamilyGroup::PowerRing, 5}, Parity::Even},
                            std::pair{ExpansionFamily{FamilyGroup::PowerRing, odd}, Parity::Odd}}) {
        const auto series = infinite_spectrum(s, f, std::nullopt, 2);
        REQUIRE(series.size() == 2);
        ShootingOptions opt;
        opt.e_max = series.back() + 1.0;
        const auto shot = shooting_spectrum(s, par, 2, opt).energies;
        REQUIRE(shot.size() == 2);
        for (int i = 0; i < 2; ++i) CHECK(series[i] == doctest::Approx(shot[i]).epsilon(1e-6).scale(1));
      }
    }
}

TEST_CASE("l -> -l-5 symmetry of finite spectra") {
  for (PotentialKind k : {PotentialKind::V1, PotentialKind::V2})
    for (int l = 0; l <= 6; ++l) {
      const PotentialSpec s = make_spec(k, l, 0.5);
      const PotentialSpec p = symmetry_partner(s);
      CHECK(p.l == -l - 5);
      for (const ExpansionFamily& f : supported_families(k)) {
        if (f.group != FamilyGroup::PowerRing || !truncation_order(s, f)) continue;
        const ExpansionFamily g = symmetry_partner_family(k, f);
        const auto a = finite_spectrum(s, f).energies, b = finite_spectrum(p, g).energies;
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
      }
    }
  CHECK(symmetry_partner(make_spec(PotentialKind::V1, -2.5, 0.5)).l == -2.5);
  CHECK(symmetry_partner_family(PotentialKind::V2, fam("ring7")) == fam("ring3"));
}

TEST_CASE("l = -3/2 hypergeometric pair is proportional") {
  const PotentialSpec s = make_spec(PotentialKind::V1, -1.5, 0.5);
  const auto a = finite_spectrum(s, fam("bold5")).solutions.at(0);
  const auto b = finite_spectrum(s, fam("bold6")).solutions.at(0);
  const double K = complete_K(0.5);
  const double c = evaluate(a, 0.5 * K) / evaluate(b, 0.5 * K);
  for (int i = 1; i < 32; ++i) {
    const double u = K * i / 32.0;
    CHECK(std::abs(evaluate(a, u) - c * evaluate(b, u)) < 1e-10);
  }
}
