#include <doctest.h>

#include <cmath>
#include <numbers>

#include "majorlens/entropy.hpp"
#include "majorlens/families.hpp"
#include "test_support.hpp"

using namespace majorlens;
using majorlens::testing::Rng;

namespace {

std::vector<EntropicFamily> sample_families() {
  return {EntropicFamily::von_neumann(),    EntropicFamily::tsallis(0.3),
          EntropicFamily::tsallis(2.0),     EntropicFamily::tsallis(7.5),
          EntropicFamily::peaked(0.25, 1.0), EntropicFamily::peaked(0.6, 50.0),
          EntropicFamily::peaked(0.1, 1e4), EntropicFamily::peaked_limit(0.28),
          EntropicFamily::peaked_limit(0.0)};
}

Spectrum spectrum_of(std::vector<double> p) { return Spectrum::from_values(std::move(p)); }

// Straight transcription of the defining formulas, used as an oracle.
double tsallis_direct(const std::vector<double>& p, double q) {
  double tr = 0.0;
  for (double v : p) tr += std::pow(v, q);
  return (1.0 - tr) / (q - 1.0);
}

}  // namespace

TEST_CASE("f vanishes at both end points") {
  for (const auto& f : sample_families()) {
    CHECK(std::abs(f_eval(f, 0.0)) < 1e-12);
    CHECK(std::abs(f_eval(f, 1.0)) < 1e-12);
  }
}

TEST_CASE("f_eval examples") {
  CHECK(f_eval(EntropicFamily::peaked_limit(0.25), 0.25) == doctest::Approx(3.0 / 16.0).epsilon(1e-15));
  CHECK(f_eval(EntropicFamily::tsallis(2.0), 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  const double peaked = f_eval(EntropicFamily::peaked(0.25, 50.0), 0.25);
  CHECK(peaked < 3.0 / 16.0);
  CHECK(3.0 / 16.0 - peaked < 0.02);
  CHECK(f_eval(EntropicFamily::von_neumann(), 0.5) == doctest::Approx(0.5 * std::numbers::ln2));
}

TEST_CASE("f_eval rejects p outside [0,1]") {
  CHECK_THROWS_AS(f_eval(EntropicFamily::von_neumann(), 1.0 + 1e-9), DomainError);
  CHECK_THROWS_AS(f_eval(EntropicFamily::tsallis(2.0), -1e-9), DomainError);
  CHECK_NOTHROW(f_eval(EntropicFamily::tsallis(2.0), -1e-13));
}

TEST_CASE("family parameter validation") {
  CHECK_THROWS_AS(EntropicFamily::tsallis(0.0), DomainError);
  CHECK_THROWS_AS(EntropicFamily::tsallis(-1.0), DomainError);
  CHECK_THROWS_AS(EntropicFamily::peaked(1.5, 1.0), DomainError);
  CHECK_THROWS_AS(EntropicFamily::peaked(0.5, 0.0), DomainError);
  CHECK(EntropicFamily::tsallis(1.0).kind() == EntropicFamily::Kind::VonNeumann);
}

TEST_CASE("log-cosh g is finite at extreme arguments") {
  CHECK(log_cosh_g(1.0, 1e4) == doctest::Approx(-0.5 + std::numbers::ln2 / 2e4).epsilon(1e-14));
  CHECK(std::isfinite(log_cosh_g(0.9, 1e8)));
  CHECK(log_cosh_g(0.0, 1e4) == 0.0);
  // Small argument: -t x^2 / 4 to leading order.
  CHECK(log_cosh_g(0.5, 1e-4) == doctest::Approx(-1e-4 * 0.25 / 4.0).epsilon(1e-8));
}

TEST_CASE("entropy examples") {
  std::vector<double> uniform(9, 1.0 / 9.0);
  CHECK(entropy(EntropicFamily::von_neumann(), spectrum_of(uniform)) ==
        doctest::Approx(std::log(9.0)).epsilon(1e-14));
  std::vector<double> pure(9, 0.0);
  pure[0] = 1.0;
  for (const auto& f : sample_families()) CHECK(std::abs(entropy(f, spectrum_of(pure))) < 1e-10);

  // d=3, x1=x2=0.4: spectrum {0.42222 x2, 0.02222 x7}; limit value 0.28 + 1 - 0.84444.
  const auto rho = analytic_spectrum(FamilySpec{3, {0.4, 0.4}});
  const double limit = entropy(EntropicFamily::peaked_limit(0.28), rho);
  CHECK(limit == doctest::Approx(0.28 + 1.0 - 2.0 * (0.4 + 0.2 / 9.0)).epsilon(1e-13));
  CHECK(std::abs(limit - 0.43556) < 1e-5);
  CHECK(std::abs(entropy(EntropicFamily::peaked(0.28, 1e4), rho) - limit) < 1e-3);
  CHECK_THROWS_AS(entropy(EntropicFamily::von_neumann(), spectrum_of({0.5, 0.4})), ValidationError);
}

TEST_CASE("Tsallis entropy matches the direct trace formula") {
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const auto p = majorlens::testing::random_probabilities(rng, 2 + rep % 20);
    for (double q : {0.05, 0.5, 0.999, 1.5, 2.0, 3.575, 20.0}) {
      CHECK(entropy(EntropicFamily::tsallis(q), spectrum_of(p)) ==
            doctest::Approx(tsallis_direct(p, q)).epsilon(1e-9));
    }
  }
}

TEST_CASE("conditional differences") {
  // Bell state: S_f(rho) = 0 so the difference is -S_f(rho_A).
  const double r = 1.0 / std::sqrt(2.0);
  const BipartiteDensity bell({2, 2}, projector(std::vector<Complex>{r, 0.0, 0.0, r}));
  for (const auto& f : sample_families()) {
    if (f.kind() == EntropicFamily::Kind::PeakedLimit && f.alpha() == 0.0) continue;
    const auto rep = conditional(f, bell, Side::A);
    CHECK(std::abs(rep.s_rho) < 1e-10);
    CHECK(rep.difference == doctest::Approx(-rep.s_reduced));
    CHECK(rep.difference < 0.0);
    CHECK(rep.normalizer > 0.0);
    CHECK((rep.normalized < 0.0) == (rep.difference < 0.0));
  }

  const auto vn = conditional(EntropicFamily::von_neumann(), build(FamilySpec{3, {0.46, 0.46}}), Side::A);
  CHECK(vn.difference < 0.0);

  const auto sep = build(FamilySpec{3, {0.05, 0.05}});
  for (const auto& f : sample_families()) {
    CHECK(conditional(f, sep, Side::A).difference >= 0.0);
    CHECK(conditional(f, sep, Side::B).difference >= 0.0);
  }
}

TEST_CASE("normalizers") {
  const auto spec = FamilySpec{3, {0.36, 0.36}};
  const auto rho = analytic_spectrum(spec), red = analytic_reduced(spec);
  const auto t = conditional(EntropicFamily::tsallis(3.0), rho, red);
  double tr = 0.0;
  for (double p : red.values) tr += p * p * p;
  CHECK(t.normalizer == doctest::Approx(tr));
  const auto pk = conditional(EntropicFamily::peaked(0.28, 30.0), rho, red);
  double g = 0.0;
  for (double p : rho.values) g += log_cosh_g(p - 0.28, 30.0);
  CHECK(pk.normalizer == doctest::Approx(std::abs(g)));
  CHECK(conditional(EntropicFamily::von_neumann(), rho, red).normalizer == 1.0);
}

TEST_CASE("t -> 0 limit: peaked / (t/4) tends to Tsallis q = 2") {
  const auto mixed = build(FamilySpec{3, {0.0, 0.0}});
  const auto peaked = EntropicFamily::peaked(0.5, 1e-3);
  CHECK(std::abs(entropy(peaked, mixed.spectrum()) / (1e-3 / 4.0) - 8.0 / 9.0) < 1e-4);

  std::vector<double> pure(9, 0.0);
  pure[0] = 1.0;
  CHECK(entropy(peaked, spectrum_of(pure)) == doctest::Approx(0.0));

  const auto s = analytic_spectrum(FamilySpec{3, {0.3, 0.1}});
  const double t = 1e-4;
  const double at_low = entropy(EntropicFamily::peaked(0.1, t), s) / (t / 4.0);
  const double at_high = entropy(EntropicFamily::peaked(0.9, t), s) / (t / 4.0);
  CHECK(std::abs(at_low - at_high) < 1e-6);

  // Quadratic convergence: halving t quarters the deviation.
  const auto rho = build(FamilySpec{3, {0.3, 0.1}});
  const double e1 = tsallis_q2_limit_check(rho, 1e-2);
  const double e2 = tsallis_q2_limit_check(rho, 5e-3);
  CHECK(e1 > 0.0);
  CHECK(e2 / e1 == doctest::Approx(0.25).epsilon(0.05));
  CHECK_THROWS_AS(tsallis_q2_limit_check(rho, 0.1), DomainError);
}

TEST_CASE("property: concavity on random triples") {
  Rng rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& f : sample_families()) {
    for (int rep = 0; rep < 1000; ++rep) {
      double p[3] = {u(rng), u(rng), u(rng)};
      std::sort(p, p + 3);
      if (p[2] - p[0] < 1e-9) continue;
      const double w = (p[1] - p[0]) / (p[2] - p[0]);
      const double chord = (1.0 - w) * f_eval(f, p[0]) + w * f_eval(f, p[2]);
      CHECK(f_eval(f, p[1]) >= chord - 1e-12);
    }
  }
}

TEST_CASE("property: Schur concavity under block averaging") {
  Rng rng(19);
  std::uniform_int_distribution<int> len(2, 30);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto fine = majorlens::testing::random_probabilities(rng, static_cast<std::size_t>(len(rng)));
    // Average adjacent blocks of width 2: a doubly stochastic map, so coarse < fine.
    std::vector<double> coarse = fine;
    for (std::size_t i = rep % 2; i + 1 < coarse.size(); i += 2) coarse[i] = coarse[i + 1] = 0.5 * (fine[i] + fine[i + 1]);
    for (const auto& f : sample_families())
      CHECK(entropy(f, spectrum_of(coarse)) >= entropy(f, spectrum_of(fine)) - 1e-12);
  }
}

TEST_CASE("property: Tsallis is continuous at q = 1") {
  Rng rng(23);
  for (int rep = 0; rep < 200; ++rep) {
    const auto s = spectrum_of(majorlens::testing::random_probabilities(rng, 2 + rep % 30));
    const double vn = entropy(EntropicFamily::von_neumann(), s);
    CHECK(std::abs(entropy(EntropicFamily::tsallis(1.0 + 1e-5), s) - vn) <= 1e-3);
    CHECK(std::abs(entropy(EntropicFamily::tsallis(1.0 - 1e-5), s) - vn) <= 1e-3);
    CHECK(std::abs(entropy(EntropicFamily::tsallis(1.0 + 1e-9), s) - vn) <= 1e-8);
  }
}

TEST_CASE("property: peaked approaches its limit within D ln2 / (2t)") {
  Rng rng(29);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t dim = 2 + rep % 40;
    const auto s = spectrum_of(majorlens::testing::random_probabilities(rng, dim));
    const double alpha = ua(rng);
    const double limit = entropy(EntropicFamily::peaked_limit(alpha), s);
    for (double t : {1e2, 1e3, 1e4}) {
      const double bound = static_cast<double>(dim) * std::numbers::ln2 / (2.0 * t);
      CHECK(std::abs(entropy(EntropicFamily::peaked(alpha, t), s) - limit) <= bound);
    }
  }
}

TEST_CASE("property: the uniform spectrum maximizes every entropy") {
  Rng rng(31);
  for (std::size_t dim : {2u, 4u, 9u, 16u}) {
    const auto uniform = spectrum_of(std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
    for (int rep = 0; rep < 100; ++rep) {
      const auto s = spectrum_of(majorlens::testing::random_probabilities(rng, dim));
      for (const auto& f : sample_families()) CHECK(entropy(f, s) <= entropy(f, uniform) + 1e-12);
    }
  }
}

TEST_CASE("property: large-q Tsallis difference is negative when p1 exceeds p1 of the marginal") {
  Rng rng(37);
  int checked = 0;
  for (int rep = 0; rep < 400 && checked < 100; ++rep) {
    const auto rho_p = majorlens::testing::random_probabilities(rng, 9);
    const auto red_p = majorlens::testing::random_probabilities(rng, 3);
    if (rho_p[0] <= red_p[0] + 1e-2) continue;
    ++checked;
    const auto rho = spectrum_of(rho_p), red = spectrum_of(red_p);
    CHECK(conditional(EntropicFamily::tsallis(200.0), rho, red).difference < 0.0);
  }
  CHECK(checked > 0);
}
