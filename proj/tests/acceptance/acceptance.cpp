#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "majorlens/scan.hpp"

using namespace majorlens;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& measured) {
  std::printf("[%s] criterion %2d: %s | %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), measured.c_str());
  if (!ok) ++failures;
}

std::string num(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

bool within(const std::optional<double>& v, double target, double tol) {
  return v && std::abs(*v - target) <= tol;
}

std::string show(const std::optional<double>& v) { return v ? num("%.7f", *v) : std::string("none"); }

double onset(const RaySpec& ray, Criterion c, double tol = 1e-6) {
  const auto r = bisect_threshold(ray, c, {}, tol);
  return r.value ? *r.value : std::nan("");
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

void werner_boundary() {
  const auto peres = bisect_threshold(RaySpec::axis(2, 1), Criterion::Peres, {}, 1e-7);
  bool witness_flip = true;
  for (double x : linspace(0.0, 1.0, 301))
    witness_flip &= separability_witness(FamilySpec{2, {x}}).has_value() == (x <= 1.0 / 3.0 + 1e-12);
  report(1, within(peres.value, 1.0 / 3.0, 1e-5) && witness_flip,
         "d=2 Werner axis threshold 1/3 +- 1e-5",
         "peres=" + show(peres.value) + " witness boundary agrees=" + (witness_flip ? "yes" : "no"));
}

void peres_diagonal() {
  const double closed = thresholds(3, 2).peres_diagonal();
  const auto peres = bisect_threshold(RaySpec::diagonal(3, 2), Criterion::Peres, {}, 1e-7);
  report(2, within(peres.value, 1.0 / (2.0 + 9.0 / std::sqrt(2.0)), 2e-4) && within(peres.value, closed, 1e-6),
         "d=3 diagonal Peres onset 0.11957 +- 2e-4, equal to the closed form",
         "bisected=" + show(peres.value) + " closed=" + num("%.7f", closed));
}

void disorder_onsets() {
  const auto axis = bisect_threshold(RaySpec::axis(3, 2), Criterion::Disorder, {}, 1e-7);
  const auto diag = bisect_threshold(RaySpec::diagonal(3, 2), Criterion::Disorder, {}, 1e-7);
  const auto t = thresholds(3, 2);
  report(3, within(axis.value, 4.0 / 13.0, 2e-4) && within(diag.value, 0.32, 2e-4) &&
                within(axis.value, t.disorder_axis(), 1e-6) && within(diag.value, t.disorder_diagonal(), 1e-6),
         "d=3 disorder onsets: axis 4/13, diagonal 0.32, +- 2e-4",
         "axis=" + show(axis.value) + " diagonal=" + show(diag.value));
}

void tsallis_onset() {
  const auto r = bisect_threshold(RaySpec::diagonal(3, 2), Criterion::Tsallis, {}, 1e-6);
  double q = std::nan("");
  if (r.value) {
    const FamilySpec at{3, {*r.value + 1e-6, *r.value + 1e-6}};
    const auto v = tsallis_sweep(analytic_spectrum(at), analytic_reduced(at));
    q = v.witness ? *v.witness->q : *v.at_margin.q;
  }
  report(4, within(r.value, 0.381, 1e-3) && std::abs(q - 3.575) <= 2e-2,
         "d=3 diagonal Tsallis onset 0.381 +- 1e-3 with q* = 3.575 +- 2e-2",
         "onset=" + show(r.value) + " q*=" + num("%.4f", q));
}

void von_neumann_onset() {
  const auto r = bisect_threshold(RaySpec::diagonal(3, 2), Criterion::VonNeumann, {}, 1e-6);
  report(5, within(r.value, 0.452, 1e-3), "d=3 diagonal von Neumann onset 0.452 +- 1e-3", "onset=" + show(r.value));
}

void alpha_recommendations() {
  const double a1 = recommend_alpha(build(FamilySpec{3, {4.0 / 13.0, 0.0}}), Side::A, 1);
  const double a2 = recommend_alpha(build(FamilySpec{3, {0.32, 0.32}}), Side::A, 2);
  report(6, std::abs(a1 - 5.0 / 13.0) <= 1e-10 && std::abs(a2 - 0.28) <= 1e-10,
         "alpha recommendations 5/13 and 0.28 +- 1e-10",
         "p1=" + num("%.12f", a1) + " p2=" + num("%.12f", a2));
}

void peaked_completeness() {
  const auto grid = GridSpec::plane(3, 101);
  const std::vector<double> alphas{0.280, 0.281, 0.282, 0.385, 0.386, 0.387};
  std::size_t violated = 0, missed = 0, separable = 0, false_alarms = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto spec = grid.point(grid.node(k));
    if (!in_region(spec)) continue;
    const auto rho = analytic_spectrum(spec), red = analytic_reduced(spec);
    const bool detected = peaked_search(rho, red, alphas, {1e4}).detected;
    if (majorization_report(rho, red, Side::A).violated()) {
      ++violated;
      missed += detected ? 0 : 1;
    }
    if (sigma_min_pt(spec) >= 0.0) {
      ++separable;
      false_alarms += detected ? 1 : 0;
    }
  }
  report(7, violated > 0 && missed == 0 && separable > 0 && false_alarms == 0,
         "peaked alpha in {0.281, 0.386} +- 1e-3, t=1e4 detects every violation on the 101x101 d=3 grid",
         std::to_string(violated) + " violating points, " + std::to_string(missed) + " missed; " +
             std::to_string(separable) + " separable points, " + std::to_string(false_alarms) + " detections");
}

void tsallis_incompleteness() {
  const FamilySpec spec{3, {0.35, 0.35}};
  const auto rho = build(spec);
  const auto [a, b] = disorder_check(rho);
  const auto ts = tsallis_sweep(rho, Side::A, QGrid{1e-2, 1e3});
  const auto pk = peaked_search(rho, Side::A, recommended_alphas(eigenvalues(partial_trace(rho, Side::A))), {1e4});
  report(8, a.violated_indices == std::vector<std::size_t>{2} && !ts.detected && pk.detected,
         "d=3 x=0.35: disorder violates at i=2, Tsallis over q in [1e-2, 1e3] finds nothing, peaked detects",
         "tsallis min=" + num("%.3e", ts.margin) + " at q=" + num("%.4g", *ts.at_margin.q) +
             " peaked margin=" + num("%.3e", pk.margin));
}

void d6_onsets() {
  const double ts_c = onset(RaySpec::diagonal(6, 5), Criterion::Tsallis, 1e-7);
  const double ts_e = onset(RaySpec::diagonal(6, 4), Criterion::Tsallis, 1e-7);
  const double dis_c = onset(RaySpec::diagonal(6, 5), Criterion::Disorder);
  const double dis_e = onset(RaySpec::diagonal(6, 4), Criterion::Disorder);
  const bool ok = std::abs(ts_c - 0.19997) <= 5e-5 && ts_c < 0.2 && std::abs(ts_e - 0.2492) <= 5e-4 && ts_e < 0.25 &&
                  std::abs(dis_c - 0.1748) <= 2e-4 && std::abs(dis_e - 0.2041) <= 2e-4;
  report(9, ok, "d=6 onsets: Tsallis 0.19997 (edge 0.2) and 0.2492 (edge 0.25); disorder 0.1748 and 0.2041",
         "tsallis c=" + num("%.6f", ts_c) + " e=" + num("%.5f", ts_e) + " disorder c=" + num("%.5f", dis_c) +
             " e=" + num("%.5f", dis_e));
}

void depletion() {
  const FamilySpec spec{6, std::vector<double>(5, -1.0 / 31.0)};
  const auto rho = build(spec);
  const double sigma = peres_check(rho);
  const auto [a, b] = disorder_check(rho);
  report(10, sigma < -kDetectionThreshold && !a.violated() && !b.violated(),
         "d=6 x_i=-1/31 is entangled (sigma < 0) with no disorder violation",
         "sigma=" + num("%.6f", sigma) + " violations=" + std::to_string(a.violated_indices.size()));
}

void d6_alpha_intervals() {
  const auto grid = GridSpec::section(6, 5, 24);
  std::vector<FamilySpec> sector_c, sector_e, sector_ab;
  for (double x : {0.176, 0.18, 0.19, 0.199}) sector_c.push_back(FamilySpec{6, std::vector<double>(5, x)});
  for (double x : {0.205, 0.21, 0.23, 0.249}) sector_e.push_back(FamilySpec{6, {x, x, x, x, 0.0}});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto spec = grid.point(grid.cell_center(k));
    if (!in_region(spec)) continue;
    const auto first = majorization_report(analytic_spectrum(spec), analytic_reduced(spec), Side::A).first_violation;
    if (!first) continue;
    if (*first == 5) sector_c.push_back(spec);
    else if (*first == 4) sector_e.push_back(spec);
    else sector_ab.push_back(spec);
  }
  auto all_detected = [](const std::vector<FamilySpec>& pts, const std::vector<double>& alphas) {
    std::size_t hits = 0;
    for (const auto& s : pts) hits += peaked_search(analytic_spectrum(s), analytic_reduced(s), alphas, {1e4}).detected;
    return hits;
  };
  const std::size_t c = all_detected(sector_c, linspace(0.069, 0.108, 40));
  const std::size_t e = all_detected(sector_e, linspace(0.114, 0.134, 21));
  const std::size_t ab = all_detected(sector_ab, {0.26});
  report(11, c == sector_c.size() && e == sector_e.size() && ab == sector_ab.size() && !sector_ab.empty(),
         "d=6 peaked alpha-intervals: [0.069, 0.108] for sector c, [0.114, 0.134] for sector e, 0.26 for i=1 points",
         "c " + std::to_string(c) + "/" + std::to_string(sector_c.size()) + ", e " + std::to_string(e) + "/" +
             std::to_string(sector_e.size()) + ", i=1 " + std::to_string(ab) + "/" + std::to_string(sector_ab.size()));
}

void area_fraction_checks() {
  const auto plane = area_fractions(GridSpec::plane(3, 1000));
  const auto section = area_fractions(GridSpec::section(6, 5, 1000));
  const double ent = plane.entangled_of_region.value, dis = plane.disorder_of_entangled.value;
  const double sep = section.separable_of_region.value, cov = section.disorder_of_entangled.value;
  const double i1 = section.first_index1_of_region.value, i1e = section.first_index1_of_entangled.value;
  const bool ok = std::abs(ent - 0.87) <= 0.01 && std::abs(dis - 0.77) <= 0.01 && std::abs(sep - 0.026) <= 0.003 &&
                  std::abs(cov - 0.51) <= 0.01 && std::abs(i1 - 0.40) <= 0.01;
  report(12, ok,
         "area fractions: d=3 entangled 0.87, disorder 0.77; d=6 section separable 0.026, disorder 0.51, i=1 share 0.40",
         "entangled/R=" + num("%.4f", ent) + " disorder/entangled=" + num("%.4f", dis) + " | separable/R=" +
             num("%.4f", sep) + " disorder/entangled=" + num("%.4f", cov) + " i=1/R=" + num("%.4f", i1) +
             " (i=1/entangled=" + num("%.4f", i1e) + ")");
}

std::vector<double> random_probabilities(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& v : p) total += (v = e(rng));
  for (auto& v : p) v /= total;
  std::sort(p.begin(), p.end(), std::greater<>());
  return p;
}

FamilySpec random_family(std::mt19937_64& rng, std::size_t d, std::size_t n) {
  // Uniform on the simplex spanned by the vertices of R.
  const auto w = random_probabilities(rng, n + 1);
  const double vtx = thresholds(d, n).depletion_vertex();
  FamilySpec spec{d, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) spec.x[i] = w[i] + w[n] * vtx;
  return spec;
}

void property_suites() {
  std::mt19937_64 rng(2024);
  const std::vector<EntropicFamily> families{
      EntropicFamily::von_neumann(),        EntropicFamily::tsallis(0.5),      EntropicFamily::tsallis(2.0),
      EntropicFamily::tsallis(5.0),         EntropicFamily::peaked(0.3, 1e2),  EntropicFamily::peaked(0.5, 1e3),
      EntropicFamily::peaked_limit(0.3)};

  std::size_t schur_bad = 0;
  std::uniform_int_distribution<std::size_t> dim(3, 12);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto fine = random_probabilities(rng, dim(rng));
    auto coarse = fine;
    std::uniform_int_distribution<std::size_t> width(1, 3);
    for (std::size_t i = 0; i < coarse.size();) {
      const std::size_t end = std::min(coarse.size(), i + width(rng));
      double avg = 0.0;
      for (std::size_t k = i; k < end; ++k) avg += fine[k];
      avg /= static_cast<double>(end - i);
      for (std::size_t k = i; k < end; ++k) coarse[k] = avg;
      i = end;
    }
    const auto sf = Spectrum::from_values(fine), sc = Spectrum::from_values(coarse);
    for (const auto& f : families) schur_bad += entropy(f, sc) < entropy(f, sf) - 1e-12;
  }

  double q1_worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto s = Spectrum::from_values(random_probabilities(rng, 2 + rep % 10));
    const double vn = entropy(EntropicFamily::von_neumann(), s);
    for (double q : {1.0 - 1e-5, 1.0 + 1e-5})
      q1_worst = std::max(q1_worst, std::abs(entropy(EntropicFamily::tsallis(q), s) - vn));
  }

  bool small_t_ok = true;
  for (double x : {0.1, 0.3, 0.45}) {
    const auto rho = build(FamilySpec{3, {x, x / 2.0}});
    const double e1 = tsallis_q2_limit_check(rho, 1e-2), e2 = tsallis_q2_limit_check(rho, 5e-3);
    small_t_ok &= e1 <= 1e-3 && e2 <= 0.3 * e1 + 1e-13;
  }

  std::size_t large_t_bad = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const auto s = Spectrum::from_values(random_probabilities(rng, 2 + rep % 12));
    const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double limit = entropy(EntropicFamily::peaked_limit(alpha), s);
    for (double t : {1e2, 1e3, 1e4}) {
      const double bound = static_cast<double>(s.size()) * std::log(2.0) / (2.0 * t);
      large_t_bad += std::abs(entropy(EntropicFamily::peaked(alpha, t), s) - limit) > bound;
    }
  }

  double spectra_worst = 0.0, sigma_worst = 0.0, exchange_worst = 0.0;
  for (std::size_t d = 2; d <= 6; ++d) {
    for (std::size_t n = 1; n < d; ++n) {
      for (int rep = 0; rep < 20; ++rep) {
        auto spec = random_family(rng, d, n);
        const auto anti = build(spec);
        const auto ref = analytic_spectrum(spec);
        const auto red = analytic_reduced(spec);
        const auto num_red = eigenvalues(partial_trace(anti, Side::A));
        for (std::size_t k = 0; k < ref.size(); ++k)
          spectra_worst = std::max(spectra_worst, std::abs(anti.spectrum().values[k] - ref.values[k]));
        for (std::size_t k = 0; k < red.size(); ++k)
          spectra_worst = std::max(spectra_worst, std::abs(num_red.values[k] - red.values[k]));
        sigma_worst = std::max(sigma_worst, std::abs(peres_check(anti) - sigma_min_pt(spec)));
        spec.exchange = Exchange::Symmetric;
        const auto sym = build(spec);
        for (std::size_t k = 0; k < ref.size(); ++k)
          exchange_worst = std::max(exchange_worst, std::abs(sym.spectrum().values[k] - anti.spectrum().values[k]));
        exchange_worst = std::max(exchange_worst, std::abs(peres_check(sym) - peres_check(anti)));
      }
    }
  }

  const bool ok = schur_bad == 0 && q1_worst <= 1e-3 && small_t_ok && large_t_bad == 0 && spectra_worst <= 1e-10 &&
                  sigma_worst <= 1e-10 && exchange_worst <= 1e-10;
  report(13, ok, "property suites: Schur concavity, q->1, t->0, t->inf, analytic vs numeric, exchange symmetry",
         "schur violations=" + std::to_string(schur_bad) + " q1 err=" + num("%.1e", q1_worst) +
             " t->0 O(t^2)=" + (small_t_ok ? "yes" : "no") + " t->inf bound violations=" + std::to_string(large_t_bad) +
             " spectra err=" + num("%.1e", spectra_worst) + " sigma err=" + num("%.1e", sigma_worst) +
             " exchange err=" + num("%.1e", exchange_worst));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> checks{
      werner_boundary, peres_diagonal,     disorder_onsets, tsallis_onset,       von_neumann_onset,
      alpha_recommendations, peaked_completeness, tsallis_incompleteness, d6_onsets, depletion,
      d6_alpha_intervals, area_fraction_checks, property_suites};
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      checks[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, "raised an exception", e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, checks.size());
  return failures == 0 ? 0 : 1;
}
