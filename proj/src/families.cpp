#include "majorlens/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

#include "majorlens/criteria.hpp"

namespace majorlens {

double FamilySpec::y() const {
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  return (1.0 - sum) / static_cast<double>(d * d);
}

double FamilySpec::norm() const {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void validate_region(const FamilySpec& spec, double tol) {
  if (spec.d < 2) throw ValidationError("family requires d >= 2");
  if (spec.n() < 1 || spec.n() > spec.d - 1) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "family requires 1 <= n <= d-1 (got n=%zu, d=%zu)", spec.n(), spec.d);
    throw ValidationError(buf);
  }
  for (double v : spec.x)
    if (!std::isfinite(v)) throw ValidationError("family parameters must be finite");
  const double y = spec.y();
  char buf[128];
  if (y < -tol) {
    std::snprintf(buf, sizeof buf, "outside region R: y = (1 - sum x)/d^2 = %.6g < 0", y);
    throw RegionError(buf);
  }
  for (std::size_t i = 0; i < spec.n(); ++i)
    if (spec.x[i] < -y - tol) {
      std::snprintf(buf, sizeof buf, "outside region R: x_%zu = %.6g < -y = %.6g", i + 1, spec.x[i], -y);
      throw RegionError(buf);
    }
}

bool in_region(const FamilySpec& spec, double tol) {
  try {
    validate_region(spec, tol);
    return true;
  } catch (const RegionError&) {
    return false;
  }
}

BipartiteDensity build(const FamilySpec& spec) {
  validate_region(spec);
  const std::size_t d = spec.d;
  const double y = spec.y();
  const double sign = spec.exchange == Exchange::Antisymmetric ? -1.0 : 1.0;
  ComplexMatrix m(d * d);
  for (std::size_t k = 0; k < d * d; ++k) m(k, k) = y;
  for (std::size_t i = 1; i <= spec.n(); ++i) {
    // |0i> -> row i, |i0> -> row i*d; the pair state has amplitudes 1/sqrt2 and sign/sqrt2.
    const std::size_t r0 = i, r1 = i * d;
    const double half = 0.5 * spec.x[i - 1];
    m(r0, r0) += half;
    m(r1, r1) += half;
    m(r0, r1) += sign * half;
    m(r1, r0) += sign * half;
  }
  return BipartiteDensity({d, d}, HermitianOperator(std::move(m)));
}

Spectrum analytic_spectrum(const FamilySpec& spec) {
  validate_region(spec);
  const double y = spec.y();
  std::vector<double> values;
  values.reserve(spec.d * spec.d);
  for (double v : spec.x) values.push_back(v + y);
  values.resize(spec.d * spec.d, y);
  return Spectrum::from_values(std::move(values));
}

Spectrum analytic_reduced(const FamilySpec& spec) {
  validate_region(spec);
  const double yd = spec.y() * static_cast<double>(spec.d);
  const double sum = std::accumulate(spec.x.begin(), spec.x.end(), 0.0);
  std::vector<double> values;
  values.reserve(spec.d);
  values.push_back(0.5 * sum + yd);
  for (double v : spec.x) values.push_back(0.5 * v + yd);
  values.resize(spec.d, yd);
  return Spectrum::from_values(std::move(values));
}

double sigma_min_pt(const FamilySpec& spec) {
  validate_region(spec);
  return spec.y() - 0.5 * spec.norm();
}

std::optional<SeparabilityWitness> separability_witness(const FamilySpec& spec) {
  if (sigma_min_pt(spec) < 0.0) return std::nullopt;
  const std::size_t n = spec.n();
  const double norm2 = spec.norm() * spec.norm();
  const double y = spec.y();
  SeparabilityWitness w;
  w.weights.resize(n);
  w.slack.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.weights[i] = norm2 > 0.0 ? spec.x[i] * spec.x[i] / norm2 : 1.0 / static_cast<double>(n);
    w.slack[i] = 4.0 * w.weights[i] * y * y - spec.x[i] * spec.x[i];
  }
  return w;
}

ThresholdSet thresholds(std::size_t d, std::size_t n) {
  if (d < 2 || n < 1 || n > d - 1) throw DomainError("thresholds: need d >= 2 and 1 <= n <= d-1");
  ThresholdSet t;
  t.d = d;
  t.n = n;
  const double dd = static_cast<double>(d);
  t.delta = dd * dd / (2.0 * (dd - 1.0));
  return t;
}

double ThresholdSet::peres_norm(double gamma) const {
  const double dd = static_cast<double>(d);
  return 1.0 / (std::sqrt(static_cast<double>(n)) * std::cos(gamma) + dd * dd / 2.0);
}

double ThresholdSet::peres_axis() const {
  const double dd = static_cast<double>(d);
  return 1.0 / (1.0 + dd * dd / 2.0);
}

double ThresholdSet::peres_diagonal() const {
  return peres_norm(0.0) / std::sqrt(static_cast<double>(n));
}

double ThresholdSet::disorder_i1(double x2) const {
  return x2 >= 0.0 ? (1.0 + x2 * (delta - 1.0)) / (delta + 1.0) : (1.0 - x2) / (1.0 + delta);
}

double ThresholdSet::disorder_axis() const { return 1.0 / (1.0 + delta); }

double ThresholdSet::disorder_i2(double x2) const { return 1.0 - x2 * (1.0 + delta / 2.0); }

double ThresholdSet::disorder_diagonal() const {
  const double nn = static_cast<double>(n);
  return nn / (nn * nn + delta);
}

double ThresholdSet::depletion_vertex() const {
  return -1.0 / static_cast<double>(d * d - n);
}

std::vector<std::vector<double>> ThresholdSet::region_vertices() const {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(n, 0.0);
    v[i] = 1.0;
    out.push_back(std::move(v));
  }
  out.emplace_back(n, depletion_vertex());
  return out;
}

PredictedViolations violation_predictor(const FamilySpec& spec, double tol) {
  validate_region(spec);
  std::vector<double> xs = spec.x;
  std::sort(xs.begin(), xs.end(), std::greater<>());
  const double y = spec.y();
  const double dm1 = static_cast<double>(spec.d) - 1.0;
  PredictedViolations out;

  if (xs.back() >= 0.0) {
    // S_i - S_i^A = x_i - (1/2) sum_{j>=i} x_j - i y (d-1) for i <= n; no violation beyond n.
    double tail = std::accumulate(xs.begin(), xs.end(), 0.0);
    for (std::size_t i = 1; i <= xs.size(); ++i) {
      if (xs[i - 1] - 0.5 * tail - static_cast<double>(i) * y * dm1 > tol) out.indices.push_back(i);
      tail -= xs[i - 1];
    }
    return out;
  }
  if (xs.size() == 2 && xs[0] >= 0.0) {
    // x_1 >= 0 >= x_2: only the first inequality can fail, when x_1/2 > y (d-1).
    if (0.5 * xs[0] - y * dm1 > tol) out.indices.push_back(1);
    return out;
  }
  out.analytic = false;
  out.indices = majorization_report(analytic_spectrum(spec), analytic_reduced(spec), Side::A, tol)
                    .violated_indices;
  return out;
}

namespace {

double parse_double(std::string_view s) {
  std::string str(s);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != str.size() || str.empty()) throw ValidationError("not a number: '" + str + "'");
  return v;
}

}  // namespace

FamilySpec parse_family(const std::vector<std::string>& tokens, bool symmetric) {
  FamilySpec spec;
  spec.exchange = symmetric ? Exchange::Symmetric : Exchange::Antisymmetric;
  bool have_d = false, have_x = false;
  std::vector<std::string> words;
  for (const auto& tok : tokens) {
    std::istringstream in(tok);
    for (std::string w; in >> w;) words.push_back(w);
  }
  for (const auto& w : words) {
    const auto eq = w.find('=');
    if (eq == std::string::npos) throw ValidationError("family token '" + w + "' is not key=value");
    const std::string key = w.substr(0, eq), value = w.substr(eq + 1);
    if (key == "d") {
      const double d = parse_double(value);
      if (d < 2 || d != std::floor(d) || d > 64) throw ValidationError("family: d must be an integer in 2..64");
      spec.d = static_cast<std::size_t>(d);
      have_d = true;
    } else if (key == "x") {
      spec.x.clear();
      std::size_t start = 0;
      while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto end = comma == std::string::npos ? value.size() : comma;
        spec.x.push_back(parse_double(std::string_view(value).substr(start, end - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      have_x = true;
    } else if (key == "exchange") {
      if (value == "symmetric") spec.exchange = Exchange::Symmetric;
      else if (value == "antisymmetric") spec.exchange = Exchange::Antisymmetric;
      else throw ValidationError("family: exchange must be symmetric or antisymmetric");
    } else {
      throw ValidationError("family: unknown key '" + key + "'");
    }
  }
  if (!have_d || !have_x) throw ValidationError("family spec needs both d=<int> and x=<list>");
  validate_region(spec);
  return spec;
}

std::string describe(const FamilySpec& spec) {
  std::string out = "d=" + std::to_string(spec.d) + " x=";
  char buf[32];
  for (std::size_t i = 0; i < spec.x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.10g", i ? "," : "", spec.x[i]);
    out += buf;
  }
  if (spec.exchange == Exchange::Symmetric) out += " exchange=symmetric";
  return out;
}

}  // namespace majorlens
