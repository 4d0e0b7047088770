#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "majorlens/io.hpp"
#include "majorlens/scan.hpp"

using namespace majorlens;

namespace {

constexpr int kExitSeparable = 0;
constexpr int kExitUsage = 1;
constexpr int kExitEntangled = 2;

struct DetectorFlags {
  std::string side = "A";
  double qmin = QGrid{}.qmin;
  double qmax = QGrid{}.qmax;
  std::size_t qpoints = QGrid{}.points;
  std::vector<double> alphas;
  std::vector<double> ts;
  double tol = 1e-10;

  void attach(CLI::App* app) {
    app->add_option("--side", side, "Subsystem kept in the reduced density")->check(CLI::IsMember({"A", "B"}));
    app->add_option("--qmin", qmin, "Smallest Tsallis q");
    app->add_option("--qmax", qmax, "Largest Tsallis q");
    app->add_option("--qpoints", qpoints, "Log-spaced q grid points");
    app->add_option("--alphas", alphas, "Peaked alpha values (default: recommended set)")->delimiter(',');
    app->add_option("--ts", ts, "Peaked t schedule")->delimiter(',');
    app->add_option("--tol", tol, "Majorization tolerance");
  }

  ClassifyOptions options() const {
    ClassifyOptions o;
    o.side = side == "B" ? Side::B : Side::A;
    o.q_grid.qmin = qmin;
    o.q_grid.qmax = qmax;
    o.q_grid.points = qpoints;
    o.alphas = alphas;
    if (!ts.empty()) o.ts = ts;
    o.tol = tol;
    if (!(qmin > 0.0) || !(qmax > qmin) || qpoints < 2) throw ValidationError("invalid q grid");
    for (double a : alphas)
      if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("alpha outside [0, 1]");
    for (double t : o.ts)
      if (!(t > 0.0)) throw ValidationError("t must be positive");
    if (!(tol >= 0.0)) throw ValidationError("tol must be nonnegative");
    return o;
  }
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + std::to_string(v[i]);
  return out;
}

class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct AnalyzeResult {
  double sigma = 0.0;
  MajorizationReport disorder;
  ConditionalReport vn;
  DetectionVerdict tsallis;
  DetectionVerdict peaked;
  std::vector<double> alphas;

  bool entangled() const {
    return sigma < -kDetectionThreshold || disorder.violated() || vn.difference < -kDetectionThreshold ||
           tsallis.detected || peaked.detected;
  }
};

AnalyzeResult analyze(const BipartiteDensity& rho, const ClassifyOptions& o) {
  AnalyzeResult r;
  const auto reduced = eigenvalues(partial_trace(rho, o.side));
  r.sigma = peres_check(rho);
  r.disorder = majorization_report(rho.spectrum(), reduced, o.side, o.tol);
  r.vn = conditional(EntropicFamily::von_neumann(), rho.spectrum(), reduced);
  r.tsallis = tsallis_sweep(rho.spectrum(), reduced, o.q_grid);
  r.alphas = o.alphas.empty() ? recommended_alphas(reduced) : o.alphas;
  r.peaked = peaked_search(rho.spectrum(), reduced, r.alphas, o.ts);
  return r;
}

void print_table(std::ostream& out, const AnalyzeResult& r, const ClassifyOptions& o) {
  auto row = [&](const std::string& name, const std::string& value, bool fires, const std::string& note) {
    out << std::left << std::setw(12) << name << std::setw(16) << value << std::setw(12)
        << (fires ? "entangled" : "consistent") << note << '\n';
  };
  out << std::left << std::setw(12) << "criterion" << std::setw(16) << "value" << std::setw(12) << "verdict"
      << "detail\n";
  row("peres", fmt(r.sigma), r.sigma < -kDetectionThreshold, "min eigenvalue of partial transpose");
  row("disorder", r.disorder.violated() ? "violated" : "satisfied", r.disorder.violated(),
      r.disorder.violated() ? "i=" + join(r.disorder.violated_indices) + " side " + to_string(o.side)
                            : "side " + std::string(to_string(o.side)));
  row("vonneumann", fmt(r.vn.difference), r.vn.difference < -kDetectionThreshold, "S(rho) - S(rho_side)");
  {
    const auto& w = r.tsallis.detected ? r.tsallis.witness : std::optional<WitnessParams>(r.tsallis.at_margin);
    row("tsallis", fmt(r.tsallis.margin), r.tsallis.detected,
        std::string(r.tsallis.detected ? "witness" : "minimum") + " q=" + (w && w->q ? fmt(*w->q) : "-") +
            " over q in [" + fmt(o.q_grid.qmin) + ", " + fmt(o.q_grid.qmax) + "]");
  }
  {
    const auto& w = r.peaked.detected ? r.peaked.witness : std::optional<WitnessParams>(r.peaked.at_margin);
    row("peaked", fmt(r.peaked.margin), r.peaked.detected,
        std::string(r.peaked.detected ? "witness" : "minimum") + " alpha=" + (w && w->alpha ? fmt(*w->alpha) : "-") +
            " t=" + (w && w->t ? fmt(*w->t) : "-"));
  }
}

nlohmann::json analyze_json(const AnalyzeResult& r, const ClassifyOptions& o) {
  nlohmann::json j;
  j["side"] = to_string(o.side);
  j["entangled"] = r.entangled();
  j["peres"] = {{"sigma", r.sigma}, {"certifies", r.sigma < -kDetectionThreshold}};
  j["disorder"] = {{"violated_indices", r.disorder.violated_indices},
                   {"cumsum_rho", r.disorder.cumsum_rho},
                   {"cumsum_reduced", r.disorder.cumsum_reduced}};
  j["von_neumann"] = {{"difference", r.vn.difference}, {"s_rho", r.vn.s_rho}, {"s_reduced", r.vn.s_reduced}};
  auto verdict = [](const DetectionVerdict& v) {
    nlohmann::json out{{"detected", v.detected}, {"margin", v.margin}};
    const auto& w = v.detected ? v.witness : std::optional<WitnessParams>(v.at_margin);
    if (w && w->q) out["q"] = *w->q;
    if (w && w->alpha) out["alpha"] = *w->alpha;
    if (w && w->t) out["t"] = *w->t;
    return out;
  };
  j["tsallis"] = verdict(r.tsallis);
  j["tsallis"]["q_range"] = {o.q_grid.qmin, o.q_grid.qmax};
  j["peaked"] = verdict(r.peaked);
  j["peaked"]["alphas"] = r.alphas;
  j["peaked"]["ts"] = o.ts;
  j["peaked"]["normalizer"] = "|Tr g_t(rho - alpha)|";
  return j;
}

std::vector<std::string> split_family_tokens(const std::vector<std::string>& raw) {
  std::vector<std::string> tokens;
  for (const auto& r : raw) {
    std::istringstream in(r);
    std::string t;
    while (in >> t) tokens.push_back(t);
  }
  return tokens;
}

RaySpec parse_ray(const std::string& text, std::size_t d, std::size_t n) {
  if (text == "diag") return RaySpec::diagonal(d, n);
  if (text == "axis") return RaySpec::axis(d, n);
  if (text.rfind("dir:", 0) == 0) {
    RaySpec ray;
    ray.d = d;
    ray.base.assign(n, 0.0);
    std::stringstream ss(text.substr(4));
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw ValidationError("bad ray component '" + item + "'");
      ray.direction.push_back(v);
    }
    if (ray.direction.size() != n) throw ValidationError("ray direction needs " + std::to_string(n) + " components");
    double hi = 0.0;
    for (int k = 1; k <= 4096; ++k) {
      const double s = 4.0 * k / 4096.0;
      if (!in_region(ray.at(s))) break;
      hi = s;
    }
    if (hi == 0.0) throw ValidationError("ray leaves the region immediately");
    ray.s_hi = hi;
    return ray;
  }
  throw ValidationError("unknown ray '" + text + "' (diag, axis or dir:v1,...)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement criteria for bipartite qudit densities"};
  app.require_subcommand(1);

  DetectorFlags det;
  std::vector<std::string> family_tokens;
  bool symmetric = false;
  std::string density_path, out_path, format = "text", dump_path;

  auto add_input = [&](CLI::App* sub) {
    auto* fam = sub->add_option("--family", family_tokens, "Family spec, e.g. d=3 x=0.4,0.4")->expected(1, 3);
    auto* den = sub->add_option("--density", density_path, "Density JSON file");
    fam->excludes(den);
    sub->add_flag("--symmetric", symmetric, "Use the symmetric exchange combination");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Run every criterion on one state");
  add_input(analyze_cmd);
  det.attach(analyze_cmd);
  analyze_cmd->add_option("--out", out_path, "Output path (default stdout)");
  analyze_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  analyze_cmd->add_option("--dump-density", dump_path, "Write the analysed density as JSON");

  std::string preset = "plane";
  std::size_t d = 3, n = 2, steps = 101;
  auto* scan_cmd = app.add_subcommand("scan", "Classify a grid of family parameters");
  det.attach(scan_cmd);
  scan_cmd->add_option("--preset", preset, "plane (x1, x2) or section (x1=..=x_{n-1}, x_n)")
      ->check(CLI::IsMember({"plane", "section"}));
  scan_cmd->add_option("--d", d, "Subsystem dimension");
  scan_cmd->add_option("--n", n, "Number of family components (section preset)");
  scan_cmd->add_option("--steps", steps, "Grid steps per axis");
  scan_cmd->add_flag("--symmetric", symmetric, "Use the symmetric exchange combination");
  scan_cmd->add_option("--out", out_path, "Output path (default stdout)");
  scan_cmd->add_option("--format", format, "csv records or json area summary")->check(CLI::IsMember({"csv", "json"}));

  std::string ray_text = "diag", criterion_text = "peres";
  double bisect_tol = 1e-5;
  auto* thr_cmd = app.add_subcommand("threshold", "Bisect a criterion's onset along a ray");
  det.attach(thr_cmd);
  thr_cmd->add_option("--d", d, "Subsystem dimension");
  thr_cmd->add_option("--n", n, "Number of family components");
  thr_cmd->add_option("--ray", ray_text, "diag, axis or dir:v1,...,vn");
  thr_cmd->add_option("--criterion", criterion_text, "peres, disorder, vonneumann, tsallis or peaked");
  thr_cmd->add_option("--bisect-tol", bisect_tol, "Bisection tolerance on the ray parameter");
  thr_cmd->add_flag("--symmetric", symmetric, "Use the symmetric exchange combination");
  thr_cmd->add_option("--out", out_path, "Output path (default stdout)");
  thr_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::string axis_text = "q";
  std::vector<double> range;
  bool log_spaced = false;
  double fixed_alpha = 0.28, fixed_t = 1e3;
  auto* curve_cmd = app.add_subcommand("curve", "Entropic difference as a function of q, t or alpha");
  add_input(curve_cmd);
  curve_cmd->add_option("--side", det.side)->check(CLI::IsMember({"A", "B"}));
  curve_cmd->add_option("--axis", axis_text, "q, t or alpha");
  curve_cmd->add_option("--range", range, "lo,hi,points")->delimiter(',')->expected(3);
  curve_cmd->add_flag("--log", log_spaced, "Log-spaced parameter values");
  curve_cmd->add_option("--alpha", fixed_alpha, "Fixed alpha for the t axis");
  curve_cmd->add_option("--t", fixed_t, "Fixed t for the alpha axis");
  curve_cmd->add_option("--out", out_path, "Output path (default stdout)");
  curve_cmd->add_option("--format", format)->check(CLI::IsMember({"csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::cerr << "majorlens: " << msg.substr(0, msg.find('\n')) << '\n';
    return kExitUsage;
  }

  try {
    const auto family = [&]() {
      return parse_family(split_family_tokens(family_tokens), symmetric);
    };

    if (*analyze_cmd) {
      if (family_tokens.empty() && density_path.empty()) throw ValidationError("one of --family or --density is required");
      const auto o = det.options();
      std::optional<FamilySpec> spec;
      const BipartiteDensity rho = density_path.empty() ? build(*(spec = family())) : read_density_file(density_path);
      if (!dump_path.empty()) write_density_file(dump_path, rho);
      const auto r = analyze(rho, o);
      OutputSink sink(out_path);
      auto& out = sink.stream();
      if (format == "json") {
        auto j = analyze_json(r, o);
        if (spec) {
          j["family"] = describe(*spec);
          if (const auto w = separability_witness(*spec)) j["separability_witness"] = {{"weights", w->weights}, {"slack", w->slack}};
        }
        out << j.dump(2) << '\n';
      } else {
        print_table(out, r, o);
        if (spec) {
          if (const auto w = separability_witness(*spec)) {
            out << "separable: witness weights q_i =";
            for (double q : w->weights) out << ' ' << fmt(q);
            out << " (each x_i^2 <= 4 q_i y^2)\n";
          }
        }
      }
      return r.entangled() ? kExitEntangled : kExitSeparable;
    }

    if (*scan_cmd) {
      if (format == "text") format = "csv";
      auto o = det.options();
      GridSpec grid = preset == "plane" ? GridSpec::plane(d, steps) : GridSpec::section(d, n, steps);
      if (symmetric) grid.exchange = Exchange::Symmetric;
      grid.validate();
      OutputSink sink(out_path);
      if (format == "json") {
        sink.stream() << area_summary_json(area_fractions(grid, o.tol, o.threads), grid) << '\n';
      } else {
        std::ostringstream cmd;
        cmd << "scan preset=" << preset << " d=" << d << " n=" << grid.n() << " steps=" << steps
            << " exchange=" << (symmetric ? "symmetric" : "antisymmetric");
        write_scan_csv(sink.stream(), grid_scan(grid, o), grid.n(), reproducibility_header(cmd.str(), o));
      }
      return kExitSeparable;
    }

    if (*thr_cmd) {
      auto o = det.options();
      auto ray = parse_ray(ray_text, d, n);
      if (symmetric) ray.exchange = Exchange::Symmetric;
      const auto criterion = parse_criterion(criterion_text);
      const auto res = bisect_threshold(ray, criterion, o, bisect_tol);
      OutputSink sink(out_path);
      auto& out = sink.stream();
      if (format == "json") {
        nlohmann::json j{{"criterion", to_string(criterion)}, {"ray", ray_text}, {"d", d}, {"n", n},
                         {"tol", bisect_tol}, {"fires_above", res.fires_above}};
        j["threshold"] = res.value ? nlohmann::json(*res.value) : nlohmann::json(nullptr);
        out << j.dump(2) << '\n';
      } else if (res.value) {
        out << std::setprecision(8) << *res.value << '\n';
      } else {
        out << "no threshold\n";
      }
      return kExitSeparable;
    }

    if (*curve_cmd) {
      if (family_tokens.empty()) throw ValidationError("curve requires --family");
      const auto axis = parse_curve_axis(axis_text);
      if (range.empty()) range = axis == CurveAxis::Alpha ? std::vector<double>{0.0, 1.0, 201} : std::vector<double>{1e-2, 1e3, 121};
      if (range[2] < 2 || range[2] != std::floor(range[2])) throw ValidationError("--range points must be an integer >= 2");
      const auto spec = family();
      const Side side = det.side == "B" ? Side::B : Side::A;
      const auto rows = curve_sweep(spec, axis, {range[0], range[1], static_cast<std::size_t>(range[2])},
                                    log_spaced, fixed_alpha, fixed_t, side);
      std::ostringstream h;
      h << "# majorlens curve family=" << describe(spec) << " axis=" << axis_text << " range=" << format_double(range[0])
        << "," << format_double(range[1]) << "," << static_cast<std::size_t>(range[2])
        << (log_spaced ? " log" : " linear") << " side=" << to_string(side) << '\n';
      if (axis == CurveAxis::T) h << "# alpha=" << format_double(fixed_alpha) << '\n';
      if (axis == CurveAxis::Alpha) h << "# t=" << format_double(fixed_t) << '\n';
      h << "# normalized: tsallis by Tr rho_side^q, peaked by |Tr g_t(rho - alpha)|\n";
      OutputSink sink(out_path);
      write_curve_csv(sink.stream(), rows, h.str());
      return kExitSeparable;
    }
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::cerr << "majorlens: " << msg.substr(0, msg.find('\n')) << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
