#include "majorlens/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace majorlens {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

HermitianOperator matrix_from(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re"))
    throw ValidationError("matrix JSON needs \"dim\" and \"re\" (and optionally \"im\")");
  const auto dim = j.at("dim").get<std::size_t>();
  if (dim == 0) throw ValidationError("matrix JSON: dim must be positive");
  ComplexMatrix m(dim);
  auto read_part = [&](const char* key, bool imaginary) {
    const json& rows = j.at(key);
    if (!rows.is_array() || rows.size() != dim)
      throw ValidationError(std::string("matrix JSON: \"") + key + "\" must have dim rows");
    for (std::size_t r = 0; r < dim; ++r) {
      if (!rows[r].is_array() || rows[r].size() != dim)
        throw ValidationError(std::string("matrix JSON: row ") + std::to_string(r) + " of \"" + key +
                              "\" must have dim entries");
      for (std::size_t c = 0; c < dim; ++c) {
        const double v = rows[r][c].get<double>();
        if (imaginary) m(r, c).imag(v);
        else m(r, c).real(v);
      }
    }
  };
  read_part("re", false);
  if (j.contains("im")) read_part("im", true);
  return HermitianOperator(std::move(m));
}

json matrix_to(const HermitianOperator& op) {
  const std::size_t n = op.dim();
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < n; ++r) {
    json rr = json::array(), ii = json::array();
    for (std::size_t c = 0; c < n; ++c) {
      rr.push_back(op(r, c).real());
      ii.push_back(op(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return json{{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

HermitianOperator parse_matrix_json(const std::string& text) {
  try {
    return matrix_from(parse_text(text));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed matrix JSON: ") + e.what());
  }
}

BipartiteDensity parse_density_json(const std::string& text) {
  const json j = parse_text(text);
  try {
    if (!j.contains("dims") || !j.at("dims").is_array() || j.at("dims").size() != 2)
      throw ValidationError("density JSON needs \"dims\": [d_A, d_B]");
    const Dims dims{j.at("dims")[0].get<std::size_t>(), j.at("dims")[1].get<std::size_t>()};
    return BipartiteDensity(dims, matrix_from(j));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed density JSON: ") + e.what());
  }
}

BipartiteDensity read_density_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open density file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_density_json(ss.str());
}

std::string matrix_to_json(const HermitianOperator& op) { return matrix_to(op).dump(); }

std::string density_to_json(const BipartiteDensity& rho) {
  json j = matrix_to(rho.op());
  j["dims"] = {rho.dims().a, rho.dims().b};
  return j.dump();
}

void write_density_file(const std::string& path, const BipartiteDensity& rho) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write density file '" + path + "'");
  out << density_to_json(rho) << '\n';
}

std::string reproducibility_header(const std::string& command, const ClassifyOptions& o) {
  std::ostringstream h;
  h << "# majorlens " << command << '\n';
  h << "# side=" << to_string(o.side) << " tol=" << format_double(o.tol)
    << " detection_threshold=" << format_double(kDetectionThreshold) << '\n';
  h << "# q_grid=log[" << format_double(o.q_grid.qmin) << "," << format_double(o.q_grid.qmax)
    << "] points=" << o.q_grid.points << " refine_tol_lnq=" << format_double(o.q_grid.refine_tol)
    << " (no-detection means no q in this range)\n";
  h << "# alphas=";
  if (o.alphas.empty()) {
    h << "auto(p_j of reduced spectrum, +-1e-3)";
  } else {
    for (std::size_t i = 0; i < o.alphas.size(); ++i) h << (i ? ";" : "") << format_double(o.alphas[i]);
  }
  h << " ts=";
  for (std::size_t i = 0; i < o.ts.size(); ++i) h << (i ? ";" : "") << format_double(o.ts[i]);
  h << '\n';
  return h.str();
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& records, std::size_t n,
                    const std::string& header) {
  out << header;
  for (std::size_t i = 1; i <= n; ++i) out << 'x' << i << ',';
  out << "in_R,sigma,first_violation,violated_indices,vn_diff,tsallis_detected,tsallis_q,"
         "tsallis_margin,peaked_detected,peaked_alpha,peaked_t,sector\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& r : records) {
    for (double v : r.x) out << format_double(v) << ',';
    if (!r.in_region) {
      out << "0,,,,,,,,,,," << r.sector << '\n';
      continue;
    }
    out << "1," << format_double(r.sigma) << ',';
    if (r.first_violation) out << *r.first_violation;
    out << ',';
    for (std::size_t k = 0; k < r.violated_indices.size(); ++k) out << (k ? ";" : "") << r.violated_indices[k];
    const auto& tw = r.tsallis.witness;
    const auto& pw = r.peaked.witness;
    out << ',' << format_double(r.vn_diff) << ',' << (r.tsallis.detected ? 1 : 0) << ','
        << (tw ? opt(tw->q) : opt(r.tsallis.at_margin.q)) << ',' << format_double(r.tsallis.margin) << ','
        << (r.peaked.detected ? 1 : 0) << ',' << (pw ? opt(pw->alpha) : std::string()) << ','
        << (pw ? opt(pw->t) : std::string()) << ',' << r.sector << '\n';
  }
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows, const std::string& header) {
  out << header << "parameter,s_rho,s_reduced,difference,normalized\n";
  for (const auto& r : rows)
    out << format_double(r.parameter) << ',' << format_double(r.s_rho) << ',' << format_double(r.s_reduced)
        << ',' << format_double(r.difference) << ',' << format_double(r.normalized) << '\n';
}

std::string area_summary_json(const AreaSummary& s, const GridSpec& grid) {
  auto frac = [](const Fraction& f) {
    return json{{"count", f.count},         {"total", f.total},
                {"value", f.value},         {"std_error", f.std_error},
                {"wilson_95", {f.wilson_lo, f.wilson_hi}}};
  };
  json firsts = json::object();
  for (const auto& [k, v] : s.first_violation_counts) firsts[std::to_string(k)] = v;
  json axes = json::array();
  for (const auto& a : grid.axes) axes.push_back({{"lo", a.lo}, {"hi", a.hi}, {"steps", a.steps}});
  json j{{"d", grid.d},
         {"n", grid.n()},
         {"component_axis", grid.component_axis},
         {"axes", axes},
         {"method", "cell-centre counting"},
         {"cells", s.cells},
         {"in_region", s.in_region},
         {"entangled", s.entangled},
         {"disorder_detected", s.disorder},
         {"first_violation_counts", firsts},
         {"entangled_of_region", frac(s.entangled_of_region)},
         {"separable_of_region", frac(s.separable_of_region)},
         {"disorder_of_entangled", frac(s.disorder_of_entangled)},
         {"first_index1_of_entangled", frac(s.first_index1_of_entangled)},
         {"first_index1_of_region", frac(s.first_index1_of_region)}};
  return j.dump(2);
}

}  // namespace majorlens
