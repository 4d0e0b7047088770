// JSON density exchange format and CSV/JSON report writers
//
// Matrix format:  {"dim": D, "re": [[...], ...], "im": [[...], ...]}   (row-major)
// Density format: the matrix format plus "dims": [d_A, d_B]

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "majorlens/bipartite.hpp"
#include "majorlens/scan.hpp"

namespace majorlens {

HermitianOperator parse_matrix_json(const std::string& text);
BipartiteDensity parse_density_json(const std::string& text);
BipartiteDensity read_density_file(const std::string& path);

std::string matrix_to_json(const HermitianOperator& op);
std::string density_to_json(const BipartiteDensity& rho);
void write_density_file(const std::string& path, const BipartiteDensity& rho);

/// Lines prefixed "# " recording every setting that affects the output.
std::string reproducibility_header(const std::string& command, const ClassifyOptions& options);

void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& records, std::size_t n,
                    const std::string& header);
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows, const std::string& header);
std::string area_summary_json(const AreaSummary& summary, const GridSpec& grid);

/// Shortest decimal representation that round-trips ("%.17g" trimmed).
std::string format_double(double v);

}  // namespace majorlens
