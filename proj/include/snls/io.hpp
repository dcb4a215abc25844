#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "snls/field.hpp"
#include "snls/gkm.hpp"
#include "snls/levy.hpp"
#include "snls/solver.hpp"
#include "snls/ssfm.hpp"
#include "snls/stability.hpp"
#include "snls/verify.hpp"

namespace snls::io {

using json = nlohmann::json;

/// "%.17g" rendering, the format used by every text output.
std::string fmt(double v);

json complex_json(std::complex<double> z);  // [re, im]
std::complex<double> complex_from_json(const json& j);  // throws FormatError

/// {case, H, k, A, B, gauge, family_tag, residual}; `case` is null for solved sets.
json to_json(const CoefficientSet& cs, std::complex<double> H, std::optional<int> case_id = std::nullopt);

struct CoefficientRecord {
    CoefficientSet set;
    std::complex<double> H;
    std::optional<int> case_id;
};

/// Parses one record; the stored residual is ignored and recomputed.
CoefficientRecord record_from_json(const json& j);

/// Accepts a single record, an array of records, or {"roots": [...]}.
std::vector<CoefficientRecord> read_coefficient_sets(const std::string& path);

json to_json(const SolveResult& result, std::complex<double> H, const SolveOptions& options);
json to_json(const VerificationReport& r);
json to_json(const StabilityReport& r);
json to_json(const XcheckReport& r);
json to_json(const std::vector<ConvergencePoint>& points);

/// Header "t,x,re,im,abs"; pole cells print NAV in re, im and abs.
void write_field_csv(std::ostream& out, const FieldGrid& grid);
json field_sidecar(const FieldGrid& grid);

/// Snapshot of one time slice in the FieldGrid schema.
void write_snapshot_csv(std::ostream& out, double t, const std::vector<double>& x,
                        const std::vector<std::complex<double>>& psi);

/// "# levy_path drift=<d> seed=<s>" then "t,L,kind,value". grid rows carry
/// the Brownian value, jump rows the jump size; L is the path value there.
void write_path_csv(std::ostream& out, const LevyPath& path);
/// Inverse of write_path_csv; throws FormatError on malformed input.
LevyPath read_path_csv(std::istream& in);

/// Writes text to a file, throwing std::runtime_error if it cannot be opened.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace snls::io
