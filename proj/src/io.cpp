#include "snls/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "snls/errors.hpp"

namespace snls::io {

namespace {

using cd = std::complex<double>;

std::vector<cd> complex_list(const json& j, const char* what) {
    if (!j.is_array()) throw FormatError(std::string("expected an array for ") + what);
    std::vector<cd> out;
    for (const auto& e : j) out.push_back(complex_from_json(e));
    return out;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json string_list(const std::vector<std::string>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

}  // namespace

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

cd complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const CoefficientSet& cs, cd H, std::optional<int> case_id) {
    json a = json::array();
    for (auto z : cs.a) a.push_back(complex_json(z));
    json b = json::array();
    for (auto z : cs.b) b.push_back(complex_json(z));
    return json{{"case", case_id ? json(*case_id) : json(nullptr)},
                {"H", complex_json(H)},
                {"k", complex_json(cs.k)},
                {"A", a},
                {"B", b},
                {"gauge", cs.gauge ? json(*cs.gauge) : json(nullptr)},
                {"family_tag", cs.family_tag},
                {"residual", cs.residual}};
}

CoefficientRecord record_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("coefficient record must be an object");
    for (const char* key : {"H", "k", "A", "B"})
        if (!j.contains(key)) throw FormatError(std::string("coefficient record lacks \"") + key + "\"");
    CoefficientRecord r;
    r.H = complex_from_json(j["H"]);
    r.set.k = complex_from_json(j["k"]);
    r.set.a = complex_list(j["A"], "A");
    r.set.b = complex_list(j["B"], "B");
    if (j.contains("case") && !j["case"].is_null()) {
        if (!j["case"].is_number_integer()) throw FormatError("\"case\" must be an integer");
        r.case_id = j["case"].get<int>();
    }
    if (j.contains("family_tag") && j["family_tag"].is_string()) r.set.family_tag = j["family_tag"].get<std::string>();
    if (j.contains("gauge") && !j["gauge"].is_null()) {
        if (!j["gauge"].is_number_unsigned()) throw FormatError("\"gauge\" must be a non-negative integer");
        r.set.gauge = j["gauge"].get<unsigned>();
    }
    try {
        r.set.validate();
        r.set = r.set.with_residual(r.H);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    return r;
}

std::vector<CoefficientRecord> read_coefficient_sets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
    if (j.is_object() && j.contains("roots")) j = j["roots"];
    std::vector<CoefficientRecord> out;
    if (j.is_array()) {
        for (const auto& e : j) out.push_back(record_from_json(e));
    } else {
        out.push_back(record_from_json(j));
    }
    if (out.empty()) throw FormatError(path + ": no coefficient records");
    return out;
}

json to_json(const SolveResult& result, cd H, const SolveOptions& options) {
    json roots = json::array();
    for (const auto& cs : result.roots) roots.push_back(to_json(cs, H));
    const auto& d = result.diagnostics;
    return json{{"H", complex_json(H)},
                {"rng_seed", options.rng_seed},
                {"starts", options.starts},
                {"roots", roots},
                {"diagnostics",
                 {{"random_starts", d.random_starts},
                  {"homotopy_paths", d.homotopy_paths},
                  {"converged", d.converged},
                  {"trivial_filtered", d.trivial_filtered},
                  {"regular_roots", d.regular_roots},
                  {"singular_roots", d.singular_roots},
                  {"anchored_roots", d.anchored_roots},
                  {"message", d.message}}}};
}

json to_json(const VerificationReport& r) {
    return json{{"case", r.label},
                {"H", complex_json(r.H)},
                {"system_residual", r.system_residual},
                {"ode_residual_u3", optional_number(r.ode_residual_u3)},
                {"ode_residual_mod", optional_number(r.ode_residual_mod)},
                {"pde_residual", {{"u3", optional_number(r.pde_residual_u3)}, {"mod", optional_number(r.pde_residual_mod)}}},
                {"flags", string_list(r.flags)},
                {"flagged", r.flagged},
                {"passed", r.passed}};
}

json to_json(const StabilityReport& r) {
    return json{{"case", r.label},
                {"lambda_target", to_string(r.lambda_target)},
                {"convention", to_string(r.convention)},
                {"Q", complex_json(r.Q)},
                {"dQ", complex_json(r.dQ)},
                {"richardson_disagreement", r.richardson_disagreement},
                {"verdict", r.verdict},
                {"expected_sign", r.expected_sign},
                {"excised_fraction", r.excised_fraction},
                {"excised_poles", r.excised_poles}};
}

json to_json(const XcheckReport& r) {
    return json{{"case", r.label},
                {"testable", r.testable},
                {"screening", r.screening},
                {"poles", r.poles},
                {"norm", r.norm == ErrorNorm::L2 ? "L2" : "Linf"},
                {"error_modulus", r.error_modulus},
                {"error_literal", r.error_literal},
                {"l2", {{"modulus", r.l2_modulus}, {"literal", r.l2_literal}}},
                {"linf", {{"modulus", r.linf_modulus}, {"literal", r.linf_literal}}}};
}

json to_json(const std::vector<ConvergencePoint>& points) {
    json a = json::array();
    for (const auto& p : points) a.push_back({{"dt", p.dt}, {"error", p.error}});
    return a;
}

void write_field_csv(std::ostream& out, const FieldGrid& grid) {
    out << "t,x,re,im,abs\n";
    for (std::size_t it = 0; it < grid.t_values.size(); ++it) {
        for (std::size_t ix = 0; ix < grid.x_values.size(); ++ix) {
            out << fmt(grid.t_values[it]) << ',' << fmt(grid.x_values[ix]) << ',';
            if (const auto& z = grid.at(it, ix))
                out << fmt(z->real()) << ',' << fmt(z->imag()) << ',' << fmt(grid.moduli[it * grid.x_values.size() + ix]) << '\n';
            else out << "NAV,NAV,NAV\n";
        }
    }
}

json field_sidecar(const FieldGrid& grid) {
    const auto& p = grid.provenance;
    std::size_t markers = 0;
    for (const auto& s : grid.samples) markers += s ? 0 : 1;
    return json{{"source", p.source},
                {"path_seed", p.path_seed},
                {"params", {{"alpha", p.params.alpha}, {"upsilon", p.params.upsilon}, {"rho", p.params.rho}, {"sigma", p.params.sigma}}},
                {"H", complex_json(p.params.H())},
                {"A_const", complex_json(p.a_const)},
                {"nx", grid.x_values.size()},
                {"nt", grid.t_values.size()},
                {"x_range", {grid.x_values.front(), grid.x_values.back()}},
                {"t_range", {grid.t_values.front(), grid.t_values.back()}},
                {"nav_cells", markers}};
}

void write_snapshot_csv(std::ostream& out, double t, const std::vector<double>& x, const std::vector<cd>& psi) {
    if (x.size() != psi.size()) throw std::invalid_argument("write_snapshot_csv: size mismatch");
    out << "t,x,re,im,abs\n";
    for (std::size_t j = 0; j < x.size(); ++j)
        out << fmt(t) << ',' << fmt(x[j]) << ',' << fmt(psi[j].real()) << ',' << fmt(psi[j].imag()) << ','
            << fmt(std::abs(psi[j])) << '\n';
}

void write_path_csv(std::ostream& out, const LevyPath& path) {
    out << "# levy_path drift=" << fmt(path.drift()) << " seed=" << path.seed() << '\n';
    out << "t,L,kind,value\n";
    const auto& gt = path.grid_times();
    const auto& gw = path.brownian_values();
    const auto& jt = path.jump_times();
    const auto& js = path.jump_sizes();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < gt.size() || j < jt.size()) {
        // grid row first when a jump lands exactly on a grid time
        if (j >= jt.size() || (i < gt.size() && gt[i] <= jt[j])) {
            out << fmt(gt[i]) << ',' << fmt(path.evaluate(gt[i])) << ",grid," << fmt(gw[i]) << '\n';
            ++i;
        } else {
            out << fmt(jt[j]) << ',' << fmt(path.evaluate(jt[j])) << ",jump," << fmt(js[j]) << '\n';
            ++j;
        }
    }
}

LevyPath read_path_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# levy_path", 0) != 0) throw FormatError("path CSV: missing '# levy_path' header");
    double drift = 0.0;
    unsigned long long seed = 0;
    {
        std::istringstream hdr(line.substr(11));
        std::string tok;
        bool have_drift = false;
        while (hdr >> tok) {
            try {
                if (tok.rfind("drift=", 0) == 0) {
                    drift = std::stod(tok.substr(6));
                    have_drift = true;
                } else if (tok.rfind("seed=", 0) == 0) {
                    seed = std::stoull(tok.substr(5));
                }
            } catch (const std::exception&) {
                throw FormatError("path CSV: bad header field " + tok);
            }
        }
        if (!have_drift) throw FormatError("path CSV: header lacks drift=");
    }
    if (!std::getline(in, line) || line != "t,L,kind,value") throw FormatError("path CSV: expected column header t,L,kind,value");

    std::vector<double> gt;
    std::vector<double> gw;
    std::vector<double> jt;
    std::vector<double> js;
    std::size_t row = 2;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string t_s;
        std::string l_s;
        std::string kind;
        std::string v_s;
        if (!std::getline(fields, t_s, ',') || !std::getline(fields, l_s, ',') || !std::getline(fields, kind, ',') ||
            !std::getline(fields, v_s))
            throw FormatError("path CSV: row " + std::to_string(row) + " needs 4 fields");
        double t = 0.0;
        double v = 0.0;
        try {
            t = std::stod(t_s);
            v = std::stod(v_s);
        } catch (const std::exception&) {
            throw FormatError("path CSV: row " + std::to_string(row) + " is not numeric");
        }
        if (kind == "grid") {
            gt.push_back(t);
            gw.push_back(v);
        } else if (kind == "jump") {
            jt.push_back(t);
            js.push_back(v);
        } else {
            throw FormatError("path CSV: row " + std::to_string(row) + " has unknown kind '" + kind + "'");
        }
    }
    try {
        return LevyPath(std::move(gt), std::move(gw), std::move(jt), std::move(js), drift, seed);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("path CSV: ") + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace snls::io
