// scenario.hpp — scenario configs, figure presets, CSV/JSON emission, closed-form residual report

#pragma once

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tavis/analytic.hpp"
#include "tavis/errors.hpp"
#include "tavis/evolve.hpp"
#include "tavis/model.hpp"
#include "tavis/observables.hpp"
#include "tavis/oracle.hpp"

namespace tavis {

enum class OutputFormat { csv, json };

// Requestable observables, in emission order.
enum class Output { alpha, gamma, S, s1, s2, negativity };

inline constexpr std::array<Output, 6> all_outputs{Output::alpha, Output::gamma, Output::S,
                                                   Output::s1,    Output::s2,    Output::negativity};

inline const char* to_string(Output o) noexcept {
    switch (o) {
        case Output::alpha: return "alpha";
        case Output::gamma: return "gamma";
        case Output::S: return "S";
        case Output::s1: return "s1";
        case Output::s2: return "s2";
        case Output::negativity: return "negativity";
    }
    return "?";
}

inline const char* to_string(OutputFormat f) noexcept { return f == OutputFormat::csv ? "csv" : "json"; }

struct ScenarioConfig {
    ModelParams params{};
    InitialCondition init{};
    double t_max{25.0};
    int t_steps{2000};
    Method method{Method::spectral};
    std::set<Output> outputs{all_outputs.begin(), all_outputs.end()};
    OutputFormat format{OutputFormat::csv};

    std::vector<double> time_grid() const { return uniform_grid(t_max, t_steps); }

    bool operator==(const ScenarioConfig&) const = default;
};

namespace detail {

inline std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view key, std::string_view v) {
    double out{};
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end || !std::isfinite(out))
        throw ParseError("value for '" + std::string(key) + "' is not a finite number: '" + std::string(v) + "'");
    return out;
}

inline int parse_int(std::string_view key, std::string_view v) {
    int out{};
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("value for '" + std::string(key) + "' is not an integer: '" + std::string(v) + "'");
    return out;
}

[[noreturn]] inline void out_of_range(const char* field, double value, const char* bound) {
    throw ValidationError(std::string(field) + " = " + fmt_double(value) + " violates " + bound);
}

}  // namespace detail

inline void validate(const ScenarioConfig& c) {
    using detail::out_of_range;
    if (!(c.params.lambda1 > 0.0)) out_of_range("lambda1", c.params.lambda1, "lambda1 > 0");
    if (!(c.params.lambda2 >= 0.0)) out_of_range("lambda2", c.params.lambda2, "lambda2 >= 0");
    if (!(c.init.theta >= 0.0 && c.init.theta <= std::numbers::pi))
        out_of_range("theta", c.init.theta, "[0, pi]");
    if (!(c.init.p >= 0.0 && c.init.p <= 1.0)) out_of_range("p", c.init.p, "[0, 1]");
    if (c.init.fock_n < 0) out_of_range("fock_n", c.init.fock_n, "fock_n >= 0");
    if (!(c.t_max > 0.0)) out_of_range("t_max", c.t_max, "t_max > 0");
    if (c.t_steps < 2) out_of_range("t_steps", c.t_steps, "t_steps >= 2");
    if (c.outputs.empty()) throw ValidationError("outputs must name at least one of alpha, gamma, S, s1, s2, negativity");
}

// Flat `key = value` document; '#' starts a comment. Omitted keys keep their
// defaults.
inline ScenarioConfig parse_config(std::string_view text) {
    using detail::parse_double;
    using detail::parse_int;
    using detail::trim;

    static const std::set<std::string_view> known{"lambda1", "lambda2", "delta1", "delta2", "omega",
                                                  "theta",   "phi",     "fock_n", "p",      "t_max",
                                                  "t_steps", "method",  "outputs", "format"};
    ScenarioConfig c;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!known.count(key)) throw ParseError("unknown key '" + std::string(key) + "'");
        if (!seen.insert(std::string(key)).second) throw ParseError("duplicate key '" + std::string(key) + "'");
        if (value.empty()) throw ParseError("missing value for '" + std::string(key) + "'");

        if (key == "lambda1") c.params.lambda1 = parse_double(key, value);
        else if (key == "lambda2") c.params.lambda2 = parse_double(key, value);
        else if (key == "delta1") c.params.delta1 = parse_double(key, value);
        else if (key == "delta2") c.params.delta2 = parse_double(key, value);
        else if (key == "omega") c.params.omega = parse_double(key, value);
        else if (key == "theta") c.init.theta = parse_double(key, value);
        else if (key == "phi") c.init.phi = parse_double(key, value);
        else if (key == "fock_n") c.init.fock_n = parse_int(key, value);
        else if (key == "p") c.init.p = parse_double(key, value);
        else if (key == "t_max") c.t_max = parse_double(key, value);
        else if (key == "t_steps") c.t_steps = parse_int(key, value);
        else if (key == "method") {
            const auto m = method_from_string(value);
            if (!m) throw ValidationError("method = '" + std::string(value) + "' not one of analytic, spectral, rk");
            c.method = *m;
        } else if (key == "format") {
            if (value == "csv") c.format = OutputFormat::csv;
            else if (value == "json") c.format = OutputFormat::json;
            else throw ValidationError("format = '" + std::string(value) + "' not one of csv, json");
        } else if (key == "outputs") {
            c.outputs.clear();
            std::string_view rest = value;
            while (true) {
                const auto comma = rest.find(',');
                const auto item = trim(rest.substr(0, comma));
                bool matched = false;
                for (const auto o : all_outputs) {
                    if (item == to_string(o)) {
                        c.outputs.insert(o);
                        matched = true;
                    }
                }
                if (!matched && !item.empty())
                    throw ValidationError("outputs: unknown observable '" + std::string(item) + "'");
                if (comma == std::string_view::npos) break;
                rest = rest.substr(comma + 1);
            }
        }
    }
    validate(c);
    return c;
}

inline std::string emit_config(const ScenarioConfig& c) {
    using detail::fmt_double;
    std::ostringstream os;
    os << "lambda1 = " << fmt_double(c.params.lambda1) << '\n'
       << "lambda2 = " << fmt_double(c.params.lambda2) << '\n'
       << "delta1 = " << fmt_double(c.params.delta1) << '\n'
       << "delta2 = " << fmt_double(c.params.delta2) << '\n'
       << "omega = " << fmt_double(c.params.omega) << '\n'
       << "theta = " << fmt_double(c.init.theta) << '\n'
       << "phi = " << fmt_double(c.init.phi) << '\n'
       << "fock_n = " << c.init.fock_n << '\n'
       << "p = " << fmt_double(c.init.p) << '\n'
       << "t_max = " << fmt_double(c.t_max) << '\n'
       << "t_steps = " << c.t_steps << '\n'
       << "method = " << to_string(c.method) << '\n'
       << "outputs = ";
    bool first = true;
    for (const auto o : c.outputs) {
        os << (first ? "" : ",") << to_string(o);
        first = false;
    }
    os << "\nformat = " << to_string(c.format) << '\n';
    return os.str();
}

// ---------------------------------------------------------------- presets --

struct Preset {
    std::string_view name;
    std::string_view description;
    ScenarioConfig config;
};

inline const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = [] {
        std::vector<Preset> v;
        const auto make = [](double lambda2, double delta2, double theta, int fock_n) {
            ScenarioConfig c;
            c.params = {1.0, lambda2, 0.0, delta2, 0.0};
            c.init = {theta, 0.0, fock_n, 0.5};
            return c;
        };
        const double pi = std::numbers::pi;
        // linear entropy: |e1>, |1>
        v.push_back({"fig1a", "entropy, |e1>|1>, lambda2=0", make(0.0, 0.0, pi, 1)});
        v.push_back({"fig1b", "entropy, |e1>|1>, lambda2=0.1, delta2=0", make(0.1, 0.0, pi, 1)});
        v.push_back({"fig1c", "entropy, |e1>|1>, lambda2=0.1, delta2=1", make(0.1, 1.0, pi, 1)});
        v.push_back({"fig1d", "entropy, |e1>|1>, lambda2=0.1, delta2=5", make(0.1, 5.0, pi, 1)});
        // squeezing: cos(0.6)|g1> + sin(0.6)|e1>, |1>
        v.push_back({"fig2a", "squeezing, theta=1.2, |1>, lambda2=0", make(0.0, 0.0, 1.2, 1)});
        v.push_back({"fig2b", "squeezing, theta=1.2, |1>, lambda2=0.1, delta2=0", make(0.1, 0.0, 1.2, 1)});
        v.push_back({"fig2c", "squeezing, theta=1.2, |1>, lambda2=0.1, delta2=1", make(0.1, 1.0, 1.2, 1)});
        v.push_back({"fig2d", "squeezing, theta=1.2, |1>, lambda2=0.1, delta2=5", make(0.1, 5.0, 1.2, 1)});
        // negativity: |e1>, |0>
        v.push_back({"fig3a", "negativity, |e1>|0>, lambda2=0", make(0.0, 0.0, pi, 0)});
        v.push_back({"fig3b", "negativity, |e1>|0>, lambda2=0.2, delta2=0", make(0.2, 0.0, pi, 0)});
        v.push_back({"fig3c", "negativity, |e1>|0>, lambda2=0.2, delta2=1", make(0.2, 1.0, pi, 0)});
        v.push_back({"fig3d", "negativity, |e1>|0>, lambda2=0.2, delta2=5", make(0.2, 5.0, pi, 0)});
        return v;
    }();
    return table;
}

inline std::optional<ScenarioConfig> preset(std::string_view name) {
    for (const auto& p : presets())
        if (p.name == name) return p.config;
    return std::nullopt;
}

// ----------------------------------------------------------------- output --

inline std::vector<std::string> column_names(const std::set<Output>& outputs) {
    std::vector<std::string> cols{"t"};
    for (const auto o : outputs) {
        if (o == Output::gamma) {
            cols.emplace_back("gamma_re");
            cols.emplace_back("gamma_im");
        } else {
            cols.emplace_back(to_string(o));
        }
    }
    return cols;
}

namespace detail {

// NaN marks an undefined squeezing index.
inline std::vector<double> row_values(const ObservableRecord& r, const std::set<Output>& outputs) {
    constexpr double undefined = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> v{r.t};
    for (const auto o : outputs) {
        switch (o) {
            case Output::alpha: v.push_back(r.alpha); break;
            case Output::gamma:
                v.push_back(r.gamma.real());
                v.push_back(r.gamma.imag());
                break;
            case Output::S: v.push_back(r.S); break;
            case Output::s1: v.push_back(r.squeezing.s1.value_or(undefined)); break;
            case Output::s2: v.push_back(r.squeezing.s2.value_or(undefined)); break;
            case Output::negativity: v.push_back(r.negativity); break;
        }
    }
    return v;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const ObservableSeries& s, const std::set<Output>& outputs) {
    const auto cols = column_names(outputs);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : s.records) {
        const auto v = detail::row_values(r, outputs);
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << detail::fmt_double(v[i]);
        os << '\n';
    }
}

inline void write_json(std::ostream& os, const ObservableSeries& s, const std::set<Output>& outputs) {
    const auto cols = column_names(outputs);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : s.records) {
        const auto v = detail::row_values(r, outputs);
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (std::isnan(v[i])) obj[cols[i]] = nullptr;
            else obj[cols[i]] = v[i];
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

// Exit status: 0 success, 2 numerical failure. Diagnostics go to `err`.
inline int run(const ScenarioConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        EvolveOptions opts;
        opts.method = config.method;
        const auto grid = config.time_grid();
        const auto s = series(config.init, config.params, grid, opts);
        for (const auto& n : s.notices) err << "notice: " << n << '\n';
        if (config.format == OutputFormat::csv) write_csv(out, s, config.outputs);
        else write_json(out, s, config.outputs);
        return 0;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

// ------------------------------------------------- closed-form residuals --

struct ResidualEntry {
    std::string name;  // "A12" etc.
    double max_residual{0.0};
    bool pass{false};
};

enum class ReportStatus { pass, fail, skipped };

inline const char* to_string(ReportStatus s) noexcept {
    switch (s) {
        case ReportStatus::pass: return "pass";
        case ReportStatus::fail: return "fail";
        case ReportStatus::skipped: return "skipped";
    }
    return "?";
}

struct AppendixReport {
    ModelParams params;
    int n{0};
    ClosedFormVariant variant{ClosedFormVariant::corrected};
    double tolerance{1e-6};
    ReportStatus status{ReportStatus::skipped};
    std::string reason;  // why skipped or failed
    double identity_residual{0.0};
    std::vector<ResidualEntry> entries;  // upper triangle, row-major

    double max_residual() const {
        double m = 0.0;
        for (const auto& e : entries) m = std::max(m, e.max_residual);
        return m;
    }
};

// Per-entry max |closed form - spectral| over the grid. Degenerate parameters
// produce a named skip.
inline AppendixReport validate_appendix(const ModelParams& params, int n, std::span<const double> t_grid,
                                        const AnalyticOptions& opts = {}, double tolerance = 1e-6) {
    AppendixReport rep;
    rep.params = params;
    rep.n = n;
    rep.variant = opts.variant;
    rep.tolerance = tolerance;

    std::optional<AnalyticCoefficients> coeffs;
    try {
        coeffs = compute_coefficients(params, n, opts);
    } catch (const DegenerateParameters& e) {
        rep.status = ReportStatus::skipped;
        rep.reason = std::string("degenerate parameters: ") + e.what();
        return rep;
    }
    rep.identity_residual = coeffs->identity_residual;

    const auto sd = jacobi_eigen(sector_hamiltonian(build_sector(n + 2), params));
    std::array<std::array<double, 4>, 4> worst{};
    for (const double t : t_grid) {
        const Eigen::MatrixXcd a = detail::closed_form_entries(*coeffs, t);
        const Eigen::MatrixXcd s = spectral_propagator(sd, t);
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                const double r = std::max(std::abs(a(i, j) - s(i, j)), std::abs(a(j, i) - s(j, i)));
                auto& w = worst[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                // NaN must count as failure
                if (!(r <= w)) w = std::isnan(r) ? std::numeric_limits<double>::infinity() : std::max(w, r);
            }
    }
    bool ok = true;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const double w = worst[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            rep.entries.push_back({"A" + std::to_string(i + 1) + std::to_string(j + 1), w, w <= tolerance});
            ok = ok && w <= tolerance;
        }
    rep.status = ok ? ReportStatus::pass : ReportStatus::fail;
    if (!(rep.identity_residual <= opts.identity_tol)) {
        rep.status = ReportStatus::fail;
        rep.reason = "A(0) deviates from identity by " + detail::fmt_double(rep.identity_residual);
    } else if (!ok) {
        rep.reason = "entries exceed tolerance";
    }
    return rep;
}

inline void write_report_csv(std::ostream& os, const AppendixReport& r) {
    os << "entry,max_residual,pass\n";
    for (const auto& e : r.entries) os << e.name << ',' << detail::fmt_double(e.max_residual) << ',' << (e.pass ? 1 : 0) << '\n';
    os << "# status=" << to_string(r.status);
    if (!r.reason.empty()) os << " reason=\"" << r.reason << '"';
    os << '\n';
}

inline void write_report_json(std::ostream& os, const AppendixReport& r) {
    nlohmann::ordered_json j;
    j["lambda1"] = r.params.lambda1;
    j["lambda2"] = r.params.lambda2;
    j["delta1"] = r.params.delta1;
    j["delta2"] = r.params.delta2;
    j["n"] = r.n;
    j["variant"] = r.variant == ClosedFormVariant::corrected ? "corrected" : "as_printed";
    j["tolerance"] = r.tolerance;
    j["status"] = to_string(r.status);
    j["reason"] = r.reason;
    j["identity_residual"] = r.identity_residual;
    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"entry", e.name}, {"max_residual", e.max_residual}, {"pass", e.pass}});
    j["entries"] = std::move(entries);
    os << j.dump(2) << '\n';
}

}  // namespace tavis
