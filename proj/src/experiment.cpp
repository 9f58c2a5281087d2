#include "kse/experiment.hpp"

#include "kse/imexrk4.hpp"
#include "kse/problems.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace kse::experiment {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::set<std::string> kKnownKeys{"mode",  "problem",   "N", "h",      "k",          "T",
                                       "beta",  "times",     "snapshots", "y", "window",
                                       "resolution", "output"};

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string sci4(double v) { return fmt("%.3E", v); }
std::string plain(double v) { return fmt("%.10g", v); }

std::vector<json> as_list(const json& v) {
    if (v.is_array()) return std::vector<json>(v.begin(), v.end());
    return {v};
}

double number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError("'" + key + "' must be finite");
    return d;
}

std::vector<double> numbers(const json& v, const std::string& key) {
    std::vector<double> out;
    for (const json& e : as_list(v)) out.push_back(number(e, key));
    return out;
}

std::size_t count(const json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
        throw ConfigError("'" + key + "' must be a positive integer");
    }
    return v.get<std::size_t>();
}

void require_positive(const std::vector<double>& v, const std::string& key) {
    for (double d : v)
        if (!(d > 0.0)) throw ConfigError("'" + key + "' values must be positive");
}

void require_halving(const std::vector<double>& v, const std::string& key) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (std::abs(v[i] - 2.0 * v[i + 1]) > 1e-12 * v[i]) {
            throw ConfigError("'" + key + "' must halve at every level; " + plain(v[i]) +
                              " is followed by " + plain(v[i + 1]));
        }
    }
}

std::size_t steps_for(double k, double t, const std::string& what) {
    try {
        return imex::step_count(k, t);
    } catch (const std::invalid_argument&) {
        throw ConfigError(what + " = " + plain(t) + " is not an integer multiple of k = " + plain(k));
    }
}

problems::ProblemSpec problem_of(const ExperimentConfig& c) {
    try {
        problems::ProblemOverrides o;
        o.beta = c.beta;
        return problems::make_problem(c.problem, o);
    } catch (const problems::ProblemError& e) {
        throw ConfigError(e.what());
    }
}

fd::Grid grid_of(const problems::ProblemSpec& p, const ExperimentConfig& c, std::size_t level) {
    try {
        return c.h.empty() ? p.grid_with_points(c.n[level]) : p.grid_with_spacing(c.h[level]);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::size_t grid_levels(const ExperimentConfig& c) { return c.h.empty() ? c.n.size() : c.h.size(); }

void validate(ExperimentConfig& c) {
    if (!c.n.empty() && !c.h.empty()) throw ConfigError("give either 'N' or 'h', not both");
    require_positive(c.h, "h");
    require_positive(c.k, "k");
    require_positive(c.times, "times");
    if (c.snapshot_every < 0.0) throw ConfigError("'snapshots' must be nonnegative");

    if (c.mode == Mode::kStability) {
        if (c.problem != 0 || grid_levels(c) || !c.k.empty() || c.final_time != 0.0 || c.beta ||
            !c.times.empty() || c.snapshot_every != 0.0) {
            throw ConfigError("stability mode takes only 'y', 'window', 'resolution' and 'output'");
        }
        if (c.y.empty()) throw ConfigError("stability mode needs at least one 'y'");
        if (c.resolution < analysis::kMinScanResolution) {
            throw ConfigError("'resolution' must be at least 16");
        }
        const auto& w = c.window;
        if (!(w.re_max > w.re_min) || !(w.im_max > w.im_min)) {
            throw ConfigError("'window' must be [re_min, re_max, im_min, im_max] with min < max");
        }
        return;
    }
    if (!c.y.empty() || c.window != analysis::Window{} ||
        c.resolution != analysis::kDefaultScanResolution) {
        throw ConfigError("'y', 'window' and 'resolution' are only used in stability mode");
    }

    const auto spec = problem_of(c);
    if (grid_levels(c) == 0) throw ConfigError("missing grid: give 'N' or 'h'");
    if (c.k.empty()) throw ConfigError("missing time step 'k'");

    if (c.mode == Mode::kGreTable) {
        if (!spec.has_exact()) throw ConfigError("gre-table needs a problem with an exact solution");
        if (c.times.empty()) c.times.assign(problems::kGreTimes.begin(), problems::kGreTimes.end());
        if (c.final_time == 0.0) c.final_time = *std::max_element(c.times.begin(), c.times.end());
    }
    if (!(c.final_time > 0.0)) throw ConfigError("missing or nonpositive final time 'T'");

    switch (c.mode) {
        case Mode::kSolve:
        case Mode::kGreTable:
            if (grid_levels(c) != 1 || c.k.size() != 1) {
                throw ConfigError(to_string(c.mode) + " takes a single grid and a single 'k'");
            }
            break;
        case Mode::kConvergeSpaceTime:
            if (!spec.has_exact()) {
                throw ConfigError("converge-space-time needs a problem with an exact solution");
            }
            if (c.h.size() < 2) throw ConfigError("converge-space-time needs an 'h' list");
            if (c.k.size() != c.h.size()) throw ConfigError("'h' and 'k' lists must have equal length");
            require_halving(c.h, "h");
            require_halving(c.k, "k");
            break;
        case Mode::kConvergeTime:
            if (grid_levels(c) != 1) throw ConfigError("converge-time takes a single grid");
            if (c.k.size() < 2) throw ConfigError("converge-time needs a 'k' list");
            require_halving(c.k, "k");
            steps_for(2.0 * c.k.front(), c.final_time, "T");
            break;
        case Mode::kStability:
            break;
    }
    for (double k : c.k) steps_for(k, c.final_time, "T");
    for (std::size_t level = 0; level < grid_levels(c); ++level) grid_of(spec, c, level);
    for (double t : c.times) {
        if (t > c.final_time * (1.0 + 1e-12)) throw ConfigError("'times' entries must not exceed T");
        for (double k : c.k) steps_for(k, t, "time");
    }
    if (c.snapshot_every > 0.0) steps_for(c.k.front(), c.snapshot_every, "snapshots");
}

json config_json(const ExperimentConfig& c) {
    json j;
    j["mode"] = to_string(c.mode);
    if (c.mode == Mode::kStability) {
        json ys = json::array();
        for (Complex y : c.y) ys.push_back(format_complex(y));
        j["y"] = ys;
        j["window"] = {c.window.re_min, c.window.re_max, c.window.im_min, c.window.im_max};
        j["resolution"] = c.resolution;
    } else {
        j["problem"] = c.problem;
        if (!c.h.empty()) j["h"] = c.h; else j["N"] = c.n;
        j["k"] = c.k;
        j["T"] = c.final_time;
        if (c.beta) j["beta"] = *c.beta;
        if (!c.times.empty()) j["times"] = c.times;
        if (c.snapshot_every > 0.0) j["snapshots"] = c.snapshot_every;
    }
    if (!c.output.empty()) j["output"] = c.output;
    return j;
}

// ---- file output ---------------------------------------------------------

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
}

std::string time_label(double t) { return fmt("%g", t); }

std::string field_csv(const fd::Grid& grid, std::span<const double> u,
                      const std::vector<double>* exact) {
    std::string s = exact ? "x,u,exact\n" : "x,u\n";
    char buf[96];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (exact) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.x(i), u[i], (*exact)[i]);
        } else {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid.x(i), u[i]);
        }
        s += buf;
    }
    return s;
}

struct Summary {
    double max_abs = 0.0;
    double mean = 0.0;
};

Summary summarize(std::span<const double> u) {
    Summary s;
    for (double v : u) {
        s.max_abs = std::max(s.max_abs, std::abs(v));
        s.mean += v;
    }
    s.mean /= static_cast<double>(u.size());
    return s;
}

// Accumulates report, timings and table rows, then writes them.
struct Output {
    fs::path dir;
    json report;
    json timings = json::object();
    std::string table;

    void finish(const std::string& status, const std::string& message) {
        report["status"] = status;
        if (!message.empty()) report["error"] = message;
        write_file(dir / "report.json", report.dump(2) + "\n");
        write_file(dir / "timings.json", timings.dump(2) + "\n");
        write_file(dir / "table.csv", table);
    }
};

struct Run {
    RealVector final_state;
    double setup_seconds = 0.0;
    double loop_seconds = 0.0;
};

Run integrate(const SemiDiscreteKse& sys, const RealVector& u0, double k, double t,
              const imex::Observer& observer = {}) {
    auto r = imex::integrate(sys, u0, k, t, observer);
    return {std::move(r.final_state), r.setup_seconds, r.loop_seconds};
}

json timing_row(const Run& r) {
    return {{"setup_seconds", r.setup_seconds},
            {"loop_seconds", r.loop_seconds},
            {"total_seconds", r.setup_seconds + r.loop_seconds}};
}

void run_solve(const ExperimentConfig& c, Output& out) {
    const auto spec = problem_of(c);
    const auto grid = grid_of(spec, c, 0);
    const auto sys = spec.system(grid);
    const double k = c.k.front();

    std::set<std::size_t> snapshot_steps{steps_for(k, c.final_time, "T")};
    for (double t : c.times) snapshot_steps.insert(steps_for(k, t, "time"));
    if (c.snapshot_every > 0.0) {
        const std::size_t every = steps_for(k, c.snapshot_every, "snapshots");
        for (std::size_t j = 0; j <= *snapshot_steps.rbegin(); j += every) snapshot_steps.insert(j);
    }

    out.report["grid"] = {{"N", grid.size()}, {"h", grid.h()}};
    out.report["snapshots"] = json::array();
    out.table = spec.has_exact() ? "t,N,h,k,max_abs,mean,max_error,gre\n" : "t,N,h,k,max_abs,mean\n";

    auto observer = [&](double t, std::span<const double> u) {
        const auto j = static_cast<std::size_t>(std::llround(t / k));
        if (!snapshot_steps.count(j)) return;
        const Summary s = summarize(u);
        json row{{"t", t}, {"max_abs", s.max_abs}, {"mean", s.mean}};
        std::string line = plain(t) + "," + std::to_string(grid.size()) + "," + plain(grid.h()) +
                           "," + plain(k) + "," + sci4(s.max_abs) + "," + sci4(s.mean);
        std::vector<double> exact;
        if (spec.has_exact()) {
            exact = spec.exact_state(grid, t);
            row["max_error"] = analysis::max_norm_error(exact, u);
            row["gre"] = analysis::gre(exact, u);
            line += "," + sci4(row["max_error"].get<double>()) + "," + sci4(row["gre"].get<double>());
        }
        out.report["snapshots"].push_back(row);
        out.table += line + "\n";
        write_file(out.dir / ("field_t" + time_label(t) + ".csv"),
                   field_csv(grid, u, spec.has_exact() ? &exact : nullptr));
    };
    const Run r = integrate(sys, spec.initial_state(grid), k, c.final_time, observer);
    out.timings["run"] = timing_row(r);
}

void run_converge_space_time(const ExperimentConfig& c, Output& out) {
    const auto spec = problem_of(c);
    out.report["rows"] = json::array();
    out.timings["rows"] = json::array();
    out.table = "h,N,k,T,max_error,order,cpu_loop_s\n";
    double previous = 0.0;
    for (std::size_t i = 0; i < c.h.size(); ++i) {
        const auto grid = grid_of(spec, c, i);
        const auto sys = spec.system(grid);
        const Run r = integrate(sys, spec.initial_state(grid), c.k[i], c.final_time);
        const auto exact = spec.exact_state(grid, c.final_time);
        const double err = analysis::max_norm_error(exact, r.final_state);
        json row{{"h", grid.h()},  {"N", grid.size()}, {"k", c.k[i]}, {"T", c.final_time},
                 {"max_error", err}, {"gre", analysis::gre(exact, r.final_state)}};
        std::string order_text = "-";
        if (i > 0) {
            const double order = analysis::observed_order(previous, err);
            row["order"] = order;
            order_text = fmt("%.4f", order);
        }
        previous = err;
        out.report["rows"].push_back(row);
        out.timings["rows"].push_back(timing_row(r));
        out.table += plain(grid.h()) + "," + std::to_string(grid.size()) + "," + plain(c.k[i]) + "," +
                     plain(c.final_time) + "," + sci4(err) + "," + order_text + "," +
                     fmt("%.4f", r.loop_seconds) + "\n";
    }
}

void run_converge_time(const ExperimentConfig& c, Output& out) {
    const auto spec = problem_of(c);
    const auto grid = grid_of(spec, c, 0);
    const auto sys = spec.system(grid);
    const auto u0 = spec.initial_state(grid);

    out.report["grid"] = {{"N", grid.size()}, {"h", grid.h()}};
    out.report["rows"] = json::array();
    out.timings["rows"] = json::array();
    out.table = "N,h,k,T,E_k,order,cpu_loop_s\n";

    const Run base = integrate(sys, u0, 2.0 * c.k.front(), c.final_time);
    out.timings["base_run"] = timing_row(base);
    RealVector coarse = base.final_state;
    double previous = 0.0;
    for (std::size_t i = 0; i < c.k.size(); ++i) {
        const Run r = integrate(sys, u0, c.k[i], c.final_time);
        const double e = analysis::self_difference_error(r.final_state, coarse);
        json row{{"N", grid.size()}, {"h", grid.h()}, {"k", c.k[i]}, {"T", c.final_time}, {"E_k", e}};
        std::string order_text = "-";
        if (i > 0) {
            const double order = analysis::observed_order(previous, e);
            row["order"] = order;
            order_text = fmt("%.4f", order);
        }
        previous = e;
        coarse = r.final_state;
        out.report["rows"].push_back(row);
        out.timings["rows"].push_back(timing_row(r));
        out.table += std::to_string(grid.size()) + "," + plain(grid.h()) + "," + plain(c.k[i]) + "," +
                     plain(c.final_time) + "," + sci4(e) + "," + order_text + "," +
                     fmt("%.4f", r.loop_seconds) + "\n";
    }
}

void run_gre_table(const ExperimentConfig& c, Output& out) {
    const auto spec = problem_of(c);
    const auto grid = grid_of(spec, c, 0);
    const auto sys = spec.system(grid);
    const double k = c.k.front();

    std::map<std::size_t, double> wanted;
    for (double t : c.times) wanted[steps_for(k, t, "time")] = t;

    out.report["grid"] = {{"N", grid.size()}, {"h", grid.h()}};
    out.report["rows"] = json::array();
    std::string header = "t,N,h,k,gre,max_error";
    for (const auto& lit : problems::kLiteratureGre) header += std::string(",literature_") + lit.scheme;
    out.table = header + "\n";

    auto observer = [&](double t, std::span<const double> u) {
        const auto it = wanted.find(static_cast<std::size_t>(std::llround(t / k)));
        if (it == wanted.end()) return;
        const double tt = it->second;
        const auto exact = spec.exact_state(grid, tt);
        const double g = analysis::gre(exact, u);
        const double e = analysis::max_norm_error(exact, u);
        json row{{"t", tt}, {"gre", g}, {"max_error", e}};
        std::string line = plain(tt) + "," + std::to_string(grid.size()) + "," + plain(grid.h()) + "," +
                           plain(k) + "," + sci4(g) + "," + sci4(e);
        // Literature values exist only at the published times.
        const auto pos = std::find(problems::kGreTimes.begin(), problems::kGreTimes.end(), tt);
        const bool published = pos != problems::kGreTimes.end() && grid.size() == 200 && k == 0.01 &&
                               spec.id == 1;
        json lit_row = json::object();
        for (const auto& lit : problems::kLiteratureGre) {
            if (published) {
                const double v = lit.gre[static_cast<std::size_t>(pos - problems::kGreTimes.begin())];
                lit_row[lit.scheme] = v;
                line += "," + sci4(v);
            } else {
                line += ",";
            }
        }
        if (published) row["literature"] = lit_row;
        out.report["rows"].push_back(row);
        out.table += line + "\n";
    };
    const Run r = integrate(sys, spec.initial_state(grid), k, c.final_time, observer);
    out.timings["run"] = timing_row(r);
}

void run_stability(const ExperimentConfig& c, Output& out) {
    out.report["rows"] = json::array();
    out.timings["rows"] = json::array();
    out.table = "y,re_min,re_max,im_min,im_max,resolution,stable_area,curves,empty\n";
    for (Complex y : c.y) {
        const auto start = std::chrono::steady_clock::now();
        const auto field = analysis::stability_scan(y, c.window, c.resolution, c.resolution);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const std::string label = format_complex(y);

        double worst = 0.0;
        std::size_t points = 0;
        for (const auto& line : field.boundary) {
            for (const auto& p : line) {
                worst = std::max(worst, std::abs(std::abs(analysis::amplification_factor({p.re, p.im}, y)) - 1.0));
                ++points;
            }
        }
        out.report["rows"].push_back({{"y", label},
                                      {"stable_area", field.stable_area},
                                      {"empty", field.empty},
                                      {"curves", field.boundary.size()},
                                      {"boundary_points", points},
                                      {"max_level_set_residual", worst}});
        out.timings["rows"].push_back({{"y", label}, {"scan_seconds", seconds}});
        const auto& w = c.window;
        out.table += label + "," + plain(w.re_min) + "," + plain(w.re_max) + "," + plain(w.im_min) +
                     "," + plain(w.im_max) + "," + std::to_string(c.resolution) + "," +
                     fmt("%.6g", field.stable_area) + "," + std::to_string(field.boundary.size()) +
                     "," + (field.empty ? "true" : "false") + "\n";

        std::ostringstream f;
        analysis::write_field_csv(f, field);
        write_file(out.dir / ("stability_y" + label + ".csv"), f.str());
        std::ostringstream b;
        analysis::write_boundary_csv(b, field);
        write_file(out.dir / ("boundary_y" + label + ".csv"), b.str());
    }
}

}  // namespace

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::kSolve: return "solve";
        case Mode::kConvergeSpaceTime: return "converge-space-time";
        case Mode::kConvergeTime: return "converge-time";
        case Mode::kStability: return "stability";
        case Mode::kGreTable: return "gre-table";
    }
    return "?";
}

Mode parse_mode(std::string_view text) {
    for (Mode m : {Mode::kSolve, Mode::kConvergeSpaceTime, Mode::kConvergeTime, Mode::kStability,
                   Mode::kGreTable}) {
        if (to_string(m) == text) return m;
    }
    throw ConfigError("unknown mode '" + std::string(text) +
                      "' (solve, converge-space-time, converge-time, stability, gre-table)");
}

Complex parse_complex(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ConfigError("empty complex number");

    auto parse_real = [&](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        char* end = nullptr;
        const double v = std::strtod(part.c_str(), &end);
        if (end != part.c_str() + part.size() || !std::isfinite(v)) {
            throw ConfigError("cannot parse complex number '" + std::string(text) + "'");
        }
        return v;
    };

    if (s.back() != 'i') {
        const std::string re = s;
        if (re == "+" || re == "-") throw ConfigError("cannot parse complex number '" + s + "'");
        return {parse_real(re), 0.0};
    }
    s.pop_back();
    // Split at the last sign that is not leading and not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, parse_real(s)};
    const std::string re = s.substr(0, split);
    if (re == "+" || re == "-") throw ConfigError("cannot parse complex number '" + std::string(text) + "'");
    return {parse_real(re), parse_real(s.substr(split))};
}

std::string format_complex(Complex y) {
    if (y.imag() == 0.0) return fmt("%.17g", y.real());
    if (y.real() == 0.0) return fmt("%.17g", y.imag()) + "i";
    return fmt("%.17g", y.real()) + fmt("%+.17g", y.imag()) + "i";
}

ExperimentConfig parse_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!kKnownKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }

    ExperimentConfig c;
    if (!j.contains("mode") || !j["mode"].is_string()) throw ConfigError("'mode' is required");
    c.mode = parse_mode(j["mode"].get<std::string>());
    if (j.contains("problem")) {
        if (!j["problem"].is_number_integer()) throw ConfigError("'problem' must be an integer");
        c.problem = j["problem"].get<int>();
        if (c.problem < 1 || c.problem > 4) throw ConfigError("'problem' must be 1..4");
    } else if (c.mode != Mode::kStability) {
        throw ConfigError("'problem' is required");
    }
    if (j.contains("N"))
        for (const json& e : as_list(j["N"])) c.n.push_back(count(e, "N"));
    if (j.contains("h")) c.h = numbers(j["h"], "h");
    if (j.contains("k")) c.k = numbers(j["k"], "k");
    if (j.contains("T")) c.final_time = number(j["T"], "T");
    if (j.contains("beta")) c.beta = number(j["beta"], "beta");
    if (j.contains("times")) c.times = numbers(j["times"], "times");
    if (j.contains("snapshots")) c.snapshot_every = number(j["snapshots"], "snapshots");
    if (j.contains("y")) {
        for (const json& e : as_list(j["y"])) {
            if (e.is_string()) c.y.push_back(parse_complex(e.get<std::string>()));
            else c.y.emplace_back(number(e, "y"), 0.0);
        }
    }
    if (j.contains("window")) {
        const auto w = numbers(j["window"], "window");
        if (w.size() != 4) throw ConfigError("'window' must be [re_min, re_max, im_min, im_max]");
        c.window = {w[0], w[1], w[2], w[3]};
    }
    if (j.contains("resolution")) c.resolution = count(j["resolution"], "resolution");
    if (j.contains("output")) {
        if (!j["output"].is_string()) throw ConfigError("'output' must be a string");
        c.output = j["output"].get<std::string>();
    }
    validate(c);
    return c;
}

std::string serialize_config(const ExperimentConfig& config) { return config_json(config).dump(2); }

std::string apply_overrides(std::string_view text, const std::vector<std::string>& assignments) {
    json j;
    try {
        j = text.empty() ? json::object() : json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const std::string& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + a + "' is not key=value");
        const std::string key = a.substr(0, eq);
        const std::string value = a.substr(eq + 1);
        json v = json::parse(value, nullptr, false);
        j[key] = v.is_discarded() ? json(value) : v;
    }
    return j.dump();
}

std::vector<std::string> preset_names() {
    return {"ex1-space-time", "ex1-gre",      "ex2-time",       "ex3-time",
            "ex4-time",       "ex1-wave",     "ex2-chaos",      "ex2-chaos-long",
            "ex3-pulse",      "ex4-beta-0.4", "ex4-beta-0.4-long", "ex4-beta-0.6",
            "ex4-beta-0.8",   "stability-real", "stability-imag"};
}

ExperimentConfig preset(std::string_view name) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    json j;
    if (name == "ex1-space-time") {
        j = {{"mode", "converge-space-time"}, {"problem", 1}, {"h", {4, 2, 1, 0.5}},
             {"k", {0.025, 0.0125, 0.00625, 0.003125}}, {"T", 2}};
    } else if (name == "ex1-gre") {
        j = {{"mode", "gre-table"}, {"problem", 1}, {"N", 200}, {"k", 0.01}, {"times", {6, 8, 10, 12}}};
    } else if (name == "ex2-time") {
        j = {{"mode", "converge-time"}, {"problem", 2}, {"N", 256},
             {"k", {0.25, 0.125, 0.0625, 0.03125}}, {"T", 10}};
    } else if (name == "ex3-time") {
        j = {{"mode", "converge-time"}, {"problem", 3}, {"N", 101},
             {"k", {0.005, 0.0025, 0.00125, 0.000625}}, {"T", 1}};
    } else if (name == "ex4-time") {
        j = {{"mode", "converge-time"}, {"problem", 4}, {"h", 0.05}, {"beta", 1.1},
             {"k", {0.0025, 0.00125, 0.000625, 0.0003125}}, {"T", 1}};
    } else if (name == "ex1-wave") {
        j = {{"mode", "solve"}, {"problem", 1}, {"h", 0.5}, {"k", 0.01}, {"T", 10}, {"snapshots", 0.5}};
    } else if (name == "ex2-chaos") {
        j = {{"mode", "solve"}, {"problem", 2}, {"N", 256}, {"k", 0.25}, {"T", 150}, {"snapshots", 1}};
    } else if (name == "ex2-chaos-long") {
        j = {{"mode", "solve"}, {"problem", 2}, {"N", 512}, {"k", 0.125}, {"T", 300}, {"snapshots", 1}};
    } else if (name == "ex3-pulse") {
        j = {{"mode", "solve"}, {"problem", 3}, {"N", 101}, {"k", 0.1}, {"T", 30}, {"snapshots", 0.5}};
    } else if (name == "ex4-beta-0.4" || name == "ex4-beta-0.6" || name == "ex4-beta-0.8" ||
               name == "ex4-beta-0.4-long") {
        const double b = name.substr(9, 3) == "0.4" ? 0.4 : name.substr(9, 3) == "0.6" ? 0.6 : 0.8;
        const double t = name.ends_with("-long") ? 2.0 : 1.0;
        j = {{"mode", "solve"}, {"problem", 4}, {"h", 0.05}, {"beta", b / pi2},
             {"k", 0.001},      {"T", t},       {"snapshots", 0.05}};
    } else if (name == "stability-real") {
        j = {{"mode", "stability"}, {"y", {"0", "-2", "-6", "-10", "-20", "-50"}}};
    } else if (name == "stability-imag") {
        j = {{"mode", "stability"}, {"y", {"-5i", "5i", "-20i", "20i"}}};
    } else {
        throw ConfigError("unknown preset '" + std::string(name) + "'");
    }
    return parse_config(j.dump());
}

RunOutcome run(const ExperimentConfig& config, const fs::path& out_dir) {
    ExperimentConfig c = config;
    validate(c);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

    Output out;
    out.dir = out_dir;
    out.report["config"] = config_json(c);
    RunOutcome outcome;
    try {
        switch (c.mode) {
            case Mode::kSolve: run_solve(c, out); break;
            case Mode::kConvergeSpaceTime: run_converge_space_time(c, out); break;
            case Mode::kConvergeTime: run_converge_time(c, out); break;
            case Mode::kGreTable: run_gre_table(c, out); break;
            case Mode::kStability: run_stability(c, out); break;
        }
        out.finish("ok", "");
        outcome.exit_code = kExitOk;
    } catch (const imex::InstabilityError& e) {
        out.finish("unstable", e.what());
        outcome.exit_code = kExitUnstable;
    }
    outcome.report_json = out.report.dump(2) + "\n";
    return outcome;
}

}  // namespace kse::experiment
