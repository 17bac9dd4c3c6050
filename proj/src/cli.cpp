#include "vlcsec/cli.hpp"

#include "vlcsec/avg_bounds.hpp"
#include "vlcsec/numerics.hpp"
#include "vlcsec/oracle.hpp"
#include "vlcsec/peak_bounds.hpp"
#include "vlcsec/region.hpp"
#include "parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace vlcsec {

namespace {

constexpr double pi = 3.14159265358979323846;

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string g9(double v) { return fmt("%.9g", v); }
std::string g17(double v) { return fmt("%.17g", v); }

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

struct RawValue {
    std::string text;
    int line = 0;
};

// One parsed [section]: key -> value plus the line it came from, so
// diagnostics can point at the offending spot.
struct RawSection {
    std::map<std::string, RawValue> kv;
    int line = 0;
};

std::map<std::string, RawSection> tokenize_ini(const std::string& text) {
    std::map<std::string, RawSection> out;
    std::istringstream in(text);
    std::string raw;
    std::string current;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto cut = raw.find_first_of("#;");
        if (cut != std::string::npos) raw.erase(cut);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail_at(line_no, "unterminated section header");
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty()) fail_at(line_no, "empty section name");
            if (out.count(current)) fail_at(line_no, "duplicate section [" + current + "]");
            out[current].line = line_no;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail_at(line_no, "expected key = value");
        if (current.empty()) fail_at(line_no, "key outside any [section]");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail_at(line_no, "empty key");
        if (val.empty()) fail_at(line_no, "empty value for '" + key + "'");
        auto& sec = out[current];
        if (sec.kv.count(key)) fail_at(line_no, "duplicate key '" + key + "'");
        sec.kv[key] = RawValue{val, line_no};
    }
    return out;
}

// Wraps one raw section with typed lookups and use tracking, so unknown
// keys can be reported once the known ones are consumed.
class SectionReader {
  public:
    SectionReader(const std::string& name, const RawSection* sec) : name_(name), sec_(sec) {}

    bool present() const { return sec_ != nullptr; }

    const RawValue* find(const std::string& key) {
        if (!sec_) return nullptr;
        auto it = sec_->kv.find(key);
        if (it == sec_->kv.end()) return nullptr;
        used_.insert(key);
        return &it->second;
    }

    const RawValue& require(const std::string& key) {
        const RawValue* v = find(key);
        if (!v) {
            throw ConfigError("[" + name_ + "] is missing required key '" + key + "'");
        }
        return *v;
    }

    void reject_unknown() const {
        if (!sec_) return;
        for (const auto& [key, val] : sec_->kv) {
            if (!used_.count(key)) fail_at(val.line, "unknown key '" + key + "' in [" + name_ + "]");
        }
    }

  private:
    std::string name_;
    const RawSection* sec_;
    std::set<std::string> used_;
};

double parse_real(const RawValue& v, const std::string& what) {
    std::istringstream in(v.text);
    double x = 0;
    if (!(in >> x) || !(in >> std::ws).eof() || !std::isfinite(x)) {
        fail_at(v.line, what + " must be a finite real, got '" + v.text + "'");
    }
    return x;
}

int parse_int(const RawValue& v, const std::string& what) {
    std::istringstream in(v.text);
    long x = 0;
    if (!(in >> x) || !(in >> std::ws).eof()) {
        fail_at(v.line, what + " must be an integer, got '" + v.text + "'");
    }
    return static_cast<int>(x);
}

std::vector<double> parse_reals(const RawValue& v, std::size_t n, const std::string& what) {
    std::istringstream in(v.text);
    std::vector<double> xs(n);
    for (auto& x : xs) {
        if (!(in >> x) || !std::isfinite(x)) {
            fail_at(v.line, what + " needs " + std::to_string(n) + " finite reals, got '" + v.text + "'");
        }
    }
    if (!(in >> std::ws).eof()) {
        fail_at(v.line, what + " needs exactly " + std::to_string(n) + " reals, got '" + v.text + "'");
    }
    return xs;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Accepts either <key> (linear) or <key>_db (decibel, 10*log10 of the
// linear value); exactly one must be present when required.
double linear_or_db(SectionReader& sec, const std::string& key, bool required, double fallback) {
    const RawValue* lin = sec.find(key);
    const RawValue* db = sec.find(key + "_db");
    if (lin && db) fail_at(db->line, "'" + key + "' and '" + key + "_db' are mutually exclusive");
    if (lin) {
        double v = parse_real(*lin, key);
        if (v <= 0) fail_at(lin->line, key + " must be positive");
        return v;
    }
    if (db) return db_to_linear(parse_real(*db, key + "_db"));
    if (required) throw ConfigError("[constraints] needs '" + key + "' or '" + key + "_db'");
    return fallback;
}

SweepSpec parse_sweep(SectionReader& sec, const RunConfig& cfg) {
    SweepSpec sw;
    const RawValue& var = sec.require("variable");
    sw.variable = var.text;
    const bool is_power = sw.variable == "p" || sw.variable == "a";
    if (sw.variable != "p" && sw.variable != "a" && sw.variable != "xi" && sw.variable != "ratio" &&
        sw.variable != "alpha") {
        fail_at(var.line, "sweep variable must be one of p, a, xi, ratio, alpha");
    }
    if ((sw.variable == "a" || sw.variable == "alpha") && cfg.mode != "peak") {
        fail_at(var.line, "sweep over '" + sw.variable + "' needs mode = peak");
    }

    if (const RawValue* sc = sec.find("scale")) {
        if (sc->text == "db") {
            if (!is_power) fail_at(sc->line, "scale = db only applies to p or a sweeps");
            sw.db_scale = true;
        } else if (sc->text == "linear") {
            sw.db_scale = false;
        } else {
            fail_at(sc->line, "scale must be db or linear");
        }
    } else {
        sw.db_scale = is_power;
    }

    const RawValue* start = sec.find("start");
    const RawValue* stop = sec.find("stop");
    const RawValue* points = sec.find("points");
    if (is_power && sw.db_scale && !start && !stop && !points) {
        sw.start = 25.0;
        sw.stop = 85.0;
        sw.points = 61;
    } else {
        if (!start || !stop || !points) {
            throw ConfigError("[sweep] needs start, stop and points (only the default 25..85 dB grid may omit them)");
        }
        sw.start = parse_real(*start, "start");
        sw.stop = parse_real(*stop, "stop");
        sw.points = parse_int(*points, "points");
        if (sw.points < 2) fail_at(points->line, "points must be at least 2");
        if (!(sw.start < sw.stop)) fail_at(stop->line, "start must be less than stop");
    }

    auto grid_value = [&](double t) { return sw.db_scale ? db_to_linear(t) : t; };
    double vmin = grid_value(sw.start);
    double vmax = grid_value(sw.stop);
    if (sw.variable == "xi") {
        if (vmin <= 0 || vmax > 1) fail_at(var.line, "xi sweep must stay inside (0, 1]");
        if (cfg.mode == "peak" && vmax * cfg.P > cfg.A) {
            fail_at(var.line, "xi sweep would push the mean constraint above the peak limit");
        }
    } else if (sw.variable == "ratio") {
        if (vmin < 1.0) fail_at(var.line, "ratio sweep must start at 1 or above");
    } else if (sw.variable == "alpha") {
        if (vmin <= 0 || vmax > cfg.xi) {
            fail_at(var.line, "alpha sweep must stay inside (0, xi] so the mean stays below the peak");
        }
    } else if (sw.variable == "p") {
        if (vmin <= 0) fail_at(var.line, "p sweep must be positive");
        if (cfg.mode == "peak" && vmax > cfg.A) {
            fail_at(var.line, "p sweep exceeds the peak limit a");
        }
    } else if (sw.variable == "a") {
        if (vmin < cfg.P) fail_at(var.line, "a sweep must not drop below the mean limit p");
    }
    return sw;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    auto sections = tokenize_ini(text);
    for (const auto& [name, sec] : sections) {
        if (name != "scenario" && name != "constraints" && name != "sweep" && name != "region" &&
            name != "output") {
            fail_at(sec.line, "unknown section [" + name + "]");
        }
    }

    RunConfig cfg;

    auto find_section = [&](const char* name) -> const RawSection* {
        auto it = sections.find(name);
        return it == sections.end() ? nullptr : &it->second;
    };

    SectionReader scen("scenario", find_section("scenario"));
    if (!scen.present()) throw ConfigError("missing required section [scenario]");

    auto read_pos = [&](const std::string& key) {
        auto xs = parse_reals(scen.require(key), 3, key);
        return Position{xs[0], xs[1], xs[2]};
    };
    cfg.scenario.alice = read_pos("alice");
    cfg.scenario.bob = read_pos("bob");
    if (const RawValue* ev = scen.find("eve")) {
        auto xs = parse_reals(*ev, 3, "eve");
        cfg.scenario.eve = Position{xs[0], xs[1], xs[2]};
        cfg.has_eve = true;
    }

    if (const RawValue* v = scen.find("m")) {
        cfg.scenario.pd.m = parse_real(*v, "m");
        if (cfg.scenario.pd.m < 1.0) fail_at(v->line, "lambertian order m must be >= 1");
    }
    {
        const RawValue* m2 = scen.find("area_m2");
        const RawValue* cm2 = scen.find("area_cm2");
        if (m2 && cm2) fail_at(cm2->line, "'area_m2' and 'area_cm2' are mutually exclusive");
        if (m2) cfg.scenario.pd.A_r = parse_real(*m2, "area_m2");
        if (cm2) cfg.scenario.pd.A_r = parse_real(*cm2, "area_cm2") * 1e-4;
        const RawValue* used = m2 ? m2 : cm2;
        if (used && cfg.scenario.pd.A_r <= 0) fail_at(used->line, "detector area must be positive");
    }
    if (const RawValue* v = scen.find("ts")) {
        cfg.scenario.pd.T_s = parse_real(*v, "ts");
        if (cfg.scenario.pd.T_s <= 0) fail_at(v->line, "filter gain ts must be positive");
    }
    if (const RawValue* v = scen.find("conc_gain")) {
        cfg.scenario.pd.g = parse_real(*v, "conc_gain");
        if (cfg.scenario.pd.g <= 0) fail_at(v->line, "concentrator gain must be positive");
    }
    {
        const RawValue* deg = scen.find("fov_deg");
        const RawValue* rad = scen.find("fov_rad");
        if (deg && rad) fail_at(rad->line, "'fov_deg' and 'fov_rad' are mutually exclusive");
        if (deg) cfg.scenario.pd.Psi = parse_real(*deg, "fov_deg") * pi / 180.0;
        if (rad) cfg.scenario.pd.Psi = parse_real(*rad, "fov_rad");
        const RawValue* used = deg ? deg : rad;
        if (used && !(cfg.scenario.pd.Psi > 0 && cfg.scenario.pd.Psi <= pi / 2)) {
            fail_at(used->line, "field of view must lie in (0, 90] degrees");
        }
    }
    if (const RawValue* v = scen.find("sigma_b")) {
        cfg.scenario.sigma_B = parse_real(*v, "sigma_b");
        if (cfg.scenario.sigma_B <= 0) fail_at(v->line, "sigma_b must be positive");
    }
    if (const RawValue* v = scen.find("sigma_e")) {
        cfg.scenario.sigma_E = parse_real(*v, "sigma_e");
        if (cfg.scenario.sigma_E <= 0) fail_at(v->line, "sigma_e must be positive");
    }
    scen.reject_unknown();

    if (!(cfg.scenario.alice.z > cfg.scenario.bob.z)) {
        throw ConfigError("alice must be strictly above bob");
    }
    if (cfg.has_eve && !(cfg.scenario.alice.z > cfg.scenario.eve.z)) {
        throw ConfigError("alice must be strictly above eve");
    }

    SectionReader cons("constraints", find_section("constraints"));
    if (!cons.present()) throw ConfigError("missing required section [constraints]");
    const RawValue& mode = cons.require("mode");
    if (mode.text != "avg" && mode.text != "peak") fail_at(mode.line, "mode must be avg or peak");
    cfg.mode = mode.text;
    {
        const RawValue& xi = cons.require("xi");
        cfg.xi = parse_real(xi, "xi");
        if (!(cfg.xi > 0 && cfg.xi <= 1)) fail_at(xi.line, "xi must lie in (0, 1]");
    }
    cfg.P = linear_or_db(cons, "p", true, 0.0);
    if (cfg.mode == "peak") {
        cfg.A = linear_or_db(cons, "a", true, 0.0);
        if (cfg.P > cfg.A) {
            throw ConfigError("[constraints] mean limit p exceeds peak limit a");
        }
    } else {
        if (const RawValue* a = cons.find("a")) fail_at(a->line, "'a' only applies to mode = peak");
        if (const RawValue* a = cons.find("a_db")) fail_at(a->line, "'a_db' only applies to mode = peak");
    }
    cons.reject_unknown();

    SectionReader sweep("sweep", find_section("sweep"));
    if (sweep.present()) {
        cfg.sweep = parse_sweep(sweep, cfg);
        sweep.reject_unknown();
    }

    SectionReader region("region", find_section("region"));
    if (region.present()) {
        FloorGrid grid;
        auto xs = parse_reals(region.require("x"), 2, "x");
        auto ys = parse_reals(region.require("y"), 2, "y");
        grid.x0 = xs[0];
        grid.x1 = xs[1];
        grid.y0 = ys[0];
        grid.y1 = ys[1];
        {
            const RawValue& nx = region.require("nx");
            grid.nx = parse_int(nx, "nx");
            if (grid.nx < 2) fail_at(nx.line, "nx must be at least 2");
        }
        {
            const RawValue& ny = region.require("ny");
            grid.ny = parse_int(ny, "ny");
            if (grid.ny < 2) fail_at(ny.line, "ny must be at least 2");
        }
        if (const RawValue* z = region.find("z")) grid.z = parse_real(*z, "z");
        if (!(grid.x0 < grid.x1) || !(grid.y0 < grid.y1)) {
            throw ConfigError("[region] extents must satisfy x0 < x1 and y0 < y1");
        }
        if (!(grid.z < cfg.scenario.alice.z)) {
            throw ConfigError("[region] plane must lie below alice");
        }
        cfg.region = grid;
        region.reject_unknown();
    }

    SectionReader output("output", find_section("output"));
    if (output.present()) {
        OutputSpec spec;
        spec.path = output.require("path").text;
        if (const RawValue* f = output.find("format")) {
            if (f->text != "csv") fail_at(f->line, "format must be csv");
            spec.format = f->text;
        }
        cfg.output = spec;
        output.reject_unknown();
    }

    return cfg;
}

std::string serialize(const RunConfig& cfg) {
    std::ostringstream out;
    auto pos = [&](const Position& p) { return g17(p.x) + " " + g17(p.y) + " " + g17(p.z); };
    out << "[scenario]\n";
    out << "alice = " << pos(cfg.scenario.alice) << "\n";
    out << "bob = " << pos(cfg.scenario.bob) << "\n";
    if (cfg.has_eve) out << "eve = " << pos(cfg.scenario.eve) << "\n";
    out << "m = " << g17(cfg.scenario.pd.m) << "\n";
    out << "area_m2 = " << g17(cfg.scenario.pd.A_r) << "\n";
    out << "ts = " << g17(cfg.scenario.pd.T_s) << "\n";
    out << "conc_gain = " << g17(cfg.scenario.pd.g) << "\n";
    out << "fov_rad = " << g17(cfg.scenario.pd.Psi) << "\n";
    out << "sigma_b = " << g17(cfg.scenario.sigma_B) << "\n";
    out << "sigma_e = " << g17(cfg.scenario.sigma_E) << "\n";
    out << "\n[constraints]\n";
    out << "mode = " << cfg.mode << "\n";
    out << "xi = " << g17(cfg.xi) << "\n";
    out << "p = " << g17(cfg.P) << "\n";
    if (cfg.mode == "peak") out << "a = " << g17(cfg.A) << "\n";
    if (cfg.sweep) {
        out << "\n[sweep]\n";
        out << "variable = " << cfg.sweep->variable << "\n";
        out << "start = " << g17(cfg.sweep->start) << "\n";
        out << "stop = " << g17(cfg.sweep->stop) << "\n";
        out << "points = " << cfg.sweep->points << "\n";
        out << "scale = " << (cfg.sweep->db_scale ? "db" : "linear") << "\n";
    }
    if (cfg.region) {
        out << "\n[region]\n";
        out << "x = " << g17(cfg.region->x0) << " " << g17(cfg.region->x1) << "\n";
        out << "y = " << g17(cfg.region->y0) << " " << g17(cfg.region->y1) << "\n";
        out << "nx = " << cfg.region->nx << "\n";
        out << "ny = " << cfg.region->ny << "\n";
        out << "z = " << g17(cfg.region->z) << "\n";
    }
    if (cfg.output) {
        out << "\n[output]\n";
        out << "path = " << cfg.output->path << "\n";
        out << "format = " << cfg.output->format << "\n";
    }
    return out.str();
}

double shannon_limit(double H_B, double xi, double P, double sigma_B) {
    if (!(sigma_B > 0)) throw std::invalid_argument("shannon_limit: sigma_B must be positive");
    double s = H_B * xi * P / sigma_B;
    return 0.5 * std::log1p(s * s);
}

namespace {

LinkGains cfg_gains(const RunConfig& cfg) {
    if (!cfg.has_eve) throw ConfigError("this command needs an eve position in [scenario]");
    return link_gains(cfg.scenario);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file for writing: " + path);
    return f;
}

void finish_out(std::ofstream& f, const std::string& path) {
    f.flush();
    if (!f) throw std::runtime_error("write failure on output file: " + path);
}

const char* shannon_note =
    "note: the shannon limit line is the conventional 0.5*ln(1 + (H_B*xi*P/sigma_B)^2) "
    "reference curve, not an achievable secrecy rate.\n";

std::string out_path(const RunConfig& cfg, const CliOptions& opt) {
    if (opt.out) return *opt.out;
    if (cfg.output) return cfg.output->path;
    return "";
}

// Inserts a suffix before the final extension: plot.csv -> plot_avg.csv.
std::string with_suffix(const std::string& path, const std::string& suffix) {
    auto dot = path.find_last_of('.');
    auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + suffix;
    }
    return path.substr(0, dot) + suffix + path.substr(dot);
}

}  // namespace

int cmd_bounds(const RunConfig& cfg, const CliOptions& opt, std::ostream& out, std::ostream& err) {
    LinkGains gains = cfg_gains(cfg);
    const Scenario& s = cfg.scenario;
    const bool peak = cfg.mode == "peak";

    BoundReport rep;
    double alpha = 0.0;
    if (peak) {
        PeakConstraints pc{cfg.xi, cfg.P, cfg.A};
        alpha = pc.alpha();
        rep = peak_bound_report(gains, pc, s.sigma_B, s.sigma_E);
    } else {
        rep = avg_bound_report(gains, AvgConstraints{cfg.xi, cfg.P}, s.sigma_B, s.sigma_E);
    }
    double clamped_upper = std::max(0.0, rep.upper);

    out << "mode            : " << (peak ? "peak (mean and peak intensity limits)"
                                         : "avg (mean intensity limit)")
        << "\n";
    out << "H_B             : " << g9(gains.H_B) << "\n";
    out << "H_E             : " << g9(gains.H_E) << "\n";
    if (peak) out << "alpha = xi*P/A  : " << g9(alpha) << "\n";
    if (rep.degraded) {
        out << "secure          : no (eavesdropper channel at least as strong; all bounds zero)\n";
    } else {
        out << "secure          : yes (legitimate channel strictly stronger)\n";
    }
    const char* l1_label = peak ? (alpha < 0.5 ? "lower_1 (truncated-exponential input)  "
                                               : "lower_1 (uniform input)                ")
                                : "lower_1 (max-entropy exponential input)";
    out << l1_label << ": " << g9(rep.lower_1) << " nats\n";
    out << "lower_2 (entropy-power form)           : " << g9(rep.lower_2) << " nats\n";
    out << "upper   (genie-aided)                  : " << g9(rep.upper) << " nats\n";
    out << "clamped lower, max(0, lower bounds)    : " << g9(rep.clamped_lower) << " nats\n";
    out << "clamped upper, max(0, upper)           : " << g9(clamped_upper) << " nats\n";

    bool have_asym = gains.H_E > 0 && !rep.degraded;
    Asymptotes asym{0.0, 0.0};
    if (have_asym) {
        if (peak) {
            double shared = asymptote_peak(gains, s.sigma_B, s.sigma_E);
            asym = Asymptotes{shared, shared};
            out << "high-power asymptote (shared limit)    : " << g9(asym.lower) << " nats\n";
        } else {
            asym = asymptote_avg(gains, s.sigma_B, s.sigma_E);
            out << "high-power asymptote lower / upper     : " << g9(asym.lower) << " / "
                << g9(asym.upper) << " nats\n";
        }
    } else if (!rep.degraded) {
        out << "high-power asymptote                   : n/a (zero eavesdropper gain)\n";
    }

    double shan = 0.0;
    if (opt.shannon) {
        shan = shannon_limit(gains.H_B, cfg.xi, cfg.P, s.sigma_B);
        out << "shannon limit (reference convention)   : " << g9(shan) << " nats\n";
        err << shannon_note;
    }

    std::string path = out_path(cfg, opt);
    if (!path.empty()) {
        std::ofstream f = open_out(path);
        f << "mode,H_B,H_E";
        if (peak) f << ",alpha";
        f << ",secure,lower_1,lower_2,upper,clamped_lower,clamped_upper";
        if (have_asym) f << ",asym_lower,asym_upper";
        if (opt.shannon) f << ",shannon";
        f << "\n";
        f << cfg.mode << "," << g9(gains.H_B) << "," << g9(gains.H_E);
        if (peak) f << "," << g9(alpha);
        f << "," << (rep.degraded ? 0 : 1) << "," << g9(rep.lower_1) << "," << g9(rep.lower_2)
          << "," << g9(rep.upper) << "," << g9(rep.clamped_lower) << "," << g9(clamped_upper);
        if (have_asym) f << "," << g9(asym.lower) << "," << g9(peak ? asym.lower : asym.upper);
        if (opt.shannon) f << "," << g9(shan);
        f << "\n";
        finish_out(f, path);
        err << "bounds row written to " << path << "\n";
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const CliOptions& opt, std::ostream& out, std::ostream& err) {
    if (!cfg.sweep) throw ConfigError("sweep command needs a [sweep] section");
    const SweepSpec& sw = *cfg.sweep;
    const Scenario& s = cfg.scenario;
    const bool peak = cfg.mode == "peak";
    const bool ratio_sweep = sw.variable == "ratio";

    double h_b = 0.0;
    LinkGains fixed_gains{0.0, 0.0};
    if (ratio_sweep) {
        h_b = channel_gain(s.alice, s.bob, s.pd);
        if (!(h_b > 0)) throw std::invalid_argument("bob is outside the field of view; ratio sweep is empty");
    } else {
        fixed_gains = cfg_gains(cfg);
    }

    const int n = sw.points;
    std::vector<double> ts(n), vals(n);
    for (int i = 0; i < n; ++i) {
        double t = sw.start + (sw.stop - sw.start) * static_cast<double>(i) / (n - 1);
        ts[i] = t;
        vals[i] = sw.db_scale ? db_to_linear(t) : t;
    }

    std::vector<BoundReport> reps(n);
    std::vector<double> shans(n, 0.0);
    detail::parallel_for(static_cast<std::size_t>(n), opt.threads, [&](std::size_t i) {
        double v = vals[i];
        LinkGains g = ratio_sweep ? LinkGains{h_b, h_b / v} : fixed_gains;
        double xi = sw.variable == "xi" ? v : cfg.xi;
        double P = sw.variable == "p" ? v : cfg.P;
        if (peak) {
            double A = sw.variable == "a" ? v : cfg.A;
            if (sw.variable == "alpha") P = v * A / xi;
            reps[i] = peak_bound_report(g, PeakConstraints{xi, P, A}, s.sigma_B, s.sigma_E);
            if (opt.shannon) shans[i] = shannon_limit(g.H_B, xi, P, s.sigma_B);
        } else {
            reps[i] = avg_bound_report(g, AvgConstraints{xi, P}, s.sigma_B, s.sigma_E);
            if (opt.shannon) shans[i] = shannon_limit(g.H_B, xi, P, s.sigma_B);
        }
    });

    std::ostringstream csv;
    if (sw.db_scale) {
        csv << sw.variable << "_db," << sw.variable;
    } else {
        csv << sw.variable;
    }
    csv << ",lower_1,lower_2,upper,clamped_lower,clamped_upper,secure";
    if (opt.shannon) csv << ",shannon";
    csv << "\n";
    for (int i = 0; i < n; ++i) {
        const BoundReport& r = reps[i];
        if (sw.db_scale) csv << g9(ts[i]) << ",";
        csv << g9(vals[i]) << "," << g9(r.lower_1) << "," << g9(r.lower_2) << "," << g9(r.upper)
            << "," << g9(r.clamped_lower) << "," << g9(std::max(0.0, r.upper)) << ","
            << (r.degraded ? 0 : 1);
        if (opt.shannon) csv << "," << g9(shans[i]);
        csv << "\n";
    }

    if (opt.shannon) err << shannon_note;
    std::string path = out_path(cfg, opt);
    if (path.empty()) {
        out << csv.str();
    } else {
        std::ofstream f = open_out(path);
        f << csv.str();
        finish_out(f, path);
        err << "sweep of " << n << " points written to " << path << "\n";
    }
    return 0;
}

int cmd_tables(const CliOptions& opt, std::ostream& out, std::ostream& err) {
    // Benchmark geometry: source at the ceiling center of a 10 x 10 x 3 m
    // room, receiver on the floor half a meter off nadir. The detector area
    // enters as the raw square-centimeter figure so the gain ratios land on
    // the published operating points.
    PdParams pd;
    pd.A_r = 1.0;
    Position alice{5.0, 5.0, 3.0};
    Position bob{5.0, 4.5, 0.0};
    double h_b = channel_gain(alice, bob, pd);

    const double ratios[3] = {3000.0, 300.0, 30.0};
    const int dbs[5] = {65, 70, 75, 80, 85};
    const double xi = 0.2;

    double gap_avg[5][3];
    double gap_peak[5][3];
    for (int i = 0; i < 5; ++i) {
        double power = db_to_linear(dbs[i]);
        for (int j = 0; j < 3; ++j) {
            LinkGains g{h_b, h_b / ratios[j]};
            AvgConstraints ac{xi, power};
            gap_avg[i][j] = upper_bound_avg(g, ac, 1.0, 1.0) - lower_bound_avg_1(g, ac, 1.0, 1.0);
            PeakConstraints pc{xi, power, power};
            gap_peak[i][j] = upper_bound_peak(g, pc, 1.0, 1.0) - lower_bound_peak_1(g, pc, 1.0, 1.0);
        }
    }

    auto print_table = [&](const char* title, const char* col0, double gap[5][3]) {
        out << title << "\n";
        out << "  " << col0 << "    gain ratio 3000    gain ratio 300    gain ratio 30\n";
        for (int i = 0; i < 5; ++i) {
            char line[128];
            std::snprintf(line, sizeof(line), "  %5d    %15.6f    %14.6f    %13.6f\n", dbs[i],
                          gap[i][0], gap[i][1], gap[i][2]);
            out << line;
        }
    };
    print_table("gap to the genie-aided upper bound, mean intensity limit (nats)", "P(dB)",
                gap_avg);
    out << "\n";
    print_table("gap to the genie-aided upper bound, peak limit a = p (nats)", "a(dB)", gap_peak);
    out << "\nnote: detector area taken as the raw square-centimeter figure (1.0),\n"
           "xi = 0.2, unit noise on both channels, gain ratio H_B / H_E.\n";

    if (opt.out) {
        auto dump = [&](const std::string& path, const char* col0, double gap[5][3]) {
            std::ofstream f = open_out(path);
            f << col0 << ",gap_ratio_3000,gap_ratio_300,gap_ratio_30\n";
            for (int i = 0; i < 5; ++i) {
                f << dbs[i] << "," << g9(gap[i][0]) << "," << g9(gap[i][1]) << "," << g9(gap[i][2])
                  << "\n";
            }
            finish_out(f, path);
        };
        std::string avg_path = with_suffix(*opt.out, "_avg");
        std::string peak_path = with_suffix(*opt.out, "_peak");
        dump(avg_path, "p_db", gap_avg);
        dump(peak_path, "a_db", gap_peak);
        err << "tables written to " << avg_path << " and " << peak_path << "\n";
    }
    return 0;
}

int cmd_region(const RunConfig& cfg, const CliOptions& opt, std::ostream& out, std::ostream& err) {
    if (!cfg.region) throw ConfigError("region command needs a [region] section");
    RegionBound bound = cfg.mode == "peak" ? RegionBound::PeakUpper : RegionBound::AvgUpper;
    RegionConstraints rc;
    if (cfg.mode == "peak") {
        rc = PeakConstraints{cfg.xi, cfg.P, cfg.A};
    } else {
        rc = AvgConstraints{cfg.xi, cfg.P};
    }
    RegionMap map = insecure_region(cfg.scenario, *cfg.region, bound, rc, opt.threads);

    std::size_t insecure_cells = 0;
    for (auto flag : map.insecure) insecure_cells += flag;

    std::string path = out_path(cfg, opt);
    if (path.empty()) {
        export_region_csv(map, out);
        err << "region map: " << map.grid.nx << " x " << map.grid.ny << " cells, "
            << insecure_cells << " insecure\n";
    } else {
        export_region_csv(map, path);
        out << "region map written to " << path << " (" << map.grid.nx << " x " << map.grid.ny
            << " cells, " << insecure_cells << " insecure)\n";
    }
    return 0;
}

int cmd_oracle(const RunConfig& cfg, const CliOptions& opt, std::ostream& out, std::ostream&) {
    LinkGains gains = cfg_gains(cfg);
    const Scenario& s = cfg.scenario;
    const bool peak = cfg.mode == "peak";

    out << "H_B : " << g9(gains.H_B) << "\n";
    out << "H_E : " << g9(gains.H_E) << "\n";

    if (!is_degraded_secure(gains, s.sigma_B, s.sigma_E)) {
        out << "secure : no (eavesdropper channel at least as strong)\n";
        out << "all bounds and the achievable secrecy rate are zero; nothing to integrate\n";
        out << "SANDWICH OK\n";
        return 0;
    }

    InputDistribution dist{};
    double lower = 0.0, upper = 0.0;
    if (peak) {
        PeakConstraints pc{cfg.xi, cfg.P, cfg.A};
        double alpha = pc.alpha();
        if (std::abs(alpha - 0.5) < 1e-6) {
            dist = InputDistribution::uniform(cfg.A);
            out << "input law : uniform on [0, a] (alpha at the tie point)\n";
        } else {
            double c = solve_c(alpha, cfg.A);
            dist = InputDistribution::trunc_exp(c, cfg.A);
            out << "input law : truncated exponential, c = " << g9(c) << "\n";
        }
        lower = lower_bound_peak_2(gains, pc, s.sigma_B, s.sigma_E);
        upper = upper_bound_peak(gains, pc, s.sigma_B, s.sigma_E);
    } else {
        dist = InputDistribution::exponential(cfg.xi * cfg.P);
        out << "input law : exponential with mean xi*p (max-entropy under the mean limit)\n";
        lower = lower_bound_avg_2(gains, AvgConstraints{cfg.xi, cfg.P}, s.sigma_B, s.sigma_E);
        upper = upper_bound_avg(gains, AvgConstraints{cfg.xi, cfg.P}, s.sigma_B, s.sigma_E);
    }

    QuadratureSpec quad;
    quad.tol = opt.quad_tol;
    double rate = oracle_secrecy_rate(dist, gains, s.sigma_B, s.sigma_E, quad);
    QuadratureSpec half = quad;
    half.tol = 0.5 * quad.tol;
    double rate_half = oracle_secrecy_rate(dist, gains, s.sigma_B, s.sigma_E, half);

    out << "closed-form lower (entropy-power form) : " << g9(lower) << " nats\n";
    out << "numerical secrecy rate of that input   : " << g9(rate) << " nats\n";
    out << "closed-form upper (genie-aided)        : " << g9(upper) << " nats\n";
    out << "quadrature stability |rate - rate_half| = " << g9(std::abs(rate - rate_half))
        << (std::abs(rate - rate_half) <= opt.quad_tol ? " (stable)\n" : " (UNSTABLE)\n");

    bool lower_ok = lower <= rate + 1e-4;
    bool upper_ok = rate <= upper + 2e-4;
    out << "lower <= rate + 1e-4 : " << (lower_ok ? "yes" : "NO") << "\n";
    out << "rate <= upper + 2e-4 : " << (upper_ok ? "yes" : "NO") << "\n";
    if (lower_ok && upper_ok) {
        out << "SANDWICH OK\n";
        return 0;
    }
    out << "SANDWICH VIOLATION\n";
    return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"secrecy-capacity bounds for indoor optical intensity links"};
    app.require_subcommand(1);

    std::string config_path;
    CliOptions opt;
    std::string out_file;
    bool have_out = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "INI scenario/constraint description");
        sub->add_option("--out", out_file, "write CSV here instead of stdout")
            ->each([&](const std::string&) { have_out = true; });
        sub->add_option("--format", opt.format, "output format (csv)");
        sub->add_flag("--shannon", opt.shannon, "add the conventional shannon limit column");
        sub->add_option("--quad-tol", opt.quad_tol, "oracle quadrature tolerance in nats")
            ->check(CLI::PositiveNumber);
        sub->add_option("--threads", opt.threads, "worker threads for sweeps and region maps")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* c_bounds = app.add_subcommand("bounds", "closed-form bounds at one operating point");
    CLI::App* c_sweep = app.add_subcommand("sweep", "bounds along a power / parameter grid");
    CLI::App* c_tables = app.add_subcommand("tables", "benchmark gap tables (fixed geometry)");
    CLI::App* c_region = app.add_subcommand("region", "insecure-region map over a receiver plane");
    CLI::App* c_oracle =
        app.add_subcommand("oracle", "numerical secrecy-rate check against the closed forms");
    for (CLI::App* sub : {c_bounds, c_sweep, c_tables, c_region, c_oracle}) add_common(sub);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("vlcsec");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (have_out) opt.out = out_file;
    try {
        if (opt.format != "csv") throw ConfigError("unsupported output format '" + opt.format + "'");
        if (app.got_subcommand(c_tables)) return cmd_tables(opt, out, err);

        if (config_path.empty()) throw ConfigError("--config is required for this command");
        std::ifstream f(config_path, std::ios::binary);
        if (!f) throw ConfigError("cannot read config file: " + config_path);
        std::ostringstream text;
        text << f.rdbuf();
        RunConfig cfg = parse_config(text.str());

        if (app.got_subcommand(c_bounds)) return cmd_bounds(cfg, opt, out, err);
        if (app.got_subcommand(c_sweep)) return cmd_sweep(cfg, opt, out, err);
        if (app.got_subcommand(c_region)) return cmd_region(cfg, opt, out, err);
        if (app.got_subcommand(c_oracle)) return cmd_oracle(cfg, opt, out, err);
        err << "error: no subcommand selected\n";
        return 1;
    } catch (const QuadratureError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace vlcsec
