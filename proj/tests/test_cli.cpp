#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "test_helpers.hpp"
#include "vlcsec/avg_bounds.hpp"
#include "vlcsec/cli.hpp"
#include "vlcsec/peak_bounds.hpp"
#include "vlcsec/region.hpp"
#include "vlcsec/scenario.hpp"

using namespace vlcsec;
using testutil::rel;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunResult r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

const char* benchmark_avg_text =
    "[scenario]\n"
    "alice = 5 5 3\n"
    "bob = 5 4.5 0\n"
    "eve = 5.66 0.16 0\n"
    "area_m2 = 1.0\n"
    "\n"
    "[constraints]\n"
    "mode = avg\n"
    "xi = 0.2\n"
    "p_db = 60\n";

std::string parse_err(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing, mean-limit scenario") {
    RunConfig cfg = parse_config(benchmark_avg_text);
    CHECK(cfg.scenario.alice.x == 5.0);
    CHECK(cfg.scenario.alice.z == 3.0);
    CHECK(cfg.scenario.bob.y == 4.5);
    CHECK(cfg.has_eve);
    CHECK(cfg.scenario.eve.x == 5.66);
    CHECK(cfg.scenario.pd.A_r == 1.0);
    CHECK(cfg.scenario.sigma_B == 1.0);
    CHECK(cfg.scenario.sigma_E == 1.0);
    CHECK(cfg.mode == "avg");
    CHECK(cfg.xi == 0.2);
    CHECK(cfg.P == 1e6); // 60 dB, exactly
    CHECK_FALSE(cfg.sweep.has_value());
    CHECK_FALSE(cfg.region.has_value());
    CHECK_FALSE(cfg.output.has_value());
}

TEST_CASE("config parsing, full joint-peak scenario") {
    RunConfig cfg = parse_config(
        "[scenario]\n"
        "alice = 2.5 2.5 3\n"
        "bob = 2 2 0.8\n"
        "eve = 1 1 0\n"
        "m = 2\n"
        "area_cm2 = 1.0\n"
        "ts = 0.9\n"
        "conc_gain = 1.5\n"
        "fov_deg = 60\n"
        "sigma_b = 0.5\n"
        "sigma_e = 0.25\n"
        "[constraints]\n"
        "mode = peak\n"
        "xi = 0.4\n"
        "p = 200\n"
        "a = 1000\n"
        "[sweep]\n"
        "variable = a\n"
        "scale = linear\n"
        "start = 200\n"
        "stop = 2000\n"
        "points = 10\n"
        "[region]\n"
        "x = 0 5\n"
        "y = 0 5\n"
        "nx = 12\n"
        "ny = 8\n"
        "z = 0.5\n"
        "[output]\n"
        "path = run.csv\n"
        "format = csv\n");
    CHECK(cfg.scenario.pd.m == 2.0);
    CHECK(cfg.scenario.pd.A_r == 1e-4); // cm^2 converted
    CHECK(cfg.scenario.pd.T_s == 0.9);
    CHECK(cfg.scenario.pd.g == 1.5);
    CHECK(cfg.scenario.pd.Psi == rel(std::numbers::pi / 3.0, 1e-15));
    CHECK(cfg.scenario.sigma_B == 0.5);
    CHECK(cfg.scenario.sigma_E == 0.25);
    CHECK(cfg.mode == "peak");
    CHECK(cfg.A == 1000.0);
    REQUIRE(cfg.sweep.has_value());
    CHECK(cfg.sweep->variable == "a");
    CHECK_FALSE(cfg.sweep->db_scale);
    CHECK(cfg.sweep->points == 10);
    REQUIRE(cfg.region.has_value());
    CHECK(cfg.region->nx == 12);
    CHECK(cfg.region->z == 0.5);
    REQUIRE(cfg.output.has_value());
    CHECK(cfg.output->path == "run.csv");
}

TEST_CASE("config rejection with line identification") {
    auto base = [](const std::string& constraints) {
        return std::string("[scenario]\nalice = 5 5 3\nbob = 5 4.5 0\n") + constraints;
    };
    CHECK(parse_err("[scenario]\nalice = 5 5 3\nalice = 0 0 3\n").find("line 3") !=
          std::string::npos);
    CHECK(parse_err("[scenario]\nalice = 5 5 3\nalice = 0 0 3\n").find("duplicate key") !=
          std::string::npos);
    CHECK(parse_err("[scenario]\n[scenario]\n").find("duplicate section") != std::string::npos);
    CHECK(parse_err(base("[constraints]\nmode = avg\nxi = 0.2\np = 1\nbogus = 3\n"))
              .find("unknown key 'bogus'") != std::string::npos);
    CHECK(parse_err("[mystery]\nk = 1\n").find("unknown section [mystery]") != std::string::npos);
    CHECK(parse_err("[constraints]\nmode = avg\nxi = 0.2\np = 1\n")
              .find("missing required section [scenario]") != std::string::npos);
    CHECK(parse_err("[scenario]\nalice = 5 5 3\nbob = 5 4.5 0\n")
              .find("missing required section [constraints]") != std::string::npos);
    CHECK(parse_err(base("[constraints]\nmode = avg\nxi = 0.2\np = 1\np_db = 0\n"))
              .find("'p' and 'p_db' are mutually exclusive") != std::string::npos);
    CHECK(parse_err(base("[constraints]\nmode = avg\nxi = 1.5\np = 1\n"))
              .find("xi must lie in (0, 1]") != std::string::npos);
    CHECK(parse_err(base("[constraints]\nmode = avg\nxi = 0.2\np = 1\na = 2\n"))
              .find("'a' only applies to mode = peak") != std::string::npos);
    CHECK(parse_err(base("[constraints]\nmode = peak\nxi = 0.2\np = 5\na = 2\n"))
              .find("mean limit p exceeds peak limit a") != std::string::npos);
    CHECK(parse_err(base("[constraints]\nmode = peak\nxi = 0.2\np = 1\na = 10\n"
                         "[sweep]\nvariable = alpha\nstart = 0.1\nstop = 0.3\npoints = 5\n"))
              .find("alpha sweep must stay inside (0, xi]") != std::string::npos);
    CHECK(parse_err(base("[constraints]\nmode = avg\nxi = 0.2\np = 1\n"
                         "[sweep]\nvariable = xi\nscale = db\nstart = 1\nstop = 2\npoints = 3\n"))
              .find("scale = db only applies to p or a sweeps") != std::string::npos);
    CHECK(parse_err(base("[constraints]\nmode = avg\nxi = 0.2\np = 1\n"
                         "[region]\nx = 0 1\ny = 0 1\nnx = 1\nny = 4\n"))
              .find("nx must be at least 2") != std::string::npos);
    CHECK(parse_err(base("[constraints]\nmode = avg\nxi = frog\np = 1\n"))
              .find("xi must be a finite real, got 'frog'") != std::string::npos);
    CHECK(parse_err("[scenario]\nalice 5 5 3\n").find("expected key = value") !=
          std::string::npos);
    CHECK(parse_err("alice = 5 5 3\n").find("key outside any [section]") != std::string::npos);
    CHECK(parse_err("[scenario]\nalice = 5 5 3\nbob = 5 4.5 0\narea_m2 = 1\narea_cm2 = 1\n"
                    "[constraints]\nmode = avg\nxi = 0.2\np = 1\n")
              .find("'area_m2' and 'area_cm2' are mutually exclusive") != std::string::npos);
    CHECK(parse_err("[scenario]\nalice = 5 5 3\nbob = 5 4.5 0\nfov_deg = 120\n"
                    "[constraints]\nmode = avg\nxi = 0.2\np = 1\n")
              .find("field of view must lie in (0, 90] degrees") != std::string::npos);
    CHECK(parse_err("[scenario]\nalice = 5 5 0\nbob = 5 4.5 0\n"
                    "[constraints]\nmode = avg\nxi = 0.2\np = 1\n")
              .find("alice must be strictly above bob") != std::string::npos);
}

TEST_CASE("serialized form is a parse fixed point") {
    std::string canon_avg = serialize(parse_config(benchmark_avg_text));
    CHECK(serialize(parse_config(canon_avg)) == canon_avg);
    RunConfig back = parse_config(canon_avg);
    CHECK(back.P == 1e6);
    CHECK(back.xi == 0.2);
    CHECK(back.scenario.eve.x == 5.66);

    std::string canon_peak = serialize(parse_config(
        "[scenario]\nalice = 2.5 2.5 3\nbob = 2 2 0\nfov_deg = 72.5\nsigma_e = 0.3\n"
        "[constraints]\nmode = peak\nxi = 0.33\np_db = 17\na_db = 90\n"
        "[sweep]\nvariable = p\n"
        "[region]\nx = -1 4\ny = 0 5\nnx = 16\nny = 16\n"
        "[output]\npath = out.csv\n"));
    CHECK(serialize(parse_config(canon_peak)) == canon_peak);
    RunConfig pk = parse_config(canon_peak);
    CHECK(pk.A == 1e9);
    CHECK(pk.sweep->db_scale);
    CHECK(pk.sweep->points == 61); // default power grid
    CHECK(pk.sweep->start == 25.0);
    CHECK(pk.sweep->stop == 85.0);
}

TEST_CASE("shannon reference curve") {
    CHECK(shannon_limit(0.3282845258148217, 0.2, 1e6, 1.0) ==
          rel(11.092198055777503, 1e-13));
    CHECK_THROWS_AS(shannon_limit(1.0, 0.2, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("bounds command, human block and csv row") {
    testutil::write_file("cli_bounds.ini", benchmark_avg_text);

    RunResult human = run({"bounds", "--config", "cli_bounds.ini", "--shannon"});
    CHECK(human.code == 0);
    CHECK(human.out.find("secure          : yes") != std::string::npos);
    CHECK(human.out.find("lower_1 (max-entropy exponential input)") != std::string::npos);
    CHECK(human.out.find("shannon limit (reference convention)") != std::string::npos);
    CHECK(human.err.find("not an achievable secrecy rate") != std::string::npos);

    RunResult csv = run({"bounds", "--config", "cli_bounds.ini", "--out", "cli_bounds_row.csv"});
    CHECK(csv.code == 0);

    RunConfig cfg = parse_config(benchmark_avg_text);
    LinkGains g = link_gains(cfg.scenario);
    BoundReport rep = avg_bound_report(g, AvgConstraints{cfg.xi, cfg.P}, 1.0, 1.0);
    Asymptotes asym = asymptote_avg(g, 1.0, 1.0);
    std::string expected = "mode,H_B,H_E,secure,lower_1,lower_2,upper,clamped_lower,clamped_upper,"
                           "asym_lower,asym_upper\n";
    expected += "avg," + g9(g.H_B) + "," + g9(g.H_E) + ",1," + g9(rep.lower_1) + "," +
                g9(rep.lower_2) + "," + g9(rep.upper) + "," + g9(rep.clamped_lower) + "," +
                g9(std::max(0.0, rep.upper)) + "," + g9(asym.lower) + "," + g9(asym.upper) + "\n";
    CHECK(testutil::read_file("cli_bounds_row.csv") == expected);

    std::filesystem::remove("cli_bounds.ini");
    std::filesystem::remove("cli_bounds_row.csv");
}

TEST_CASE("bounds command flags the stronger eavesdropper") {
    testutil::write_file("cli_degraded.ini",
                         "[scenario]\n"
                         "alice = 5 5 3\n"
                         "bob = 5 4.5 0\n"
                         "eve = 5 4.6 0\n" // closer to the foot than bob
                         "area_m2 = 1.0\n"
                         "[constraints]\n"
                         "mode = avg\n"
                         "xi = 0.2\n"
                         "p_db = 60\n");
    RunResult r = run({"bounds", "--config", "cli_degraded.ini"});
    CHECK(r.code == 0);
    CHECK(r.out.find("secure          : no") != std::string::npos);
    CHECK(r.out.find("all bounds zero") != std::string::npos);
    std::filesystem::remove("cli_degraded.ini");
}

TEST_CASE("sweep command, explicit linear grid matches the library") {
    testutil::write_file("cli_sweep_lin.ini",
                         std::string(benchmark_avg_text) +
                             "[sweep]\n"
                             "variable = p\n"
                             "scale = linear\n"
                             "start = 50\n"
                             "stop = 150\n"
                             "points = 3\n");
    RunResult r = run({"sweep", "--config", "cli_sweep_lin.ini"});
    CHECK(r.code == 0);

    RunConfig cfg = parse_config(testutil::read_file("cli_sweep_lin.ini"));
    LinkGains g = link_gains(cfg.scenario);
    std::string expected = "p,lower_1,lower_2,upper,clamped_lower,clamped_upper,secure\n";
    for (double p : {50.0, 100.0, 150.0}) {
        BoundReport rep = avg_bound_report(g, AvgConstraints{cfg.xi, p}, 1.0, 1.0);
        expected += g9(p) + "," + g9(rep.lower_1) + "," + g9(rep.lower_2) + "," + g9(rep.upper) +
                    "," + g9(rep.clamped_lower) + "," + g9(std::max(0.0, rep.upper)) + ",1\n";
    }
    CHECK(r.out == expected);
    std::filesystem::remove("cli_sweep_lin.ini");
}

TEST_CASE("sweep command, default decibel grid and thread determinism") {
    testutil::write_file("cli_sweep_db.ini",
                         std::string(benchmark_avg_text) + "[sweep]\nvariable = p\n");
    RunResult one = run({"sweep", "--config", "cli_sweep_db.ini", "--threads", "1"});
    RunResult four = run({"sweep", "--config", "cli_sweep_db.ini", "--threads", "4"});
    CHECK(one.code == 0);
    CHECK(one.out == four.out);

    auto lines = testutil::split_lines(one.out);
    REQUIRE(lines.size() == 62); // header + 61 grid points
    CHECK(lines[0] == "p_db,p,lower_1,lower_2,upper,clamped_lower,clamped_upper,secure");
    CHECK(lines[1].substr(0, 3) == "25,");
    CHECK(lines[61].substr(0, 3) == "85,");
    std::filesystem::remove("cli_sweep_db.ini");
}

TEST_CASE("sweep command, gain-ratio sweep needs no eavesdropper position") {
    testutil::write_file("cli_sweep_ratio.ini",
                         "[scenario]\n"
                         "alice = 5 5 3\n"
                         "bob = 5 4.5 0\n"
                         "area_m2 = 1.0\n"
                         "[constraints]\n"
                         "mode = avg\n"
                         "xi = 0.2\n"
                         "p_db = 60\n"
                         "[sweep]\n"
                         "variable = ratio\n"
                         "start = 10\n"
                         "stop = 1000\n"
                         "points = 3\n");
    RunResult r = run({"sweep", "--config", "cli_sweep_ratio.ini"});
    CHECK(r.code == 0);

    Scenario s = parse_config(testutil::read_file("cli_sweep_ratio.ini")).scenario;
    double h_b = channel_gain(s.alice, s.bob, s.pd);
    std::string expected = "ratio,lower_1,lower_2,upper,clamped_lower,clamped_upper,secure\n";
    for (double v : {10.0, 505.0, 1000.0}) {
        BoundReport rep = avg_bound_report(LinkGains{h_b, h_b / v}, AvgConstraints{0.2, 1e6}, 1.0, 1.0);
        expected += g9(v) + "," + g9(rep.lower_1) + "," + g9(rep.lower_2) + "," + g9(rep.upper) +
                    "," + g9(rep.clamped_lower) + "," + g9(std::max(0.0, rep.upper)) + ",1\n";
    }
    CHECK(r.out == expected);
    std::filesystem::remove("cli_sweep_ratio.ini");
}

TEST_CASE("tables command reproduces the benchmark gap matrices") {
    RunResult r = run({"tables"});
    CHECK(r.code == 0);
    CHECK(r.out.find("mean intensity limit") != std::string::npos);
    CHECK(r.out.find("peak limit a = p") != std::string::npos);
    CHECK(r.out.find("0.111180") != std::string::npos);    // 65 dB, ratio 3000
    CHECK(r.out.find("square-centimeter") != std::string::npos);

    RunResult files = run({"tables", "--out", "cli_tables.csv"});
    CHECK(files.code == 0);
    std::string avg_csv = testutil::read_file("cli_tables_avg.csv");
    std::string peak_csv = testutil::read_file("cli_tables_peak.csv");
    CHECK(testutil::split_lines(avg_csv)[0] ==
          "p_db,gap_ratio_3000,gap_ratio_300,gap_ratio_30");
    CHECK(testutil::split_lines(peak_csv)[0] ==
          "a_db,gap_ratio_3000,gap_ratio_300,gap_ratio_30");
    CHECK(testutil::split_lines(avg_csv).size() == 6);
    CHECK(testutil::split_lines(peak_csv).size() == 6);
    std::filesystem::remove("cli_tables_avg.csv");
    std::filesystem::remove("cli_tables_peak.csv");
}

TEST_CASE("oracle command verdicts") {
    // a weak-eavesdropper operating point where the closed-form upper bound
    // genuinely undercuts the achievable rate: the check must say so and
    // exit nonzero
    testutil::write_file("cli_oracle_viol.ini",
                         "[scenario]\n"
                         "alice = 0 0 3\n"
                         "bob = 0 1 0\n"
                         "eve = 0 1.3 0\n"
                         "area_m2 = 1e-3\n"
                         "[constraints]\n"
                         "mode = avg\n"
                         "xi = 0.1\n"
                         "p = 10\n");
    RunResult viol = run({"oracle", "--config", "cli_oracle_viol.ini", "--quad-tol", "1e-8"});
    CHECK(viol.code == 2);
    CHECK(viol.out.find("SANDWICH VIOLATION") != std::string::npos);
    CHECK(viol.out.find("rate <= upper + 2e-4 : NO") != std::string::npos);
    CHECK(viol.out.find("lower <= rate + 1e-4 : yes") != std::string::npos);
    std::filesystem::remove("cli_oracle_viol.ini");

    testutil::write_file("cli_oracle_ok.ini",
                         "[scenario]\n"
                         "alice = 5 5 3\n"
                         "bob = 5 4.5 0\n"
                         "eve = 5.66 0.16 0\n"
                         "area_m2 = 1.0\n"
                         "[constraints]\n"
                         "mode = avg\n"
                         "xi = 0.2\n"
                         "p = 100\n");
    RunResult ok = run({"oracle", "--config", "cli_oracle_ok.ini"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("SANDWICH OK") != std::string::npos);
    CHECK(ok.out.find("(stable)") != std::string::npos);
    std::filesystem::remove("cli_oracle_ok.ini");

    testutil::write_file("cli_oracle_deg.ini",
                         "[scenario]\n"
                         "alice = 5 5 3\n"
                         "bob = 5 4.5 0\n"
                         "eve = 5 4.6 0\n"
                         "area_m2 = 1.0\n"
                         "[constraints]\n"
                         "mode = avg\n"
                         "xi = 0.2\n"
                         "p = 100\n");
    RunResult deg = run({"oracle", "--config", "cli_oracle_deg.ini"});
    CHECK(deg.code == 0);
    CHECK(deg.out.find("secure : no") != std::string::npos);
    CHECK(deg.out.find("SANDWICH OK") != std::string::npos);
    std::filesystem::remove("cli_oracle_deg.ini");
}

TEST_CASE("region command writes the library map") {
    std::string text =
        "[scenario]\n"
        "alice = 5 5 3\n"
        "bob = 5 4.5 0\n"
        "area_m2 = 1.0\n"
        "[constraints]\n"
        "mode = avg\n"
        "xi = 0.2\n"
        "p_db = 65\n"
        "[region]\n"
        "x = 0 10\n"
        "y = 0 10\n"
        "nx = 10\n"
        "ny = 10\n";
    testutil::write_file("cli_region.ini", text);
    RunResult r = run({"region", "--config", "cli_region.ini", "--out", "cli_region.csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("region map written to cli_region.csv (10 x 10 cells,") !=
          std::string::npos);

    RunConfig cfg = parse_config(text);
    RegionMap map = insecure_region(cfg.scenario, *cfg.region, RegionBound::AvgUpper,
                                    RegionConstraints{AvgConstraints{cfg.xi, cfg.P}});
    std::ostringstream expected;
    export_region_csv(map, expected);
    CHECK(testutil::read_file("cli_region.csv") == expected.str());
    std::filesystem::remove("cli_region.ini");
    std::filesystem::remove("cli_region.csv");
}

TEST_CASE("argument and file errors yield exit code 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);

    RunResult noconf = run({"bounds"});
    CHECK(noconf.code == 1);
    CHECK(noconf.err.find("--config is required") != std::string::npos);

    RunResult missing = run({"bounds", "--config", "no_such_file_anywhere.ini"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("cannot read config file") != std::string::npos);

    testutil::write_file("cli_fmt.ini", benchmark_avg_text);
    RunResult fmt = run({"bounds", "--config", "cli_fmt.ini", "--format", "json"});
    CHECK(fmt.code == 1);
    CHECK(fmt.err.find("unsupported output format") != std::string::npos);

    RunResult nosweep = run({"sweep", "--config", "cli_fmt.ini"});
    CHECK(nosweep.code == 1);
    CHECK(nosweep.err.find("needs a [sweep] section") != std::string::npos);
    std::filesystem::remove("cli_fmt.ini");

    RunResult help = run({"--help"});
    CHECK(help.code == 0);
    for (const char* sub : {"bounds", "sweep", "tables", "region", "oracle"}) {
        CHECK(help.out.find(sub) != std::string::npos);
    }
}

}
