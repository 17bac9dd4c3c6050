#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "test_helpers.hpp"
#include "vlcsec/peak_bounds.hpp"

using namespace vlcsec;
using testutil::rel;

namespace {
const double hb_bench = 0.3282845258148217;
const LinkGains bench{hb_bench, hb_bench / 300.0};
}  // namespace

TEST_SUITE("peak_bounds") {

TEST_CASE("constraint validation and the mean-to-peak ratio") {
    PeakConstraints pc{0.5, 2.0, 4.0};
    CHECK(pc.alpha() == 0.25);
    CHECK_THROWS_AS(lower_bound_peak_1(bench, PeakConstraints{0.2, 5.0, 4.0}, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_peak_1(bench, PeakConstraints{0.0, 1.0, 4.0}, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_peak_1(bench, PeakConstraints{0.2, 1.0, 0.0}, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(upper_bound_peak(bench, PeakConstraints{0.2, 1.0, 1.0}, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("default free parameters below the uniform switch") {
    // H_E = 100 on a unit support, alpha = 0.25
    MuDelta md = default_mu_delta(LinkGains{200.0, 100.0}, PeakConstraints{0.25, 1.0, 1.0}, 1.0);
    CHECK(md.mu_tilde == rel(3.593511969447425, 1e-12));
    CHECK(md.delta == rel(4.61512051684126, 1e-13));
    CHECK(md.mu == rel(3.3427590437294254, 1e-12));
}

TEST_CASE("frozen references at gain ratio 300, peak 1e6") {
    const double A = 1e6;
    PeakConstraints a02{0.2, A, A};
    CHECK(lower_bound_peak_1(bench, a02, 1.0, 1.0) == rel(5.672774790718812, 1e-12));
    CHECK(lower_bound_peak_2(bench, a02, 1.0, 1.0) == rel(5.343781281944071, 1e-12));
    CHECK(upper_bound_peak(bench, a02, 1.0, 1.0) == rel(5.703780386871972, 1e-12));

    PeakConstraints a05{0.5, A, A};
    CHECK(lower_bound_peak_1(bench, a05, 1.0, 1.0) == rel(5.6910720688876015, 1e-12));
    CHECK(lower_bound_peak_2(bench, a05, 1.0, 1.0) == rel(5.527292255812937, 1e-12));
    CHECK(upper_bound_peak(bench, a05, 1.0, 1.0) == rel(5.7037816395414636, 1e-12));

    // above the switch the first bound keeps the uniform-input form
    PeakConstraints a75{0.75, A, A};
    CHECK(lower_bound_peak_1(bench, a75, 1.0, 1.0) == rel(5.6910720688876015, 1e-12));
    CHECK(lower_bound_peak_2(bench, a75, 1.0, 1.0) == rel(5.390734001655588, 1e-12));
    CHECK(upper_bound_peak(bench, a75, 1.0, 1.0) == rel(5.703781917912887, 1e-12));

    // a saturated mean constraint pins the law to the peak: no spread left
    PeakConstraints a10{1.0, A, A};
    CHECK(lower_bound_peak_1(bench, a10, 1.0, 1.0) == rel(5.6910720688876015, 1e-12));
    CHECK(lower_bound_peak_2(bench, a10, 1.0, 1.0) == 0.0);
    CHECK(upper_bound_peak(bench, a10, 1.0, 1.0) == rel(5.703782057098658, 1e-12));
}

TEST_CASE("first bound transitions cleanly at the input switch") {
    const double A = 1e6;
    double texp_side = lower_bound_peak_1(bench, PeakConstraints{0.499999, A, A}, 1.0, 1.0);
    double uniform_side = lower_bound_peak_1(bench, PeakConstraints{0.5, A, A}, 1.0, 1.0);
    CHECK(texp_side == rel(5.691072068887447, 1e-12));
    CHECK(std::fabs(texp_side - uniform_side) < 1e-9);
}

TEST_CASE("second bound is continuous through the uniform tie") {
    const double A = 1e6;
    double tie = lower_bound_peak_2(bench, PeakConstraints{0.5, A, A}, 1.0, 1.0);
    CHECK(tie == rel(5.527292255812937, 1e-12));
    double below = lower_bound_peak_2(bench, PeakConstraints{0.4999, A, A}, 1.0, 1.0);
    double above = lower_bound_peak_2(bench, PeakConstraints{0.5001, A, A}, 1.0, 1.0);
    CHECK(std::fabs(below - tie) < 5e-8);
    CHECK(std::fabs(above - tie) < 5e-8);
}

TEST_CASE("upper bound endpoints") {
    CHECK(upper_bound_peak(bench, PeakConstraints{1.0, 1e-8, 1e-8}, 1.0, 1.0) ==
          rel(-1.1110987656100042e-05, 1e-10));
    double up = upper_bound_peak(bench, PeakConstraints{1.0, 1e6, 1e6}, 1.0, 1.0);
    CHECK(up - std::log(300.0) == rel(-4.1755754320860206e-07, 1e-6));
    CHECK(up < std::log(300.0));
}

TEST_CASE("shared high-signal limit and the closing gap") {
    CHECK(asymptote_peak(bench, 1.0, 1.0) == rel(5.703782474656201, 1e-13));
    CHECK(asymptote_peak(LinkGains{hb_bench, hb_bench / 3000.0}, 1.0, 1.0) ==
          rel(8.006367567650246, 1e-13));
    CHECK(asymptote_peak(LinkGains{hb_bench, hb_bench / 30.0}, 1.0, 1.0) ==
          rel(3.4011973816621555, 1e-13));
    CHECK_THROWS_AS(asymptote_peak(LinkGains{hb_bench, 0.0}, 1.0, 1.0), std::invalid_argument);

    const double big = 316227766.01683795;
    const double ratios[3] = {3000.0, 300.0, 30.0};
    const double gaps[3] = {0.0014740620295263795, 0.0001798872537923657, 2.123635223849618e-05};
    for (int i = 0; i < 3; ++i) {
        LinkGains g{hb_bench, hb_bench / ratios[i]};
        PeakConstraints pc{0.2, big, big};
        double gap = upper_bound_peak(g, pc, 1.0, 1.0) - lower_bound_peak_1(g, pc, 1.0, 1.0);
        CHECK(gap == rel(gaps[i], 1e-8));
    }
}

TEST_CASE("weak-signal regressions where the closed forms cross") {
    LinkGains g1{0.000156363, 9.30847e-07};
    PeakConstraints c1{1.0, 0.5079 * 29.1066, 29.1066};
    CHECK(lower_bound_peak_1(g1, c1, 1.0, 1.0) == rel(-1.2541491041129227e-05, 1e-10));
    CHECK(lower_bound_peak_2(g1, c1, 1.0, 1.0) == rel(6.058974785616502e-07, 1e-10));
    CHECK(upper_bound_peak(g1, c1, 1.0, 1.0) == rel(-3.0178379906442352e-05, 1e-10));
    CHECK(lower_bound_peak_2(g1, c1, 1.0, 1.0) > upper_bound_peak(g1, c1, 1.0, 1.0));

    LinkGains g2{0.000399829, 0.000191603};
    PeakConstraints c2{1.0, 0.0916 * 36.2112, 36.2112};
    CHECK(lower_bound_peak_1(g2, c2, 1.0, 1.0) == rel(-0.0033682968780218703, 1e-10));
    CHECK(lower_bound_peak_2(g2, c2, 1.0, 1.0) == rel(1.788509594736406e-07, 1e-10));
    CHECK(upper_bound_peak(g2, c2, 1.0, 1.0) == rel(-0.18896656823225938, 1e-10));
    CHECK(lower_bound_peak_2(g2, c2, 1.0, 1.0) > upper_bound_peak(g2, c2, 1.0, 1.0));
}

TEST_CASE("report assembly and the degraded gate") {
    PeakConstraints pc{0.2, 1e6, 1e6};
    BoundReport r = peak_bound_report(bench, pc, 1.0, 1.0);
    CHECK_FALSE(r.degraded);
    CHECK(r.clamped_lower == r.lower_1);
    CHECK(r.params_used.delta > 0.0);
    CHECK(r.params_used.mu_tilde > 0.0);
    CHECK(r.params_used.mu > 0.0);
    CHECK(r.params_used.c < 0.0);  // alpha = 0.2 wants a decaying shape

    BoundReport tie = peak_bound_report(bench, PeakConstraints{0.5, 1e6, 1e6}, 1.0, 1.0);
    CHECK(tie.params_used.mu_tilde == 0.0);  // uniform branch runs no inner solve
    CHECK(tie.params_used.c == 0.0);         // tie point needs no shape solve

    BoundReport d = peak_bound_report(LinkGains{1e-6, 1.0}, pc, 1.0, 1.0);
    CHECK(d.degraded);
    CHECK(d.lower_1 == 0.0);
    CHECK(d.lower_2 == 0.0);
    CHECK(d.upper == 0.0);
}

}
