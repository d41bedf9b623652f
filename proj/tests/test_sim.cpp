#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "rcq/sim.hpp"

using namespace rcq;

namespace {

struct Fixture {
    SparseParityCheck code = expand(make_quasi_regular_qc(4, 8, 8, 3, 3).base);

    DecoderConfig minsum(int iters = 8) const {
        DecoderConfig cfg;
        cfg.algorithm = Algorithm::MinSum;
        cfg.max_iterations = iters;
        return cfg;
    }
};

const Fixture& fix() {
    static Fixture f;
    return f;
}

}  // namespace

TEST_CASE("Clopper-Pearson interval") {
    double lo, hi;
    clopper_pearson(0, 100, &lo, &hi);
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(1.0 - std::pow(0.025, 1.0 / 100)).epsilon(1e-6));
    clopper_pearson(100, 100, &lo, &hi);
    CHECK(hi == 1.0);
    CHECK(lo == doctest::Approx(std::pow(0.025, 1.0 / 100)).epsilon(1e-6));

    double lo2, hi2;
    clopper_pearson(30, 100, &lo, &hi);
    clopper_pearson(70, 100, &lo2, &hi2);
    CHECK(lo == doctest::Approx(1.0 - hi2).epsilon(1e-9));
    CHECK(hi == doctest::Approx(1.0 - lo2).epsilon(1e-9));
    CHECK(lo < 0.30);
    CHECK(hi > 0.30);
}

TEST_CASE("a quiet channel produces zero errors") {
    const Fixture& f = fix();
    const FerRunResult r = run_fer_point(f.code, AwgnChannel::from_sigma(0.05), f.minsum(),
                                         {10, 500}, 1);
    CHECK(r.frames == 500);
    CHECK(r.frame_errors == 0);
    CHECK(r.fer == 0.0);
    CHECK(r.fer_ci_lo == 0.0);
}

TEST_CASE("an overwhelmed decoder stops at min_errors") {
    const Fixture& f = fix();
    // Zero iterations: the channel hard decision alone, hopeless at 3 dB of
    // noise, so every frame errs and the stop rule fires immediately.
    const FerRunResult r = run_fer_point(f.code, AwgnChannel::from_sigma(1.4), f.minsum(0),
                                         {25, 100000}, 7);
    CHECK(r.frames == r.frame_errors);
    CHECK(r.fer == 1.0);
    CHECK(r.frames >= 25);
}

TEST_CASE("results are bit-identical across reruns and worker counts") {
    const Fixture& f = fix();
    const AwgnChannel chan = AwgnChannel::from_sigma(0.95);
    const FerRunResult a = run_fer_point(f.code, chan, f.minsum(), {20, 2000}, 99, 1);
    const FerRunResult b = run_fer_point(f.code, chan, f.minsum(), {20, 2000}, 99, 1);
    const FerRunResult c = run_fer_point(f.code, chan, f.minsum(), {20, 2000}, 99, 3);
    CHECK(a.frames == b.frames);
    CHECK(a.frame_errors == b.frame_errors);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(a.avg_iterations == b.avg_iterations);
    CHECK(a.frames == c.frames);
    CHECK(a.frame_errors == c.frame_errors);
    CHECK(a.bit_errors == c.bit_errors);
    CHECK(a.avg_iterations == c.avg_iterations);
}

TEST_CASE("disabling early exit never changes which frames fail") {
    const Fixture& f = fix();
    const AwgnChannel chan = AwgnChannel::from_sigma(0.95);
    DecoderConfig slow = f.minsum();
    slow.disable_early_exit = true;
    const FerRunResult a = run_fer_point(f.code, chan, f.minsum(), {20, 1000}, 4242);
    const FerRunResult b = run_fer_point(f.code, chan, slow, {20, 1000}, 4242);
    CHECK(a.frames == b.frames);
    CHECK(a.frame_errors == b.frame_errors);
    CHECK(b.avg_iterations == doctest::Approx(8.0));
}

TEST_CASE("sweeps") {
    const Fixture& f = fix();
    CHECK(run_sweep(f.code, {}, f.minsum(), {10, 100}, 1).empty());

    const auto rows = run_sweep(f.code, {4.0, 4.0}, f.minsum(), {10, 300}, 5);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].frames == rows[1].frames);
    CHECK(rows[0].frame_errors == rows[1].frame_errors);
    CHECK(rows[0].bit_errors == rows[1].bit_errors);

    const std::string csv = sweep_csv(rows);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "ebno_db,frames,frame_errors,fer,fer_ci_lo,fer_ci_hi,ber,avg_iters,seconds");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("FER decreases with SNR") {
    const Fixture& f = fix();
    const auto rows = run_sweep(f.code, {1.0, 5.0}, f.minsum(), {30, 3000}, 12);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].fer > rows[1].fer);
}

TEST_CASE("posterior trace of Min Sum on a near-noiseless channel grows") {
    const Fixture& f = fix();
    TraceSpec spec;
    spec.name = "minsum";
    spec.cfg = f.minsum();
    const auto traces =
        trace_posterior_magnitude(f.code, AwgnChannel::from_sigma(0.2), {spec}, 20, 55);
    REQUIRE(traces.size() == 1);
    REQUIRE(traces[0].size() == 8);
    for (std::size_t t = 1; t < traces[0].size(); ++t)
        CHECK(traces[0][t] >= traces[0][t - 1] - 1e-9);
}
