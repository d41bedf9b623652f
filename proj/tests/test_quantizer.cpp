#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "rcq/channel.hpp"
#include "rcq/quantizer.hpp"

using namespace rcq;

namespace {

int exhaustive_argmax(const std::vector<double>& f) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(f.size()); ++i)
        if (f[i] > f[best]) best = i;
    return best;
}

// Random unimodal sequence: increasing up to a peak, then decreasing.
std::vector<double> random_unimodal(std::mt19937_64& rng, int len) {
    std::uniform_real_distribution<double> step(0.0, 1.0);
    std::uniform_int_distribution<int> peak_at(0, len - 1);
    const int peak = peak_at(rng);
    std::vector<double> f(len);
    double v = 0.0;
    for (int i = 0; i <= peak; ++i) f[i] = (v += step(rng));
    v = f[peak];
    for (int i = peak + 1; i < len; ++i) f[i] = (v -= step(rng));
    return f;
}

// The symmetric 4-output channel with P(W|X=0) = [0.1, 0.2, 0.3, 0.4].
JointLabelPmf four_output_channel() {
    return JointLabelPmf({0.05, 0.10, 0.15, 0.20}, {0.20, 0.15, 0.10, 0.05});
}

JointLabelPmf random_sorted_pmf(std::mt19937_64& rng, int k) {
    std::uniform_real_distribution<double> mass(0.01, 1.0);
    std::vector<double> p0(k), p1(k);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        p0[i] = mass(rng);
        p1[i] = mass(rng);
        total += p0[i] + p1[i];
    }
    for (int i = 0; i < k; ++i) {
        p0[i] /= total;
        p1[i] /= total;
    }
    JointLabelPmf p(std::move(p0), std::move(p1));
    return p.sorted_by_llr().first;
}

}  // namespace

TEST_CASE("golden section on a visible maximum") {
    const std::vector<double> f{0, 3, 5, 6, 5, 3, 0};
    CHECK(golden_section_argmax([&](int i) { return f[i]; }, 0, 6) == 3);
}

TEST_CASE("golden section tie-breaks to the smallest index") {
    CHECK(golden_section_argmax([](int) { return 1.0; }, 0, 17) == 0);
}

TEST_CASE("golden section rejects an empty interval") {
    CHECK_THROWS_AS(golden_section_argmax([](int) { return 0.0; }, 3, 2),
                    std::invalid_argument);
}

TEST_CASE("golden section equals exhaustive argmax on random unimodal input") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> length(1, 300);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto f = random_unimodal(rng, length(rng));
        const int got = golden_section_argmax([&](int i) { return f[i]; }, 0,
                                              static_cast<int>(f.size()) - 1);
        CHECK(got == exhaustive_argmax(f));
    }
}

TEST_CASE("hdq one-bit cut on the 4-output channel") {
    const HdqResult h = hdq(four_output_channel(), 1);
    REQUIRE(h.thresholds.xi.size() == 1);
    CHECK(h.thresholds.xi[0] == 2);  // D = 1 iff W >= 2

    // Exhaustive check over the 3 possible cuts.
    const JointLabelPmf p = four_output_channel();
    double best = 0.0;
    for (int cut = 1; cut <= 3; ++cut) {
        double a0 = 0.0, a1 = 0.0, b0 = 0.0, b1 = 0.0;
        for (int w = 0; w < 4; ++w) {
            (w < cut ? a0 : b0) += p.p0()[w];
            (w < cut ? a1 : b1) += p.p1()[w];
        }
        best = std::max(best, partial_mi_bits(a0, a1) + partial_mi_bits(b0, b1));
    }
    CHECK(h.mi_bits == doctest::Approx(best).epsilon(1e-12));
    // Symmetric cut at the midpoint: I = 1 - H_b(0.3).
    CHECK(h.mi_bits == doctest::Approx(1.0 - binary_entropy_bits(0.3)).epsilon(1e-9));
    CHECK(h.mi_bits == doctest::Approx(0.1187).epsilon(1e-3));
}

TEST_CASE("hdq rejects impossible widths") {
    CHECK_THROWS_AS(hdq(four_output_channel(), 0), std::invalid_argument);
    CHECK_THROWS_AS(hdq(four_output_channel(), 3), std::invalid_argument);
    CHECK_THROWS_AS(hdq(JointLabelPmf({0.5, 0.0, 0.0}, {0.5, 0.0, 0.0}), 1),
                    std::invalid_argument);
}

TEST_CASE("hdq output is a contiguous mass-preserving aggregation") {
    const DiscretizedChannel d = discretize_awgn(AwgnChannel::from_sigma(0.8), 256, 2.0);
    const HdqResult h = hdq(d.joint, 3);
    REQUIRE(h.quantized.size() == 8);
    CHECK(h.quantized.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.quantized.is_llr_sorted());
    // Data processing.
    CHECK(h.mi_bits <= d.joint.mutual_information_bits() + 1e-12);
}

TEST_CASE("dp oracle matches hdq on the 4-output channel and dominates in general") {
    const DpResult dp = dp_optimal_quantizer(four_output_channel(), 1);
    const HdqResult h = hdq(four_output_channel(), 1);
    CHECK(dp.thresholds.xi == h.thresholds.xi);
    CHECK(dp.mi_bits == doctest::Approx(h.mi_bits).epsilon(1e-12));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const JointLabelPmf p = random_sorted_pmf(rng, 32);
        const double gap = dp_optimal_quantizer(p, 2).mi_bits - hdq(p, 2).mi_bits;
        CHECK(gap >= -1e-12);
    }
}

TEST_CASE("dp identity partition when 2^b equals the label count") {
    const DiscretizedChannel d = discretize_awgn(AwgnChannel::from_sigma(0.7), 16, 2.0);
    const DpResult dp = dp_optimal_quantizer(d.joint, 4);
    CHECK(dp.mi_bits == doctest::Approx(d.joint.mutual_information_bits()).epsilon(1e-12));
}

TEST_CASE("thresholds_to_llr reads Eq. 13 off the sorted axis") {
    // Symmetric 8-label PMF with LLRs -7,-5,-3,-1,1,3,5,7.
    std::vector<double> p0(8), p1(8);
    const double l[8] = {-7, -5, -3, -1, 1, 3, 5, 7};
    for (int d = 0; d < 8; ++d) {
        const double m = 0.125;
        p0[d] = m * std::exp(l[d]) / (1.0 + std::exp(l[d]));
        p1[d] = m - p0[d];
    }
    const JointLabelPmf pmf(p0, p1);
    REQUIRE(pmf.is_symmetric(1e-12));
    IndexThresholds xi;
    xi.bits = 2;
    xi.xi = {2, 4, 6};
    const MagnitudeQuantizer q = thresholds_to_llr(pmf, xi);
    REQUIRE(q.taus.size() == 1);
    CHECK(q.taus[0] == doctest::Approx(5.0).epsilon(1e-9));

    IndexThresholds bad = xi;
    bad.bits = 1;
    CHECK_THROWS_AS(thresholds_to_llr(pmf, bad), std::invalid_argument);
}

TEST_CASE("reconstruction values are plain LLRs") {
    const JointLabelPmf q({0.01, 0.04, 0.36, 0.40}, {0.40, 0.36, 0.04, 0.01});
    const MagnitudeReconstruction r = reconstruction_from_pmf(q);
    REQUIRE(r.values.size() == 2);
    CHECK(r.values[0] == doctest::Approx(std::log(9.0)).epsilon(1e-12));
    CHECK(r.values[1] == doctest::Approx(std::log(40.0)).epsilon(1e-12));
}

TEST_CASE("reconstruction of the quantized 4-output channel by hand aggregation") {
    HdqResult h = hdq(four_output_channel(), 2);
    h.quantized.symmetrize();
    const MagnitudeReconstruction r = reconstruction_from_pmf(h.quantized);
    // Identity partition (2^b = K): upper-half labels keep their own LLRs.
    CHECK(r.values[0] == doctest::Approx(std::log(0.15 / 0.10)).epsilon(1e-9));
    CHECK(r.values[1] == doctest::Approx(std::log(0.20 / 0.05)).epsilon(1e-9));
}

TEST_CASE("threshold/reconstruction consistency on a designed stage") {
    const DiscretizedChannel d = discretize_awgn(AwgnChannel::from_sigma(0.85), 512, 2.0);
    HdqResult h = hdq(d.joint, 3);
    const MagnitudeQuantizer q = thresholds_to_llr(d.joint, h.thresholds);
    h.quantized.symmetrize();
    const MagnitudeReconstruction r = reconstruction_from_pmf(h.quantized);
    REQUIRE(q.taus.size() == 3);
    REQUIRE(r.values.size() == 4);
    for (std::size_t i = 1; i < q.taus.size(); ++i) CHECK(q.taus[i] > q.taus[i - 1]);
    for (std::size_t i = 1; i < r.values.size(); ++i) CHECK(r.values[i] > r.values[i - 1]);
    // R*(d) lies between the thresholds bounding its region.
    for (std::size_t d2 = 0; d2 < r.values.size(); ++d2) {
        if (d2 > 0) CHECK(r.values[d2] > q.taus[d2 - 1]);
        if (d2 < q.taus.size()) CHECK(r.values[d2] < q.taus[d2]);
    }
}

TEST_CASE("quantize_magnitude follows Eq. 3 exactly") {
    const std::vector<int> taus{2, 5, 9};
    CHECK(quantize_magnitude(taus, 4) == 1);
    CHECK(quantize_magnitude(taus, 12) == 3);
    CHECK(quantize_magnitude(taus, 2) == 0);
    CHECK(quantize_magnitude(taus, 0) == 0);
    CHECK(quantize_magnitude(taus, 9) == 2);
    CHECK(quantize_magnitude(taus, 10) == 3);
}
