#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "rcq/dde.hpp"
#include "rcq/decoder.hpp"

using namespace rcq;

namespace {

struct Fixture {
    QcBaseMatrix base = make_quasi_regular_qc(4, 8, 8, 3, 3).base;
    SparseParityCheck code = expand(base);
    AwgnChannel chan = AwgnChannel::from_ebno_db(3.0, base_matrix_rate(base));
    ChannelLlrAlphabet alphabet;
    RcqParamSet flood, layered, bp;

    Fixture() {
        DdeOptions opt;
        opt.b_e = 3;
        opt.b_v = 8;
        opt.iterations = 8;
        opt.max_labels = 256;
        flood = dde_flooding(base, chan, opt).params;
        layered = dde_layer_specific(base, chan, opt).params;
        opt.cn_op = CnOp::BoxPlus;
        opt.b_ic = 8;
        bp = dde_flooding(base, chan, opt).params;
        alphabet = uniform_llr_quantizer(chan, opt.b_v, opt.clip);
    }

    std::vector<int> noiseless_labels() const {
        return std::vector<int>(code.n, static_cast<int>(alphabet.size()) - 1);
    }
};

const Fixture& fix() {
    static Fixture f;
    return f;
}

DecoderConfig rcq_cfg(Algorithm alg, Schedule sched, const RcqParamSet& p, int iters = 8) {
    DecoderConfig cfg;
    cfg.algorithm = alg;
    cfg.schedule = sched;
    cfg.max_iterations = iters;
    cfg.params = &p;
    return cfg;
}

std::vector<double> random_llrs(std::mt19937_64& rng, int n, double lim = 3.0) {
    std::uniform_real_distribution<double> u(-lim, lim);
    std::vector<double> l(n);
    for (double& v : l) v = u(rng);
    return l;
}

}  // namespace

TEST_CASE("noiseless frames decode in one iteration everywhere") {
    const Fixture& f = fix();
    const auto labels = f.noiseless_labels();
    const std::vector<double> strong(f.code.n, 8.0);

    for (DecodeOutcome out :
         {decode_msrcq_flooding(f.code, labels, rcq_cfg(Algorithm::MsRcq, Schedule::Flooding, f.flood), f.alphabet),
          decode_msrcq_layered(f.code, labels, rcq_cfg(Algorithm::MsRcq, Schedule::Layered, f.layered), f.alphabet),
          decode_bprcq_flooding(f.code, labels, rcq_cfg(Algorithm::BpRcq, Schedule::Flooding, f.bp), f.alphabet)}) {
        CHECK(out.success);
        CHECK(out.iterations_used == 1);
        for (uint8_t b : out.hard_decision) CHECK(b == 0);
    }

    for (Algorithm alg : {Algorithm::Bp, Algorithm::MinSum}) {
        DecoderConfig cfg;
        cfg.algorithm = alg;
        cfg.max_iterations = 8;
        const DecodeOutcome out = decode_baseline(f.code, strong, cfg);
        CHECK(out.success);
        CHECK(out.iterations_used == 1);
        for (uint8_t b : out.hard_decision) CHECK(b == 0);
    }

    DecoderConfig oms;
    oms.algorithm = Algorithm::OffsetMinSum;
    oms.max_iterations = 8;
    oms.offset = 0.5;
    oms.fixed_point = FixedPointFormat{8, 3};
    const DecodeOutcome out = decode_baseline(f.code, strong, oms);
    CHECK(out.success);
    CHECK(out.iterations_used == 1);
}

TEST_CASE("a single flipped strong label is corrected quickly") {
    const Fixture& f = fix();
    auto labels = f.noiseless_labels();
    labels[5] = 0;
    const DecodeOutcome out = decode_msrcq_flooding(
        f.code, labels, rcq_cfg(Algorithm::MsRcq, Schedule::Flooding, f.flood), f.alphabet);
    CHECK(out.success);
    CHECK(out.iterations_used <= 2);
    for (uint8_t b : out.hard_decision) CHECK(b == 0);
}

TEST_CASE("sign-mirror symmetry of every decoder") {
    const Fixture& f = fix();
    const int frames = 100;
    std::mt19937_64 rng(77);

    DecoderConfig ms = rcq_cfg(Algorithm::MsRcq, Schedule::Flooding, f.flood);
    DecoderConfig ml = rcq_cfg(Algorithm::MsRcq, Schedule::Layered, f.layered);
    DecoderConfig bprcq = rcq_cfg(Algorithm::BpRcq, Schedule::Flooding, f.bp);
    Decoder d_ms(f.code, ms, &f.alphabet), d_ml(f.code, ml, &f.alphabet),
        d_bp(f.code, bprcq, &f.alphabet);

    DecoderConfig fb;
    fb.algorithm = Algorithm::Bp;
    fb.max_iterations = 8;
    Decoder d_float(f.code, fb);

    for (int i = 0; i < frames; ++i) {
        const auto labels = sample_llr_words(f.chan, f.code.n, f.alphabet, 9000 + i);
        std::vector<int> mirrored(labels.size());
        for (std::size_t j = 0; j < labels.size(); ++j)
            mirrored[j] = static_cast<int>(f.alphabet.size()) - 1 - labels[j];

        for (Decoder* dec : {&d_ms, &d_ml, &d_bp}) {
            const DecodeOutcome a = dec->decode_labels(labels);
            const DecodeOutcome b = dec->decode_labels(mirrored);
            if (a.tie_event || b.tie_event) continue;
            CHECK(a.success == b.success);
            CHECK(a.iterations_used == b.iterations_used);
            REQUIRE(a.hard_decision.size() == b.hard_decision.size());
            for (std::size_t j = 0; j < a.hard_decision.size(); ++j)
                CHECK(a.hard_decision[j] == (b.hard_decision[j] ^ 1));
        }

        std::vector<double> llrs(f.code.n), neg(f.code.n);
        FrameSampler sampler(f.chan, 9000 + i);
        for (int j = 0; j < f.code.n; ++j) {
            llrs[j] = 2.0 * sampler.next() / f.chan.sigma2();
            neg[j] = -llrs[j];
        }
        const DecodeOutcome a = d_float.decode_llrs(llrs);
        const DecodeOutcome b = d_float.decode_llrs(neg);
        if (a.tie_event || b.tie_event) continue;
        CHECK(a.success == b.success);
        for (std::size_t j = 0; j < a.hard_decision.size(); ++j)
            CHECK(a.hard_decision[j] == (b.hard_decision[j] ^ 1));
    }
}

TEST_CASE("OMS with zero offset is Min Sum frame for frame") {
    const Fixture& f = fix();
    const FixedPointFormat fmt{8, 3};
    DecoderConfig ms;
    ms.algorithm = Algorithm::MinSum;
    ms.max_iterations = 8;
    ms.fixed_point = fmt;
    DecoderConfig oms = ms;
    oms.algorithm = Algorithm::OffsetMinSum;
    oms.offset = 0.0;
    Decoder d_ms(f.code, ms), d_oms(f.code, oms);

    const AwgnChannel noisy = AwgnChannel::from_sigma(0.9);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> llrs(f.code.n);
        FrameSampler sampler(noisy, 5000 + i);
        for (int j = 0; j < f.code.n; ++j) llrs[j] = 2.0 * sampler.next() / noisy.sigma2();
        const DecodeOutcome a = d_ms.decode_llrs(llrs);
        const DecodeOutcome b = d_oms.decode_llrs(llrs);
        CHECK(a.success == b.success);
        CHECK(a.iterations_used == b.iterations_used);
        CHECK(a.hard_decision == b.hard_decision);
    }
}

TEST_CASE("Min Sum check node really is sign-times-min") {
    const SparseParityCheck h = SparseParityCheck::from_adjacency(3, 1, {{0, 1, 2}});
    DecoderConfig cfg;
    cfg.algorithm = Algorithm::MinSum;
    cfg.max_iterations = 1;

    // posterior = llr + sign-product * min of the extrinsic magnitudes
    DecodeOutcome out = decode_baseline(h, {-1.0, 3.0, 4.0}, cfg);
    CHECK(out.hard_decision == std::vector<uint8_t>{0, 0, 0});
    CHECK(out.success);

    out = decode_baseline(h, {-4.0, 3.0, 5.0}, cfg);
    CHECK(out.hard_decision == std::vector<uint8_t>{1, 1, 0});
    CHECK(out.success);
}

TEST_CASE("degree-2 check is the boxplus identity for BP") {
    const SparseParityCheck h = SparseParityCheck::from_adjacency(2, 1, {{0, 1}});
    DecoderConfig cfg;
    cfg.algorithm = Algorithm::Bp;
    cfg.max_iterations = 1;
    // posterior_0 = -1 + 3, posterior_1 = 3 - 1: both positive.
    DecodeOutcome out = decode_baseline(h, {-1.0, 3.0}, cfg);
    CHECK(out.hard_decision == std::vector<uint8_t>{0, 0});
    // posterior_0 = -3 + 1, posterior_1 = 1 - 3: both negative.
    out = decode_baseline(h, {-3.0, 1.0}, cfg);
    CHECK(out.hard_decision == std::vector<uint8_t>{1, 1});
}

TEST_CASE("BP computes exact bitwise MAP on a tree code") {
    const SparseParityCheck h = SparseParityCheck::from_adjacency(
        10, 5, {{0, 1, 2}, {2, 3}, {3, 4, 5}, {5, 6}, {6, 7, 8, 9}});
    // Enumerate the codebook once.
    std::vector<std::vector<uint8_t>> codebook;
    for (int v = 0; v < 1024; ++v) {
        std::vector<uint8_t> bits(10);
        for (int j = 0; j < 10; ++j) bits[j] = (v >> j) & 1;
        if (h.syndrome_is_zero(bits)) codebook.push_back(bits);
    }
    REQUIRE(codebook.size() == 32);

    DecoderConfig cfg;
    cfg.algorithm = Algorithm::Bp;
    cfg.max_iterations = 12;
    Decoder dec(h, cfg);
    std::mt19937_64 rng(2024);
    int compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto llrs = random_llrs(rng, 10);
        const DecodeOutcome out = dec.decode_llrs(llrs);
        // The hard decision latches at the first zero syndrome; only frames
        // that ran to the end expose the converged posterior signs.
        if (out.success) continue;
        bool tie = false;
        std::vector<uint8_t> map_bits(10);
        for (int j = 0; j < 10 && !tie; ++j) {
            double w0 = 0.0, w1 = 0.0;
            for (const auto& c : codebook) {
                double e = 0.0;
                for (int i = 0; i < 10; ++i)
                    if (c[i]) e -= llrs[i];
                (c[j] ? w1 : w0) += std::exp(e);
            }
            if (std::abs(w0 - w1) < 1e-9 * (w0 + w1)) tie = true;
            map_bits[j] = w1 > w0 ? 1 : 0;
        }
        if (tie) continue;
        CHECK(out.hard_decision == map_bits);
        ++compared;
    }
    CHECK(compared > 50);
}

TEST_CASE("single-layer code: flooding and layered msRCQ coincide") {
    QcBaseMatrix base;
    base.rows = 1;
    base.cols = 3;
    base.circulant_size = 4;
    base.entries = {0, 1, 2};
    const SparseParityCheck code = expand(base);
    const AwgnChannel chan = AwgnChannel::from_ebno_db(3.0, base_matrix_rate(base));
    DdeOptions opt;
    opt.b_e = 3;
    opt.b_v = 6;
    opt.iterations = 4;
    opt.max_labels = 256;
    const RcqParamSet pf = dde_flooding(base, chan, opt).params;
    const RcqParamSet pl = dde_layer_specific(base, chan, opt).params;
    const ChannelLlrAlphabet alphabet = uniform_llr_quantizer(chan, opt.b_v, opt.clip);

    Decoder df(code, rcq_cfg(Algorithm::MsRcq, Schedule::Flooding, pf, 4), &alphabet);
    Decoder dl(code, rcq_cfg(Algorithm::MsRcq, Schedule::Layered, pl, 4), &alphabet);
    for (int i = 0; i < 100; ++i) {
        const auto labels = sample_llr_words(chan, code.n, alphabet, 400 + i);
        const DecodeOutcome a = df.decode_labels(labels);
        const DecodeOutcome b = dl.decode_labels(labels);
        CHECK(a.success == b.success);
        CHECK(a.iterations_used == b.iterations_used);
        CHECK(a.hard_decision == b.hard_decision);
    }
}

TEST_CASE("a flooding-designed set runs on the layered schedule") {
    const Fixture& f = fix();
    const DecodeOutcome out = decode_msrcq_layered(
        f.code, f.noiseless_labels(), rcq_cfg(Algorithm::MsRcq, Schedule::Layered, f.flood),
        f.alphabet);
    CHECK(out.success);
    CHECK(out.iterations_used == 1);
}

TEST_CASE("two-bit external messages are supported") {
    const Fixture& f = fix();
    DdeOptions opt;
    opt.b_e = 2;
    opt.b_v = 8;
    opt.iterations = 4;
    opt.max_labels = 256;
    const RcqParamSet p = dde_flooding(f.base, f.chan, opt).params;
    REQUIRE(p.schedule[0].vn_quant_taus.size() == 1);
    const DecodeOutcome out = decode_msrcq_flooding(
        f.code, f.noiseless_labels(), rcq_cfg(Algorithm::MsRcq, Schedule::Flooding, p, 4),
        f.alphabet);
    CHECK(out.success);
    CHECK(out.iterations_used == 1);
}

TEST_CASE("configuration validation") {
    const Fixture& f = fix();
    DecoderConfig cfg;
    cfg.algorithm = Algorithm::MsRcq;
    CHECK_THROWS_AS(Decoder(f.code, cfg, &f.alphabet), std::invalid_argument);  // no params
    cfg.params = &f.flood;
    CHECK_THROWS_AS(Decoder(f.code, cfg, nullptr), std::invalid_argument);  // no alphabet
    cfg.params = &f.layered;
    CHECK_THROWS_AS(Decoder(f.code, cfg, &f.alphabet),
                    std::invalid_argument);  // layer-specific params on flooding
    cfg.params = &f.bp;
    CHECK_THROWS_AS(Decoder(f.code, cfg, &f.alphabet),
                    std::invalid_argument);  // msRCQ with boxplus params

    DecoderConfig oms;
    oms.algorithm = Algorithm::OffsetMinSum;
    CHECK_THROWS_AS(Decoder(f.code, oms), std::invalid_argument);  // no fixed point

    DecoderConfig bp;
    bp.algorithm = Algorithm::Bp;
    bp.fixed_point = FixedPointFormat{8, 3};
    CHECK_THROWS_AS(Decoder(f.code, bp), std::invalid_argument);  // BP is float only

    const SparseParityCheck flat = SparseParityCheck::from_adjacency(3, 1, {{0, 1, 2}});
    DecoderConfig lay;
    lay.algorithm = Algorithm::MinSum;
    lay.schedule = Schedule::Layered;
    CHECK_THROWS_AS(Decoder(flat, lay), std::invalid_argument);  // no layer info
}

TEST_CASE("early exit disabled changes only the iteration count") {
    const Fixture& f = fix();
    DecoderConfig cfg = rcq_cfg(Algorithm::MsRcq, Schedule::Flooding, f.flood);
    DecoderConfig slow = cfg;
    slow.disable_early_exit = true;
    Decoder fast(f.code, cfg, &f.alphabet), full(f.code, slow, &f.alphabet);
    for (int i = 0; i < 50; ++i) {
        const auto labels = sample_llr_words(f.chan, f.code.n, f.alphabet, 700 + i);
        const DecodeOutcome a = fast.decode_labels(labels);
        const DecodeOutcome b = full.decode_labels(labels);
        CHECK(a.success == b.success);
        CHECK(b.iterations_used == 8);
        if (a.success) CHECK(a.hard_decision == b.hard_decision);
    }
}

TEST_CASE("posterior trace is recorded per iteration") {
    const Fixture& f = fix();
    DecoderConfig cfg = rcq_cfg(Algorithm::MsRcq, Schedule::Flooding, f.flood);
    cfg.disable_early_exit = true;
    cfg.record_posterior_trace = true;
    Decoder dec(f.code, cfg, &f.alphabet);
    const DecodeOutcome out = dec.decode_labels(f.noiseless_labels());
    CHECK(out.posterior_trace.size() == 8);
    for (double v : out.posterior_trace) CHECK(v > 0.0);
}
