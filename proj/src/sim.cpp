#include "rcq/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rcq {

namespace {

// Regularized incomplete beta via Lentz's continued fraction.
double betacf(double a, double b, double x) {
    constexpr double eps = 1e-14, tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h;
}

double inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     betacf(b, a, 1.0 - x) / b;
}

double beta_quantile(double p, double a, double b) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (inc_beta(a, b, mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct Partial {
    long long frames = 0, frame_errors = 0, bit_errors = 0, iterations = 0;
    std::vector<double> trace_sum;
    std::vector<long long> trace_count;
    bool tie_seen = false;

    void absorb_trace(const std::vector<double>& tr) {
        if (tr.size() > trace_sum.size()) {
            trace_sum.resize(tr.size(), 0.0);
            trace_count.resize(tr.size(), 0);
        }
        for (std::size_t t = 0; t < tr.size(); ++t) {
            trace_sum[t] += tr[t];
            ++trace_count[t];
        }
    }

    void merge(const Partial& o) {
        frames += o.frames;
        frame_errors += o.frame_errors;
        bit_errors += o.bit_errors;
        iterations += o.iterations;
        tie_seen = tie_seen || o.tie_seen;
        if (o.trace_sum.size() > trace_sum.size()) {
            trace_sum.resize(o.trace_sum.size(), 0.0);
            trace_count.resize(o.trace_count.size(), 0);
        }
        for (std::size_t t = 0; t < o.trace_sum.size(); ++t) {
            trace_sum[t] += o.trace_sum[t];
            trace_count[t] += o.trace_count[t];
        }
    }
};

bool is_rcq(Algorithm a) { return a == Algorithm::MsRcq || a == Algorithm::BpRcq; }

void run_one_frame(Decoder& dec, const DecoderConfig& cfg, const AwgnChannel& chan,
                   const ChannelLlrAlphabet* alphabet, int n, uint64_t seed,
                   Partial& agg, std::vector<double>& y) {
    FrameSampler sampler(chan, seed);
    sampler.fill(y, n);
    DecodeOutcome out;
    if (is_rcq(cfg.algorithm)) {
        std::vector<int> labels(n);
        for (int j = 0; j < n; ++j) labels[j] = alphabet->label_of(y[j]);
        out = dec.decode_labels(labels);
    } else {
        std::vector<double> llrs(n);
        const double s = 2.0 / chan.sigma2();
        for (int j = 0; j < n; ++j) llrs[j] = s * y[j];
        out = dec.decode_llrs(llrs);
    }
    long long bits = 0;
    for (uint8_t b : out.hard_decision) bits += b;
    ++agg.frames;
    agg.bit_errors += bits;
    if (bits != 0 || !out.success) ++agg.frame_errors;
    agg.iterations += out.iterations_used;
    agg.tie_seen = agg.tie_seen || out.tie_event;
    if (cfg.record_posterior_trace) agg.absorb_trace(out.posterior_trace);
}

}  // namespace

void clopper_pearson(long long k, long long n, double* lo, double* hi) {
    constexpr double alpha = 0.05;
    *lo = (k == 0) ? 0.0 : beta_quantile(alpha / 2, k, n - k + 1);
    *hi = (k == n) ? 1.0 : beta_quantile(1.0 - alpha / 2, k + 1, n - k);
}

int default_workers() {
    if (const char* env = std::getenv("RCQ_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

FerRunResult run_fer_point(const SparseParityCheck& code, const AwgnChannel& chan,
                           const DecoderConfig& cfg, const StopRule& stop,
                           uint64_t base_seed, int workers,
                           const ChannelLlrAlphabet* alphabet) {
    if (stop.min_errors < 1) throw std::invalid_argument("run_fer_point: min_errors >= 1");
    if (workers <= 0) workers = default_workers();
    if (is_rcq(cfg.algorithm) && !alphabet)
        throw std::invalid_argument("run_fer_point: RCQ decoder needs a channel alphabet");

    const auto t0 = std::chrono::steady_clock::now();
    // Fixed batch size keeps the set of simulated frames independent of the
    // worker count: a started batch always completes before the stop rule
    // is consulted.
    constexpr long long kBatch = 512;

    std::vector<Decoder> decs;
    decs.reserve(workers);
    for (int w = 0; w < workers; ++w) decs.emplace_back(code, cfg, alphabet);

    Partial total;
    long long next = 0;
    while (next < stop.max_frames && total.frame_errors < stop.min_errors) {
        const long long count = std::min(kBatch, stop.max_frames - next);
        std::vector<Partial> parts(workers);
        auto work = [&](int w) {
            std::vector<double> y;
            for (long long i = w; i < count; i += workers)
                run_one_frame(decs[w], cfg, chan, alphabet, code.n,
                              base_seed ^ static_cast<uint64_t>(next + i), parts[w], y);
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& th : pool) th.join();
        }
        for (const auto& p : parts) total.merge(p);
        next += count;
    }

    FerRunResult r;
    r.ebno_db = chan.ebno_db(static_cast<double>(code.n - code.m) / code.n);
    r.frames = total.frames;
    r.frame_errors = total.frame_errors;
    r.bit_errors = total.bit_errors;
    r.fer = total.frames ? static_cast<double>(total.frame_errors) / total.frames : 0.0;
    r.ber = total.frames
                ? static_cast<double>(total.bit_errors) / (total.frames * static_cast<long long>(code.n))
                : 0.0;
    clopper_pearson(total.frame_errors, total.frames, &r.fer_ci_lo, &r.fer_ci_hi);
    r.avg_iterations =
        total.frames ? static_cast<double>(total.iterations) / total.frames : 0.0;
    r.seed = base_seed;
    if (cfg.record_posterior_trace) {
        r.posterior_trace.resize(total.trace_sum.size());
        for (std::size_t t = 0; t < total.trace_sum.size(); ++t)
            r.posterior_trace[t] = total.trace_sum[t] / total.trace_count[t];
    }
    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<FerRunResult> run_sweep(const SparseParityCheck& code,
                                    const std::vector<double>& ebno_list,
                                    const DecoderConfig& cfg, const StopRule& stop,
                                    uint64_t base_seed, int workers,
                                    const ChannelLlrAlphabet* alphabet) {
    const double rate = static_cast<double>(code.n - code.m) / code.n;
    std::vector<FerRunResult> out;
    out.reserve(ebno_list.size());
    for (double db : ebno_list)
        out.push_back(run_fer_point(code, AwgnChannel::from_ebno_db(db, rate), cfg, stop,
                                    base_seed, workers, alphabet));
    return out;
}

std::string sweep_csv(const std::vector<FerRunResult>& rows) {
    std::ostringstream os;
    os << "ebno_db,frames,frame_errors,fer,fer_ci_lo,fer_ci_hi,ber,avg_iters,seconds\n";
    os.precision(10);
    for (const auto& r : rows)
        os << r.ebno_db << ',' << r.frames << ',' << r.frame_errors << ',' << r.fer << ','
           << r.fer_ci_lo << ',' << r.fer_ci_hi << ',' << r.ber << ',' << r.avg_iterations
           << ',' << r.wall_seconds << '\n';
    return os.str();
}

std::vector<std::vector<double>> trace_posterior_magnitude(
    const SparseParityCheck& code, const AwgnChannel& chan,
    const std::vector<TraceSpec>& specs, long long n_frames, uint64_t base_seed) {
    std::vector<std::vector<double>> traces;
    traces.reserve(specs.size());
    for (const auto& spec : specs) {
        DecoderConfig cfg = spec.cfg;
        cfg.disable_early_exit = true;
        cfg.record_posterior_trace = true;
        Decoder dec(code, cfg, spec.alphabet);
        Partial agg;
        std::vector<double> y;
        for (long long i = 0; i < n_frames; ++i)
            run_one_frame(dec, cfg, chan, spec.alphabet, code.n,
                          base_seed ^ static_cast<uint64_t>(i), agg, y);
        std::vector<double> tr(agg.trace_sum.size());
        for (std::size_t t = 0; t < tr.size(); ++t)
            tr[t] = agg.trace_sum[t] / agg.trace_count[t];
        traces.push_back(std::move(tr));
    }
    return traces;
}

}  // namespace rcq
