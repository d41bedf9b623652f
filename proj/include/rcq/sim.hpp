#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rcq/channel.hpp"
#include "rcq/codes.hpp"
#include "rcq/decoder.hpp"

namespace rcq {

struct StopRule {
    long long min_errors = 100;
    long long max_frames = 1000000;
};

struct FerRunResult {
    double ebno_db = 0.0;
    long long frames = 0;
    long long frame_errors = 0;
    long long bit_errors = 0;
    double fer = 0.0;
    double ber = 0.0;
    double fer_ci_lo = 0.0;  // Clopper-Pearson 95%
    double fer_ci_hi = 1.0;
    double avg_iterations = 0.0;
    double wall_seconds = 0.0;
    uint64_t seed = 0;
    // Mean |l_v| per iteration averaged over frames that reached it; filled
    // when cfg.record_posterior_trace is set.
    std::vector<double> posterior_trace;
};

// Exact 95% binomial confidence interval for k errors in n trials.
void clopper_pearson(long long k, long long n, double* lo, double* hi);

// All-zero-codeword Monte Carlo at one operating point.  Frame i draws its
// noise from a stream seeded base_seed ^ i, so results are bit-identical for
// any worker count.  RCQ decoders need the channel alphabet the parameter
// set was designed for.
FerRunResult run_fer_point(const SparseParityCheck& code, const AwgnChannel& chan,
                           const DecoderConfig& cfg, const StopRule& stop,
                           uint64_t base_seed, int workers = 0,
                           const ChannelLlrAlphabet* alphabet = nullptr);

// Sequential sweep over Eb/N0 points; the code rate (n-m)/n converts dB to
// sigma.  Shared base seed pairs the noise across points and decoders.
std::vector<FerRunResult> run_sweep(const SparseParityCheck& code,
                                    const std::vector<double>& ebno_list,
                                    const DecoderConfig& cfg, const StopRule& stop,
                                    uint64_t base_seed, int workers = 0,
                                    const ChannelLlrAlphabet* alphabet = nullptr);

std::string sweep_csv(const std::vector<FerRunResult>& rows);

struct TraceSpec {
    std::string name;
    DecoderConfig cfg;
    const ChannelLlrAlphabet* alphabet = nullptr;  // RCQ decoders only
};

// Fig.-8-style traces: every decoder sees the same noise realizations, early
// exit is disabled, and mean |l_v| is averaged over n_frames per iteration.
std::vector<std::vector<double>> trace_posterior_magnitude(
    const SparseParityCheck& code, const AwgnChannel& chan,
    const std::vector<TraceSpec>& specs, long long n_frames, uint64_t base_seed);

int default_workers();  // RCQ_WORKERS env var, else 1

}  // namespace rcq
