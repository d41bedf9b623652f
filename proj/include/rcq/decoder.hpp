#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rcq/channel.hpp"
#include "rcq/codes.hpp"
#include "rcq/params.hpp"

namespace rcq {

enum class Algorithm { MsRcq, BpRcq, Bp, MinSum, OffsetMinSum };
enum class Schedule { Flooding, Layered };

struct DecoderConfig {
    Algorithm algorithm = Algorithm::Bp;
    Schedule schedule = Schedule::Flooding;
    int max_iterations = 50;
    const RcqParamSet* params = nullptr;        // RCQ algorithms
    double offset = 0.0;                        // OMS beta, LLR units
    std::optional<FixedPointFormat> fixed_point;  // fixed-point baselines
    bool disable_early_exit = false;
    bool record_posterior_trace = false;
};

struct DecodeOutcome {
    bool success = false;
    int iterations_used = 0;
    std::vector<uint8_t> hard_decision;
    std::vector<double> posterior_trace;  // mean |l_v| per iteration, LLR units
    // An exact zero hit a sign decision somewhere; sign-mirror symmetry is
    // not guaranteed for such frames.
    bool tie_event = false;
};

// Reusable decoder instance: topology and parameter tables are prepared
// once, decode() is called per frame.  Instances are single-threaded; run
// one per worker.
class Decoder {
public:
    Decoder(const SparseParityCheck& code, const DecoderConfig& cfg,
            const ChannelLlrAlphabet* alphabet = nullptr);
    ~Decoder();
    Decoder(Decoder&&) noexcept;

    // RCQ decoders take channel labels, baselines take real LLRs.
    DecodeOutcome decode_labels(const std::vector<int>& channel_labels);
    DecodeOutcome decode_llrs(const std::vector<double>& channel_llrs);

    const DecoderConfig& config() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Convenience wrappers.
DecodeOutcome decode_msrcq_flooding(const SparseParityCheck& code,
                                    const std::vector<int>& llr_words,
                                    const DecoderConfig& cfg,
                                    const ChannelLlrAlphabet& alphabet);
DecodeOutcome decode_msrcq_layered(const SparseParityCheck& code,
                                   const std::vector<int>& llr_words,
                                   const DecoderConfig& cfg,
                                   const ChannelLlrAlphabet& alphabet);
DecodeOutcome decode_bprcq_flooding(const SparseParityCheck& code,
                                    const std::vector<int>& llr_words,
                                    const DecoderConfig& cfg,
                                    const ChannelLlrAlphabet& alphabet);
DecodeOutcome decode_baseline(const SparseParityCheck& code,
                              const std::vector<double>& llrs,
                              const DecoderConfig& cfg);

}  // namespace rcq
