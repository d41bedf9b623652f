#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rcq/pmf.hpp"

namespace rcq {

// BPSK over AWGN: y = s(x) + z with s(x) = 1 - 2x and z ~ N(0, sigma^2).
struct AwgnChannel {
    double sigma;

    static AwgnChannel from_sigma(double sigma);
    static AwgnChannel from_ebno_db(double ebno_db, double rate);
    double ebno_db(double rate) const;
    double sigma2() const { return sigma * sigma; }
};

// Fine uniform discretization of the observation axis, used on the design
// side.  Cell w covers [-Y + 2Yw/B, -Y + 2Y(w+1)/B); edge cells absorb the
// tails so the table stays exactly normalized.
struct DiscretizedChannel {
    int cardinality = 0;      // B
    double clip = 0.0;        // Y
    JointLabelPmf joint;      // P(X, W), LLR strictly increasing in w
    std::vector<double> y_grid;  // cell midpoints
};

DiscretizedChannel discretize_awgn(const AwgnChannel& chan, int cardinality, double clip);

// Uniform b_v-bit channel-LLR quantizer: the observation interval [-Y, Y]
// split into 2^b_v equal cells, each carrying its true conditional LLR.
struct ChannelLlrAlphabet {
    int bits = 0;                 // b_v
    double clip = 0.0;            // Y
    std::vector<double> levels;   // l_d in nats, ascending
    JointLabelPmf joint;          // P(X, D_ch)

    std::size_t size() const { return levels.size(); }
    // Cell index of an observation, tails clipped into the edge cells.
    int label_of(double y) const;
};

ChannelLlrAlphabet uniform_llr_quantizer(const AwgnChannel& chan, int bits, double clip);

// Deterministic per-frame observation stream (all-zero codeword, s = +1).
class FrameSampler {
public:
    FrameSampler(const AwgnChannel& chan, uint64_t seed);
    double next() { return 1.0 + sigma_ * normal_(rng_); }
    void fill(std::vector<double>& y, std::size_t n);

private:
    double sigma_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_;
};

std::vector<int> sample_llr_words(const AwgnChannel& chan, std::size_t n,
                                  const ChannelLlrAlphabet& alphabet, uint64_t seed);

}  // namespace rcq
