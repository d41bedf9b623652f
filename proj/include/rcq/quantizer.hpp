#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rcq/pmf.hpp"

namespace rcq {

// 2^b - 1 strictly increasing indices into the LLR-sorted label axis.
// xi[j-1] is the first label index of region j; region 0 starts at 0.
struct IndexThresholds {
    int bits = 0;
    std::vector<int> xi;
};

// Magnitude thresholds tau_0 < tau_1 < ... of one symmetric quantizer stage,
// in LLR units (nats).
struct MagnitudeQuantizer {
    int bits = 0;  // b_e
    std::vector<double> taus;  // 2^(b_e-1) - 1 entries
};

// Magnitude reconstruction values R*(d), strictly increasing and positive.
struct MagnitudeReconstruction {
    std::vector<double> values;  // 2^(b_e-1) entries
};

// Exact argmax of a unimodal integer-indexed function on [lo, hi].
// Golden-section interval shrinking with an exhaustive scan of the final
// <= 4-point interval; falls back to a full scan if the result is not a
// local maximum.  Ties in the final scan break to the smallest index.
int golden_section_argmax(const std::function<double(int)>& f, int lo, int hi);

struct HdqResult {
    IndexThresholds thresholds;      // on the sorted axis
    JointLabelPmf quantized;         // 2^b labels, ascending LLR
    std::vector<std::size_t> sort_perm;  // sorted position -> input label
    double mi_bits = 0.0;            // I(X;D) of the quantized PMF
};

// Hierarchical dynamic quantization: bit-level greedy threshold placement
// maximizing conditional mutual information on the LLR-sorted axis.
HdqResult hdq(const JointLabelPmf& pmf, int bits);

struct DpResult {
    IndexThresholds thresholds;
    double mi_bits = 0.0;
};

// MI-optimal contiguous quantizer found by dynamic programming; the test
// oracle for hdq.  O(2^b K^2).
DpResult dp_optimal_quantizer(const JointLabelPmf& pmf, int bits);

// LLR magnitude thresholds from the upper-half index thresholds.
MagnitudeQuantizer thresholds_to_llr(const JointLabelPmf& sorted_pmf,
                                     const IndexThresholds& xi);

// R*(d) from a symmetric quantized PMF over 2^b labels.
MagnitudeReconstruction reconstruction_from_pmf(const JointLabelPmf& quantized);

// Symmetric magnitude quantization: 0 for h <= tau_0, j for
// tau_{j-1} < h <= tau_j, saturating above tau_max.
template <typename T>
int quantize_magnitude(const std::vector<T>& taus, T h) {
    int j = 0;
    while (j < static_cast<int>(taus.size()) && h > taus[j]) ++j;
    return j;
}

}  // namespace rcq
