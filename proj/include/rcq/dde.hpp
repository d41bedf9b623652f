#pragma once

#include <cstdint>
#include <vector>

#include "rcq/channel.hpp"
#include "rcq/codes.hpp"
#include "rcq/params.hpp"
#include "rcq/pmf.hpp"
#include "rcq/quantizer.hpp"

namespace rcq {

// VN combining: P(x,(d1,d2)) = P1(x,d1) P2(x,d2) / P_X(x).  Pair LLRs add.
JointLabelPmf boxdot(const JointLabelPmf& p1, const JointLabelPmf& p2);

// Greedy one-step annealing: labels sorted by LLR, adjacent pairs merged
// least-MI-loss-first until at most max_labels remain.
JointLabelPmf cluster_anneal(const JointLabelPmf& p, std::size_t max_labels,
                             double* mi_loss_bits = nullptr);

// Label-domain min table: MS(d1,d2) is the label whose LLR equals
// sgn(l(d1)) sgn(l(d2)) min(|l(d1)|, |l(d2)|).
struct MsLabelTable {
    int labels = 0;
    std::vector<int> table;  // labels x labels, row-major
    int at(int d1, int d2) const { return table[static_cast<std::size_t>(d1) * labels + d2]; }
};

MsLabelTable ms_label_table(const JointLabelPmf& p_v);

// CN min transfer on label PMFs (Eq. of the label-min operation).
JointLabelPmf circledast(const JointLabelPmf& p1, const JointLabelPmf& p2,
                         const MsLabelTable& table);

// Exact CN combining on the product label space; pair LLR is the boxplus
// of the input LLRs.
JointLabelPmf boxplus_pmf(const JointLabelPmf& p1, const JointLabelPmf& p2);

struct DdeOptions {
    int b_e = 4;
    int b_v = 10;
    int b_ic = 0;              // bpRCQ CN internal width
    int iterations = 50;       // I_T
    std::size_t max_labels = 1024;
    double clip = 2.0;         // channel observation clip half-range Y
    CnOp cn_op = CnOp::Min;
};

struct DdeState {
    std::vector<double> mi_trace;  // (t-1)*layers + r, I^(t,r) in bits
    int layers = 1;
    double worst_norm_err = 0.0;   // |sum - 1| over every emitted PMF
    double worst_sym_err = 0.0;    // symmetry defect over every emitted PMF
    double final_min_mi() const;   // min over layers at t = I_T
};

struct DdeResult {
    RcqParamSet params;
    DdeState state;
};

DdeResult dde_flooding(const QcBaseMatrix& base, const AwgnChannel& chan,
                       const DdeOptions& opt);
DdeResult dde_layer_specific(const QcBaseMatrix& base, const AwgnChannel& chan,
                             const DdeOptions& opt);

struct ThresholdResult {
    bool found = false;
    double ebno_db = 0.0;
};

// Smallest Eb/N0 (bisected to resolution dB) whose end-of-schedule MI
// exceeds 1 - eps in every layer.
ThresholdResult find_threshold(const QcBaseMatrix& base, const DdeOptions& opt,
                               ScheduleMode mode, double eps = 1e-4,
                               double lo_db = 0.0, double hi_db = 6.0,
                               double resolution_db = 0.01);

double base_matrix_rate(const QcBaseMatrix& base);

}  // namespace rcq
