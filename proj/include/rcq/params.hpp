#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rcq {

enum class ScheduleMode { Flooding, LayerSpecific };
enum class CnOp { Min, BoxPlus };

// Sign-magnitude fixed point with saturation; frac_bits sets the binary
// point, magnitudes live in [0, 2^(total_bits-1) - 1].
struct FixedPointFormat {
    int total_bits = 0;
    int frac_bits = 0;

    int max_mag() const { return (1 << (total_bits - 1)) - 1; }
    double scale() const { return static_cast<double>(1 << frac_bits); }
    int to_fixed(double llr) const;
    double to_real(int v) const { return v / scale(); }

    static FixedPointFormat for_llr_range(int total_bits, double l_max);
};

// One (t) or (t, r) entry of an RCQ schedule.  All arrays are stored in
// internal fixed-point units of their side's format.
struct RcqStageParams {
    std::vector<int> vn_quant_taus;      // Q thresholds, 2^(b_e-1)-1 entries
    std::vector<int> cn_recon_values;    // R values, 2^(b_e-1) entries
    // bpRCQ only:
    std::vector<int> cn_quant_taus;      // Q_c thresholds (b_ic units)
    std::vector<int> vn_recon_values;    // R_v values (b_ic units)
    double vn_mi_bits = 0.0;             // I^(t[,r]) at the design point
};

struct RcqParamSet {
    ScheduleMode mode = ScheduleMode::Flooding;
    CnOp cn_op = CnOp::Min;
    int b_e = 0;
    int b_v = 0;
    int b_ic = 0;  // bpRCQ only, 0 otherwise
    int iterations = 0;
    int layers = 1;  // 1 in flooding mode
    double design_ebno_db = 0.0;
    double channel_clip = 2.0;
    FixedPointFormat fixed_point;                 // VN internal format
    std::optional<FixedPointFormat> cn_fixed_point;  // bpRCQ CN internal format
    std::vector<RcqStageParams> schedule;         // (t-1)*layers + r

    const RcqStageParams& entry(int t, int r = 0) const;
    bool is_bp() const { return cn_op == CnOp::BoxPlus; }
    void validate() const;
};

// Per-entry serialized msRCQ storage cost: (2^b_e - 1)(b_v - 1) bits,
// i.e. 2^(b_e-1)-1 thresholds plus 2^(b_e-1) reconstructions, each a
// (b_v - 1)-bit magnitude.
std::size_t entry_storage_bits(int b_e, int b_v);
std::size_t total_storage_bits(const RcqParamSet& params);

std::string params_to_text(const RcqParamSet& params);
RcqParamSet params_from_text(const std::string& text);
void save_params(const RcqParamSet& params, const std::string& path);
RcqParamSet load_params(const std::string& path);

std::string to_string(ScheduleMode mode);
std::string to_string(CnOp op);

}  // namespace rcq
