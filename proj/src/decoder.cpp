#include "rcq/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "rcq/quantizer.hpp"

namespace rcq {

namespace {

// Message clamp for the tanh-domain BP check node; 2*atanh(1 - 1e-15) keeps
// outputs finite and is far beyond any LLR the channel front end produces.
constexpr double kTanhCap = 1.0 - 1e-15;

double boxplus_two(double a, double b) {
    const double m = std::tanh(0.5 * a) * std::tanh(0.5 * b);
    return 2.0 * std::atanh(std::clamp(m, -kTanhCap, kTanhCap));
}

int clamp_mag(long long v, int cap) {
    if (v > cap) return cap;
    if (v < -cap) return -cap;
    return static_cast<int>(v);
}

}  // namespace

struct Decoder::Impl {
    DecoderConfig cfg;
    int n = 0, m = 0;
    std::size_t edges = 0;
    std::vector<int> row_ptr;        // m + 1
    std::vector<int> edge_col;       // edge -> VN
    std::vector<int> col_ptr;        // n + 1
    std::vector<int> col_edge;       // edge ids grouped by VN
    std::vector<std::vector<int>> layer_rows;

    // RCQ tables.
    RcqParamSet params;
    std::vector<int> chan_fixed;     // channel label -> VN internal value

    // Fixed-point baselines.
    FixedPointFormat fmt{};
    int beta_fixed = 0;

    const SparseParityCheck* code = nullptr;

    // Scratch, sized once.
    std::vector<int> v2c_mag, v2c_sign;
    std::vector<long long> acc;
    std::vector<double> fwd, bwd;

    Impl(const SparseParityCheck& h, const DecoderConfig& c,
         const ChannelLlrAlphabet* alphabet)
        : cfg(c), code(&h) {
        n = h.n;
        m = h.m;
        edges = h.edge_count();
        row_ptr.assign(m + 1, 0);
        edge_col.reserve(edges);
        for (int i = 0; i < m; ++i) {
            row_ptr[i + 1] = row_ptr[i] + static_cast<int>(h.row_adjacency[i].size());
            for (int j : h.row_adjacency[i]) edge_col.push_back(j);
        }
        col_ptr.assign(n + 1, 0);
        for (int j : edge_col) ++col_ptr[j + 1];
        for (int j = 0; j < n; ++j) col_ptr[j + 1] += col_ptr[j];
        col_edge.resize(edges);
        {
            std::vector<int> cursor(col_ptr.begin(), col_ptr.end() - 1);
            for (std::size_t e = 0; e < edges; ++e)
                col_edge[cursor[edge_col[e]]++] = static_cast<int>(e);
        }

        const bool rcq = cfg.algorithm == Algorithm::MsRcq || cfg.algorithm == Algorithm::BpRcq;
        if (rcq) {
            if (!cfg.params) throw std::invalid_argument("Decoder: RCQ needs a parameter set");
            if (!alphabet) throw std::invalid_argument("Decoder: RCQ needs a channel alphabet");
            params = *cfg.params;
            params.validate();
            if (cfg.algorithm == Algorithm::BpRcq && !params.is_bp())
                throw std::invalid_argument("Decoder: bpRCQ needs boxplus parameters");
            if (cfg.algorithm == Algorithm::MsRcq && params.is_bp())
                throw std::invalid_argument("Decoder: msRCQ given boxplus parameters");
            // A flooding-designed set may run on the layered schedule (each
            // layer reuses the iteration's entry); the converse cannot.
            const bool layered = cfg.schedule == Schedule::Layered;
            if (!layered && params.mode == ScheduleMode::LayerSpecific)
                throw std::invalid_argument("Decoder: layer-specific parameters need a layered schedule");
            if (cfg.algorithm == Algorithm::BpRcq && layered)
                throw std::invalid_argument("Decoder: layered bpRCQ is not supported");
            chan_fixed.resize(alphabet->size());
            for (std::size_t d = 0; d < alphabet->size(); ++d)
                chan_fixed[d] = params.fixed_point.to_fixed(alphabet->levels[d]);
        }

        if (cfg.schedule == Schedule::Layered) {
            if (!h.layers) throw std::invalid_argument("Decoder: layered schedule needs layer info");
            if (!h.one_neighbor_per_layer())
                throw std::invalid_argument("Decoder: a VN meets two CNs in one layer");
            if (rcq && params.mode == ScheduleMode::LayerSpecific &&
                params.layers != h.layers->layers)
                throw std::invalid_argument("Decoder: parameter layers do not match the code");
            layer_rows.resize(h.layers->layers);
            for (int i = 0; i < m; ++i) layer_rows[h.layers->layer_of_row(i)].push_back(i);
        }

        if (cfg.algorithm == Algorithm::OffsetMinSum || cfg.algorithm == Algorithm::MinSum) {
            if (cfg.fixed_point) {
                fmt = *cfg.fixed_point;
                beta_fixed = static_cast<int>(std::lround(cfg.offset * fmt.scale()));
            } else if (cfg.algorithm == Algorithm::OffsetMinSum) {
                throw std::invalid_argument("Decoder: OMS needs a fixed-point format");
            }
        }
        if (cfg.algorithm == Algorithm::Bp && cfg.fixed_point)
            throw std::invalid_argument("Decoder: BP runs in floating point");

        v2c_mag.resize(edges);
        v2c_sign.resize(edges);
        acc.resize(n);
        int max_row_deg = 0;
        for (int i = 0; i < m; ++i)
            max_row_deg = std::max(max_row_deg, row_ptr[i + 1] - row_ptr[i]);
        fwd.resize(max_row_deg + 1);
        bwd.resize(max_row_deg + 1);
    }

    int row_deg(int i) const { return row_ptr[i + 1] - row_ptr[i]; }

    // --- shared epilogue -------------------------------------------------

    struct FrameState {
        DecodeOutcome out;
        bool latched = false;
    };

    // Returns true when the caller should stop iterating.
    template <typename Posterior>
    bool finish_iteration(FrameState& st, int t, Posterior posterior, double scale) {
        std::vector<uint8_t> hd(n);
        double abs_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p = posterior(j);
            if (p == 0.0) st.out.tie_event = true;
            hd[j] = p < 0.0 ? 1 : 0;
            abs_sum += std::abs(p);
        }
        if (cfg.record_posterior_trace)
            st.out.posterior_trace.push_back(abs_sum / (n * scale));
        if (!st.latched && code->syndrome_is_zero(hd)) {
            st.latched = true;
            st.out.success = true;
            st.out.hard_decision = hd;
            st.out.iterations_used = t;
        }
        if (st.latched && !cfg.disable_early_exit) return true;
        if (t == cfg.max_iterations) {
            // Reached only with early exit disabled or an undecoded frame.
            if (!st.latched) st.out.hard_decision = std::move(hd);
            st.out.iterations_used = cfg.max_iterations;
            return true;
        }
        return false;
    }

    // --- msRCQ -----------------------------------------------------------

    DecodeOutcome msrcq_flooding(const std::vector<int>& labels) {
        const int vn_cap = params.fixed_point.max_mag();
        const int post_cap = (1 << (params.fixed_point.total_bits + 1)) - 1;
        std::vector<int> ch(n);
        for (int j = 0; j < n; ++j) ch[j] = chan_fixed[labels[j]];
        std::vector<int> u(edges, 0);  // reconstructed c2v, VN units
        FrameState st;

        for (int t = 1; t <= cfg.max_iterations; ++t) {
            const RcqStageParams& stage = params.entry(t);
            // VN stage: extrinsic sums quantized with Q^(t); incoming values
            // were reconstructed with the previous iteration's R.
            for (int j = 0; j < n; ++j) {
                long long total = ch[j];
                for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) total += u[col_edge[k]];
                for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) {
                    const int e = col_edge[k];
                    const int ext = clamp_mag(total - u[e], vn_cap);
                    if (ext == 0) st.out.tie_event = true;
                    v2c_sign[e] = ext < 0;
                    v2c_mag[e] = quantize_magnitude(stage.vn_quant_taus, std::abs(ext));
                }
            }
            // CN stage: label-only sign/min, output reconstructed with R^(t).
            cn_min_to_values(stage.cn_recon_values, u);
            for (int j = 0; j < n; ++j) {
                long long total = ch[j];
                for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) total += u[col_edge[k]];
                acc[j] = clamp_mag(total, post_cap);
            }
            if (finish_iteration(st, t, [&](int j) { return static_cast<double>(acc[j]); },
                                 params.fixed_point.scale()))
                break;
        }
        if (cfg.max_iterations == 0) channel_only_decision(st, ch);
        return std::move(st.out);
    }

    DecodeOutcome msrcq_layered(const std::vector<int>& labels) {
        const int vn_cap = params.fixed_point.max_mag();
        const int post_cap = (1 << (params.fixed_point.total_bits + 1)) - 1;
        std::vector<int> lv(n);
        for (int j = 0; j < n; ++j) lv[j] = chan_fixed[labels[j]];
        std::vector<int> u(edges, 0);
        FrameState st;

        const int layers = static_cast<int>(layer_rows.size());
        const bool per_layer = params.mode == ScheduleMode::LayerSpecific;
        for (int t = 1; t <= cfg.max_iterations; ++t) {
            for (int r = 0; r < layers; ++r) {
                const RcqStageParams& stage = per_layer ? params.entry(t, r) : params.entry(t);
                for (int i : layer_rows[r]) {
                    for (int e = row_ptr[i]; e < row_ptr[i + 1]; ++e) {
                        const int ext = clamp_mag(
                            static_cast<long long>(lv[edge_col[e]]) - u[e], vn_cap);
                        if (ext == 0) st.out.tie_event = true;
                        v2c_sign[e] = ext < 0;
                        v2c_mag[e] = quantize_magnitude(stage.vn_quant_taus, std::abs(ext));
                    }
                    row_min_to_values(i, stage.cn_recon_values, [&](int e, int val) {
                        const long long base = static_cast<long long>(lv[edge_col[e]]) - u[e];
                        u[e] = val;
                        lv[edge_col[e]] = clamp_mag(base + val, post_cap);
                    });
                }
            }
            if (finish_iteration(st, t, [&](int j) { return static_cast<double>(lv[j]); },
                                 params.fixed_point.scale()))
                break;
        }
        if (cfg.max_iterations == 0) channel_only_decision(st, lv);
        return std::move(st.out);
    }

    // --- bpRCQ -----------------------------------------------------------

    DecodeOutcome bprcq_flooding(const std::vector<int>& labels) {
        const int vn_cap = params.fixed_point.max_mag();
        const int post_cap = (1 << (params.fixed_point.total_bits + 1)) - 1;
        const double cn_scale = params.cn_fixed_point->scale();
        std::vector<int> ch(n);
        for (int j = 0; j < n; ++j) ch[j] = chan_fixed[labels[j]];
        std::vector<int> u(edges, 0);
        FrameState st;

        for (int t = 1; t <= cfg.max_iterations; ++t) {
            const RcqStageParams& stage = params.entry(t);
            for (int j = 0; j < n; ++j) {
                long long total = ch[j];
                for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) total += u[col_edge[k]];
                for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) {
                    const int e = col_edge[k];
                    const int ext = clamp_mag(total - u[e], vn_cap);
                    if (ext == 0) st.out.tie_event = true;
                    v2c_sign[e] = ext < 0;
                    v2c_mag[e] = quantize_magnitude(stage.vn_quant_taus, std::abs(ext));
                }
            }
            // CN stage: reconstruct with R_v^(t) into the CN internal format,
            // run exact boxplus, requantize with Q_c^(t).
            std::vector<double> cn_taus(stage.cn_quant_taus.size());
            for (std::size_t i = 0; i < cn_taus.size(); ++i)
                cn_taus[i] = stage.cn_quant_taus[i] / cn_scale;
            for (int i = 0; i < m; ++i) {
                const int deg = row_deg(i);
                fwd[0] = bwd[deg] = 1e30;  // boxplus identity: +infinity
                for (int k = 0; k < deg; ++k) {
                    const int e = row_ptr[i] + k;
                    const double l = (v2c_sign[e] ? -1.0 : 1.0) *
                                     stage.vn_recon_values[v2c_mag[e]] / cn_scale;
                    fwd[k + 1] = boxplus_two(fwd[k], l);
                }
                for (int k = deg - 1; k >= 0; --k) {
                    const int e = row_ptr[i] + k;
                    const double l = (v2c_sign[e] ? -1.0 : 1.0) *
                                     stage.vn_recon_values[v2c_mag[e]] / cn_scale;
                    bwd[k] = boxplus_two(bwd[k + 1], l);
                }
                for (int k = 0; k < deg; ++k) {
                    const int e = row_ptr[i] + k;
                    const double out = boxplus_two(fwd[k], bwd[k + 1]);
                    const int mag = quantize_magnitude(cn_taus, std::abs(out));
                    u[e] = (out < 0.0 ? -1 : 1) * stage.cn_recon_values[mag];
                }
            }
            for (int j = 0; j < n; ++j) {
                long long total = ch[j];
                for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) total += u[col_edge[k]];
                acc[j] = clamp_mag(total, post_cap);
            }
            if (finish_iteration(st, t, [&](int j) { return static_cast<double>(acc[j]); },
                                 params.fixed_point.scale()))
                break;
        }
        if (cfg.max_iterations == 0) channel_only_decision(st, ch);
        return std::move(st.out);
    }

    // --- floating-point baselines ---------------------------------------

    DecodeOutcome float_flooding(const std::vector<double>& ch) {
        std::vector<double> c2v(edges, 0.0), v2c(edges, 0.0);
        const bool bp = cfg.algorithm == Algorithm::Bp;
        FrameState st;
        for (int t = 1; t <= cfg.max_iterations; ++t) {
            for (int j = 0; j < n; ++j) {
                double total = ch[j];
                for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) total += c2v[col_edge[k]];
                for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) {
                    const int e = col_edge[k];
                    v2c[e] = total - c2v[e];
                }
            }
            for (int i = 0; i < m; ++i)
                row_cn_float(i, bp, [&](int e) { return v2c[e]; },
                             [&](int e, double out) { c2v[e] = out; });
            std::vector<double> post(n);
            for (int j = 0; j < n; ++j) {
                double total = ch[j];
                for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) total += c2v[col_edge[k]];
                post[j] = total;
            }
            if (finish_iteration(st, t, [&](int j) { return post[j]; }, 1.0)) break;
        }
        if (cfg.max_iterations == 0) channel_only_decision_f(st, ch);
        return std::move(st.out);
    }

    DecodeOutcome float_layered(const std::vector<double>& ch) {
        std::vector<double> lv(ch), u(edges, 0.0);
        const bool bp = cfg.algorithm == Algorithm::Bp;
        FrameState st;
        for (int t = 1; t <= cfg.max_iterations; ++t) {
            for (auto& rows : layer_rows)
                for (int i : rows)
                    row_cn_float(i, bp, [&](int e) { return lv[edge_col[e]] - u[e]; },
                                 [&](int e, double out) {
                                     lv[edge_col[e]] = (lv[edge_col[e]] - u[e]) + out;
                                     u[e] = out;
                                 });
            if (finish_iteration(st, t, [&](int j) { return lv[j]; }, 1.0)) break;
        }
        if (cfg.max_iterations == 0) channel_only_decision_f(st, ch);
        return std::move(st.out);
    }

    // --- fixed-point min-sum / OMS ---------------------------------------

    DecodeOutcome fixed_minsum(const std::vector<double>& llrs) {
        const int cap = fmt.max_mag();
        const int post_cap = (1 << (fmt.total_bits + 1)) - 1;
        std::vector<int> ch(n);
        for (int j = 0; j < n; ++j) ch[j] = fmt.to_fixed(llrs[j]);
        std::vector<int> u(edges, 0);
        FrameState st;
        const bool layered = cfg.schedule == Schedule::Layered;

        std::vector<int> lv(ch);
        for (int t = 1; t <= cfg.max_iterations; ++t) {
            if (!layered) {
                for (int j = 0; j < n; ++j) {
                    long long total = ch[j];
                    for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) total += u[col_edge[k]];
                    for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) {
                        const int e = col_edge[k];
                        const int ext = clamp_mag(total - u[e], cap);
                        if (ext == 0) st.out.tie_event = true;
                        v2c_sign[e] = ext < 0;
                        v2c_mag[e] = std::abs(ext);
                    }
                }
                for (int i = 0; i < m; ++i)
                    row_min_fixed(i, [&](int e, int val) { u[e] = val; });
                for (int j = 0; j < n; ++j) {
                    long long total = ch[j];
                    for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) total += u[col_edge[k]];
                    lv[j] = clamp_mag(total, post_cap);
                }
            } else {
                for (auto& rows : layer_rows)
                    for (int i : rows) {
                        for (int e = row_ptr[i]; e < row_ptr[i + 1]; ++e) {
                            const int ext = clamp_mag(
                                static_cast<long long>(lv[edge_col[e]]) - u[e], cap);
                            if (ext == 0) st.out.tie_event = true;
                            v2c_sign[e] = ext < 0;
                            v2c_mag[e] = std::abs(ext);
                        }
                        row_min_fixed(i, [&](int e, int val) {
                            const long long base =
                                static_cast<long long>(lv[edge_col[e]]) - u[e];
                            u[e] = val;
                            lv[edge_col[e]] = clamp_mag(base + val, post_cap);
                        });
                    }
            }
            if (finish_iteration(st, t, [&](int j) { return static_cast<double>(lv[j]); },
                                 fmt.scale()))
                break;
        }
        if (cfg.max_iterations == 0) channel_only_decision(st, ch);
        return std::move(st.out);
    }

    // --- row kernels ------------------------------------------------------

    // Sign/min over v2c labels of every row; emit reconstructed values.
    void cn_min_to_values(const std::vector<int>& recon, std::vector<int>& u) {
        for (int i = 0; i < m; ++i)
            row_min_to_values(i, recon, [&](int e, int val) { u[e] = val; });
    }

    template <typename Emit>
    void row_min_to_values(int i, const std::vector<int>& recon, Emit emit) {
        const int top = static_cast<int>(recon.size()) - 1;
        int sign = 0, min1 = top, min2 = top, argmin = -1;
        for (int e = row_ptr[i]; e < row_ptr[i + 1]; ++e) {
            sign ^= v2c_sign[e];
            const int v = v2c_mag[e];
            if (v < min1) {
                min2 = min1;
                min1 = v;
                argmin = e;
            } else if (v < min2) {
                min2 = v;
            }
        }
        if (row_deg(i) == 1) {  // no extrinsic input: saturated certainty
            emit(row_ptr[i], recon[top]);
            return;
        }
        for (int e = row_ptr[i]; e < row_ptr[i + 1]; ++e) {
            const int mag = (e == argmin) ? min2 : min1;
            const int s = sign ^ v2c_sign[e];
            emit(e, (s ? -1 : 1) * recon[mag]);
        }
    }

    template <typename Emit>
    void row_min_fixed(int i, Emit emit) {
        const int cap = fmt.max_mag();
        int sign = 0, min1 = cap, min2 = cap, argmin = -1;
        for (int e = row_ptr[i]; e < row_ptr[i + 1]; ++e) {
            sign ^= v2c_sign[e];
            const int v = v2c_mag[e];
            if (v < min1) {
                min2 = min1;
                min1 = v;
                argmin = e;
            } else if (v < min2) {
                min2 = v;
            }
        }
        if (row_deg(i) == 1) {
            emit(row_ptr[i], cap);
            return;
        }
        for (int e = row_ptr[i]; e < row_ptr[i + 1]; ++e) {
            int mag = (e == argmin) ? min2 : min1;
            mag = std::max(mag - beta_fixed, 0);
            const int s = sign ^ v2c_sign[e];
            emit(e, (s ? -1 : 1) * mag);
        }
    }

    template <typename In, typename Emit>
    void row_cn_float(int i, bool bp, In in, Emit emit) {
        const int deg = row_deg(i);
        if (deg == 1) {
            emit(row_ptr[i], 1e30);
            return;
        }
        if (bp) {
            fwd[0] = bwd[deg] = 1e30;
            for (int k = 0; k < deg; ++k)
                fwd[k + 1] = boxplus_two(fwd[k], in(row_ptr[i] + k));
            for (int k = deg - 1; k >= 0; --k)
                bwd[k] = boxplus_two(bwd[k + 1], in(row_ptr[i] + k));
            for (int k = 0; k < deg; ++k)
                emit(row_ptr[i] + k, boxplus_two(fwd[k], bwd[k + 1]));
        } else {
            int sign = 0, argmin = -1;
            double min1 = 1e300, min2 = 1e300;
            for (int k = 0; k < deg; ++k) {
                const double v = in(row_ptr[i] + k);
                sign ^= (v < 0.0);
                const double a = std::abs(v);
                if (a < min1) {
                    min2 = min1;
                    min1 = a;
                    argmin = k;
                } else if (a < min2) {
                    min2 = a;
                }
            }
            for (int k = 0; k < deg; ++k) {
                const double v = in(row_ptr[i] + k);
                const double mag = (k == argmin) ? min2 : min1;
                const int s = sign ^ (v < 0.0);
                emit(row_ptr[i] + k, (s ? -1.0 : 1.0) * mag);
            }
        }
    }

    // --- zero-iteration fallbacks ----------------------------------------

    void channel_only_decision(FrameState& st, const std::vector<int>& ch) {
        st.out.hard_decision.resize(n);
        for (int j = 0; j < n; ++j) {
            if (ch[j] == 0) st.out.tie_event = true;
            st.out.hard_decision[j] = ch[j] < 0 ? 1 : 0;
        }
        st.out.success = code->syndrome_is_zero(st.out.hard_decision);
    }

    void channel_only_decision_f(FrameState& st, const std::vector<double>& ch) {
        st.out.hard_decision.resize(n);
        for (int j = 0; j < n; ++j) {
            if (ch[j] == 0.0) st.out.tie_event = true;
            st.out.hard_decision[j] = ch[j] < 0.0 ? 1 : 0;
        }
        st.out.success = code->syndrome_is_zero(st.out.hard_decision);
    }
};

Decoder::Decoder(const SparseParityCheck& code, const DecoderConfig& cfg,
                 const ChannelLlrAlphabet* alphabet)
    : impl_(std::make_unique<Impl>(code, cfg, alphabet)) {}

Decoder::~Decoder() = default;
Decoder::Decoder(Decoder&&) noexcept = default;

const DecoderConfig& Decoder::config() const { return impl_->cfg; }

DecodeOutcome Decoder::decode_labels(const std::vector<int>& channel_labels) {
    if (static_cast<int>(channel_labels.size()) != impl_->n)
        throw std::invalid_argument("decode_labels: word length mismatch");
    switch (impl_->cfg.algorithm) {
        case Algorithm::MsRcq:
            return impl_->cfg.schedule == Schedule::Layered
                       ? impl_->msrcq_layered(channel_labels)
                       : impl_->msrcq_flooding(channel_labels);
        case Algorithm::BpRcq:
            return impl_->bprcq_flooding(channel_labels);
        default:
            throw std::invalid_argument("decode_labels: not an RCQ decoder");
    }
}

DecodeOutcome Decoder::decode_llrs(const std::vector<double>& channel_llrs) {
    if (static_cast<int>(channel_llrs.size()) != impl_->n)
        throw std::invalid_argument("decode_llrs: word length mismatch");
    switch (impl_->cfg.algorithm) {
        case Algorithm::Bp:
            return impl_->cfg.schedule == Schedule::Layered
                       ? impl_->float_layered(channel_llrs)
                       : impl_->float_flooding(channel_llrs);
        case Algorithm::MinSum:
            if (!impl_->cfg.fixed_point)
                return impl_->cfg.schedule == Schedule::Layered
                           ? impl_->float_layered(channel_llrs)
                           : impl_->float_flooding(channel_llrs);
            return impl_->fixed_minsum(channel_llrs);
        case Algorithm::OffsetMinSum:
            return impl_->fixed_minsum(channel_llrs);
        default:
            throw std::invalid_argument("decode_llrs: RCQ decoders take channel labels");
    }
}

DecodeOutcome decode_msrcq_flooding(const SparseParityCheck& code,
                                    const std::vector<int>& llr_words,
                                    const DecoderConfig& cfg,
                                    const ChannelLlrAlphabet& alphabet) {
    DecoderConfig c = cfg;
    c.algorithm = Algorithm::MsRcq;
    c.schedule = Schedule::Flooding;
    return Decoder(code, c, &alphabet).decode_labels(llr_words);
}

DecodeOutcome decode_msrcq_layered(const SparseParityCheck& code,
                                   const std::vector<int>& llr_words,
                                   const DecoderConfig& cfg,
                                   const ChannelLlrAlphabet& alphabet) {
    DecoderConfig c = cfg;
    c.algorithm = Algorithm::MsRcq;
    c.schedule = Schedule::Layered;
    return Decoder(code, c, &alphabet).decode_labels(llr_words);
}

DecodeOutcome decode_bprcq_flooding(const SparseParityCheck& code,
                                    const std::vector<int>& llr_words,
                                    const DecoderConfig& cfg,
                                    const ChannelLlrAlphabet& alphabet) {
    DecoderConfig c = cfg;
    c.algorithm = Algorithm::BpRcq;
    c.schedule = Schedule::Flooding;
    return Decoder(code, c, &alphabet).decode_labels(llr_words);
}

DecodeOutcome decode_baseline(const SparseParityCheck& code,
                              const std::vector<double>& llrs,
                              const DecoderConfig& cfg) {
    return Decoder(code, cfg).decode_llrs(llrs);
}

}  // namespace rcq
