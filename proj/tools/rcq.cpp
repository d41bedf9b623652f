// rcq: design and evaluate reconstruction-computation-quantization LDPC
// decoders.  Subcommands: design, simulate, compare-quantizers, params-size,
// gen-code.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "rcq/channel.hpp"
#include "rcq/codes.hpp"
#include "rcq/dde.hpp"
#include "rcq/decoder.hpp"
#include "rcq/params.hpp"
#include "rcq/quantizer.hpp"
#include "rcq/sim.hpp"

namespace {

constexpr const char* kVersion = "rcq 1.0.0";

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumeric = 4;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open: " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[65536];
    while (in) {
        in.read(buf, sizeof buf);
        EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i)
        os << "0123456789abcdef"[digest[i] >> 4] << "0123456789abcdef"[digest[i] & 15];
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write: " + path);
    out << text;
}

void write_manifest(const std::string& out_path, const std::string& subcommand,
                    nlohmann::json params, const std::vector<std::string>& inputs) {
    nlohmann::json m;
    m["tool"] = kVersion;
    m["subcommand"] = subcommand;
    m["parameters"] = std::move(params);
    nlohmann::json digests = nlohmann::json::object();
    for (const auto& p : inputs) digests[p] = sha256_file(p);
    m["input_sha256"] = std::move(digests);
    write_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

rcq::QcBaseMatrix load_base(const std::string& path) {
    try {
        return rcq::parse_base_matrix_file(path);
    } catch (const std::exception& e) {
        throw InputError(std::string("bad base matrix: ") + e.what());
    }
}

// ---------------------------------------------------------------------------

int cmd_design(const std::string& base_path, const std::string& mode,
               const std::string& cn_op, int be, int bv, int bic, int iters,
               double ebno_db, bool at_threshold, double clip, std::size_t max_labels,
               const std::string& out_path) {
    const rcq::QcBaseMatrix base = load_base(base_path);
    rcq::DdeOptions opt;
    opt.b_e = be;
    opt.b_v = bv;
    opt.b_ic = bic;
    opt.iterations = iters;
    opt.clip = clip;
    opt.max_labels = max_labels;
    opt.cn_op = cn_op == "boxplus" ? rcq::CnOp::BoxPlus : rcq::CnOp::Min;
    const rcq::ScheduleMode smode = mode == "layered" ? rcq::ScheduleMode::LayerSpecific
                                                      : rcq::ScheduleMode::Flooding;
    if (smode == rcq::ScheduleMode::LayerSpecific && opt.cn_op == rcq::CnOp::BoxPlus)
        throw CLI::ValidationError("layered boxplus design is not supported");

    double design_db = ebno_db;
    rcq::ThresholdResult thr;
    if (at_threshold) {
        thr = rcq::find_threshold(base, opt, smode);
        if (!thr.found) throw std::runtime_error("no threshold found in [0, 6] dB");
        design_db = thr.ebno_db;
        std::printf("threshold: %.2f dB\n", design_db);
    }

    const rcq::AwgnChannel chan =
        rcq::AwgnChannel::from_ebno_db(design_db, rcq::base_matrix_rate(base));
    const rcq::DdeResult res = smode == rcq::ScheduleMode::LayerSpecific
                                   ? rcq::dde_layer_specific(base, chan, opt)
                                   : rcq::dde_flooding(base, chan, opt);
    rcq::save_params(res.params, out_path);

    nlohmann::json p{{"mode", mode},     {"cn_op", cn_op},
                     {"b_e", be},        {"b_v", bv},
                     {"b_ic", bic},      {"iterations", iters},
                     {"ebno_db", design_db}, {"at_threshold", at_threshold},
                     {"clip", clip},     {"max_labels", max_labels},
                     {"final_min_mi_bits", res.state.final_min_mi()}};
    if (at_threshold) p["found_threshold_db"] = thr.ebno_db;
    write_manifest(out_path, "design", std::move(p), {base_path});
    std::printf("wrote %s (%zu entries, final MI %.6f bits)\n", out_path.c_str(),
                res.params.schedule.size(), res.state.final_min_mi());
    return 0;
}

int cmd_simulate(const std::string& code_path, const std::string& base_path,
                 const std::string& decoder, const std::string& params_path,
                 double offset, int fixed_bits, const std::string& schedule,
                 const std::vector<double>& ebno_list, long long min_errors,
                 long long max_frames, uint64_t seed, int workers,
                 const std::string& out_path) {
    rcq::SparseParityCheck code;
    std::vector<std::string> inputs;
    if (!code_path.empty()) {
        try {
            code = rcq::parse_alist_file(code_path);
        } catch (const std::exception& e) {
            throw InputError(std::string("bad alist: ") + e.what());
        }
        inputs.push_back(code_path);
    } else {
        code = rcq::expand(load_base(base_path));
        inputs.push_back(base_path);
    }

    rcq::DecoderConfig cfg;
    cfg.schedule = schedule == "layered" ? rcq::Schedule::Layered : rcq::Schedule::Flooding;
    cfg.offset = offset;

    rcq::RcqParamSet params;
    std::optional<rcq::ChannelLlrAlphabet> alphabet;
    const double rate = static_cast<double>(code.n - code.m) / code.n;
    if (decoder == "msrcq" || decoder == "bprcq") {
        if (params_path.empty())
            throw CLI::ValidationError("--params is required for RCQ decoders");
        try {
            params = rcq::load_params(params_path);
        } catch (const std::exception& e) {
            throw InputError(std::string("bad params: ") + e.what());
        }
        inputs.push_back(params_path);
        cfg.algorithm = decoder == "msrcq" ? rcq::Algorithm::MsRcq : rcq::Algorithm::BpRcq;
        cfg.params = &params;
        cfg.max_iterations = params.iterations;
        cfg.schedule = params.mode == rcq::ScheduleMode::LayerSpecific
                           ? rcq::Schedule::Layered
                           : rcq::Schedule::Flooding;
        // The simulation alphabet is the one the parameters were designed
        // for: the uniform b_v channel quantizer at the design point.
        const rcq::AwgnChannel design_chan =
            rcq::AwgnChannel::from_ebno_db(params.design_ebno_db, rate);
        alphabet = rcq::uniform_llr_quantizer(design_chan, params.b_v, params.channel_clip);
    } else if (decoder == "bp") {
        cfg.algorithm = rcq::Algorithm::Bp;
    } else if (decoder == "minsum") {
        cfg.algorithm = rcq::Algorithm::MinSum;
        if (fixed_bits > 0) cfg.fixed_point = rcq::FixedPointFormat::for_llr_range(fixed_bits, 16.0);
    } else if (decoder == "oms") {
        cfg.algorithm = rcq::Algorithm::OffsetMinSum;
        cfg.fixed_point = rcq::FixedPointFormat::for_llr_range(fixed_bits > 0 ? fixed_bits : 10, 16.0);
    } else {
        throw CLI::ValidationError("unknown decoder: " + decoder);
    }

    rcq::StopRule stop{min_errors, max_frames};
    const auto rows = rcq::run_sweep(code, ebno_list, cfg, stop, seed, workers,
                                     alphabet ? &*alphabet : nullptr);
    const std::string csv = rcq::sweep_csv(rows);
    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        write_file(out_path, csv);
        nlohmann::json p{{"decoder", decoder},       {"schedule", schedule},
                         {"offset", offset},         {"fixed_bits", fixed_bits},
                         {"ebno_list", ebno_list},   {"min_errors", min_errors},
                         {"max_frames", max_frames}, {"seed", seed},
                         {"frame_error_metric", "full codeword, all-zero transmission"}};
        write_manifest(out_path, "simulate", std::move(p), inputs);
        std::printf("wrote %s (%zu points)\n", out_path.c_str(), rows.size());
    }
    return 0;
}

int cmd_compare_quantizers(int b, int big_b, double range,
                           const std::vector<double>& sigma2_list,
                           const std::string& out_path) {
    std::ostringstream os;
    os << "sigma2,i_dp_bits,i_hdq_bits,delta_i_bits,thresholds_llr\n";
    os.precision(10);
    for (double s2 : sigma2_list) {
        const rcq::AwgnChannel chan = rcq::AwgnChannel::from_sigma(std::sqrt(s2));
        const rcq::DiscretizedChannel disc = rcq::discretize_awgn(chan, big_b, range);
        const rcq::HdqResult h = rcq::hdq(disc.joint, b);
        const rcq::DpResult d = rcq::dp_optimal_quantizer(disc.joint, b);
        auto [sorted, perm] = disc.joint.sorted_by_llr();
        (void)perm;
        os << s2 << ',' << d.mi_bits << ',' << h.mi_bits << ',' << d.mi_bits - h.mi_bits
           << ',';
        // Full threshold set in LLR units as region-boundary midpoints,
        // antisymmetric about zero for symmetric inputs.
        for (std::size_t i = 0; i < h.thresholds.xi.size(); ++i) {
            const int xi = h.thresholds.xi[i];
            os << (i ? ";" : "") << 0.5 * (sorted.llr(xi - 1) + sorted.llr(xi));
        }
        os << '\n';
    }
    if (out_path.empty())
        std::fputs(os.str().c_str(), stdout);
    else
        write_file(out_path, os.str());
    return 0;
}

int cmd_params_size(const std::string& params_path) {
    rcq::RcqParamSet p;
    try {
        p = rcq::load_params(params_path);
    } catch (const std::exception& e) {
        throw InputError(std::string("bad params: ") + e.what());
    }
    std::printf("mode: %s, cn_op: %s, b_e=%d b_v=%d", rcq::to_string(p.mode).c_str(),
                rcq::to_string(p.cn_op).c_str(), p.b_e, p.b_v);
    if (p.is_bp()) std::printf(" b_ic=%d", p.b_ic);
    std::printf("\nentries: %zu (%d iterations x %d layers)\n", p.schedule.size(),
                p.iterations, p.layers);
    std::printf("per-entry storage: %zu bits\n", rcq::entry_storage_bits(p.b_e, p.b_v));
    if (p.is_bp())
        std::printf("per-entry CN-side storage: %zu bits\n",
                    rcq::entry_storage_bits(p.b_e, p.b_ic));
    std::printf("total storage: %zu bits\n", rcq::total_storage_bits(p));
    return 0;
}

int cmd_gen_code(int layers, int cols, int circulant, int vn_degree, uint64_t seed,
                 const std::string& out_path, const std::string& alist_path) {
    const rcq::QuasiRegularReport rep =
        rcq::make_quasi_regular_qc(layers, cols, circulant, vn_degree, seed);
    write_file(out_path, rcq::serialize_base_matrix(rep.base));
    if (!alist_path.empty())
        write_file(alist_path, rcq::serialize_alist(rcq::expand(rep.base)));
    std::printf("wrote %s: %dx%d blocks, S=%d, residual 4-cycles %d\n", out_path.c_str(),
                layers, cols, circulant, rep.residual_circulant_4cycles);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reconstruction-computation-quantization LDPC decoder toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // design
    auto* design = app.add_subcommand("design", "Run discrete density evolution");
    std::string d_base, d_mode = "flooding", d_cnop = "min", d_out;
    int d_be = 4, d_bv = 10, d_bic = 0, d_iters = 50;
    double d_ebno = 0.0, d_clip = 2.0;
    std::size_t d_maxlab = 1024;
    bool d_at_thr = false;
    design->add_option("--base-matrix", d_base)->required();
    design->add_option("--mode", d_mode)->check(CLI::IsMember({"flooding", "layered"}));
    design->add_option("--cn-op", d_cnop)->check(CLI::IsMember({"min", "boxplus"}));
    design->add_option("--be", d_be);
    design->add_option("--bv", d_bv);
    design->add_option("--bic", d_bic);
    design->add_option("--iters", d_iters);
    auto* ebno_opt = design->add_option("--ebno-db", d_ebno);
    auto* thr_flag = design->add_flag("--at-threshold", d_at_thr);
    ebno_opt->excludes(thr_flag);
    design->add_option("--clip", d_clip);
    design->add_option("--max-labels", d_maxlab);
    design->add_option("--out", d_out)->required();

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo FER sweep");
    std::string s_code, s_base, s_dec, s_params, s_sched = "flooding", s_out;
    double s_offset = 0.5;
    int s_fixed = 0, s_workers = 0;
    std::vector<double> s_ebno;
    long long s_minerr = 100, s_maxframes = 1000000;
    uint64_t s_seed = 1;
    auto* code_opt = sim->add_option("--code", s_code);
    sim->add_option("--base-matrix", s_base)->excludes(code_opt);
    sim->add_option("--decoder", s_dec)
        ->required()
        ->check(CLI::IsMember({"msrcq", "bprcq", "bp", "minsum", "oms"}));
    sim->add_option("--params", s_params);
    sim->add_option("--offset", s_offset);
    sim->add_option("--fixed-bits", s_fixed);
    sim->add_option("--schedule", s_sched)->check(CLI::IsMember({"flooding", "layered"}));
    sim->add_option("--ebno-list", s_ebno)->required()->expected(-1);
    sim->add_option("--min-errors", s_minerr);
    sim->add_option("--max-frames", s_maxframes);
    sim->add_option("--seed", s_seed);
    sim->add_option("--workers", s_workers);
    sim->add_option("--out", s_out);

    // compare-quantizers
    auto* cq = app.add_subcommand("compare-quantizers", "HDQ vs optimal DP quantizer");
    int q_b = 3, q_big = 2000;
    double q_range = 2.0;
    std::vector<double> q_s2;
    std::string q_out;
    cq->add_option("--b", q_b);
    cq->add_option("--B", q_big);
    cq->add_option("--range", q_range);
    cq->add_option("--sigma2-list", q_s2)->required()->expected(-1);
    cq->add_option("--out", q_out);

    // params-size
    auto* ps = app.add_subcommand("params-size", "Report parameter storage cost");
    std::string p_params;
    ps->add_option("--params", p_params)->required();

    // gen-code
    auto* gen = app.add_subcommand("gen-code", "Generate a quasi-regular QC code");
    int g_layers = 10, g_cols = 37, g_circ = 32, g_deg = 4;
    uint64_t g_seed = 7;
    std::string g_out, g_alist;
    gen->add_option("--layers", g_layers);
    gen->add_option("--cols", g_cols);
    gen->add_option("--circulant", g_circ);
    gen->add_option("--vn-degree", g_deg);
    gen->add_option("--seed", g_seed);
    gen->add_option("--out", g_out)->required();
    gen->add_option("--alist-out", g_alist);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (design->parsed()) {
            if (!d_at_thr && ebno_opt->count() == 0)
                throw CLI::ValidationError("design needs --ebno-db or --at-threshold");
            return cmd_design(d_base, d_mode, d_cnop, d_be, d_bv, d_bic, d_iters, d_ebno,
                              d_at_thr, d_clip, d_maxlab, d_out);
        }
        if (sim->parsed()) {
            if (s_code.empty() && s_base.empty())
                throw CLI::ValidationError("simulate needs --code or --base-matrix");
            return cmd_simulate(s_code, s_base, s_dec, s_params, s_offset, s_fixed,
                                s_sched, s_ebno, s_minerr, s_maxframes, s_seed, s_workers,
                                s_out);
        }
        if (cq->parsed()) return cmd_compare_quantizers(q_b, q_big, q_range, q_s2, q_out);
        if (ps->parsed()) return cmd_params_size(p_params);
        if (gen->parsed())
            return cmd_gen_code(g_layers, g_cols, g_circ, g_deg, g_seed, g_out, g_alist);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
