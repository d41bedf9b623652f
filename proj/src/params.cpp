#include "rcq/params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rcq {

using nlohmann::json;

int FixedPointFormat::to_fixed(double llr) const {
    const double scaled = std::round(llr * scale());
    const double cap = static_cast<double>(max_mag());
    if (scaled > cap) return max_mag();
    if (scaled < -cap) return -max_mag();
    return static_cast<int>(scaled);
}

FixedPointFormat FixedPointFormat::for_llr_range(int total_bits, double l_max) {
    // One sign bit plus enough integer bits to reach l_max.  No extra
    // headroom: sums past the top quantizer threshold saturate harmlessly,
    // and every spare bit is better spent on resolution.
    const int int_bits = static_cast<int>(std::ceil(std::log2(std::ceil(std::max(l_max, 1.0)))));
    int frac = total_bits - 1 - int_bits;
    if (frac < 0) frac = 0;
    return FixedPointFormat{total_bits, frac};
}

const RcqStageParams& RcqParamSet::entry(int t, int r) const {
    if (t < 1 || t > iterations) throw std::out_of_range("RcqParamSet: iteration out of range");
    if (mode == ScheduleMode::Flooding) r = 0;
    if (r < 0 || r >= layers) throw std::out_of_range("RcqParamSet: layer out of range");
    return schedule[static_cast<std::size_t>(t - 1) * layers + r];
}

void RcqParamSet::validate() const {
    const std::size_t half = std::size_t{1} << (b_e - 1);
    if (schedule.size() != static_cast<std::size_t>(iterations) * layers)
        throw std::invalid_argument("RcqParamSet: schedule does not cover all entries");
    for (const auto& s : schedule) {
        if (s.vn_quant_taus.size() != half - 1 || s.cn_recon_values.size() != half)
            throw std::invalid_argument("RcqParamSet: entry array sizes inconsistent with b_e");
        if (is_bp() && (s.cn_quant_taus.size() != half - 1 || s.vn_recon_values.size() != half))
            throw std::invalid_argument("RcqParamSet: missing CN-side arrays for bpRCQ");
    }
}

std::size_t entry_storage_bits(int b_e, int b_v) {
    return static_cast<std::size_t>((1u << b_e) - 1) * (b_v - 1);
}

std::size_t total_storage_bits(const RcqParamSet& params) {
    std::size_t per = entry_storage_bits(params.b_e, params.b_v);
    if (params.is_bp()) per += entry_storage_bits(params.b_e, params.b_ic);
    return per * params.schedule.size();
}

std::string to_string(ScheduleMode mode) {
    return mode == ScheduleMode::Flooding ? "flooding" : "layer_specific";
}

std::string to_string(CnOp op) { return op == CnOp::Min ? "min" : "boxplus"; }

namespace {

ScheduleMode mode_from_string(const std::string& s) {
    if (s == "flooding") return ScheduleMode::Flooding;
    if (s == "layer_specific") return ScheduleMode::LayerSpecific;
    throw std::runtime_error("params: unknown schedule mode " + s);
}

CnOp cn_op_from_string(const std::string& s) {
    if (s == "min") return CnOp::Min;
    if (s == "boxplus") return CnOp::BoxPlus;
    throw std::runtime_error("params: unknown cn op " + s);
}

}  // namespace

std::string params_to_text(const RcqParamSet& params) {
    json j;
    j["format"] = "rcq-params";
    j["version"] = 1;
    j["mode"] = to_string(params.mode);
    j["cn_op"] = to_string(params.cn_op);
    j["b_e"] = params.b_e;
    j["b_v"] = params.b_v;
    j["b_ic"] = params.b_ic;
    j["iterations"] = params.iterations;
    j["layers"] = params.layers;
    j["design_ebno_db"] = params.design_ebno_db;
    j["channel_clip"] = params.channel_clip;
    j["fixed_point"] = {{"total_bits", params.fixed_point.total_bits},
                        {"frac_bits", params.fixed_point.frac_bits}};
    if (params.cn_fixed_point)
        j["cn_fixed_point"] = {{"total_bits", params.cn_fixed_point->total_bits},
                               {"frac_bits", params.cn_fixed_point->frac_bits}};
    json sched = json::array();
    for (const auto& s : params.schedule) {
        json e;
        e["vn_quant_taus"] = s.vn_quant_taus;
        e["cn_recon_values"] = s.cn_recon_values;
        if (!s.cn_quant_taus.empty()) e["cn_quant_taus"] = s.cn_quant_taus;
        if (!s.vn_recon_values.empty()) e["vn_recon_values"] = s.vn_recon_values;
        e["vn_mi_bits"] = s.vn_mi_bits;
        sched.push_back(std::move(e));
    }
    j["schedule"] = std::move(sched);
    return j.dump(2) + "\n";
}

RcqParamSet params_from_text(const std::string& text) {
    json j = json::parse(text);
    if (j.value("format", "") != "rcq-params")
        throw std::runtime_error("params: not an rcq-params file");
    if (j.value("version", 0) != 1)
        throw std::runtime_error("params: unsupported version");
    RcqParamSet p;
    p.mode = mode_from_string(j.at("mode"));
    p.cn_op = cn_op_from_string(j.at("cn_op"));
    p.b_e = j.at("b_e");
    p.b_v = j.at("b_v");
    p.b_ic = j.at("b_ic");
    p.iterations = j.at("iterations");
    p.layers = j.at("layers");
    p.design_ebno_db = j.at("design_ebno_db");
    p.channel_clip = j.at("channel_clip");
    p.fixed_point = {j.at("fixed_point").at("total_bits"), j.at("fixed_point").at("frac_bits")};
    if (j.contains("cn_fixed_point"))
        p.cn_fixed_point = FixedPointFormat{j.at("cn_fixed_point").at("total_bits"),
                                            j.at("cn_fixed_point").at("frac_bits")};
    for (const auto& e : j.at("schedule")) {
        RcqStageParams s;
        s.vn_quant_taus = e.at("vn_quant_taus").get<std::vector<int>>();
        s.cn_recon_values = e.at("cn_recon_values").get<std::vector<int>>();
        if (e.contains("cn_quant_taus")) s.cn_quant_taus = e.at("cn_quant_taus").get<std::vector<int>>();
        if (e.contains("vn_recon_values")) s.vn_recon_values = e.at("vn_recon_values").get<std::vector<int>>();
        s.vn_mi_bits = e.at("vn_mi_bits");
        p.schedule.push_back(std::move(s));
    }
    p.validate();
    return p;
}

void save_params(const RcqParamSet& params, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << params_to_text(params);
}

RcqParamSet load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open params file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return params_from_text(buf.str());
}

}  // namespace rcq
