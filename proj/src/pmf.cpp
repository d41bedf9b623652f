#include "rcq/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rcq {

namespace {
constexpr double kMassFloor = 1e-300;
}

JointLabelPmf::JointLabelPmf(std::vector<double> p0, std::vector<double> p1)
    : p0_(std::move(p0)), p1_(std::move(p1)) {
    if (p0_.size() != p1_.size())
        throw std::invalid_argument("JointLabelPmf: mismatched table sizes");
}

double JointLabelPmf::llr(std::size_t d) const {
    return std::log(std::max(p0_[d], kMassFloor)) -
           std::log(std::max(p1_[d], kMassFloor));
}

std::vector<double> JointLabelPmf::llrs() const {
    std::vector<double> out(size());
    for (std::size_t d = 0; d < size(); ++d) out[d] = llr(d);
    return out;
}

double JointLabelPmf::total_mass() const {
    return std::accumulate(p0_.begin(), p0_.end(), 0.0) +
           std::accumulate(p1_.begin(), p1_.end(), 0.0);
}

double JointLabelPmf::mutual_information_bits() const {
    double mi = 0.0;
    for (std::size_t d = 0; d < size(); ++d) mi += partial_mi_bits(p0_[d], p1_[d]);
    return mi;
}

bool JointLabelPmf::is_normalized(double tol) const {
    return std::abs(total_mass() - 1.0) <= tol;
}

bool JointLabelPmf::is_symmetric(double tol) const {
    const std::size_t k = size();
    for (std::size_t d = 0; d < k; ++d)
        if (std::abs(p0_[d] - p1_[k - 1 - d]) > tol) return false;
    return true;
}

bool JointLabelPmf::is_llr_sorted() const {
    for (std::size_t d = 1; d < size(); ++d)
        if (llr(d) < llr(d - 1)) return false;
    return true;
}

std::pair<JointLabelPmf, std::vector<std::size_t>> JointLabelPmf::sorted_by_llr() const {
    std::vector<std::size_t> perm(size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<double> l = llrs();
    std::stable_sort(perm.begin(), perm.end(),
                     [&l](std::size_t a, std::size_t b) { return l[a] < l[b]; });
    std::vector<double> q0(size()), q1(size());
    for (std::size_t i = 0; i < size(); ++i) {
        q0[i] = p0_[perm[i]];
        q1[i] = p1_[perm[i]];
    }
    return {JointLabelPmf(std::move(q0), std::move(q1)), std::move(perm)};
}

void JointLabelPmf::symmetrize() {
    const std::size_t k = size();
    for (std::size_t d = 0; d < k; ++d) {
        if (d > k - 1 - d) break;
        const double a = 0.5 * (p0_[d] + p1_[k - 1 - d]);
        const double b = 0.5 * (p1_[d] + p0_[k - 1 - d]);
        p0_[d] = a;
        p1_[k - 1 - d] = a;
        p1_[d] = b;
        p0_[k - 1 - d] = b;
    }
}

void JointLabelPmf::normalize() {
    const double mass = total_mass();
    if (mass <= 0.0) throw std::runtime_error("JointLabelPmf: cannot normalize zero mass");
    for (double& v : p0_) v /= mass;
    for (double& v : p1_) v /= mass;
}

void JointLabelPmf::clamp_llr(double cap) {
    const double r = std::exp(-cap);
    for (std::size_t d = 0; d < size(); ++d) {
        if (p1_[d] < p0_[d] * r) p1_[d] = p0_[d] * r;
        if (p0_[d] < p1_[d] * r) p0_[d] = p1_[d] * r;
    }
}

JointLabelPmf JointLabelPmf::zero_information(std::size_t labels) {
    std::vector<double> u(labels, 0.5 / static_cast<double>(labels));
    return JointLabelPmf(u, u);
}

JointLabelPmf JointLabelPmf::perfect_knowledge(std::size_t labels) {
    std::vector<double> q0(labels, 0.0), q1(labels, 0.0);
    q0[labels - 1] = 0.5;
    q1[0] = 0.5;
    return JointLabelPmf(std::move(q0), std::move(q1));
}

double partial_mi_bits(double q0, double q1) {
    double mi = 0.0;
    const double qd = q0 + q1;
    if (qd <= 0.0) return 0.0;
    if (q0 > 0.0) mi += q0 * std::log2(q0 / (0.5 * qd));
    if (q1 > 0.0) mi += q1 * std::log2(q1 / (0.5 * qd));
    return mi;
}

double binary_entropy_bits(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

}  // namespace rcq
