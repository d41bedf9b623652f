#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rcq {

// Joint PMF P(X, D) between an equiprobable code bit X in {0,1} and a
// discrete message label D in {0,...,K-1}.  The per-label LLR is
// log(P(0,d)/P(1,d)) in nats.
class JointLabelPmf {
public:
    JointLabelPmf() = default;
    JointLabelPmf(std::vector<double> p0, std::vector<double> p1);

    std::size_t size() const { return p0_.size(); }
    double p(int x, std::size_t d) const { return x == 0 ? p0_[d] : p1_[d]; }
    const std::vector<double>& p0() const { return p0_; }
    const std::vector<double>& p1() const { return p1_; }

    double llr(std::size_t d) const;
    std::vector<double> llrs() const;

    double total_mass() const;
    // I(X;D) in bits, assuming P_X(0)=P_X(1)=1/2.
    double mutual_information_bits() const;

    bool is_normalized(double tol = 1e-12) const;
    // P(0,d) == P(1,K-1-d) within tol.
    bool is_symmetric(double tol = 1e-9) const;
    bool is_llr_sorted() const;

    // Returns the PMF with labels reordered by ascending LLR together with
    // the permutation (perm[i] = original index of sorted position i).
    std::pair<JointLabelPmf, std::vector<std::size_t>> sorted_by_llr() const;

    // Averages the PMF with its label mirror, removing floating-point
    // asymmetry.  Requires the labels to already be in LLR order.
    void symmetrize();

    // Rescales total mass to exactly 1.  Products of masses amplify any
    // normalization defect multiplicatively, so iterative pipelines must
    // renormalize every stage.
    void normalize();

    // Limits every |LLR| to cap nats by raising the smaller mass of the
    // pair.  Keeps saturating densities out of the underflow regime where
    // per-label LLRs become meaningless.
    void clamp_llr(double cap);

    static JointLabelPmf zero_information(std::size_t labels);
    // All X=0 mass on the top label, all X=1 mass on the bottom one.
    static JointLabelPmf perfect_knowledge(std::size_t labels);

private:
    std::vector<double> p0_;
    std::vector<double> p1_;
};

// Contribution of one label group with masses (q0, q1) to I(X;D), in bits.
// Summing over the groups of any partition gives the partition's MI.
double partial_mi_bits(double q0, double q1);

// Binary entropy in bits.
double binary_entropy_bits(double p);

}  // namespace rcq
