#include "rcq/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcq {

int golden_section_argmax(const std::function<double(int)>& f, int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("golden_section_argmax: empty interval");
    const int lo0 = lo, hi0 = hi;
    const double inv_gamma = 2.0 / (std::sqrt(5.0) + 1.0);

    while (hi - lo > 4) {
        const int width = hi - lo;
        int c = hi - static_cast<int>(std::lround(width * inv_gamma));
        int d = lo + static_cast<int>(std::lround(width * inv_gamma));
        if (c <= lo) c = lo + 1;
        if (d >= hi) d = hi - 1;
        if (c >= d) break;
        if (f(c) < f(d))
            lo = c + 1;
        else
            hi = d - 1;
    }

    auto scan = [&f](int a, int b) {
        int best = a;
        double best_val = f(a);
        for (int i = a + 1; i <= b; ++i) {
            const double v = f(i);
            if (v > best_val) {
                best_val = v;
                best = i;
            }
        }
        return best;
    };

    int best = scan(lo, hi);
    // Concavity can be broken by floating-point wobble; a full scan then
    // restores exactness.
    const bool left_ok = best == lo0 || f(best - 1) <= f(best);
    const bool right_ok = best == hi0 || f(best + 1) <= f(best);
    if (!left_ok || !right_ok) best = scan(lo0, hi0);
    return best;
}

namespace {

// Prefix sums over the sorted joint table, for O(1) region masses.
struct PrefixSums {
    std::vector<double> c0, c1;

    explicit PrefixSums(const JointLabelPmf& pmf) {
        const std::size_t k = pmf.size();
        c0.assign(k + 1, 0.0);
        c1.assign(k + 1, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            c0[i + 1] = c0[i] + pmf.p0()[i];
            c1[i + 1] = c1[i] + pmf.p1()[i];
        }
    }

    double m0(int lo, int hi) const { return c0[hi + 1] - c0[lo]; }  // inclusive
    double m1(int lo, int hi) const { return c1[hi + 1] - c1[lo]; }
};

// MI gain of splitting [lo, hi] at s (left [lo, s-1], right [s, hi]).
// Maximizing this over s maximizes the conditional MI of the new bit.
double split_objective(const PrefixSums& ps, int lo, int hi, int s) {
    return partial_mi_bits(ps.m0(lo, s - 1), ps.m1(lo, s - 1)) +
           partial_mi_bits(ps.m0(s, hi), ps.m1(s, hi));
}

JointLabelPmf aggregate_regions(const JointLabelPmf& sorted, const std::vector<int>& starts) {
    const int k = static_cast<int>(sorted.size());
    const int groups = static_cast<int>(starts.size());
    std::vector<double> q0(groups, 0.0), q1(groups, 0.0);
    for (int g = 0; g < groups; ++g) {
        const int lo = starts[g];
        const int hi = (g + 1 < groups) ? starts[g + 1] - 1 : k - 1;
        for (int i = lo; i <= hi; ++i) {
            q0[g] += sorted.p0()[i];
            q1[g] += sorted.p1()[i];
        }
    }
    return JointLabelPmf(std::move(q0), std::move(q1));
}

}  // namespace

HdqResult hdq(const JointLabelPmf& pmf, int bits) {
    if (bits < 1) throw std::invalid_argument("hdq: need bits >= 1");
    const int target = 1 << bits;
    if (static_cast<int>(pmf.size()) < target)
        throw std::invalid_argument("hdq: fewer labels than quantizer outputs");
    int live = 0;
    for (std::size_t d = 0; d < pmf.size(); ++d)
        if (pmf.p0()[d] + pmf.p1()[d] > 0.0) ++live;
    if (live < target)
        throw std::invalid_argument("hdq: fewer than 2^b labels with nonzero mass");

    auto [sorted, perm] = pmf.sorted_by_llr();
    const PrefixSums ps(sorted);
    const int k = static_cast<int>(sorted.size());

    // Regions as inclusive [lo, hi] intervals, kept in ascending-LLR order.
    std::vector<std::pair<int, int>> regions{{0, k - 1}};
    for (int level = 0; level < bits; ++level) {
        std::vector<std::pair<int, int>> next;
        next.reserve(regions.size() * 2);
        // Each side of a split must keep enough labels for its remaining
        // bit levels, which also keeps every final region non-empty.
        const int need = 1 << (bits - level - 1);
        for (auto [lo, hi] : regions) {
            const int s_lo = lo + need;
            const int s_hi = hi - need + 1;
            if (s_lo > s_hi) throw std::invalid_argument("hdq: region too small to split");
            const int s = golden_section_argmax(
                [&](int i) { return split_objective(ps, lo, hi, i); }, s_lo, s_hi);
            next.emplace_back(lo, s - 1);
            next.emplace_back(s, hi);
        }
        regions = std::move(next);
    }

    std::vector<int> starts(regions.size());
    for (std::size_t g = 0; g < regions.size(); ++g) starts[g] = regions[g].first;

    HdqResult out;
    out.thresholds.bits = bits;
    out.thresholds.xi.assign(starts.begin() + 1, starts.end());
    out.quantized = aggregate_regions(sorted, starts);
    out.sort_perm = std::move(perm);
    out.mi_bits = out.quantized.mutual_information_bits();
    return out;
}

DpResult dp_optimal_quantizer(const JointLabelPmf& pmf, int bits) {
    if (bits < 1) throw std::invalid_argument("dp_optimal_quantizer: need bits >= 1");
    const int groups = 1 << bits;
    const int k = static_cast<int>(pmf.size());
    if (k < groups)
        throw std::invalid_argument("dp_optimal_quantizer: fewer labels than outputs");

    auto [sorted, perm] = pmf.sorted_by_llr();
    (void)perm;
    const PrefixSums ps(sorted);
    auto pm = [&ps](int lo, int hi) { return partial_mi_bits(ps.m0(lo, hi), ps.m1(lo, hi)); };

    constexpr double kNegInf = -1e300;
    // best[w]: max MI of grouping labels [0, w-1] into the current number of
    // groups; choice[j][w]: start index of group j in that optimum.
    std::vector<double> best(k + 1, kNegInf), prev(k + 1, kNegInf);
    std::vector<std::vector<int>> choice(groups, std::vector<int>(k + 1, -1));
    for (int w = 1; w <= k; ++w) {
        prev[w] = pm(0, w - 1);
        choice[0][w] = 0;
    }
    for (int j = 1; j < groups; ++j) {
        std::fill(best.begin(), best.end(), kNegInf);
        for (int w = j + 1; w <= k; ++w) {
            for (int u = j; u < w; ++u) {
                if (prev[u] == kNegInf) continue;
                const double v = prev[u] + pm(u, w - 1);
                if (v > best[w]) {
                    best[w] = v;
                    choice[j][w] = u;
                }
            }
        }
        std::swap(best, prev);
    }

    DpResult out;
    out.thresholds.bits = bits;
    out.mi_bits = prev[k];
    std::vector<int> starts(groups);
    int w = k;
    for (int j = groups - 1; j >= 0; --j) {
        starts[j] = choice[j][w];
        w = starts[j];
    }
    out.thresholds.xi.assign(starts.begin() + 1, starts.end());
    return out;
}

MagnitudeQuantizer thresholds_to_llr(const JointLabelPmf& sorted_pmf,
                                     const IndexThresholds& xi) {
    if (xi.bits < 2)
        throw std::invalid_argument("thresholds_to_llr: need at least 2 bits");
    if (!sorted_pmf.is_symmetric())
        throw std::invalid_argument("thresholds_to_llr: PMF must be symmetric");
    const int half = 1 << (xi.bits - 1);
    MagnitudeQuantizer q;
    q.bits = xi.bits;
    q.taus.resize(half - 1);
    for (int i = 0; i + 2 <= half; ++i) q.taus[i] = sorted_pmf.llr(xi.xi[i + half]);
    // Saturated densities park near-zero mass on some labels, whose noise
    // LLRs can dip below zero or out of order.  Isotonic cleanup, as in
    // reconstruction_from_pmf; ties make the in-between region unreachable,
    // which the quantizer handles.
    if (!q.taus.empty()) q.taus[0] = std::max(q.taus[0], 0.0);
    for (std::size_t i = 1; i < q.taus.size(); ++i)
        q.taus[i] = std::max(q.taus[i], q.taus[i - 1]);
    return q;
}

MagnitudeReconstruction reconstruction_from_pmf(const JointLabelPmf& quantized) {
    const int k = static_cast<int>(quantized.size());
    const int half = k / 2;
    if (half * 2 != k)
        throw std::invalid_argument("reconstruction_from_pmf: label count must be even");
    MagnitudeReconstruction r;
    r.values.resize(half);
    for (int d = 0; d < half; ++d) r.values[d] = quantized.llr(d + half);
    // Labels whose mass has collapsed (saturated densities) carry noise
    // LLRs; restore monotonicity with the running max.  In the operating
    // regime the values are strictly increasing and this is a no-op.
    r.values[0] = std::max(r.values[0], 0.0);
    for (int d = 1; d < half; ++d) r.values[d] = std::max(r.values[d], r.values[d - 1]);
    return r;
}

}  // namespace rcq
