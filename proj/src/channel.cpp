#include "rcq/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rcq {

namespace {

double std_normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

// P(y in [a,b] | x = 0) for BPSK over AWGN, i.e. N(+1, sigma^2) mass.
double cell_mass_given_zero(double a, double b, double sigma) {
    const double lo = std::isinf(a) ? 0.0 : std_normal_cdf((a - 1.0) / sigma);
    const double hi = std::isinf(b) ? 1.0 : std_normal_cdf((b - 1.0) / sigma);
    return hi - lo;
}

}  // namespace

AwgnChannel AwgnChannel::from_sigma(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("AwgnChannel: sigma must be positive");
    return AwgnChannel{sigma};
}

AwgnChannel AwgnChannel::from_ebno_db(double ebno_db, double rate) {
    const double ebno = std::pow(10.0, ebno_db / 10.0);
    return from_sigma(std::sqrt(1.0 / (2.0 * rate * ebno)));
}

double AwgnChannel::ebno_db(double rate) const {
    return 10.0 * std::log10(1.0 / (2.0 * rate * sigma * sigma));
}

DiscretizedChannel discretize_awgn(const AwgnChannel& chan, int cardinality, double clip) {
    if (cardinality < 2) throw std::invalid_argument("discretize_awgn: need B >= 2");
    if (!(clip > 0.0)) throw std::invalid_argument("discretize_awgn: clip must be positive");
    const int B = cardinality;
    const double Y = clip;
    std::vector<double> p0(B), p1(B), grid(B);
    const double step = 2.0 * Y / B;
    for (int w = 0; w < B; ++w) {
        const double a = (w == 0) ? -std::numeric_limits<double>::infinity() : -Y + step * w;
        const double b = (w == B - 1) ? std::numeric_limits<double>::infinity() : -Y + step * (w + 1);
        p0[w] = 0.5 * cell_mass_given_zero(a, b, chan.sigma);
        grid[w] = -Y + step * (w + 0.5);
    }
    // Channel symmetry is imposed by construction: P(1,w) = P(0,B-1-w).
    for (int w = 0; w < B; ++w) p1[w] = p0[B - 1 - w];

    DiscretizedChannel out;
    out.cardinality = B;
    out.clip = Y;
    out.joint = JointLabelPmf(std::move(p0), std::move(p1));
    out.y_grid = std::move(grid);
    if (!out.joint.is_llr_sorted())
        throw std::runtime_error("discretize_awgn: LLR monotonicity violated");
    return out;
}

int ChannelLlrAlphabet::label_of(double y) const {
    const int B = static_cast<int>(levels.size());
    const double step = 2.0 * clip / B;
    int w = static_cast<int>(std::floor((y + clip) / step));
    if (w < 0) w = 0;
    if (w >= B) w = B - 1;
    return w;
}

ChannelLlrAlphabet uniform_llr_quantizer(const AwgnChannel& chan, int bits, double clip) {
    if (bits < 1) throw std::invalid_argument("uniform_llr_quantizer: need bits >= 1");
    const int B = 1 << bits;
    DiscretizedChannel disc = discretize_awgn(chan, B, clip);
    ChannelLlrAlphabet out;
    out.bits = bits;
    out.clip = clip;
    out.joint = disc.joint;
    out.levels = disc.joint.llrs();
    return out;
}

FrameSampler::FrameSampler(const AwgnChannel& chan, uint64_t seed)
    : sigma_(chan.sigma), rng_(seed), normal_(0.0, 1.0) {}

void FrameSampler::fill(std::vector<double>& y, std::size_t n) {
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = next();
}

std::vector<int> sample_llr_words(const AwgnChannel& chan, std::size_t n,
                                  const ChannelLlrAlphabet& alphabet, uint64_t seed) {
    FrameSampler sampler(chan, seed);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = alphabet.label_of(sampler.next());
    return labels;
}

}  // namespace rcq
