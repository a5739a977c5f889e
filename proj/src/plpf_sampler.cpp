#include "sicnet/plpf_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sicnet/rng.hpp"

namespace sicnet {

void validate(const SamplerConfig& cfg)
{
    if (!(cfg.beta > 0.0 && cfg.beta < 1.0))
        throw std::invalid_argument("sampler: beta must lie in (0, 1)");
    if (cfg.n_points < 10)
        throw std::invalid_argument("sampler: n_points must be at least 10");
    if (cfg.mark_prob && !(*cfg.mark_prob >= 0.0 && *cfg.mark_prob <= 1.0))
        throw std::invalid_argument("sampler: mark probability must lie in [0, 1]");
    if (!(cfg.intensity_scale > 0.0))
        throw std::invalid_argument("sampler: intensity scale must be positive");
}

double tail_interference_mean(double beta, double intensity_scale, double rho)
{
    return intensity_scale * beta / (1.0 - beta) * std::pow(rho, beta - 1.0);
}

PlpfRealization::PlpfRealization(std::vector<double> xi, std::vector<std::uint8_t> marks, double tail_mean)
    : xi_(std::move(xi)), marks_(std::move(marks)), tail_mean_(tail_mean), suffix_(xi_.size() + 1)
{
    if (!marks_.empty() && marks_.size() != xi_.size())
        throw std::invalid_argument("realization: marks and xi differ in length");
    // Accumulate from the far end so the small terms are summed first.
    suffix_[xi_.size()] = tail_mean_;
    for (std::size_t k = xi_.size(); k > 0; --k)
        suffix_[k - 1] = suffix_[k] + 1.0 / xi_[k - 1];
}

double suffix_interference(const PlpfRealization& r, std::size_t k)
{
    if (k > r.size())
        throw std::out_of_range("suffix_interference: k = " + std::to_string(k) + " exceeds "
                                + std::to_string(r.size()) + " points");
    return r.interference(k);
}

PlpfRealization sample_splpf(const SamplerConfig& cfg, std::uint64_t replicate_index)
{
    validate(cfg);
    auto rng = make_stream(cfg.master_seed, replicate_index);
    const double inv_beta = 1.0 / cfg.beta;
    std::vector<double> xi(cfg.n_points);
    double t = 0.0;
    for (auto& x : xi) {
        t += exp1(rng);
        x = std::pow(t / cfg.intensity_scale, inv_beta);
    }
    std::vector<std::uint8_t> marks;
    if (cfg.mark_prob) {
        marks.resize(cfg.n_points);
        for (auto& m : marks)
            m = uniform01(rng) < *cfg.mark_prob ? 1 : 0;
    }
    const double tail = cfg.tail_mode == TailMode::compensate_mean
                            ? tail_interference_mean(cfg.beta, cfg.intensity_scale, xi.back())
                            : 0.0;
    return {std::move(xi), std::move(marks), tail};
}

PlpfRealization scale_realization(const PlpfRealization& r, double c)
{
    if (!(c > 0.0))
        throw std::invalid_argument("scale_realization: factor must be positive");
    std::vector<double> xi(r.xi().begin(), r.xi().end());
    for (auto& x : xi)
        x *= c;
    std::vector<std::uint8_t> marks(r.marks().begin(), r.marks().end());
    return {std::move(xi), std::move(marks), r.tail_mean() / c};
}

PlpfRealization sample_ppnf(const NetworkParams& net, std::size_t n_points, std::uint64_t master_seed,
                            std::uint64_t replicate_index)
{
    validate(net);
    if (n_points < 10)
        throw std::invalid_argument("sample_ppnf: n_points must be at least 10");
    auto rng = make_stream(master_seed, replicate_index);

    // Expected number of transmitters within radius R is
    // a d c_d R^{b+d} / (b+d).
    const double shape = net.b + net.d;
    const double count_scale = net.a * net.d * unit_ball_volume(net.d) / shape;
    std::vector<double> xi(n_points);
    double t = 0.0;
    double radius = 0.0;
    for (auto& x : xi) {
        t += exp1(rng);
        radius = std::pow(t / count_scale, 1.0 / shape);
        x = std::pow(radius, net.alpha) / net.fading.draw(rng);
    }
    std::sort(xi.begin(), xi.end());

    // Mean received power from beyond the last radius (E[h] = 1).
    const double tail = net.a * net.d * unit_ball_volume(net.d) * std::pow(radius, shape - net.alpha)
                        / (net.alpha - shape);
    return {std::move(xi), {}, tail};
}

void write_realization_csv(std::ostream& os, const PlpfRealization& r)
{
    os << "index,xi,mark\n";
    char buf[64];
    for (std::size_t i = 1; i <= r.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", r.xi(i));
        os << i << ',' << buf << ',';
        if (r.has_marks())
            os << int(r.accessible(i));
        os << '\n';
    }
}

}  // namespace sicnet
