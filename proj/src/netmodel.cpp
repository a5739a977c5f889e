#include "sicnet/netmodel.hpp"

#include "sicnet/rng.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sicnet {

namespace {

constexpr std::uint64_t kMomentSeed = 0x5eed0f4d1e5ULL;
constexpr int kMomentDraws = 1000000;

}  // namespace

double FadingSpec::draw(std::mt19937_64& rng) const
{
    switch (kind) {
    case FadingKind::none:
        return 1.0;
    case FadingKind::exponential:
        return exp1(rng);
    case FadingKind::custom:
        if (!sampler)
            throw std::invalid_argument("custom fading requires a sampler");
        return sampler(rng);
    }
    return 1.0;
}

MomentEstimate fractional_moment(const FadingSpec& fading, double beta)
{
    switch (fading.kind) {
    case FadingKind::none:
        return {1.0, 0.0};
    case FadingKind::exponential:
        return {std::tgamma(1.0 + beta), 0.0};
    case FadingKind::custom:
        break;
    }
    if (fading.beta_moment)
        return {*fading.beta_moment, 0.0};
    if (!fading.sampler)
        throw std::invalid_argument("custom fading: neither E[h^beta] nor a sampler was supplied");

    std::mt19937_64 rng(kMomentSeed);
    double mean = 0.0;
    double m2 = 0.0;
    for (int i = 1; i <= kMomentDraws; ++i) {
        const double v = std::pow(fading.sampler(rng), beta);
        const double delta = v - mean;
        mean += delta / i;
        m2 += delta * (v - mean);
    }
    const double var = m2 / (kMomentDraws - 1);
    return {mean, std::sqrt(var / kMomentDraws)};
}

void validate(const NetworkParams& p)
{
    if (p.d < 1)
        throw std::invalid_argument("dimension d must be a positive integer");
    if (!(p.alpha > 0.0))
        throw std::invalid_argument("path loss exponent alpha must be positive");
    if (!(p.a > 0.0))
        throw std::invalid_argument("density scale a must be positive");
    if (!(p.b > -p.d && p.b < p.alpha - p.d))
        throw std::invalid_argument("density exponent b must lie in (-d, alpha - d), got b = "
                                    + std::to_string(p.b));
    if (p.d > 3)
        std::cerr << "warning: dimension d = " << p.d << " is outside the usual 1..3 range\n";
}

double unit_ball_volume(int d)
{
    if (d < 1)
        throw std::invalid_argument("dimension d must be a positive integer");
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double delta_of(const NetworkParams& p)
{
    validate(p);
    return p.d / p.alpha;
}

double beta_of(const NetworkParams& p)
{
    validate(p);
    return (p.d + p.b) / p.alpha;
}

double plpf_intensity_scale(const NetworkParams& p)
{
    const double beta = beta_of(p);
    const double moment = fractional_moment(p.fading, beta).value;
    return p.a * delta_of(p) * unit_ball_volume(p.d) * moment / beta;
}

double HcnReduction::intensity_scale() const { return Z * std::numbers::pi; }

void validate(const HcnParams& h)
{
    if (h.tiers.empty())
        throw std::invalid_argument("HCN needs at least one tier");
    if (!(h.alpha > 2.0))
        throw std::invalid_argument("HCN path loss exponent must exceed 2 (beta = 2/alpha < 1)");
    for (const auto& t : h.tiers) {
        if (!(t.lambda > 0.0))
            throw std::invalid_argument("tier density must be positive");
        if (!(t.power > 0.0))
            throw std::invalid_argument("tier transmit power must be positive");
        if (!(t.access_prob >= 0.0 && t.access_prob <= 1.0))
            throw std::invalid_argument("tier access probability must lie in [0, 1]");
    }
}

HcnReduction hcn_reduce(const HcnParams& h)
{
    validate(h);
    const double beta = 2.0 / h.alpha;
    double z = 0.0;
    double accessible = 0.0;
    for (const auto& t : h.tiers) {
        const double w = t.lambda * fractional_moment(t.fading, beta).value * std::pow(t.power, beta);
        z += w;
        accessible += t.access_prob * w;
    }
    return {z, accessible / z, beta};
}

}  // namespace sicnet
