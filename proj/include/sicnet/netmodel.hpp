#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace sicnet {

enum class FadingKind { none, exponential, custom };

/// Distribution of the iid power fading coefficient h, normalized to E[h] = 1.
///
/// Only the fractional moment E[h^beta] enters the path loss process. For
/// custom fading it is either supplied or estimated from the sampler.
struct FadingSpec {
    using Sampler = std::function<double(std::mt19937_64&)>;

    FadingKind kind = FadingKind::none;
    Sampler sampler;
    std::optional<double> beta_moment;

    static FadingSpec none() { return {}; }
    static FadingSpec exponential() { return {FadingKind::exponential, {}, std::nullopt}; }
    static FadingSpec custom(Sampler s, std::optional<double> moment = std::nullopt)
    {
        return {FadingKind::custom, std::move(s), moment};
    }

    /// Draws one fading coefficient. Non-fading returns 1.
    double draw(std::mt19937_64& rng) const;
};

struct MomentEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// E[h^beta]; exact for none/exponential, supplied or Monte Carlo for custom.
MomentEstimate fractional_moment(const FadingSpec& fading, double beta);

/// Power-law Poisson network with fading: transmitter density a |x|^b in R^d,
/// path loss |x|^alpha.
struct NetworkParams {
    int d = 2;
    double alpha = 4.0;
    double a = 1.0;
    double b = 0.0;
    FadingSpec fading;
};

/// Throws std::invalid_argument unless b lies strictly inside (-d, alpha - d).
void validate(const NetworkParams& p);

/// Volume of the d-dimensional unit ball, pi^{d/2} / Gamma(d/2 + 1).
double unit_ball_volume(int d);

double delta_of(const NetworkParams& p);
double beta_of(const NetworkParams& p);

/// a-bar such that the path loss process has intensity measure a-bar * r^beta.
double plpf_intensity_scale(const NetworkParams& p);

struct TierParams {
    double lambda = 1.0;
    double power = 1.0;
    double access_prob = 1.0;
    FadingSpec fading;
};

/// K-tier downlink in the plane with a shared path loss exponent.
struct HcnParams {
    std::vector<TierParams> tiers;
    double alpha = 4.0;
};

struct HcnReduction {
    double Z = 0.0;
    double eta = 0.0;
    double beta = 0.0;

    /// Intensity scale of the merged path loss process, Lambda([0,r]) = Z pi r^beta.
    double intensity_scale() const;
};

void validate(const HcnParams& h);
HcnReduction hcn_reduce(const HcnParams& h);

/// Linear SIR threshold from decibels.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace sicnet
