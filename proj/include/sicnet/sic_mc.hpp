#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "sicnet/parallel.hpp"
#include "sicnet/plpf_sampler.hpp"

namespace sicnet {

/// SIR threshold theta (linear), noise power W and the deepest decode stage tracked.
struct DecodeQuery {
    double theta = 1.0;
    double noise_w = 0.0;
    std::size_t k_max = 50;
};

/// Monte Carlo estimate: sample mean, its standard error (sample standard
/// deviation / sqrt(replicates)) and the number of replicates. `flagged`
/// counts replicates that hit a truncation limit (decode depth saturated, or
/// coverage undecidable within the sampled points).
struct SicEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t replicates = 0;
    std::size_t flagged = 0;
};

/// Produces realization i of some point process.
using RealizationSource = std::function<PlpfRealization(std::uint64_t)>;

RealizationSource splpf_source(const SamplerConfig& cfg);
RealizationSource ppnf_source(const NetworkParams& net, std::size_t n_points, std::uint64_t master_seed);

/// Number of successively decodable users: the largest N <= k_max with
/// 1/xi_i > theta (I_i + W) for every i <= N.
std::size_t decode_count(const PlpfRealization& r, const DecodeQuery& q);

/// Decode depth and truncation actually used for a query. Small thresholds
/// decode on the order of (1-beta)/(beta theta) users, so both the depth
/// limit and the number of sampled points grow with 1/theta.
struct DepthPlan {
    std::size_t k_max = 0;
    std::size_t n_points = 0;
};
DepthPlan plan_depth(const SamplerConfig& cfg, const DecodeQuery& q);

/// Sample mean and standard error of per-replicate values.
SicEstimate summarize(std::span<const double> values);

struct PkEstimate {
    std::vector<SicEstimate> pk;  ///< pk[k-1] estimates P(N >= k), k = 1..k_max
    std::size_t saturated = 0;    ///< replicates with N == k_max (harmless for p_1..p_{k_max})
};

PkEstimate estimate_pk(const SamplerConfig& cfg, const DecodeQuery& q, std::size_t replicates,
                       ExecPolicy exec = {});
PkEstimate estimate_pk(const RealizationSource& src, const DecodeQuery& q, std::size_t replicates,
                       ExecPolicy exec = {});

/// P(1/xi_k > theta (I_k + W)).
SicEstimate estimate_joint_tail(const SamplerConfig& cfg, double theta, std::size_t k, double noise_w,
                                std::size_t replicates, ExecPolicy exec = {});

/// The same probability on a (theta, k) grid from one shared set of
/// realizations; result[t][j] belongs to thetas[t], ks[j].
std::vector<std::vector<SicEstimate>> estimate_joint_tail_grid(const SamplerConfig& cfg,
                                                               std::span<const double> thetas,
                                                               std::span<const std::size_t> ks,
                                                               double noise_w, std::size_t replicates,
                                                               ExecPolicy exec = {});

/// E[N]; `flagged` counts depth-saturated replicates.
SicEstimate estimate_en(const SamplerConfig& cfg, const DecodeQuery& q, std::size_t replicates,
                        ExecPolicy exec = {});
SicEstimate estimate_en(const RealizationSource& src, const DecodeQuery& q, std::size_t replicates,
                        ExecPolicy exec = {});

/// Aggregate throughput ln(1 + theta) E[N] in nats/s/Hz.
SicEstimate estimate_throughput(const SamplerConfig& cfg, const DecodeQuery& q, std::size_t replicates,
                                ExecPolicy exec = {});

/// E[exp(-s xi_k I_k)].
SicEstimate estimate_laplace_xikIk(const SamplerConfig& cfg, std::size_t k, double s, std::size_t replicates,
                                   ExecPolicy exec = {});

inline constexpr std::size_t kUnlimitedSic = std::numeric_limits<std::size_t>::max();

/// Downlink coverage query. sic_layers = n allows canceling up to n - 1
/// users before decoding an accessible one; kUnlimitedSic removes the limit.
struct CoverageQuery {
    double theta = 1.0;
    double eta = 1.0;
    std::size_t sic_layers = kUnlimitedSic;
    std::size_t k_max = 50;
    std::size_t l_max = 50;
};

struct CoverageOutcome {
    bool covered = false;
    /// The strongest accessible point lies beyond k_max (or no sampled point
    /// is accessible); counted as not covered.
    bool inconclusive = false;
};

/// Coverage event on a marked realization: there are m < sic_layers
/// successively decodable strongest users and an accessible index k with
/// 1/xi_k > theta * (I_m minus k's own contribution).
CoverageOutcome hcn_covered(const PlpfRealization& r, const CoverageQuery& q);

/// Coverage probability; the sampler's mark probability is set to q.eta.
SicEstimate estimate_coverage(const SamplerConfig& cfg, const CoverageQuery& q, std::size_t replicates,
                              ExecPolicy exec = {});

/// sum_{k <= k_terms} (1-eta)^{k-1} eta P(N >= k) estimated from the
/// per-replicate weighted count, at W = 0.
SicEstimate estimate_coverage_series(const SamplerConfig& cfg, double theta, double eta, std::size_t k_terms,
                                     std::size_t replicates, ExecPolicy exec = {});

}  // namespace sicnet
