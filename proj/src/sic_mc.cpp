#include "sicnet/sic_mc.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace sicnet {

namespace {

constexpr double kFlagWarnFraction = 1e-3;

void check_replicates(std::size_t replicates)
{
    if (replicates < 2)
        throw std::invalid_argument("at least two replicates are required");
}

void check_query(const DecodeQuery& q)
{
    if (!(q.theta > 0.0))
        throw std::invalid_argument("decode query: theta must be positive");
    if (!(q.noise_w >= 0.0))
        throw std::invalid_argument("decode query: noise power must be non-negative");
    if (q.k_max == 0)
        throw std::invalid_argument("decode query: k_max must be positive");
}

void warn_if_flagged(const char* what, std::size_t flagged, std::size_t replicates)
{
    if (flagged > kFlagWarnFraction * replicates)
        std::cerr << "warning: " << what << ": " << flagged << " of " << replicates
                  << " replicates hit a truncation limit\n";
}

// Sampler and query adjusted by plan_depth.
struct PlannedRun {
    SamplerConfig cfg;
    DecodeQuery q;
};

PlannedRun planned(const SamplerConfig& cfg, const DecodeQuery& q)
{
    const auto plan = plan_depth(cfg, q);
    PlannedRun run{cfg, q};
    run.cfg.n_points = plan.n_points;
    run.q.k_max = plan.k_max;
    return run;
}

std::vector<std::size_t> decode_counts(const RealizationSource& src, const DecodeQuery& q,
                                       std::size_t replicates, ExecPolicy exec)
{
    check_query(q);
    check_replicates(replicates);
    return parallel_map<std::size_t>(replicates, exec,
                                     [&](std::size_t i) { return decode_count(src(i), q); });
}

}  // namespace

RealizationSource splpf_source(const SamplerConfig& cfg)
{
    validate(cfg);
    return [cfg](std::uint64_t i) { return sample_splpf(cfg, i); };
}

RealizationSource ppnf_source(const NetworkParams& net, std::size_t n_points, std::uint64_t master_seed)
{
    validate(net);
    return [net, n_points, master_seed](std::uint64_t i) { return sample_ppnf(net, n_points, master_seed, i); };
}

std::size_t decode_count(const PlpfRealization& r, const DecodeQuery& q)
{
    const std::size_t depth = std::min(q.k_max, r.size());
    std::size_t n = 0;
    for (std::size_t i = 1; i <= depth; ++i) {
        if (!(1.0 / r.xi(i) > q.theta * (r.interference(i) + q.noise_w)))
            break;
        n = i;
    }
    return n;
}

DepthPlan plan_depth(const SamplerConfig& cfg, const DecodeQuery& q)
{
    check_query(q);
    const double nominal = (1.0 - cfg.beta) / (cfg.beta * q.theta);
    const double wanted = 4.0 * nominal + 30.0;
    DepthPlan plan{q.k_max, cfg.n_points};
    if (wanted > static_cast<double>(q.k_max))
        plan.k_max = static_cast<std::size_t>(std::min(std::ceil(wanted), 1e7));
    plan.n_points = std::max(cfg.n_points, 2 * plan.k_max);
    return plan;
}

SicEstimate summarize(std::span<const double> values)
{
    const std::size_t n = values.size();
    check_replicates(n);
    const double mean = pairwise_sum(values) / n;
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i)
        sq[i] = (values[i] - mean) * (values[i] - mean);
    const double var = pairwise_sum(sq) / (n - 1);
    return {mean, std::sqrt(var / n), n, 0};
}

PkEstimate estimate_pk(const RealizationSource& src, const DecodeQuery& q, std::size_t replicates,
                       ExecPolicy exec)
{
    const auto counts = decode_counts(src, q, replicates, exec);
    std::vector<std::size_t> at_least(q.k_max + 2, 0);
    PkEstimate out;
    for (auto n : counts) {
        ++at_least[n];
        if (n == q.k_max)
            ++out.saturated;
    }
    // at_least[k] currently holds #{N == k}; turn it into #{N >= k}.
    for (std::size_t k = q.k_max; k > 0; --k)
        at_least[k - 1] += at_least[k];
    out.pk.reserve(q.k_max);
    const double n = static_cast<double>(replicates);
    for (std::size_t k = 1; k <= q.k_max; ++k) {
        const double p = at_least[k] / n;
        out.pk.push_back({p, std::sqrt(p * (1.0 - p) / (n - 1.0)), replicates, out.saturated});
    }
    return out;
}

PkEstimate estimate_pk(const SamplerConfig& cfg, const DecodeQuery& q, std::size_t replicates, ExecPolicy exec)
{
    // N >= k depends only on the first k decode conditions, so stopping at
    // k_max leaves p_1..p_{k_max} exact; only the points must reach k_max.
    SamplerConfig deep = cfg;
    deep.n_points = std::max(cfg.n_points, q.k_max);
    return estimate_pk(splpf_source(deep), q, replicates, exec);
}

SicEstimate estimate_joint_tail(const SamplerConfig& cfg, double theta, std::size_t k, double noise_w,
                                std::size_t replicates, ExecPolicy exec)
{
    const double thetas[] = {theta};
    const std::size_t ks[] = {k};
    return estimate_joint_tail_grid(cfg, thetas, ks, noise_w, replicates, exec)[0][0];
}

std::vector<std::vector<SicEstimate>> estimate_joint_tail_grid(const SamplerConfig& cfg,
                                                               std::span<const double> thetas,
                                                               std::span<const std::size_t> ks,
                                                               double noise_w, std::size_t replicates,
                                                               ExecPolicy exec)
{
    validate(cfg);
    check_replicates(replicates);
    for (double t : thetas)
        if (!(t > 0.0))
            throw std::invalid_argument("joint tail: theta must be positive");
    for (auto k : ks)
        if (k == 0 || k > cfg.n_points)
            throw std::invalid_argument("joint tail: k must lie in [1, n_points]");

    const std::size_t cells = thetas.size() * ks.size();
    using Hits = std::vector<std::uint8_t>;
    const auto hits = parallel_map<Hits>(replicates, exec, [&](std::size_t i) {
        const auto r = sample_splpf(cfg, i);
        Hits h(cells);
        for (std::size_t t = 0; t < thetas.size(); ++t)
            for (std::size_t j = 0; j < ks.size(); ++j)
                h[t * ks.size() + j] = 1.0 / r.xi(ks[j]) > thetas[t] * (r.interference(ks[j]) + noise_w);
        return h;
    });

    std::vector<std::vector<SicEstimate>> out(thetas.size(), std::vector<SicEstimate>(ks.size()));
    const double n = static_cast<double>(replicates);
    for (std::size_t c = 0; c < cells; ++c) {
        std::size_t count = 0;
        for (const auto& h : hits)
            count += h[c];
        const double p = count / n;
        out[c / ks.size()][c % ks.size()] = {p, std::sqrt(p * (1.0 - p) / (n - 1.0)), replicates, 0};
    }
    return out;
}

SicEstimate estimate_en(const RealizationSource& src, const DecodeQuery& q, std::size_t replicates,
                        ExecPolicy exec)
{
    const auto counts = decode_counts(src, q, replicates, exec);
    std::vector<double> values(counts.begin(), counts.end());
    auto est = summarize(values);
    est.flagged = static_cast<std::size_t>(std::count(counts.begin(), counts.end(), q.k_max));
    warn_if_flagged("E[N]", est.flagged, replicates);
    return est;
}

SicEstimate estimate_en(const SamplerConfig& cfg, const DecodeQuery& q, std::size_t replicates, ExecPolicy exec)
{
    const auto run = planned(cfg, q);
    return estimate_en(splpf_source(run.cfg), run.q, replicates, exec);
}

SicEstimate estimate_throughput(const SamplerConfig& cfg, const DecodeQuery& q, std::size_t replicates,
                                ExecPolicy exec)
{
    auto est = estimate_en(cfg, q, replicates, exec);
    const double rate = std::log1p(q.theta);
    est.value *= rate;
    est.std_error *= rate;
    return est;
}

SicEstimate estimate_laplace_xikIk(const SamplerConfig& cfg, std::size_t k, double s, std::size_t replicates,
                                   ExecPolicy exec)
{
    validate(cfg);
    check_replicates(replicates);
    if (!(s > 0.0))
        throw std::invalid_argument("laplace: s must be positive");
    if (k == 0 || k > cfg.n_points)
        throw std::invalid_argument("laplace: k must lie in [1, n_points]");
    const auto values = parallel_map<double>(replicates, exec, [&](std::size_t i) {
        const auto r = sample_splpf(cfg, i);
        return std::exp(-s * r.xi(k) * r.interference(k));
    });
    return summarize(values);
}

CoverageOutcome hcn_covered(const PlpfRealization& r, const CoverageQuery& q)
{
    if (!r.has_marks())
        throw std::invalid_argument("coverage: realization carries no access marks");
    if (q.sic_layers == 0)
        throw std::invalid_argument("coverage: sic_layers must be at least 1");

    const std::size_t limit = std::min(q.k_max, r.size());
    std::size_t strongest_accessible = 0;
    for (std::size_t i = 1; i <= limit; ++i) {
        if (r.accessible(i)) {
            strongest_accessible = i;
            break;
        }
    }
    if (strongest_accessible == 0)
        return {false, true};
    const std::size_t m_acc = strongest_accessible;

    auto decodable = [&](std::size_t i) { return 1.0 / r.xi(i) > q.theta * r.interference(i); };

    if (q.sic_layers == kUnlimitedSic) {
        // Covered iff the first m_acc users are successively decodable.
        for (std::size_t i = 1; i <= m_acc; ++i)
            if (!decodable(i))
                return {false, false};
        return {true, false};
    }

    // m canceled users (prefix conditions for i <= m), then the strongest
    // remaining accessible user against I_m without itself. Weaker accessible
    // users face the same residual interference, so only m_acc matters.
    const std::size_t max_canceled = std::min({q.sic_layers - 1, q.l_max, r.size()});
    const double inv_acc = 1.0 / r.xi(m_acc);
    for (std::size_t m = 0; m <= max_canceled; ++m) {
        if (m > 0 && !decodable(m))
            break;
        if (m_acc <= m)
            return {true, false};
        if (inv_acc > q.theta * (r.interference(m) - inv_acc))
            return {true, false};
    }
    return {false, false};
}

SicEstimate estimate_coverage(const SamplerConfig& cfg, const CoverageQuery& q, std::size_t replicates,
                              ExecPolicy exec)
{
    if (!(q.eta > 0.0 && q.eta <= 1.0))
        throw std::invalid_argument("coverage: eta must lie in (0, 1]");
    if (!(q.theta > 0.0))
        throw std::invalid_argument("coverage: theta must be positive");
    check_replicates(replicates);
    SamplerConfig marked = cfg;
    marked.mark_prob = q.eta;
    marked.n_points = std::max({cfg.n_points, q.k_max, q.l_max});
    validate(marked);

    const auto outcomes = parallel_map<CoverageOutcome>(
        replicates, exec, [&](std::size_t i) { return hcn_covered(sample_splpf(marked, i), q); });
    std::vector<double> values(replicates);
    std::size_t inconclusive = 0;
    for (std::size_t i = 0; i < replicates; ++i) {
        values[i] = outcomes[i].covered ? 1.0 : 0.0;
        inconclusive += outcomes[i].inconclusive;
    }
    auto est = summarize(values);
    est.flagged = inconclusive;
    warn_if_flagged("coverage", inconclusive, replicates);
    return est;
}

SicEstimate estimate_coverage_series(const SamplerConfig& cfg, double theta, double eta, std::size_t k_terms,
                                     std::size_t replicates, ExecPolicy exec)
{
    if (!(eta > 0.0 && eta <= 1.0))
        throw std::invalid_argument("coverage series: eta must lie in (0, 1]");
    DecodeQuery q{theta, 0.0, k_terms};
    SamplerConfig plain = cfg;
    plain.mark_prob.reset();
    plain.n_points = std::max(cfg.n_points, 2 * k_terms);
    const auto counts = decode_counts(splpf_source(plain), q, replicates, exec);
    std::vector<double> weights(k_terms + 1, 0.0);
    for (std::size_t k = 1; k <= k_terms; ++k)
        weights[k] = weights[k - 1] + eta * std::pow(1.0 - eta, static_cast<double>(k - 1));
    std::vector<double> values(replicates);
    for (std::size_t i = 0; i < replicates; ++i)
        values[i] = weights[counts[i]];
    return summarize(values);
}

}  // namespace sicnet
