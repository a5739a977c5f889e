#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sicnet/bounds.hpp"
#include "sicnet/sic_mc.hpp"

using namespace sicnet;

namespace {

bool within(const SicEstimate& e, double target, double sigmas = 3.0)
{
    return std::fabs(e.value - target) <= sigmas * e.std_error;
}

// Two independent estimates agree at the two-sided 1% level.
bool agree(const SicEstimate& a, const SicEstimate& b)
{
    return std::fabs(a.value - b.value) <= 2.576 * std::hypot(a.std_error, b.std_error);
}

double thm1(std::size_t k, double beta, double theta)
{
    return 1.0 / (std::pow(theta, k * beta) * std::tgamma(1.0 + k * beta) * std::pow(std::tgamma(1.0 - beta), k));
}

}  // namespace

TEST_CASE("decode count on hand-built realizations")
{
    CHECK(decode_count(PlpfRealization({1.0}, {}, 0.0), {1.0, 0.0, 50}) == 1);
    const PlpfRealization two({1.0, 1.5}, {}, 0.0);
    CHECK(decode_count(two, {1.0, 0.0, 50}) == 2);
    CHECK(decode_count(two, {1.0, 0.7, 50}) == 0);
    CHECK(decode_count(two, {1.0, 0.0, 1}) == 1);
    // 1 > 2 (1/2 + 1/2) fails immediately.
    CHECK(decode_count(PlpfRealization({1.0, 2.0, 2.0}, {}, 0.0), {2.0, 0.0, 50}) == 0);
}

TEST_CASE("p_1 at theta = 1 equals sinc(beta)")
{
    SamplerConfig cfg;
    const auto est = estimate_pk(cfg, {1.0, 0.0, 5}, 20000);
    CHECK(within(est.pk[0], 2.0 / std::numbers::pi));
    for (std::size_t k = 1; k < est.pk.size(); ++k)
        CHECK(est.pk[k].value <= est.pk[k - 1].value);
    CHECK(est.pk[1].value >= bounds::pk_smud_lb(2, 0.5, 1.0).value - 3.0 * est.pk[1].std_error);
    CHECK(est.pk[1].value <= bounds::pk_smud_ub(2, 0.5, 1.0).value + 3.0 * est.pk[1].std_error);
}

TEST_CASE("vanishing threshold decodes the strongest user")
{
    SamplerConfig cfg;
    cfg.n_points = 100;
    CHECK(estimate_pk(cfg, {1e-6, 0.0, 1}, 1000).pk[0].value > 0.999);
    CHECK(estimate_joint_tail(cfg, 1e-6, 1, 0.0, 1000).value > 0.999);
}

TEST_CASE("joint tail probability against the exact closed form")
{
    SamplerConfig cfg;
    const double thetas[] = {1.0, 2.0, 5.0, 0.5};
    const std::size_t ks[] = {1, 2, 3, 4, 5};
    for (double beta : {1.0 / 3.0, 0.5, 2.0 / 3.0}) {
        cfg.beta = beta;
        const auto grid = estimate_joint_tail_grid(cfg, thetas, ks, 0.0, 20000);
        for (std::size_t t = 0; t < 4; ++t) {
            for (std::size_t j = 0; j < 5; ++j) {
                CAPTURE(beta);
                CAPTURE(thetas[t]);
                CAPTURE(ks[j]);
                const double exact = thm1(ks[j], beta, thetas[t]);
                // Binomial standard error at the exact value; cells with a
                // tiny expected count are outside the normal regime.
                const double p = std::min(exact, 1.0);
                const double se = std::sqrt(p * (1.0 - p) / 20000.0);
                if (exact * 20000.0 < 10.0)
                    continue;
                if (thetas[t] >= 1.0)
                    CHECK(std::fabs(grid[t][j].value - exact) <= 3.0 * se);
                else
                    CHECK(grid[t][j].value <= exact + 3.0 * se);
            }
        }
    }
    cfg.beta = 0.5;
    CHECK(within(estimate_joint_tail(cfg, 1.0, 2, 0.0, 20000), 1.0 / std::numbers::pi));
}

TEST_CASE("grid and single-cell joint tail share realizations")
{
    SamplerConfig cfg;
    cfg.n_points = 50;
    const double thetas[] = {0.5, 2.0};
    const std::size_t ks[] = {1, 3};
    const auto grid = estimate_joint_tail_grid(cfg, thetas, ks, 0.1, 500);
    CHECK(grid[1][1].value == estimate_joint_tail(cfg, 2.0, 3, 0.1, 500).value);
    CHECK_THROWS_AS(estimate_joint_tail(cfg, 1.0, 51, 0.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(estimate_joint_tail(cfg, 0.0, 1, 0.0, 100), std::invalid_argument);
}

TEST_CASE("mean number of decodable users and throughput")
{
    SamplerConfig cfg;
    cfg.n_points = 100;
    const auto huge = estimate_en(cfg, {1e6, 0.0, 50}, 2000);
    CHECK(huge.value < 0.01);

    const auto r = estimate_throughput(cfg, {1.0, 0.0, 50}, 5000);
    const auto n = estimate_en(cfg, {1.0, 0.0, 50}, 5000);
    CHECK(r.value == doctest::Approx(std::log(2.0) * n.value));
    CHECK(r.std_error == doctest::Approx(std::log(2.0) * n.std_error));

    // With noise the throughput vanishes as theta -> 0 and peaks in between.
    cfg.n_points = 1000;
    const auto low = estimate_throughput(cfg, {1e-3, 1.0, 50}, 2000);
    const auto mid = estimate_throughput(cfg, {0.1, 1.0, 50}, 2000);
    CHECK(low.value < 0.05);
    CHECK(low.value < mid.value);
}

TEST_CASE("depth planning grows with 1/theta")
{
    SamplerConfig cfg;
    const auto plan = plan_depth(cfg, {1e-3, 0.0, 50});
    CHECK(plan.k_max >= 4000);
    CHECK(plan.n_points >= 2 * plan.k_max);
    const auto easy = plan_depth(cfg, {1.0, 0.0, 50});
    CHECK(easy.k_max == 50);
    CHECK(easy.n_points == 1000);
}

TEST_CASE("Laplace transform of xi_k I_k")
{
    SamplerConfig cfg;
    const double c1 = std::sqrt(std::numbers::pi) * std::erf(1.0) - 1.0 + std::exp(-1.0);
    CHECK(c1 == doctest::Approx(0.8615).epsilon(1e-4));
    const auto l1 = estimate_laplace_xikIk(cfg, 1, 1.0, 20000);
    CHECK(within(l1, 1.0 / (1.0 + c1)));
    CHECK(within(l1, 0.5372, 3.0 + 0.0001 / l1.std_error));
    const auto l2 = estimate_laplace_xikIk(cfg, 2, 1.0, 20000);
    CHECK(within(l2, 1.0 / ((1.0 + c1) * (1.0 + c1))));
    CHECK(estimate_laplace_xikIk(cfg, 1, 1e-9, 100).value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(estimate_laplace_xikIk(cfg, 1, 0.0, 100), std::invalid_argument);
}

TEST_CASE("estimates are invariant to the worker count")
{
    SamplerConfig cfg;
    cfg.n_points = 100;
    const auto a = estimate_pk(cfg, {0.5, 0.0, 10}, 1001, {1});
    const auto b = estimate_pk(cfg, {0.5, 0.0, 10}, 1001, {3});
    for (std::size_t k = 0; k < 10; ++k)
        CHECK(a.pk[k].value == b.pk[k].value);
    CHECK(estimate_en(cfg, {0.5, 0.0, 10}, 777, {1}).value == estimate_en(cfg, {0.5, 0.0, 10}, 777, {4}).value);
}

TEST_CASE("monotonicity along realizations")
{
    SamplerConfig cfg;
    cfg.n_points = 200;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto r = sample_splpf(cfg, i);
        const auto n1 = decode_count(r, {0.2, 0.0, 100});
        const auto n2 = decode_count(r, {0.5, 0.0, 100});
        const auto n3 = decode_count(r, {0.5, 0.3, 100});
        CHECK(n1 >= n2);
        CHECK(n2 >= n3);
    }
}

TEST_CASE("scale invariance without noise")
{
    SamplerConfig cfg;
    cfg.n_points = 200;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto r = sample_splpf(cfg, i);
        for (double c : {1e-3, 0.5, 7.0, 1e4})
            CHECK(decode_count(scale_realization(r, c), {0.3, 0.0, 100}) == decode_count(r, {0.3, 0.0, 100}));
    }
}

TEST_CASE("denser networks decode more users under noise")
{
    SamplerConfig sparse;
    sparse.n_points = 200;
    SamplerConfig dense = sparse;
    dense.intensity_scale = 5.0;
    std::size_t strictly = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto a = decode_count(sample_splpf(sparse, i), {0.3, 1.0, 100});
        const auto b = decode_count(sample_splpf(dense, i), {0.3, 1.0, 100});
        CHECK(b >= a);
        strictly += b > a;
    }
    CHECK(strictly > 0);
}

TEST_CASE("fading invariance: plane network with Rayleigh fading versus the standard process")
{
    SamplerConfig cfg;
    NetworkParams net;
    net.fading = FadingSpec::exponential();
    const DecodeQuery q{1.0, 0.0, 5};
    const auto std_pk = estimate_pk(splpf_source(cfg), q, 20000);
    const auto net_pk = estimate_pk(ppnf_source(net, 1000, 77), q, 20000);
    for (std::size_t k = 0; k < 3; ++k) {
        CAPTURE(k);
        CHECK(agree(std_pk.pk[k], net_pk.pk[k]));
    }
}

TEST_CASE("fading lowers the success probability under noise")
{
    // Same density a = 1 in the plane: Rayleigh fading shrinks the intensity
    // scale from pi to pi Gamma(3/2). Paired on common realizations.
    SamplerConfig plain;
    plain.n_points = 200;
    plain.intensity_scale = std::numbers::pi;
    SamplerConfig faded = plain;
    faded.intensity_scale = std::numbers::pi * std::tgamma(1.5);
    const DecodeQuery q{1.0, 1.0, 1};
    std::size_t plain_only = 0;
    std::size_t faded_only = 0;
    for (std::uint64_t i = 0; i < 20000; ++i) {
        const auto a = decode_count(sample_splpf(plain, i), q);
        const auto b = decode_count(sample_splpf(faded, i), q);
        plain_only += a > b;
        faded_only += b > a;
    }
    CHECK(faded_only == 0);
    CHECK(plain_only > 0);
}

TEST_CASE("at most one user exceeds theta >= 1 against everyone else")
{
    std::mt19937_64 rng(5);
    std::exponential_distribution<double> e;
    std::uniform_real_distribution<double> u(1.0, 4.0);
    for (int trial = 0; trial < 5000; ++trial) {
        std::vector<double> xi(2 + trial % 9);
        double t = 0.0;
        for (auto& x : xi) {
            t += e(rng);
            x = std::pow(t, 1.0 / 0.4);
        }
        const double theta = trial % 3 == 0 ? 1.0 : u(rng);
        double total = 0.0;
        for (double x : xi)
            total += 1.0 / x;
        int winners = 0;
        for (double x : xi)
            winners += 1.0 / x > theta * (total - 1.0 / x);
        CHECK(winners <= 1);
    }
}

TEST_CASE("coverage reduces to the no-SIC event with one layer")
{
    SamplerConfig cfg;
    cfg.n_points = 100;
    cfg.mark_prob = 1.0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto r = sample_splpf(cfg, i);
        const CoverageQuery q{0.7, 1.0, 1, 50, 50};
        CHECK(hcn_covered(r, q).covered == (1.0 / r.xi(1) > 0.7 * r.interference(1)));
    }
}

TEST_CASE("coverage events on hand-built realizations")
{
    // Strongest user inaccessible and decodable, second accessible.
    const PlpfRealization r({1.0, 4.0, 100.0}, {0, 1, 0}, 0.0);
    CHECK_FALSE(hcn_covered(r, {1.0, 0.5, 1, 50, 50}).covered);
    CHECK(hcn_covered(r, {1.0, 0.5, 2, 50, 50}).covered);
    CHECK(hcn_covered(r, {1.0, 0.5, kUnlimitedSic, 50, 50}).covered);
    // No accessible point in range.
    const PlpfRealization none({1.0, 2.0}, {0, 0}, 0.0);
    const auto out = hcn_covered(none, {1.0, 0.5, kUnlimitedSic, 50, 50});
    CHECK_FALSE(out.covered);
    CHECK(out.inconclusive);
    CHECK_THROWS_AS(hcn_covered(PlpfRealization({1.0}, {}, 0.0), {}), std::invalid_argument);
}

TEST_CASE("more SIC layers never hurt coverage")
{
    SamplerConfig cfg;
    cfg.n_points = 200;
    cfg.mark_prob = 0.4;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto r = sample_splpf(cfg, i);
        bool prev = false;
        for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{10}, kUnlimitedSic}) {
            const bool c = hcn_covered(r, {0.8, 0.4, n, 150, 150}).covered;
            CHECK(c >= prev);
            prev = c;
        }
    }
}

TEST_CASE("coverage without SIC at theta >= 1")
{
    SamplerConfig cfg;
    for (double theta : {1.0, 2.0}) {
        const auto e = estimate_coverage(cfg, {theta, 0.6, 1, 100, 100}, 20000);
        CHECK(within(e, 0.6 * (2.0 / std::numbers::pi) / std::sqrt(theta)));
        CHECK(e.flagged == 0);
    }
}

TEST_CASE("coverage with unlimited SIC equals the access-weighted series")
{
    SamplerConfig direct;
    SamplerConfig series = direct;
    series.master_seed = 99;
    const auto a = estimate_coverage(direct, {1.0, 0.6, kUnlimitedSic, 100, 100}, 20000);
    const auto b = estimate_coverage_series(series, 1.0, 0.6, 20, 20000);
    CHECK(std::fabs(a.value - b.value) <= 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("inconclusive coverage is flagged")
{
    SamplerConfig cfg;
    cfg.n_points = 10;
    const auto e = estimate_coverage(cfg, {1.0, 0.05, kUnlimitedSic, 10, 10}, 1000);
    CHECK(e.flagged > 100);
}

TEST_CASE("summaries and argument checks")
{
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto s = summarize(v);
    CHECK(s.value == doctest::Approx(2.5));
    CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(s.replicates == 4);
    SamplerConfig cfg;
    CHECK_THROWS_AS(estimate_pk(cfg, {1.0, 0.0, 5}, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_pk(cfg, {0.0, 0.0, 5}, 100), std::invalid_argument);
    CHECK_THROWS_AS(estimate_en(cfg, {1.0, -1.0, 5}, 100), std::invalid_argument);
    CHECK_THROWS_AS(estimate_coverage(cfg, {1.0, 0.0, 1, 50, 50}, 100), std::invalid_argument);
}
