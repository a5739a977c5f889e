#include "sicnet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sicnet/specfun.hpp"

namespace sicnet::bounds {

namespace {

namespace sf = sicnet::specfun;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxEnTerms = 200;
constexpr double kEnTruncationTarget = 1e-6;
constexpr double kHcnResidualTarget = 1e-9;

void check_beta(double beta)
{
    if (!(beta > 0.0 && beta < 1.0))
        throw std::domain_error("beta must lie in (0, 1)");
}

void check_theta(double theta)
{
    if (!(theta > 0.0))
        throw std::domain_error("theta must be positive");
}

void check_k(std::size_t k)
{
    if (k == 0)
        throw std::domain_error("k must be at least 1");
}

void check_eta(double eta)
{
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("eta must lie in [0, 1]");
}

void check_common(std::size_t k, double beta, double theta)
{
    check_k(k);
    check_beta(beta);
    check_theta(theta);
}

BoundValue clamp_probability(double v, bool valid = true, bool exact = false)
{
    BoundValue b{v, valid, false, exact};
    if (v > 1.0) {
        b.value = 1.0;
        b.clamped = true;
    }
    if (b.value < 0.0)
        b.value = 0.0;
    return b;
}

// Exponent beta k (k-1) / 2 of the ordering factors.
double ordering_exponent(std::size_t k, double beta)
{
    const double kk = static_cast<double>(k);
    return 0.5 * beta * kk * (kk - 1.0);
}

double log_thm1(std::size_t k, double beta, double theta)
{
    const double kb = k * beta;
    return -kb * std::log(theta) - std::lgamma(1.0 + kb) - k * std::lgamma(1.0 - beta);
}

double delta1_at(std::size_t k, double beta, double theta)
{
    const double x = (1.0 - beta) / (theta * beta);
    const double kk = static_cast<double>(k);
    // gamma(k+1, x) / Gamma(k) = k * reg_lower(k+1, x).
    const double v = sf::reg_lower_gamma(kk, x) - theta * beta / (1.0 - beta) * kk * sf::reg_lower_gamma(kk + 1.0, x);
    return std::clamp(v, 0.0, 1.0);
}

// C(k) = theta^{-beta} theta_bar^{-beta (k-1) / 2}.
double smud_ratio(std::size_t k, double beta, double theta)
{
    const double theta_bar = std::max(theta, 1.0);
    return std::pow(theta, -beta) * std::pow(theta_bar, -0.5 * beta * (static_cast<double>(k) - 1.0));
}

}  // namespace

double delta1(std::size_t k, double beta, double theta)
{
    check_common(k, beta, theta);
    return delta1_at(k, beta, theta);
}

double c_of_s(double s, double beta)
{
    check_beta(beta);
    if (!(s > 0.0))
        throw std::domain_error("c(s): s must be positive");
    return std::pow(s, beta) * sf::lower_inc_gamma(1.0 - beta, s) + std::expm1(-s);
}

double delta2(std::size_t k, double beta, double theta)
{
    check_common(k, beta, theta);
    const double c = c_of_s(theta, beta);
    const double kk = static_cast<double>(k);
    const double v = sf::reg_lower_gamma(kk, 1.0 / c)
                     + std::exp(1.0 - kk * std::log1p(c)) * sf::reg_upper_gamma(kk, 1.0 + 1.0 / c);
    return std::clamp(v, 0.0, 1.0);
}

BoundValue thm1_exact(std::size_t k, double beta, double theta)
{
    check_common(k, beta, theta);
    return clamp_probability(std::exp(log_thm1(k, beta, theta)), true, theta >= 1.0);
}

double pk_hr_lb(std::size_t k, double beta, double theta)
{
    check_common(k, beta, theta);
    return std::pow(1.0 + theta, -ordering_exponent(k, beta)) * delta1_at(k, beta, theta);
}

double pk_lr_lb(std::size_t k, double beta, double theta)
{
    check_common(k, beta, theta);
    if (!(static_cast<double>(k) < 1.0 / theta + 1.0))
        throw std::domain_error("low-rate lower bound requires k < 1/theta + 1");
    const double theta_tilde = theta / (1.0 - (static_cast<double>(k) - 1.0) * theta);
    return delta1_at(k, beta, theta_tilde);
}

BoundValue pk_combined_ub(std::size_t k, double beta, double theta)
{
    const double d2 = delta2(k, beta, theta);
    const double theta_bar = std::max(theta, 1.0);
    return clamp_probability(std::pow(theta_bar, -ordering_exponent(k, beta)) * d2);
}

BoundValue pk_smud_lb(std::size_t k, double beta, double theta)
{
    check_common(k, beta, theta);
    const double v = std::exp(-ordering_exponent(k, beta) * std::log1p(theta) + log_thm1(k, beta, theta));
    return clamp_probability(v, theta >= 1.0);
}

BoundValue pk_smud_ub(std::size_t k, double beta, double theta)
{
    check_common(k, beta, theta);
    const double theta_bar = std::max(theta, 1.0);
    const double v = std::exp(-ordering_exponent(k, beta) * std::log(theta_bar) + log_thm1(k, beta, theta));
    return clamp_probability(v, true, k == 1 && theta >= 1.0);
}

EnLowerBound en_lb(double beta, double theta, std::size_t K)
{
    check_common(K, beta, theta);
    double sum = 0.0;
    for (std::size_t k = 1; k <= K; ++k)
        sum += pk_hr_lb(k, beta, theta);
    const double log_rate = std::log1p(theta);
    const double err = std::pow(1.0 + theta, beta / 8.0) * delta1_at(K, beta, theta) * std::sqrt(std::numbers::pi)
                       / std::sqrt(2.0 * beta * log_rate)
                       * sf::erfc((static_cast<double>(K) - 0.5) * std::sqrt(0.5 * beta * log_rate));
    return {sum, err, K};
}

EnLowerBound en_lb(double beta, double theta)
{
    EnLowerBound best;
    for (std::size_t K = 1; K <= kMaxEnTerms; ++K) {
        best = en_lb(beta, theta, K);
        if (best.truncation_error < kEnTruncationTarget)
            break;
    }
    return best;
}

double en_lr_lb(double beta, double theta)
{
    check_beta(beta);
    check_theta(theta);
    const auto terms = static_cast<std::size_t>(std::floor(1.0 / theta));
    double sum = 0.0;
    for (std::size_t k = 1; k <= terms; ++k)
        sum += pk_lr_lb(k, beta, theta);
    return sum;
}

namespace {

double en_ub_tail(double c, std::size_t K)
{
    const double kk = static_cast<double>(K);
    const double first = std::exp(1.0 + kk + (1.0 - kk) * std::log(c * kk) - 0.5 * std::log(2.0 * std::numbers::pi))
                         / (c * kk - 1.0);
    const double second = std::numbers::e / c * std::exp((1.0 - kk) * std::log1p(c));
    return first + second;
}

double combined_term(std::size_t k, double beta, double theta)
{
    const double theta_bar = std::max(theta, 1.0);
    return std::pow(theta_bar, -ordering_exponent(k, beta)) * delta2(k, beta, theta);
}

}  // namespace

double en_ub(double beta, double theta, std::size_t K)
{
    check_common(K, beta, theta);
    const double c = c_of_s(theta, beta);
    if (!(static_cast<double>(K) >= std::numbers::e / c))
        throw std::domain_error("E[N] upper bound requires K >= e/c(theta) = " + std::to_string(std::numbers::e / c));
    double sum = 0.0;
    for (std::size_t k = 1; k < K; ++k)
        sum += combined_term(k, beta, theta);
    return sum + en_ub_tail(c, K);
}

BoundValue en_ub(double beta, double theta)
{
    check_beta(beta);
    check_theta(theta);
    const double c = c_of_s(theta, beta);
    const auto k0 = static_cast<std::size_t>(std::max(1.0, std::ceil(std::numbers::e / c)));
    double prefix = 0.0;
    for (std::size_t k = 1; k < k0; ++k)
        prefix += combined_term(k, beta, theta);
    double best = kInf;
    for (std::size_t K = k0; K <= k0 + kMaxEnTerms; ++K) {
        best = std::min(best, prefix + en_ub_tail(c, K));
        prefix += combined_term(K, beta, theta);
    }
    return {best, true, false, false};
}

namespace {

double smud_term(std::size_t k, double beta, double theta, double scale)
{
    // (scale C(k) / Gamma(1-beta))^k / Gamma(1 + k beta)
    const double kk = static_cast<double>(k);
    return std::exp(kk * (std::log(scale * smud_ratio(k, beta, theta)) - std::lgamma(1.0 - beta))
                    - std::lgamma(1.0 + kk * beta));
}

double smud_tail(std::size_t K, double beta, double theta, double scale)
{
    const double g = std::tgamma(1.0 - beta);
    return smud_term(K, beta, theta, scale) * g / (g - scale * smud_ratio(K, beta, theta));
}

bool smud_admissible(std::size_t K, double beta, double theta, double scale)
{
    return scale * smud_ratio(K, beta, theta) < std::tgamma(1.0 - beta);
}

}  // namespace

double en_smud_ub(double beta, double theta, std::size_t K)
{
    check_common(K, beta, theta);
    if (!smud_admissible(K, beta, theta, 1.0))
        throw std::domain_error("SMUD E[N] bound requires C(K) < Gamma(1 - beta)");
    double sum = 0.0;
    for (std::size_t k = 1; k < K; ++k)
        sum += smud_term(k, beta, theta, 1.0);
    return sum + smud_tail(K, beta, theta, 1.0);
}

BoundValue en_smud_ub(double beta, double theta)
{
    check_beta(beta);
    check_theta(theta);
    double prefix = 0.0;
    double best = kInf;
    for (std::size_t K = 1; K <= kMaxEnTerms; ++K) {
        if (smud_admissible(K, beta, theta, 1.0))
            best = std::min(best, prefix + smud_tail(K, beta, theta, 1.0));
        prefix += smud_term(K, beta, theta, 1.0);
    }
    return {best, std::isfinite(best), false, false};
}

double r_lt_approx(double theta, double beta)
{
    check_theta(theta);
    return std::log1p(theta) / c_of_s(theta, beta);
}

double r_asymptotic(double beta)
{
    check_beta(beta);
    return 1.0 / beta - 1.0;
}

namespace {

void check_noise(double theta, double noise_w, double a_bar, double beta)
{
    check_beta(beta);
    check_theta(theta);
    if (!(noise_w > 0.0))
        throw std::domain_error("noise power W must be positive");
    if (!(a_bar > 0.0))
        throw std::domain_error("intensity scale a_bar must be positive");
}

}  // namespace

double noisy_tail_ub(std::size_t k, double theta, double noise_w, double a_bar, double beta)
{
    check_k(k);
    check_noise(theta, noise_w, a_bar, beta);
    return sf::reg_lower_gamma(static_cast<double>(k), noisy_en_ub(theta, noise_w, a_bar, beta));
}

double noisy_en_ub(double theta, double noise_w, double a_bar, double beta)
{
    check_noise(theta, noise_w, a_bar, beta);
    return a_bar / std::pow(theta * noise_w, beta);
}

double noisy_r_ub(double theta, double noise_w, double a_bar, double beta)
{
    const double rate = std::log1p(theta);
    double ub = rate * noisy_en_ub(theta, noise_w, a_bar, beta);
    ub = std::min(ub, rate * en_ub(beta, theta).value);
    const auto smud = en_smud_ub(beta, theta);
    if (smud.valid)
        ub = std::min(ub, rate * smud.value);
    return ub;
}

std::size_t default_hcn_terms(double eta)
{
    check_eta(eta);
    if (eta >= 1.0)
        return 1;
    std::size_t K = 1;
    while (std::pow(1.0 - eta, static_cast<double>(K + 1)) >= kHcnResidualTarget && K < 5000)
        ++K;
    return K;
}

namespace {

// eta (1 - eta)^{k-1}, with 0^0 = 1.
double access_weight(std::size_t k, double eta)
{
    return k == 1 ? eta : eta * std::pow(1.0 - eta, static_cast<double>(k - 1));
}

void check_hcn(double theta, double beta, double eta)
{
    check_theta(theta);
    check_beta(beta);
    check_eta(eta);
}

}  // namespace

BoundValue hcn_pc_no_sic(double theta, double beta, double eta)
{
    check_hcn(theta, beta, eta);
    return clamp_probability(eta * sf::sinc(beta) / std::pow(theta, beta), theta >= 1.0, theta >= 1.0);
}

double hcn_pc_sic_lb(double theta, double beta, double eta, std::size_t K)
{
    check_hcn(theta, beta, eta);
    check_k(K);
    double sum = 0.0;
    for (std::size_t k = 1; k <= K; ++k)
        sum += access_weight(k, eta) * pk_hr_lb(k, beta, theta);
    return sum;
}

BoundValue hcn_pc_sic_ub(double theta, double beta, double eta, std::size_t K)
{
    check_hcn(theta, beta, eta);
    check_k(K);
    double sum = 0.0;
    for (std::size_t k = 1; k <= K; ++k)
        sum += access_weight(k, eta) * combined_term(k, beta, theta);
    return clamp_probability(sum + std::pow(1.0 - eta, static_cast<double>(K + 1)));
}

BoundValue hcn_pc_sic_smud_ub(double theta, double beta, double eta, std::size_t K)
{
    check_hcn(theta, beta, eta);
    check_k(K);
    const double scale = 1.0 - eta;
    // The k-th term carries eta (1-eta)^{k-1} C(k)^k; the tail is geometric
    // with ratio (1-eta) C(K) / Gamma(1-beta).
    double sum = 0.0;
    for (std::size_t k = 1; k < K; ++k)
        sum += access_weight(k, eta) * smud_term(k, beta, theta, 1.0);
    if (!smud_admissible(K, beta, theta, scale))
        return {kInf, false, false, false};
    const double g = std::tgamma(1.0 - beta);
    const double tail = access_weight(K, eta) * smud_term(K, beta, theta, 1.0) * g
                        / (g - scale * smud_ratio(K, beta, theta));
    return clamp_probability(sum + tail);
}

SeriesBound hcn_pc_sic_smud_lb(double theta, double beta, double eta, std::size_t K)
{
    check_hcn(theta, beta, eta);
    check_k(K);
    double sum = 0.0;
    for (std::size_t k = 1; k <= K; ++k)
        sum += access_weight(k, eta) * pk_smud_lb(k, beta, theta).value;
    SeriesBound out;
    out.bound = clamp_probability(sum, theta >= 1.0);
    if (eta < 1.0) {
        const double c2 = (1.0 - eta)
                          / (std::pow(1.0 + theta, 0.5 * beta * static_cast<double>(K)) * std::pow(theta, beta)
                             * std::tgamma(1.0 - beta));
        const double kk1 = static_cast<double>(K + 1);
        out.truncation_error = c2 < 1.0 ? eta / (1.0 - eta) * std::pow(c2, kk1) / ((1.0 - c2) * std::tgamma(1.0 + kk1 * beta))
                                        : kInf;
    }
    return out;
}

double hcn_pc_sic_lta(double theta, double beta, double eta)
{
    check_hcn(theta, beta, eta);
    return eta / (eta + c_of_s(theta, beta));
}

BoundValue hcn_pcn_ub(double theta, double beta, double eta, std::size_t n)
{
    check_hcn(theta, beta, eta);
    check_k(n);
    double sum = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double log_term = -0.5 * beta * kk * (kk + 1.0) * std::log(theta) - kk * std::lgamma(1.0 - beta)
                                - std::lgamma(1.0 + kk * beta);
        sum += access_weight(k, eta) * std::exp(log_term);
    }
    return clamp_probability(sum, theta >= 1.0, theta >= 1.0 && n == 1);
}

BoundValue hcn_pc_sic_erf_closed(double theta, double eta)
{
    check_theta(theta);
    check_eta(eta);
    if (eta == 0.0)
        return {0.0, true, false, false};
    const double pt = std::numbers::pi * theta;
    double v;
    if (eta == 1.0) {
        v = 2.0 / (std::numbers::pi * std::sqrt(theta));
    } else {
        const double z = (1.0 - eta) / std::sqrt(pt);
        v = eta / (1.0 - eta) * std::expm1(z * z + std::log1p(sf::erf(z)));
    }
    return clamp_probability(v);
}

double hcn_pcn_theta1(double beta, double eta, std::size_t n)
{
    return hcn_pcn_ub(1.0, beta, eta, n).value;
}

double hcn_pc_ml_closed(double beta, double eta)
{
    check_beta(beta);
    check_eta(eta);
    if (eta == 0.0)
        return 0.0;
    if (eta == 1.0)
        return sf::sinc(beta);
    const double z = (1.0 - eta) / std::tgamma(1.0 - beta);
    return eta / (1.0 - eta) * (sf::mittag_leffler(beta, 1.0, z) - 1.0);
}

double hcn_avg_throughput(double pc, double theta)
{
    check_theta(theta);
    return std::log1p(theta) * pc;
}

BoundReport make_bound_report(const ParamPoint& p)
{
    check_common(p.k, p.beta, p.theta);
    BoundReport r{p, {}};
    auto& v = r.values;
    const double beta = p.beta;
    const double theta = p.theta;
    const std::size_t k = p.k;

    v["delta1"] = {delta1(k, beta, theta)};
    v["delta2"] = {delta2(k, beta, theta)};
    v["hr_lb"] = {pk_hr_lb(k, beta, theta)};
    if (static_cast<double>(k) < 1.0 / theta + 1.0)
        v["lr_lb"] = {pk_lr_lb(k, beta, theta)};
    else
        v["lr_lb"] = {std::numeric_limits<double>::quiet_NaN(), false, false, false};
    v["combined_ub"] = pk_combined_ub(k, beta, theta);
    v["thm1_exact"] = thm1_exact(k, beta, theta);
    v["smud_lb"] = pk_smud_lb(k, beta, theta);
    v["smud_ub"] = pk_smud_ub(k, beta, theta);

    const auto lb = p.K == 0 ? en_lb(beta, theta) : en_lb(beta, theta, p.K);
    v["en_lb"] = {lb.value};
    v["en_lb_error"] = {lb.truncation_error};
    v["en_lr_lb"] = {en_lr_lb(beta, theta)};
    v["en_ub"] = en_ub(beta, theta);
    v["en_smud_ub"] = en_smud_ub(beta, theta);
    v["c_theta"] = {c_of_s(theta, beta)};
    v["r_asymptotic"] = {r_asymptotic(beta)};
    v["r_lt_approx"] = {r_lt_approx(theta, beta)};

    if (p.noise_w > 0.0) {
        v["noisy_tail_ub"] = {noisy_tail_ub(k, theta, p.noise_w, p.a_bar, beta)};
        v["noisy_en_ub"] = {noisy_en_ub(theta, p.noise_w, p.a_bar, beta)};
        v["noisy_r_ub"] = {noisy_r_ub(theta, p.noise_w, p.a_bar, beta)};
    }

    if (p.eta) {
        const double eta = *p.eta;
        const std::size_t K = p.K == 0 ? default_hcn_terms(eta) : p.K;
        v["hcn_pc_no_sic"] = hcn_pc_no_sic(theta, beta, eta);
        v["hcn_pc_sic_lb"] = {hcn_pc_sic_lb(theta, beta, eta, K)};
        v["hcn_pc_sic_ub"] = hcn_pc_sic_ub(theta, beta, eta, K);
        v["hcn_pc_sic_smud_ub"] = hcn_pc_sic_smud_ub(theta, beta, eta, K);
        v["hcn_pc_sic_smud_lb"] = hcn_pc_sic_smud_lb(theta, beta, eta, K).bound;
        v["hcn_pc_sic_lta"] = {hcn_pc_sic_lta(theta, beta, eta)};
        v["hcn_pcn_ub"] = hcn_pcn_ub(theta, beta, eta, p.n);
        auto erf_form = hcn_pc_sic_erf_closed(theta, eta);
        erf_form.valid = beta == 0.5;
        v["hcn_pc_sic_erf_closed"] = erf_form;
        v["hcn_pcn_theta1"] = {hcn_pcn_theta1(beta, eta, p.n), theta == 1.0, false, false};
        v["hcn_pc_ml_closed"] = {hcn_pc_ml_closed(beta, eta), theta == 1.0, false, false};
        v["hcn_avg_throughput_lta"] = {hcn_avg_throughput(v["hcn_pc_sic_lta"].value, theta)};
    }
    return r;
}

void write_bound_report_csv_header(std::ostream& os)
{
    os << "name,beta,theta,k,K,W,a_bar,eta,n,value,valid,clamped\n";
}

void write_bound_report_csv(std::ostream& os, const BoundReport& report)
{
    const auto& p = report.point;
    char buf[512];
    for (const auto& [name, b] : report.values) {
        std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g,%zu,%zu,%.12g,%.12g,", name.c_str(), p.beta, p.theta, p.k, p.K,
                      p.noise_w, p.a_bar);
        os << buf;
        if (p.eta) {
            std::snprintf(buf, sizeof buf, "%.12g", *p.eta);
            os << buf;
        }
        os << ',' << p.n << ',';
        if (std::isfinite(b.value)) {
            std::snprintf(buf, sizeof buf, "%.12g", b.value);
            os << buf;
        }
        os << ',' << int(b.valid) << ',' << int(b.clamped) << '\n';
    }
}

}  // namespace sicnet::bounds
