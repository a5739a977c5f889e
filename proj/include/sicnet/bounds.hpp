#pragma once

// Closed-form bounds and approximations for successive decoding in the
// standard path loss process Lambda([0,r]) = r^beta, and the downlink
// coverage expressions derived from them.
//
// Probabilities are clamped to [0, 1] where a formula can exceed one; the
// clamp is reported. Expressions that only hold in a parameter regime
// (theta >= 1, beta = 1/2, ...) are still evaluated outside it and returned
// with valid = false.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace sicnet::bounds {

struct BoundValue {
    double value = 0.0;
    bool valid = true;    ///< parameter point inside the formula's regime
    bool clamped = false; ///< value was cut to 1
    bool exact = false;   ///< formula is an equality at this point
};

// Building blocks ----------------------------------------------------------

/// Markov lower bound on P(1/xi_k > theta I_k).
double delta1(std::size_t k, double beta, double theta);

/// c(s) = s^beta gamma(1 - beta, s) - 1 + e^{-s}.
double c_of_s(double s, double beta);

/// Induced-fading upper bound on P(1/xi_k > theta I_k).
double delta2(std::size_t k, double beta, double theta);

/// 1 / (theta^{k beta} Gamma(1 + k beta) Gamma(1 - beta)^k); exact value of
/// P(1/xi_k > theta I_k) for theta >= 1 and an upper bound below.
BoundValue thm1_exact(std::size_t k, double beta, double theta);

// Bounds on p_k = P(N >= k) -------------------------------------------------

double pk_hr_lb(std::size_t k, double beta, double theta);

/// Low-rate lower bound; requires k < 1/theta + 1 (std::domain_error otherwise).
double pk_lr_lb(std::size_t k, double beta, double theta);

BoundValue pk_combined_ub(std::size_t k, double beta, double theta);
BoundValue pk_smud_lb(std::size_t k, double beta, double theta);
BoundValue pk_smud_ub(std::size_t k, double beta, double theta);

// Mean number of decodable users -------------------------------------------

struct EnLowerBound {
    double value = 0.0;
    /// Upper bound on the omitted terms k > K of the infinite sum.
    double truncation_error = 0.0;
    std::size_t K = 0;
};

EnLowerBound en_lb(double beta, double theta, std::size_t K);
/// K chosen as the smallest value with truncation error below 1e-6 (at most 200).
EnLowerBound en_lb(double beta, double theta);

double en_lr_lb(double beta, double theta);

/// Requires K >= e / c(theta); std::domain_error otherwise.
double en_ub(double beta, double theta, std::size_t K);
/// Smallest value over the admissible K.
BoundValue en_ub(double beta, double theta);

/// Requires C(K) < Gamma(1 - beta); std::domain_error otherwise.
double en_smud_ub(double beta, double theta, std::size_t K);
/// Smallest value over admissible K <= 200; valid = false if none is admissible.
BoundValue en_smud_ub(double beta, double theta);

// Aggregate throughput -----------------------------------------------------

double r_lt_approx(double theta, double beta);
double r_asymptotic(double beta);

// Noise ---------------------------------------------------------------------

double noisy_tail_ub(std::size_t k, double theta, double noise_w, double a_bar, double beta);
double noisy_en_ub(double theta, double noise_w, double a_bar, double beta);
double noisy_r_ub(double theta, double noise_w, double a_bar, double beta);

// Downlink coverage with equivalent access probability eta -------------------

/// Smallest K with (1 - eta)^{K+1} < 1e-9.
std::size_t default_hcn_terms(double eta);

BoundValue hcn_pc_no_sic(double theta, double beta, double eta);
double hcn_pc_sic_lb(double theta, double beta, double eta, std::size_t K);
BoundValue hcn_pc_sic_ub(double theta, double beta, double eta, std::size_t K);
BoundValue hcn_pc_sic_smud_ub(double theta, double beta, double eta, std::size_t K);

struct SeriesBound {
    BoundValue bound;
    double truncation_error = 0.0;
};
SeriesBound hcn_pc_sic_smud_lb(double theta, double beta, double eta, std::size_t K);

double hcn_pc_sic_lta(double theta, double beta, double eta);
BoundValue hcn_pcn_ub(double theta, double beta, double eta, std::size_t n);
/// beta = 1/2 closed form of the infinite-SIC upper bound.
BoundValue hcn_pc_sic_erf_closed(double theta, double eta);
/// theta = 1 form of hcn_pcn_ub.
double hcn_pcn_theta1(double beta, double eta, std::size_t n);
/// theta = 1, infinite SIC, via the Mittag-Leffler function.
double hcn_pc_ml_closed(double beta, double eta);
double hcn_avg_throughput(double pc, double theta);

// Reports -------------------------------------------------------------------

struct ParamPoint {
    double beta = 0.5;
    double theta = 1.0;
    std::size_t k = 1;
    std::size_t K = 0;  ///< 0 selects the default truncation
    double noise_w = 0.0;
    double a_bar = 1.0;
    std::optional<double> eta;
    std::size_t n = 1;
};

struct BoundReport {
    ParamPoint point;
    std::map<std::string, BoundValue> values;
};

/// Every bound applicable at the point, keyed by stable names (hr_lb,
/// combined_ub, en_ub, hcn_pc_sic_lta, ...).
BoundReport make_bound_report(const ParamPoint& p);

void write_bound_report_csv_header(std::ostream& os);
void write_bound_report_csv(std::ostream& os, const BoundReport& report);

}  // namespace sicnet::bounds
