#include "sicnet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>

#include "sicnet/bounds.hpp"
#include "sicnet/netmodel.hpp"
#include "sicnet/sic_mc.hpp"

namespace sicnet {

namespace {

using nlohmann::json;

const std::set<std::string> kVariables{"theta_db", "theta", "beta", "eta", "alpha", "b", "W", "n"};
const std::set<std::string> kEstimates{"pk", "joint_tail", "en", "throughput", "laplace", "coverage",
                                       "avg_throughput"};

const std::set<std::string> kPerKBounds{"delta1",  "delta2",      "thm1_exact", "hr_lb",         "lr_lb",
                                        "smud_lb", "smud_ub",     "combined_ub", "noisy_tail_ub", "laplace_exact"};
const std::set<std::string> kPerNBounds{"hcn_pcn_ub", "hcn_pcn_theta1"};
const std::set<std::string> kScalarBounds{
    "c_theta",        "en_lb",           "en_lr_lb",           "en_ub",
    "en_smud_ub",     "r_lb",            "r_lr_lb",            "r_ub",
    "r_smud_ub",      "r_lt_approx",     "r_asymptotic",       "noisy_en_ub",
    "noisy_r_ub",     "hcn_pc_no_sic",   "hcn_pc_sic_lb",      "hcn_pc_sic_ub",
    "hcn_pc_sic_smud_ub", "hcn_pc_sic_smud_lb", "hcn_pc_sic_lta", "hcn_pc_sic_erf_closed",
    "hcn_pc_ml_closed", "hcn_t_no_sic",  "hcn_t_lb",           "hcn_t_ub",
    "hcn_t_lta"};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool sweeps_n(const SweepSpec& s) { return s.variable == "n" || s.series_variable == "n"; }

// Fully resolved parameters at one sweep point.
struct Point {
    double beta = 0.5;
    double theta = 1.0;
    double noise_w = 0.0;
    double a_bar = 1.0;
    double eta = 1.0;
    std::size_t n = 1;
    std::size_t K = 0;
};

void apply(SweepParams& p, const std::string& var, double v)
{
    if (var == "theta_db")
        p.theta = db_to_linear(v);
    else if (var == "theta")
        p.theta = v;
    else if (var == "beta") {
        p.beta = v;
        p.alpha.reset();
    } else if (var == "eta")
        p.eta = v;
    else if (var == "alpha")
        p.alpha = v;
    else if (var == "b")
        p.b = v;
    else if (var == "W")
        p.noise_w = v;
    else if (var == "n")
        p.n = static_cast<std::size_t>(std::llround(v));
    else
        throw std::invalid_argument("unknown sweep variable '" + var + "'");
}

Point resolve(const SweepParams& p)
{
    Point q;
    q.beta = p.alpha ? (2.0 + p.b) / *p.alpha : p.beta;
    q.theta = p.theta;
    q.noise_w = p.noise_w;
    q.a_bar = p.a_bar;
    q.eta = p.eta;
    q.n = p.n;
    q.K = p.K;
    return q;
}

void check_point(const Point& q)
{
    if (!(q.beta > 0.0 && q.beta < 1.0))
        throw std::invalid_argument("beta must lie in (0, 1), got " + std::to_string(q.beta));
    if (!(q.theta > 0.0))
        throw std::invalid_argument("theta must be positive");
    if (!(q.noise_w >= 0.0))
        throw std::invalid_argument("W must be non-negative");
    if (!(q.a_bar > 0.0))
        throw std::invalid_argument("a_bar must be positive");
    if (!(q.eta > 0.0 && q.eta <= 1.0))
        throw std::invalid_argument("eta must lie in (0, 1]");
    if (q.n == 0)
        throw std::invalid_argument("n must be at least 1");
}

std::string layer_suffix(const SweepSpec& s, std::size_t layers)
{
    if (sweeps_n(s))
        return "_n";
    return layers == 0 ? std::string() : "_n" + std::to_string(layers);
}

std::vector<std::size_t> effective_layers(const SweepSpec& s, const Point& q)
{
    if (sweeps_n(s))
        return {q.n};
    return s.sic_layers;
}

std::vector<std::size_t> finite_layers(const SweepSpec& s)
{
    if (sweeps_n(s))
        return {0};
    std::vector<std::size_t> out;
    for (auto n : s.sic_layers)
        if (n != 0)
            out.push_back(n);
    return out;
}

// Depth for coverage: the strongest accessible user lies beyond index k with
// probability (1 - eta)^k.
std::size_t coverage_depth(double eta)
{
    if (eta >= 1.0)
        return 50;
    const double k = std::ceil(std::log(1e-6) / std::log1p(-eta));
    return std::max<std::size_t>(50, static_cast<std::size_t>(std::min(k, 1e6)));
}

template <class F>
double guarded(F&& f)
{
    try {
        return f();
    } catch (const std::domain_error&) {
        return kNaN;
    }
}

double per_k_bound(const std::string& name, std::size_t k, const Point& q)
{
    namespace bd = bounds;
    return guarded([&]() -> double {
        if (name == "delta1")
            return bd::delta1(k, q.beta, q.theta);
        if (name == "delta2")
            return bd::delta2(k, q.beta, q.theta);
        if (name == "thm1_exact")
            return bd::thm1_exact(k, q.beta, q.theta).value;
        if (name == "hr_lb")
            return bd::pk_hr_lb(k, q.beta, q.theta);
        if (name == "lr_lb")
            return bd::pk_lr_lb(k, q.beta, q.theta);
        if (name == "combined_ub")
            return bd::pk_combined_ub(k, q.beta, q.theta).value;
        if (name == "smud_lb")
            return bd::pk_smud_lb(k, q.beta, q.theta).value;
        if (name == "smud_ub")
            return bd::pk_smud_ub(k, q.beta, q.theta).value;
        if (name == "noisy_tail_ub")
            return q.noise_w > 0.0 ? bd::noisy_tail_ub(k, q.theta, q.noise_w, q.a_bar, q.beta) : kNaN;
        if (name == "laplace_exact")
            return std::pow(1.0 + bd::c_of_s(q.theta, q.beta), -static_cast<double>(k));
        throw std::invalid_argument("unknown bound '" + name + "'");
    });
}

double per_n_bound(const std::string& name, std::size_t n, const Point& q)
{
    return guarded([&]() -> double {
        if (name == "hcn_pcn_ub")
            return bounds::hcn_pcn_ub(q.theta, q.beta, q.eta, n).value;
        if (name == "hcn_pcn_theta1")
            return bounds::hcn_pcn_theta1(q.beta, q.eta, n);
        throw std::invalid_argument("unknown bound '" + name + "'");
    });
}

double scalar_bound(const std::string& name, const Point& q)
{
    namespace bd = bounds;
    const double rate = std::log1p(q.theta);
    const std::size_t hcn_K = q.K == 0 ? bd::default_hcn_terms(q.eta) : q.K;
    auto finite_or_nan = [](const bd::BoundValue& b) { return std::isfinite(b.value) ? b.value : kNaN; };
    auto en_lb = [&] { return q.K == 0 ? bd::en_lb(q.beta, q.theta).value : bd::en_lb(q.beta, q.theta, q.K).value; };
    auto en_ub = [&] { return q.K == 0 ? bd::en_ub(q.beta, q.theta).value : bd::en_ub(q.beta, q.theta, q.K); };
    auto en_smud_ub = [&] {
        return q.K == 0 ? finite_or_nan(bd::en_smud_ub(q.beta, q.theta)) : bd::en_smud_ub(q.beta, q.theta, q.K);
    };
    return guarded([&]() -> double {
        if (name == "c_theta")
            return bd::c_of_s(q.theta, q.beta);
        if (name == "en_lb")
            return en_lb();
        if (name == "en_lr_lb")
            return bd::en_lr_lb(q.beta, q.theta);
        if (name == "en_ub")
            return en_ub();
        if (name == "en_smud_ub")
            return en_smud_ub();
        if (name == "r_lb")
            return rate * en_lb();
        if (name == "r_lr_lb")
            return rate * bd::en_lr_lb(q.beta, q.theta);
        if (name == "r_ub")
            return rate * en_ub();
        if (name == "r_smud_ub")
            return rate * en_smud_ub();
        if (name == "r_lt_approx")
            return bd::r_lt_approx(q.theta, q.beta);
        if (name == "r_asymptotic")
            return bd::r_asymptotic(q.beta);
        if (name == "noisy_en_ub")
            return q.noise_w > 0.0 ? bd::noisy_en_ub(q.theta, q.noise_w, q.a_bar, q.beta) : kNaN;
        if (name == "noisy_r_ub")
            return q.noise_w > 0.0 ? bd::noisy_r_ub(q.theta, q.noise_w, q.a_bar, q.beta) : kNaN;
        if (name == "hcn_pc_no_sic")
            return bd::hcn_pc_no_sic(q.theta, q.beta, q.eta).value;
        if (name == "hcn_pc_sic_lb")
            return bd::hcn_pc_sic_lb(q.theta, q.beta, q.eta, hcn_K);
        if (name == "hcn_pc_sic_ub")
            return bd::hcn_pc_sic_ub(q.theta, q.beta, q.eta, hcn_K).value;
        if (name == "hcn_pc_sic_smud_ub")
            return finite_or_nan(bd::hcn_pc_sic_smud_ub(q.theta, q.beta, q.eta, hcn_K));
        if (name == "hcn_pc_sic_smud_lb")
            return bd::hcn_pc_sic_smud_lb(q.theta, q.beta, q.eta, hcn_K).bound.value;
        if (name == "hcn_pc_sic_lta")
            return bd::hcn_pc_sic_lta(q.theta, q.beta, q.eta);
        if (name == "hcn_pc_sic_erf_closed")
            return bd::hcn_pc_sic_erf_closed(q.theta, q.eta).value;
        if (name == "hcn_pc_ml_closed")
            return bd::hcn_pc_ml_closed(q.beta, q.eta);
        if (name == "hcn_t_no_sic")
            return rate * bd::hcn_pc_no_sic(q.theta, q.beta, q.eta).value;
        if (name == "hcn_t_lb")
            return rate * bd::hcn_pc_sic_lb(q.theta, q.beta, q.eta, hcn_K);
        if (name == "hcn_t_ub")
            return rate * bd::hcn_pc_sic_ub(q.theta, q.beta, q.eta, hcn_K).value;
        if (name == "hcn_t_lta")
            return rate * bd::hcn_pc_sic_lta(q.theta, q.beta, q.eta);
        throw std::invalid_argument("unknown bound '" + name + "'");
    });
}

// One MC estimate or bound per column, evaluated at a point.
struct RowWriter {
    const SweepSpec& spec;
    const Point& q;
    std::vector<double>& row;

    void estimate(const SicEstimate& e)
    {
        row.push_back(e.value);
        row.push_back(e.std_error);
    }

    void run_estimates()
    {
        const ExecPolicy exec{static_cast<unsigned>(spec.workers)};
        SamplerConfig cfg;
        cfg.beta = q.beta;
        cfg.n_points = spec.n_points;
        cfg.master_seed = spec.master_seed;
        cfg.intensity_scale = q.a_bar;
        const std::size_t reps = spec.replicates;
        const std::size_t k_top = *std::max_element(spec.ks.begin(), spec.ks.end());

        for (const auto& name : spec.estimates) {
            if (name == "pk") {
                const auto est = estimate_pk(cfg, {q.theta, q.noise_w, k_top}, reps, exec);
                for (auto k : spec.ks)
                    estimate(est.pk[k - 1]);
            } else if (name == "joint_tail") {
                const double thetas[] = {q.theta};
                const auto grid = estimate_joint_tail_grid(cfg, thetas, spec.ks, q.noise_w, reps, exec);
                for (const auto& e : grid[0])
                    estimate(e);
            } else if (name == "en") {
                estimate(estimate_en(cfg, {q.theta, q.noise_w, 50}, reps, exec));
            } else if (name == "throughput") {
                estimate(estimate_throughput(cfg, {q.theta, q.noise_w, 50}, reps, exec));
            } else if (name == "laplace") {
                for (auto k : spec.ks)
                    estimate(estimate_laplace_xikIk(cfg, k, q.theta, reps, exec));
            } else if (name == "coverage" || name == "avg_throughput") {
                const double scale = name == "coverage" ? 1.0 : std::log1p(q.theta);
                const std::size_t depth = coverage_depth(q.eta);
                for (auto layers : effective_layers(spec, q)) {
                    CoverageQuery cq{q.theta, q.eta, layers == 0 ? kUnlimitedSic : layers, depth, depth};
                    auto e = estimate_coverage(cfg, cq, reps, exec);
                    e.value *= scale;
                    e.std_error *= scale;
                    estimate(e);
                }
            }
        }
    }

    void run_bounds()
    {
        for (const auto& name : spec.bounds) {
            if (kPerKBounds.count(name)) {
                for (auto k : spec.ks)
                    row.push_back(per_k_bound(name, k, q));
            } else if (kPerNBounds.count(name)) {
                for (auto n : finite_layers(spec))
                    row.push_back(per_n_bound(name, n == 0 ? q.n : n, q));
            } else {
                row.push_back(scalar_bound(name, q));
            }
        }
    }
};

void write_cell(std::ostream& os, double v)
{
    if (!std::isfinite(v))
        return;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    os << buf;
}

std::vector<double> linspace(double a, double b, std::size_t n, bool log_spacing)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        v[i] = log_spacing ? std::exp(std::log(a) + t * (std::log(b) - std::log(a))) : a + t * (b - a);
    }
    v.back() = b;
    return v;
}

}  // namespace

std::vector<double> sweep_values(const SweepSpec& spec)
{
    if (!spec.values.empty())
        return spec.values;
    return linspace(spec.start, spec.stop, spec.count, spec.log_spacing);
}

void validate(const SweepSpec& spec)
{
    auto fail = [](const std::string& m) { throw std::invalid_argument("sweep: " + m); };
    if (!kVariables.count(spec.variable))
        fail("unknown variable '" + spec.variable + "'");
    if (!spec.series_variable.empty()) {
        if (!kVariables.count(spec.series_variable))
            fail("unknown series variable '" + spec.series_variable + "'");
        if (spec.series_variable == spec.variable)
            fail("series variable equals the swept variable");
        if (spec.series_values.empty())
            fail("series variable given without values");
    }
    if (spec.values.empty()) {
        if (spec.count < 2)
            fail("count must be at least 2");
        if (!std::isfinite(spec.start) || !std::isfinite(spec.stop))
            fail("range must be finite");
        if (spec.log_spacing && !(spec.start > 0.0 && spec.stop > 0.0))
            fail("log spacing needs a positive range");
    }
    if (spec.replicates < 2)
        fail("at least two replicates are required");
    if (spec.n_points < 10)
        fail("n_points must be at least 10");
    if (spec.ks.empty() || std::count(spec.ks.begin(), spec.ks.end(), 0u))
        fail("ks must be a non-empty list of positive integers");
    if (*std::max_element(spec.ks.begin(), spec.ks.end()) > spec.n_points)
        fail("ks must not exceed n_points");
    if (spec.sic_layers.empty())
        fail("sic_layers must not be empty");
    for (const auto& e : spec.estimates)
        if (!kEstimates.count(e))
            fail("unknown estimate '" + e + "'");
    for (const auto& b : spec.bounds)
        if (!kPerKBounds.count(b) && !kPerNBounds.count(b) && !kScalarBounds.count(b))
            fail("unknown bound '" + b + "'");

    const std::vector<double> series = spec.series_variable.empty() ? std::vector<double>{0.0} : spec.series_values;
    for (double s : series) {
        for (double v : sweep_values(spec)) {
            SweepParams p = spec.params;
            if (!spec.series_variable.empty())
                apply(p, spec.series_variable, s);
            apply(p, spec.variable, v);
            check_point(resolve(p));
            if (p.alpha && !(*p.alpha > 2.0 + p.b))
                fail("alpha must exceed 2 + b");
        }
    }
}

std::vector<std::string> sweep_columns(const SweepSpec& spec)
{
    std::vector<std::string> cols;
    if (!spec.series_variable.empty())
        cols.push_back(spec.series_variable);
    cols.push_back(spec.variable);
    auto pair = [&](const std::string& base) {
        cols.push_back(base);
        cols.push_back(base + "_se");
    };
    const Point dummy;
    for (const auto& name : spec.estimates) {
        if (name == "pk")
            for (auto k : spec.ks)
                pair("mc_p" + std::to_string(k));
        else if (name == "joint_tail")
            for (auto k : spec.ks)
                pair("mc_tail" + std::to_string(k));
        else if (name == "en")
            pair("mc_en");
        else if (name == "throughput")
            pair("mc_r");
        else if (name == "laplace")
            for (auto k : spec.ks)
                pair("mc_lt" + std::to_string(k));
        else if (name == "coverage" || name == "avg_throughput")
            for (auto layers : effective_layers(spec, dummy))
                pair((name == "coverage" ? "mc_pc" : "mc_t") + layer_suffix(spec, layers));
    }
    for (const auto& name : spec.bounds) {
        if (kPerKBounds.count(name)) {
            for (auto k : spec.ks)
                cols.push_back(name + "_k" + std::to_string(k));
        } else if (kPerNBounds.count(name)) {
            for (auto n : finite_layers(spec))
                cols.push_back(name + (n == 0 ? std::string("_n") : "_n" + std::to_string(n)));
        } else {
            cols.push_back(name);
        }
    }
    return cols;
}

void run_sweep(const SweepSpec& spec, std::ostream& os)
{
    validate(spec);
    const auto cols = sweep_columns(spec);
    for (std::size_t i = 0; i < cols.size(); ++i)
        os << (i ? "," : "") << cols[i];
    os << '\n';

    const bool has_series = !spec.series_variable.empty();
    const std::vector<double> series = has_series ? spec.series_values : std::vector<double>{0.0};
    for (double s : series) {
        for (double v : sweep_values(spec)) {
            SweepParams p = spec.params;
            if (has_series)
                apply(p, spec.series_variable, s);
            apply(p, spec.variable, v);
            const Point q = resolve(p);

            std::vector<double> row;
            if (has_series)
                row.push_back(s);
            row.push_back(v);
            RowWriter w{spec, q, row};
            w.run_estimates();
            w.run_bounds();
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i)
                    os << ',';
                write_cell(os, row[i]);
            }
            os << '\n';
        }
    }
    if (!os)
        throw std::runtime_error("sweep: write failed");
}

void run_sweep(const SweepSpec& spec)
{
    validate(spec);
    if (spec.output.empty())
        throw std::invalid_argument("sweep: no output path");
    const std::filesystem::path path(spec.output);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw std::runtime_error("sweep: cannot open " + spec.output);
    try {
        run_sweep(spec, os);
        os.close();
        if (!os)
            throw std::runtime_error("sweep: write failed for " + spec.output);
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw;
    }
}

SweepSpec sweep_from_json(const json& j, SweepSpec s)
{
    static const std::set<std::string> top{"name",      "variable",   "start",      "stop",
                                           "count",     "spacing",    "values",     "series_variable",
                                           "series_values", "params", "ks",         "sic_layers",
                                           "estimates", "bounds",     "replicates", "master_seed",
                                           "workers",   "n_points",   "output"};
    static const std::set<std::string> param_keys{"beta", "alpha", "b",   "theta", "theta_db",
                                                  "W",    "a_bar", "eta", "n",     "K"};
    if (!j.is_object())
        throw std::invalid_argument("config: top level must be an object");
    for (const auto& [key, _] : j.items())
        if (!top.count(key))
            throw std::invalid_argument("config: unknown key '" + key + "'");

    auto get = [&](const char* key, auto& field) {
        if (j.contains(key))
            j.at(key).get_to(field);
    };
    get("name", s.name);
    get("variable", s.variable);
    get("start", s.start);
    get("stop", s.stop);
    get("count", s.count);
    if (j.contains("spacing")) {
        const auto sp = j.at("spacing").get<std::string>();
        if (sp != "linear" && sp != "log")
            throw std::invalid_argument("config: spacing must be 'linear' or 'log'");
        s.log_spacing = sp == "log";
    }
    get("values", s.values);
    get("series_variable", s.series_variable);
    get("series_values", s.series_values);
    get("ks", s.ks);
    get("sic_layers", s.sic_layers);
    get("estimates", s.estimates);
    get("bounds", s.bounds);
    get("replicates", s.replicates);
    get("master_seed", s.master_seed);
    get("workers", s.workers);
    get("n_points", s.n_points);
    get("output", s.output);

    if (j.contains("params")) {
        const auto& p = j.at("params");
        if (!p.is_object())
            throw std::invalid_argument("config: params must be an object");
        for (const auto& [key, _] : p.items())
            if (!param_keys.count(key))
                throw std::invalid_argument("config: unknown parameter '" + key + "'");
        if (p.contains("theta") && p.contains("theta_db"))
            throw std::invalid_argument("config: give theta or theta_db, not both");
        auto& q = s.params;
        if (p.contains("beta")) {
            q.beta = p.at("beta").get<double>();
            q.alpha.reset();
        }
        if (p.contains("alpha"))
            q.alpha = p.at("alpha").get<double>();
        if (p.contains("b"))
            q.b = p.at("b").get<double>();
        if (p.contains("theta"))
            q.theta = p.at("theta").get<double>();
        if (p.contains("theta_db"))
            q.theta = db_to_linear(p.at("theta_db").get<double>());
        if (p.contains("W"))
            q.noise_w = p.at("W").get<double>();
        if (p.contains("a_bar"))
            q.a_bar = p.at("a_bar").get<double>();
        if (p.contains("eta"))
            q.eta = p.at("eta").get<double>();
        if (p.contains("n"))
            q.n = p.at("n").get<std::size_t>();
        if (p.contains("K"))
            q.K = p.at("K").get<std::size_t>();
    }
    return s;
}

json sweep_to_json(const SweepSpec& s)
{
    json params{{"beta", s.params.beta},   {"b", s.params.b},     {"theta", s.params.theta},
                {"W", s.params.noise_w},   {"a_bar", s.params.a_bar}, {"eta", s.params.eta},
                {"n", s.params.n},         {"K", s.params.K}};
    if (s.params.alpha)
        params["alpha"] = *s.params.alpha;
    json j{{"name", s.name},
           {"variable", s.variable},
           {"start", s.start},
           {"stop", s.stop},
           {"count", s.count},
           {"spacing", s.log_spacing ? "log" : "linear"},
           {"params", params},
           {"ks", s.ks},
           {"sic_layers", s.sic_layers},
           {"estimates", s.estimates},
           {"bounds", s.bounds},
           {"replicates", s.replicates},
           {"master_seed", s.master_seed},
           {"workers", s.workers},
           {"n_points", s.n_points},
           {"output", s.output}};
    if (!s.values.empty())
        j["values"] = s.values;
    if (!s.series_variable.empty()) {
        j["series_variable"] = s.series_variable;
        j["series_values"] = s.series_values;
    }
    return j;
}

}  // namespace sicnet
