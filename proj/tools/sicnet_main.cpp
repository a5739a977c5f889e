// sicnet: parameter sweeps and figure presets for successive interference
// cancellation in Poisson networks. Writes CSV.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "sicnet/netmodel.hpp"
#include "sicnet/sweep.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replicates;
    std::optional<std::size_t> workers;
    std::string out;
    std::optional<double> theta_db;
    std::optional<double> theta;
    std::optional<double> beta;
    std::optional<double> eta;
    std::optional<double> noise_w;
    bool print_config = false;
};

void add_common(CLI::App* app, CommonFlags& f)
{
    app->add_option("--config", f.config, "JSON sweep description")->check(CLI::ExistingFile);
    app->add_option("--seed", f.seed, "master seed");
    app->add_option("--replicates", f.replicates, "Monte Carlo replicates per point");
    app->add_option("--workers", f.workers, "worker threads (0 = all cores)");
    app->add_option("--out", f.out, "output CSV path ('-' for stdout)");
    auto* db = app->add_option("--theta-db", f.theta_db, "single SIR threshold in dB");
    auto* lin = app->add_option("--theta", f.theta, "single SIR threshold (linear)");
    db->excludes(lin);
    app->add_option("--beta", f.beta, "path loss shape parameter in (0, 1)");
    app->add_option("--eta", f.eta, "equivalent access probability");
    app->add_option("--noise", f.noise_w, "noise power W");
    app->add_flag("--print-config", f.print_config, "print the resolved sweep as JSON and exit");
}

sicnet::SweepSpec subcommand_defaults(const std::string& cmd)
{
    sicnet::SweepSpec s;
    s.name = cmd;
    s.output = cmd + ".csv";
    if (cmd == "pk") {
        s.ks = {1, 2, 3};
        s.estimates = {"pk"};
        s.bounds = {"hr_lb", "combined_ub", "smud_lb", "smud_ub", "thm1_exact"};
    } else if (cmd == "en") {
        s.start = -20.0;
        s.count = 41;
        s.estimates = {"en"};
        s.bounds = {"en_lb", "en_lr_lb", "en_ub", "en_smud_ub"};
    } else if (cmd == "throughput") {
        s.start = -20.0;
        s.count = 41;
        s.estimates = {"throughput"};
        s.bounds = {"r_lb", "r_ub", "r_smud_ub", "r_lt_approx", "r_asymptotic", "noisy_r_ub"};
    } else if (cmd == "laplace") {
        s.ks = {1, 2, 3};
        s.estimates = {"laplace"};
        s.bounds = {"laplace_exact"};
    } else if (cmd == "hcn") {
        s.params.eta = 0.6;
        s.sic_layers = {0, 1, 2};
        s.estimates = {"coverage"};
        s.bounds = {"hcn_pc_sic_lta", "hcn_pc_sic_lb", "hcn_pc_sic_ub", "hcn_pc_no_sic", "hcn_pcn_ub"};
    }
    return s;
}

nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    return nlohmann::json::parse(in);
}

sicnet::SweepSpec apply_flags(sicnet::SweepSpec s, const CommonFlags& f)
{
    if (!f.config.empty())
        s = sicnet::sweep_from_json(read_json(f.config), s);
    if (f.seed)
        s.master_seed = *f.seed;
    if (f.replicates)
        s.replicates = *f.replicates;
    if (f.workers)
        s.workers = *f.workers;
    if (!f.out.empty())
        s.output = f.out;
    if (f.beta) {
        s.params.beta = *f.beta;
        s.params.alpha.reset();
    }
    if (f.eta)
        s.params.eta = *f.eta;
    if (f.noise_w)
        s.params.noise_w = *f.noise_w;
    if (f.theta_db || f.theta) {
        const double db_value = f.theta_db ? *f.theta_db : 0.0;
        if (s.variable == "theta_db" || s.variable == "theta") {
            s.variable = f.theta_db ? "theta_db" : "theta";
            s.values = {f.theta_db ? db_value : *f.theta};
        } else {
            s.params.theta = f.theta_db ? sicnet::db_to_linear(db_value) : *f.theta;
        }
    }
    return s;
}

int run(const sicnet::SweepSpec& s, const CommonFlags& f)
{
    if (f.print_config) {
        std::cout << sicnet::sweep_to_json(s).dump(2) << '\n';
        return 0;
    }
    if (s.output == "-")
        sicnet::run_sweep(s, std::cout);
    else
        sicnet::run_sweep(s);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Successive interference cancellation in Poisson networks: Monte Carlo and bounds"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string figure;
    const char* commands[][2] = {
        {"pk", "P(N >= k) against theta"},
        {"en", "mean number of decodable users"},
        {"throughput", "aggregate throughput ln(1 + theta) E[N]"},
        {"laplace", "Laplace transform of xi_k I_k at s = theta"},
        {"hcn", "downlink coverage with SIC"},
    };
    for (const auto& c : commands)
        add_common(app.add_subcommand(c[0], c[1]), flags);
    auto* fig = app.add_subcommand("figure", "figure reproduction preset");
    add_common(fig, flags);
    fig->add_option("--name", figure, "preset name")->required()->check(CLI::IsMember(sicnet::figure_names()));

    CLI11_PARSE(app, argc, argv);

    try {
        const auto* sub = app.get_subcommands().front();
        const std::string cmd = sub->get_name();
        sicnet::SweepSpec spec = cmd == "figure" ? sicnet::figure_preset(figure) : subcommand_defaults(cmd);
        return run(apply_flags(std::move(spec), flags), flags);
    } catch (const std::exception& e) {
        std::cerr << "sicnet: " << e.what() << '\n';
        return 1;
    }
}
