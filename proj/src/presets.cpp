#include <stdexcept>
#include <string>
#include <vector>

#include "sicnet/sweep.hpp"

namespace sicnet {

namespace {

SweepSpec theta_db_sweep(const std::string& name, double start, double stop)
{
    SweepSpec s;
    s.name = name;
    s.variable = "theta_db";
    s.start = start;
    s.stop = stop;
    s.count = static_cast<std::size_t>(stop - start) + 1;
    s.output = name + ".csv";
    return s;
}

SweepSpec eta_sweep(const std::string& name)
{
    SweepSpec s;
    s.name = name;
    s.variable = "eta";
    s.start = 0.05;
    s.stop = 1.0;
    s.count = 20;
    s.output = name + ".csv";
    return s;
}

SweepSpec fig2()
{
    auto s = theta_db_sweep("fig2", -10.0, 20.0);
    s.params.beta = 0.5;
    s.ks = {1, 2, 3, 4, 5};
    s.estimates = {"joint_tail"};
    s.bounds = {"thm1_exact"};
    return s;
}

SweepSpec fig3()
{
    auto s = theta_db_sweep("fig3", -10.0, 20.0);
    s.params.alpha = 3.0;
    s.ks = {1, 2, 3};
    s.estimates = {"pk"};
    s.bounds = {"combined_ub", "hr_lb", "smud_ub", "smud_lb", "lr_lb"};
    return s;
}

SweepSpec fig4()
{
    SweepSpec s;
    s.name = "fig4";
    s.variable = "b";
    s.start = -1.0;
    s.stop = 1.0;
    s.count = 21;
    s.params.alpha = 4.0;
    s.params.theta = 1.0;
    s.ks = {1, 2, 3};
    s.estimates = {"pk"};
    s.bounds = {"combined_ub", "smud_ub", "hr_lb", "smud_lb"};
    s.output = "fig4.csv";
    return s;
}

SweepSpec fig5()
{
    auto s = theta_db_sweep("fig5", -20.0, 20.0);
    s.params.alpha = 4.0;
    s.estimates = {"en"};
    s.bounds = {"en_ub", "en_lb", "en_lr_lb", "en_smud_ub"};
    return s;
}

SweepSpec fig6()
{
    auto s = theta_db_sweep("fig6", -20.0, 20.0);
    s.params.beta = 0.5;
    s.estimates = {"throughput"};
    s.bounds = {"r_ub", "r_lb", "r_lr_lb", "r_smud_ub", "r_asymptotic"};
    return s;
}

SweepSpec fig7()
{
    auto s = theta_db_sweep("fig7", -20.0, 20.0);
    s.series_variable = "beta";
    s.series_values = {1.0 / 3.0, 0.5, 2.0 / 3.0};
    s.estimates = {"throughput"};
    s.bounds = {"r_lt_approx"};
    return s;
}

SweepSpec fig8()
{
    auto s = theta_db_sweep("fig8", -20.0, 20.0);
    s.params.alpha = 4.0;
    s.params.a_bar = 3.14159265358979323846;
    s.series_variable = "W";
    s.series_values = {0.1, 1.0, 10.0};
    s.estimates = {"throughput"};
    s.bounds = {"noisy_r_ub", "r_ub", "r_smud_ub"};
    return s;
}

SweepSpec fig10()
{
    auto s = theta_db_sweep("fig10", -10.0, 20.0);
    s.params.alpha = 4.0;
    s.params.eta = 0.6;
    s.sic_layers = {0, 1};
    s.estimates = {"coverage"};
    s.bounds = {"hcn_pc_sic_lta", "hcn_pc_sic_lb", "hcn_pc_sic_ub", "hcn_pc_sic_smud_ub", "hcn_pc_no_sic"};
    return s;
}

SweepSpec fig11()
{
    SweepSpec s;
    s.name = "fig11";
    s.variable = "alpha";
    s.start = 2.5;
    s.stop = 6.0;
    s.count = 15;
    s.params.theta = 1.0;
    s.params.eta = 0.8;
    s.sic_layers = {0, 1};
    s.estimates = {"coverage"};
    s.bounds = {"hcn_pc_sic_smud_ub", "hcn_pc_sic_smud_lb", "hcn_pc_no_sic"};
    s.output = "fig11.csv";
    return s;
}

SweepSpec fig12()
{
    auto s = theta_db_sweep("fig12", -10.0, 20.0);
    s.params.alpha = 4.0;
    s.params.eta = 0.6;
    s.sic_layers = {0, 1};
    s.estimates = {"avg_throughput"};
    s.bounds = {"hcn_t_lta", "hcn_t_lb", "hcn_t_ub", "hcn_t_no_sic"};
    return s;
}

SweepSpec fig13()
{
    auto s = eta_sweep("fig13");
    s.params.alpha = 4.0;
    s.series_variable = "theta_db";
    s.series_values = {0.0, 2.0};
    s.sic_layers = {1, 2, 10};
    s.estimates = {"coverage"};
    s.bounds = {"hcn_pcn_ub", "hcn_pc_sic_erf_closed"};
    return s;
}

SweepSpec fig14()
{
    auto s = eta_sweep("fig14");
    s.params.theta = 1.0;
    s.series_variable = "alpha";
    s.series_values = {3.3, 3.5, 3.7};
    s.sic_layers = {1, 2, 10};
    s.estimates = {"coverage"};
    s.bounds = {"hcn_pcn_theta1", "hcn_pc_ml_closed"};
    return s;
}

SweepSpec fig15()
{
    auto s = theta_db_sweep("fig15", -5.0, 10.0);
    s.params.alpha = 4.0;
    s.series_variable = "eta";
    s.series_values = {0.3, 0.6, 0.9};
    s.sic_layers = {1, 2, 10};
    s.estimates = {"coverage"};
    s.bounds = {"hcn_pcn_ub", "hcn_pc_sic_erf_closed"};
    return s;
}

struct Entry {
    const char* name;
    SweepSpec (*make)();
};

const Entry kFigures[] = {
    {"fig2", fig2},   {"fig3", fig3},   {"fig4", fig4},   {"fig5", fig5},   {"fig6", fig6},
    {"fig7", fig7},   {"fig8", fig8},   {"fig10", fig10}, {"fig11", fig11}, {"fig12", fig12},
    {"fig13", fig13}, {"fig14", fig14}, {"fig15", fig15},
};

}  // namespace

std::vector<std::string> figure_names()
{
    std::vector<std::string> out;
    for (const auto& e : kFigures)
        out.emplace_back(e.name);
    return out;
}

SweepSpec figure_preset(const std::string& name)
{
    for (const auto& e : kFigures)
        if (name == e.name)
            return e.make();
    throw std::invalid_argument("unknown figure preset '" + name + "'");
}

}  // namespace sicnet
