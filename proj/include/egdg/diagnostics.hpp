#ifndef EGDG_DIAGNOSTICS_HPP
#define EGDG_DIAGNOSTICS_HPP

#include "egdg/semidisc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace egdg {

struct EnergySample {
    double t = 0.0;
    double E = 0.0;
    double kinetic = 0.0;
    double strain = 0.0;
    double potential = 0.0;
};

/// E = sum_j [ 1/2 int v^2 + 1/2 c^2 int |grad u|^2 + sum_k w_k F(u(x_k)) ],
/// on the reconstructed u for shifted problems.
EnergySample discrete_energy(const Discretization& disc, const State& y);

/// sqrt( sum_j sum_k w_k (u^h(x_k) - u(x_k, t))^2 ).
double l2_error(const Discretization& disc, const State& y, const AnalyticSolution& exact, double t);

/// dE/dt by the chain rule from a state and its time derivative.
double energy_rate_chain(const Discretization& disc, const State& y, const State& dy);

/// dE/dt in closed form: -theta int v^2 - c^2 sum_F (beta |[[v]]|^2 + tau [[grad u]]^2)
/// minus the boundary dissipation, plus the work of the forcing.
/// Only for unshifted problems with homogeneous boundary data.
double energy_rate_closed_form(const Discretization& disc, const State& y);

struct ErrorRecord {
    int N = 0;
    double h = 0.0;
    int q = 0;
    int s = 0;
    std::string flux;
    double l2_error_u = 0.0;
    std::optional<double> rate;
};

/// log(e1 / e2) / log(N2 / N1).
double pairwise_rate(double e1, double e2, double N1, double N2);

/// Least-squares slope of log(error) against log(h) over the `count` finest records.
double regression_rate(const std::vector<ErrorRecord>& records, int count);

/// Fill pairwise rates against the previous record (records ordered coarse to fine).
void fill_pairwise_rates(std::vector<ErrorRecord>& records);

} // namespace egdg

#endif
