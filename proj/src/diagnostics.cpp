#include "egdg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace egdg {

EnergySample discrete_energy(const Discretization& disc, const State& y)
{
    const Problem& pb = disc.problem();
    const double c2 = pb.c * pb.c;
    EnergySample es;
    es.t = y.t;
    for (int e = 0; e < disc.num_elements(); ++e) {
        const auto& w = disc.node_weights(e);
        const Eigen::VectorXd u = disc.u_nodes(y, e);
        const Eigen::VectorXd v = disc.v_nodes(y, e);
        const auto g = disc.grad_u_nodes(y, e);
        double kin = 0.0, str = 0.0, pot = 0.0;
        for (size_t k = 0; k < w.size(); ++k) {
            kin += w[k] * v[k] * v[k];
            str += w[k] * (g[0][k] * g[0][k] + g[1][k] * g[1][k]);
            pot += w[k] * pb.nonlin.potential(u[k]);
        }
        es.kinetic += 0.5 * kin;
        es.strain += 0.5 * c2 * str;
        es.potential += pot;
    }
    es.E = es.kinetic + es.strain + es.potential;
    return es;
}

double l2_error(const Discretization& disc, const State& y, const AnalyticSolution& exact, double t)
{
    double sum = 0.0;
    for (int e = 0; e < disc.num_elements(); ++e) {
        const auto& w = disc.node_weights(e);
        const auto& x = disc.node_points(e);
        const Eigen::VectorXd u = disc.u_nodes(y, e);
        for (size_t k = 0; k < w.size(); ++k) {
            const double d = u[k] - exact.u(x[k], t);
            sum += w[k] * d * d;
        }
    }
    return std::sqrt(sum);
}

double energy_rate_chain(const Discretization& disc, const State& y, const State& dy)
{
    const Problem& pb = disc.problem();
    if (pb.shifted())
        throw std::invalid_argument("energy_rate_chain: shifted problems are not supported");
    const double c2 = pb.c * pb.c;
    double rate = 0.0;
    for (int e = 0; e < disc.num_elements(); ++e) {
        const auto& w = disc.node_weights(e);
        const Eigen::VectorXd u = disc.u_nodes(y, e);
        const Eigen::VectorXd v = disc.v_nodes(y, e);
        const Eigen::VectorXd ud = disc.u_nodes(dy, e);
        const Eigen::VectorXd vd = disc.v_nodes(dy, e);
        const auto g = disc.grad_u_nodes(y, e);
        const auto gd = disc.grad_u_nodes(dy, e);
        double r = 0.0;
        for (size_t k = 0; k < w.size(); ++k)
            r += w[k] * (v[k] * vd[k] + c2 * (g[0][k] * gd[0][k] + g[1][k] * gd[1][k]) - pb.nonlin.f(u[k]) * ud[k]);
        rate += r;
    }
    return rate;
}

double energy_rate_closed_form(const Discretization& disc, const State& y)
{
    const Problem& pb = disc.problem();
    if (pb.shifted() || pb.boundary.exact_data)
        throw std::invalid_argument("energy_rate_closed_form: needs an unshifted problem with homogeneous boundary data");
    const double c = pb.c;
    double rate = 0.0;
    for (int e = 0; e < disc.num_elements(); ++e) {
        const auto& w = disc.node_weights(e);
        const auto& x = disc.node_points(e);
        const Eigen::VectorXd v = disc.v_nodes(y, e);
        for (size_t k = 0; k < w.size(); ++k) {
            rate -= pb.theta * w[k] * v[k] * v[k];
            if (pb.forcing)
                rate += w[k] * v[k] * pb.forcing(x[k], y.t);
        }
    }
    const Mesh& mesh = disc.mesh();
    for (const Face& f : mesh.faces) {
        const FaceLift& lift = disc.lift_u(f.elem1, f.local1);
        for (size_t p = 0; p < lift.weights.size(); ++p) {
            const auto t1 = disc.trace(y, f.elem1, f.local1, static_cast<int>(p));
            if (f.boundary()) {
                rate += lift.weights[p] * boundary_energy_rate(t1.v, t1.grad, pb.boundary.params, f.n1, c);
            } else {
                const auto t2 = disc.trace(y, f.elem2, f.local2, static_cast<int>(p));
                const FaceTrace tr{t1.v, t2.v, t1.grad, t2.grad};
                rate += lift.weights[p] * interface_energy_rate(tr, disc.flux(), f.n1, c);
            }
        }
    }
    return rate;
}

double pairwise_rate(double e1, double e2, double N1, double N2)
{
    if (!(e1 > 0.0) || !(e2 > 0.0) || !(N1 > 0.0) || !(N2 > 0.0))
        throw std::invalid_argument("pairwise_rate: errors and resolutions must be positive");
    if (N1 == N2)
        throw std::invalid_argument("pairwise_rate: resolutions must differ");
    return std::log(e1 / e2) / std::log(N2 / N1);
}

double regression_rate(const std::vector<ErrorRecord>& records, int count)
{
    std::vector<ErrorRecord> usable;
    for (const auto& r : records)
        if (r.h > 0.0 && r.l2_error_u > 0.0)
            usable.push_back(r);
    std::sort(usable.begin(), usable.end(), [](const ErrorRecord& a, const ErrorRecord& b) { return a.h < b.h; });
    if (count > 0 && static_cast<int>(usable.size()) > count)
        usable.resize(count);
    if (usable.size() < 2)
        throw std::invalid_argument("regression_rate: need at least two usable records");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(usable.size());
    for (const auto& r : usable) {
        const double lx = std::log(r.h), ly = std::log(r.l2_error_u);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    if (den <= 0.0)
        throw std::invalid_argument("regression_rate: all records share one mesh size");
    return (n * sxy - sx * sy) / den;
}

void fill_pairwise_rates(std::vector<ErrorRecord>& records)
{
    for (size_t i = 0; i < records.size(); ++i) {
        records[i].rate.reset();
        if (i > 0 && records[i - 1].l2_error_u > 0.0 && records[i].l2_error_u > 0.0 && records[i - 1].N != records[i].N)
            records[i].rate = pairwise_rate(records[i - 1].l2_error_u, records[i].l2_error_u, records[i - 1].N, records[i].N);
    }
}

} // namespace egdg
