#ifndef EGDG_REFERENCE_HPP
#define EGDG_REFERENCE_HPP

#include "egdg/semidisc.hpp"

namespace egdg {

/// Brute-force right-hand side: assembles the global weak form over every
/// test function with its own quadrature, Legendre evaluation and flux
/// formulas, then solves the two global systems densely. Small meshes only.
///
/// Shares nothing with Discretization::compute_rhs except the mesh, the
/// problem callbacks and the resolved mean-constraint policy.
State reference_rhs(const Discretization& disc, const State& y);

/// Gauss-Legendre rule from the Golub-Welsch eigenvalue problem.
void golub_welsch(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace egdg

#endif
