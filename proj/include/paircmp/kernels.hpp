#pragma once

#include "paircmp/data.hpp"

namespace paircmp::kernels {

// Hot loops shared by fitting, inference and the simulation harness.
//
// The default entry points are OpenMP-parallel and produce bitwise identical
// results for any thread count: the log-likelihood reduces fixed edge blocks
// in index order, the gradient accumulates per vertex over the CSR
// adjacency, and the Hessian weights are independent per-edge writes.
// The serial:: variants are deliberately naive edge-major loops kept as a
// reference; they agree with the parallel ones to rounding (the summation
// order differs), and tests hold the two within 1e-11.

double log_likelihood(const Model& m, const Dataset& d, const double* u);
void gradient(const Model& m, const Dataset& d, const double* u, double* out);

// w[e] = sum over the units of edge e of -score_d1(x, u_i - u_j); these are
// the weights of the negated-Laplacian Hessian, nonnegative for valid models.
void hessian_edge_weights(const Model& m, const Dataset& d, const double* u,
                          double* w);

// w[e] = multiplicity(e) * fisher_info(u_i - u_j)
void expected_edge_weights(const Model& m, const ComparisonGraph& g,
                           const double* u, double* w);

// y = L(w) x for the weighted graph Laplacian; per-vertex, deterministic.
void laplacian_apply(const ComparisonGraph& g, const double* w, const double* x,
                     double* y);

namespace serial {
double log_likelihood(const Model& m, const Dataset& d, const double* u);
void gradient(const Model& m, const Dataset& d, const double* u, double* out);
void hessian_edge_weights(const Model& m, const Dataset& d, const double* u,
                          double* w);
void expected_edge_weights(const Model& m, const ComparisonGraph& g,
                           const double* u, double* w);
}  // namespace serial

}  // namespace paircmp::kernels
