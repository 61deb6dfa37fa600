#include "paircmp/kernels.hpp"

#include <vector>

namespace paircmp::kernels {

namespace {
// Edges per reduction block for the log-likelihood. Fixed so the summation
// tree does not depend on the thread count.
constexpr int kBlock = 1024;
}  // namespace

double log_likelihood(const Model& m, const Dataset& d, const double* u) {
  const auto& g = d.graph();
  const int ne = g.num_edges();
  const int nblocks = (ne + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < nblocks; ++b) {
    const int lo = b * kBlock;
    const int hi = lo + kBlock < ne ? lo + kBlock : ne;
    double acc = 0.0;
    for (int e = lo; e < hi; ++e) {
      const auto& ed = g.edge(e);
      const double gap = u[ed.i] - u[ed.j];
      for (int k = d.unit_begin(e); k < d.unit_end(e); ++k)
        acc += m.log_pdf(d.unit(k), gap);
    }
    partial[b] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void gradient(const Model& m, const Dataset& d, const double* u, double* out) {
  const auto& g = d.graph();
  const int n = g.num_vertices();
#pragma omp parallel for schedule(static)
  for (int v = 0; v < n; ++v) {
    double acc = 0.0;
    for (int k = g.adj_offset(v); k < g.adj_offset(v + 1); ++k) {
      const int e = g.adj_edge(k);
      const int w = g.adj_vertex(k);
      const double gap = u[v] - u[w];
      // Stored outcomes are oriented from the smaller endpoint.
      const double sign = v < w ? 1.0 : -1.0;
      for (int t = d.unit_begin(e); t < d.unit_end(e); ++t)
        acc += m.score(sign * d.unit(t), gap);
    }
    out[v] = acc;
  }
}

void hessian_edge_weights(const Model& m, const Dataset& d, const double* u,
                          double* w) {
  const auto& g = d.graph();
  const int ne = g.num_edges();
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    const auto& ed = g.edge(e);
    const double gap = u[ed.i] - u[ed.j];
    double acc = 0.0;
    for (int k = d.unit_begin(e); k < d.unit_end(e); ++k)
      acc -= m.score_d1(d.unit(k), gap);
    w[e] = acc;
  }
}

void expected_edge_weights(const Model& m, const ComparisonGraph& g,
                           const double* u, double* w) {
  const int ne = g.num_edges();
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    const auto& ed = g.edge(e);
    w[e] = ed.multiplicity * m.fisher_info(u[ed.i] - u[ed.j]);
  }
}

void laplacian_apply(const ComparisonGraph& g, const double* w, const double* x,
                     double* y) {
  const int n = g.num_vertices();
#pragma omp parallel for schedule(static)
  for (int v = 0; v < n; ++v) {
    double acc = 0.0;
    for (int k = g.adj_offset(v); k < g.adj_offset(v + 1); ++k)
      acc += w[g.adj_edge(k)] * (x[v] - x[g.adj_vertex(k)]);
    y[v] = acc;
  }
}

namespace serial {

double log_likelihood(const Model& m, const Dataset& d, const double* u) {
  const auto& g = d.graph();
  double acc = 0.0;
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    const double gap = u[ed.i] - u[ed.j];
    for (int k = d.unit_begin(e); k < d.unit_end(e); ++k)
      acc += m.log_pdf(d.unit(k), gap);
  }
  return acc;
}

void gradient(const Model& m, const Dataset& d, const double* u, double* out) {
  const auto& g = d.graph();
  for (int v = 0; v < g.num_vertices(); ++v) out[v] = 0.0;
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    const double gap = u[ed.i] - u[ed.j];
    for (int k = d.unit_begin(e); k < d.unit_end(e); ++k) {
      const double s = m.score(d.unit(k), gap);
      out[ed.i] += s;
      // d/du_j log f(x; u_i - u_j) = score(-x; u_j - u_i) = -score(x; u_i-u_j)
      out[ed.j] -= s;
    }
  }
}

void hessian_edge_weights(const Model& m, const Dataset& d, const double* u,
                          double* w) {
  const auto& g = d.graph();
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    const double gap = u[ed.i] - u[ed.j];
    double acc = 0.0;
    for (int k = d.unit_begin(e); k < d.unit_end(e); ++k)
      acc -= m.score_d1(d.unit(k), gap);
    w[e] = acc;
  }
}

void expected_edge_weights(const Model& m, const ComparisonGraph& g,
                           const double* u, double* w) {
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    w[e] = ed.multiplicity * m.fisher_info(u[ed.i] - u[ed.j]);
  }
}

}  // namespace serial

}  // namespace paircmp::kernels
