#include "paircmp/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "paircmp/errors.hpp"
#include "paircmp/kernels.hpp"

namespace paircmp {

namespace {

void check_dims(const Dataset& d, const LatentScores& u) {
  if (u.size() != d.graph().num_vertices())
    throw DimensionMismatch("score vector size does not match graph order");
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

void center(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

// Direct solve of L(w) s = b with vertex 0 pinned to zero; valid for
// connected graphs where the pinned minor is positive definite.
std::vector<double> solve_dense(const ComparisonGraph& g,
                                const std::vector<double>& w,
                                const std::vector<double>& b) {
  const int n = g.num_vertices();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    L(ed.i, ed.i) += w[e];
    L(ed.j, ed.j) += w[e];
    L(ed.i, ed.j) -= w[e];
    L(ed.j, ed.i) -= w[e];
  }
  Eigen::VectorXd rhs(n - 1);
  for (int v = 1; v < n; ++v) rhs(v - 1) = b[v];
  Eigen::MatrixXd minor = L.block(1, 1, n - 1, n - 1);
  Eigen::VectorXd sol = minor.llt().solve(rhs);
  std::vector<double> s(n, 0.0);
  for (int v = 1; v < n; ++v) s[v] = sol(v - 1);
  center(s);
  return s;
}

// Jacobi-preconditioned CG on the sum-zero subspace. The Krylov space of a
// centered rhs stays centered up to rounding; the result is recentered.
std::vector<double> solve_cg(const ComparisonGraph& g,
                             const std::vector<double>& w,
                             std::vector<double> b) {
  const int n = g.num_vertices();
  center(b);
  std::vector<double> inv_diag(n, 1.0);
  for (int v = 0; v < n; ++v) {
    double dsum = 0.0;
    for (int k = g.adj_offset(v); k < g.adj_offset(v + 1); ++k)
      dsum += w[g.adj_edge(k)];
    inv_diag[v] = dsum > 0.0 ? 1.0 / dsum : 1.0;
  }
  std::vector<double> x(n, 0.0), r = b, z(n), p(n), Ap(n);
  auto dot = [n](const std::vector<double>& a, const std::vector<double>& c) {
    double acc = 0.0;
    for (int v = 0; v < n; ++v) acc += a[v] * c[v];
    return acc;
  };
  const double b_norm = std::sqrt(dot(b, b));
  if (b_norm == 0.0) return x;
  const double tol = 1e-12 * b_norm;
  for (int v = 0; v < n; ++v) z[v] = inv_diag[v] * r[v];
  p = z;
  double rz = dot(r, z);
  const int max_it = std::max(200, 5 * n);
  for (int it = 0; it < max_it; ++it) {
    kernels::laplacian_apply(g, w.data(), p.data(), Ap.data());
    const double pAp = dot(p, Ap);
    if (!(pAp > 0.0)) break;  // numerically singular direction
    const double alpha = rz / pAp;
    for (int v = 0; v < n; ++v) {
      x[v] += alpha * p[v];
      r[v] -= alpha * Ap[v];
    }
    if (std::sqrt(dot(r, r)) <= tol) break;
    for (int v = 0; v < n; ++v) z[v] = inv_diag[v] * r[v];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int v = 0; v < n; ++v) p[v] = z[v] + beta * p[v];
  }
  center(x);
  return x;
}

std::vector<double> solve_newton(const ComparisonGraph& g,
                                 const std::vector<double>& w,
                                 const std::vector<double>& b,
                                 FitOptions::Solver solver) {
  const bool dense = solver == FitOptions::Solver::Dense ||
                     (solver == FitOptions::Solver::Auto && g.num_vertices() <= 128);
  return dense ? solve_dense(g, w, b) : solve_cg(g, w, b);
}

// For finite supports the maximizer exists iff no group of items is short of
// evidence against it: a group whose every outward comparison is a total win
// can raise its scores forever without losing likelihood. Record an arc
// i -> j whenever i failed to take the top outcome against j at least once;
// existence is then strong connectivity of that digraph. Real-line supports
// are coercive in every direction, so connectivity alone suffices.
bool maximizer_exists(const Dataset& d) {
  if (!d.support().is_finite()) return true;
  const auto& vals = d.support().values();
  const double lo = vals.front(), hi = vals.back();
  const auto& g = d.graph();
  const int n = g.num_vertices();
  std::vector<std::vector<int>> fwd(n), rev(n);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    bool all_hi = true, all_lo = true;
    for (int k = d.unit_begin(e); k < d.unit_end(e); ++k) {
      const double x = d.unit(k);
      all_hi = all_hi && x >= hi - 1e-9;
      all_lo = all_lo && x <= lo + 1e-9;
    }
    if (!all_hi) {
      fwd[ed.i].push_back(ed.j);
      rev[ed.j].push_back(ed.i);
    }
    if (!all_lo) {
      fwd[ed.j].push_back(ed.i);
      rev[ed.i].push_back(ed.j);
    }
  }
  auto reaches_all = [n](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == n;
  };
  return reaches_all(fwd) && reaches_all(rev);
}

}  // namespace

std::string to_string(FitStatus s) {
  switch (s) {
    case FitStatus::Converged: return "converged";
    case FitStatus::Nonexistent: return "nonexistent";
    case FitStatus::MaxIterations: return "max-iter";
  }
  return "?";
}

FitStatus fit_status_from_string(const std::string& s) {
  if (s == "converged") return FitStatus::Converged;
  if (s == "nonexistent") return FitStatus::Nonexistent;
  if (s == "max-iter") return FitStatus::MaxIterations;
  throw Error("unknown fit status: " + s);
}

double log_likelihood(const Model& m, const Dataset& d, const LatentScores& u) {
  check_dims(d, u);
  return kernels::log_likelihood(m, d, u.values().data());
}

Eigen::VectorXd gradient(const Model& m, const Dataset& d, const LatentScores& u) {
  check_dims(d, u);
  Eigen::VectorXd out(u.size());
  kernels::gradient(m, d, u.values().data(), out.data());
  return out;
}

Eigen::MatrixXd hessian(const Model& m, const Dataset& d, const LatentScores& u) {
  check_dims(d, u);
  const auto& g = d.graph();
  std::vector<double> w(g.num_edges());
  kernels::hessian_edge_weights(m, d, u.values().data(), w.data());
  const int n = g.num_vertices();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    H(ed.i, ed.i) -= w[e];
    H(ed.j, ed.j) -= w[e];
    H(ed.i, ed.j) += w[e];
    H(ed.j, ed.i) += w[e];
  }
  return H;
}

FitResult fit(const Model& m, const Dataset& d, const FitOptions& opts) {
  const auto& g = d.graph();
  const int n = g.num_vertices();

  std::vector<double> u(n, 0.0);
  if (opts.init) {
    if (static_cast<int>(opts.init->size()) != n)
      throw DimensionMismatch("warm start size does not match graph order");
    u = *opts.init;
    center(u);
  }

  auto result_at = [&](FitStatus status, int iters) {
    std::vector<double> grad(n);
    kernels::gradient(m, d, u.data(), grad.data());
    FitResult r{LatentScores::centered(u), kernels::log_likelihood(m, d, u.data()),
                iters, sup_norm(grad), status};
    return r;
  };

  if (n < 2 || !is_connected(g) || !maximizer_exists(d))
    return result_at(FitStatus::Nonexistent, 0);

  std::vector<double> grad(n), w(g.num_edges()), step(n), trial(n);
  double loglik = kernels::log_likelihood(m, d, u.data());

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    kernels::gradient(m, d, u.data(), grad.data());
    const double gnorm = sup_norm(grad);
    if (gnorm <= opts.grad_tol)
      return FitResult{LatentScores::centered(u), loglik, iter, gnorm,
                       FitStatus::Converged};

    kernels::hessian_edge_weights(m, d, u.data(), w.data());
    step = solve_newton(g, w, grad, opts.solver);
    double slope = 0.0;
    for (int v = 0; v < n; ++v) slope += grad[v] * step[v];
    if (!(slope > 0.0)) {
      // Newton direction unusable (should not happen for valid models);
      // fall back to the centered gradient.
      step = grad;
      center(step);
      slope = 0.0;
      for (int v = 0; v < n; ++v) slope += grad[v] * step[v];
    }

    double t = 1.0;
    double new_loglik = loglik;
    bool accepted = false;
    // Inside the quadratic basin the per-step gain drops below the rounding
    // floor of the likelihood sum, so a sufficient-increase test can reject
    // every step length. Take the undamped Newton step there instead; the
    // gradient check on the next sweep still owns convergence. "There" is
    // where the predicted gain (half the slope) sinks under the evaluation
    // noise, which scales with the likelihood's magnitude.
    const double noise_floor =
        64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(loglik));
    if (slope <= 2.0 * noise_floor && sup_norm(step) <= 0.5) {
      for (int v = 0; v < n; ++v) trial[v] = u[v] + step[v];
      new_loglik = kernels::log_likelihood(m, d, trial.data());
      accepted = true;
    }
    while (!accepted && t > 1e-14) {
      for (int v = 0; v < n; ++v) trial[v] = u[v] + t * step[v];
      new_loglik = kernels::log_likelihood(m, d, trial.data());
      if (new_loglik >= loglik + opts.ls_slope * t * slope) {
        accepted = true;
        break;
      }
      t *= opts.ls_shrink;
    }
    if (!accepted) return result_at(FitStatus::MaxIterations, iter);

    u = trial;
    center(u);
    loglik = new_loglik;
    if (sup_norm(u) > opts.divergence_bound)
      return result_at(FitStatus::Nonexistent, iter + 1);
  }
  return result_at(FitStatus::MaxIterations, opts.max_iter);
}

std::pair<double, FitResult> profile_fit_threshold(
    const std::string& family, const Dataset& d,
    const std::vector<double>& theta_grid, const FitOptions& opts) {
  if (theta_grid.empty()) throw EmptyInput("theta grid is empty");
  std::optional<std::pair<double, FitResult>> best;
  for (double theta : theta_grid) {
    auto m = make_model(family, {{"theta", theta}});
    FitResult r = fit(*m, d, opts);
    if (!best || r.loglik > best->second.loglik)
      best.emplace(theta, std::move(r));
  }
  return std::move(*best);
}

}  // namespace paircmp
