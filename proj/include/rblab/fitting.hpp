/**
 * This code is part of rblab.
 *
 * (C) Copyright 2026 rblab developers.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef RBLAB_FITTING_HPP_
#define RBLAB_FITTING_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "rblab/engine.hpp"
#include "rblab/errors.hpp"

namespace rblab {

enum class FitModel { Zeroth, First };

/// Least-squares estimate of the decay model. The first-order correction
/// is fit as a single amplitude D = C1 (q - p^2): the curve cannot
/// separate C1 from (q - p^2), only their product is identifiable.
struct FitResult {
  FitModel model = FitModel::Zeroth;
  int d = 2;
  double p = 0, a = 0, b = 0, dcoef = 0;
  double se_p = 0, se_a = 0, se_b = 0, se_d = 0;
  double residual_sum = 0;  // weighted sum of squared residuals
  bool converged = false;
  bool boundary_hit = false;
  bool flat_curve = false;

  double error_rate() const { return (d - 1) * (1.0 - p) / d; }

  double predict(double m) const {
    double base = a * std::pow(p, m) + b;
    if (model == FitModel::First && m >= 2)
      base += dcoef * (m - 1) * std::pow(p, m - 2);
    return base;
  }
};

namespace detail {

struct FitPoints {
  std::vector<double> m, y, w;
};

inline FitPoints aggregate(const RbDataset &data) {
  std::map<int, std::pair<double, int>> acc;
  for (const auto &r : data.records) {
    acc[r.m].first += r.survival;
    acc[r.m].second += 1;
  }
  FitPoints pts;
  for (auto &[m, sum_count] : acc) {
    pts.m.push_back(m);
    pts.y.push_back(sum_count.first / sum_count.second);
    pts.w.push_back(sum_count.second);  // w_m = K_m
  }
  return pts;
}

/// Damped Gauss-Newton on the weighted residuals with p boxed to [0, 1].
/// model(theta, m) and jacobian(theta, m, row) describe the curve; theta[0]
/// is always p.
template <typename F, typename J>
inline bool gauss_newton(std::vector<double> &theta, const FitPoints &pts,
                         F model, J jacobian, double &sse_out) {
  const int np = static_cast<int>(theta.size());
  const int nm = static_cast<int>(pts.m.size());
  auto sse = [&](const std::vector<double> &th) {
    double s = 0;
    for (int i = 0; i < nm; ++i) {
      double r = pts.y[i] - model(th, pts.m[i]);
      s += pts.w[i] * r * r;
    }
    return s;
  };
  double current = sse(theta);
  double damping = 1e-8;
  bool converged = false;
  Eigen::MatrixXd jtj(np, np);
  Eigen::VectorXd jtr(np);
  std::vector<double> row(np);
  for (int it = 0; it < 500 && !converged; ++it) {
    jtj.setZero();
    jtr.setZero();
    for (int i = 0; i < nm; ++i) {
      jacobian(theta, pts.m[i], row);
      double r = pts.y[i] - model(theta, pts.m[i]);
      for (int aidx = 0; aidx < np; ++aidx) {
        jtr[aidx] += pts.w[i] * row[aidx] * r;
        for (int bidx = 0; bidx < np; ++bidx)
          jtj(aidx, bidx) += pts.w[i] * row[aidx] * row[bidx];
      }
    }
    bool accepted = false;
    for (int inner = 0; inner < 25 && !accepted; ++inner) {
      Eigen::MatrixXd reg = jtj;
      for (int k = 0; k < np; ++k)
        reg(k, k) += damping * std::max(jtj(k, k), 1e-12);
      Eigen::VectorXd delta = reg.ldlt().solve(jtr);
      std::vector<double> cand(theta);
      for (int k = 0; k < np; ++k) cand[k] += delta[k];
      cand[0] = std::clamp(cand[0], 0.0, 1.0);
      double trial = sse(cand);
      if (trial <= current + 1e-18) {
        double step = 0;
        for (int k = 0; k < np; ++k)
          step = std::max(step, std::abs(cand[k] - theta[k]));
        theta = cand;
        current = trial;
        damping = std::max(damping / 3, 1e-12);
        accepted = true;
        if (step <= 1e-10 * (1.0 + std::abs(theta[0]))) converged = true;
      } else {
        damping *= 10;
        if (damping > 1e12) {
          accepted = true;  // stuck: treat as converged at current point
          converged = true;
        }
      }
    }
  }
  sse_out = current;
  return converged;
}

/// Covariance from the weighted Jacobian at the optimum:
/// s^2 (J^T W J)^{-1} with s^2 = SSE / (N - k).
template <typename J>
inline Eigen::VectorXd standard_errors(const std::vector<double> &theta,
                                       const FitPoints &pts, J jacobian,
                                       double sse) {
  const int np = static_cast<int>(theta.size());
  const int nm = static_cast<int>(pts.m.size());
  Eigen::MatrixXd jtj = Eigen::MatrixXd::Zero(np, np);
  std::vector<double> row(np);
  for (int i = 0; i < nm; ++i) {
    jacobian(theta, pts.m[i], row);
    for (int a = 0; a < np; ++a)
      for (int b = 0; b < np; ++b)
        jtj(a, b) += pts.w[i] * row[a] * row[b];
  }
  Eigen::VectorXd se = Eigen::VectorXd::Zero(np);
  if (nm <= np) {
    se.setConstant(std::numeric_limits<double>::infinity());
    return se;
  }
  double s2 = sse / (nm - np);
  Eigen::MatrixXd cov =
      s2 * jtj.completeOrthogonalDecomposition().pseudoInverse();
  for (int k = 0; k < np; ++k) se[k] = std::sqrt(std::max(cov(k, k), 0.0));
  return se;
}

/// Weighted linear least squares for the amplitudes at fixed p.
/// Basis: {p^m, 1} (zeroth) or {p^m, 1, (m-1)p^{m-2}} (first).
inline double amplitude_profile(const FitPoints &pts, double p,
                                bool first_order, std::vector<double> &lin) {
  const int nm = static_cast<int>(pts.m.size());
  const int nl = first_order ? 3 : 2;
  Eigen::MatrixXd x(nm, nl);
  Eigen::VectorXd y(nm);
  for (int i = 0; i < nm; ++i) {
    double m = pts.m[i], sw = std::sqrt(pts.w[i]);
    x(i, 0) = sw * std::pow(p, m);
    x(i, 1) = sw;
    if (first_order) x(i, 2) = m >= 2 ? sw * (m - 1) * std::pow(p, m - 2) : 0.0;
    y[i] = sw * pts.y[i];
  }
  Eigen::VectorXd coef = x.colPivHouseholderQr().solve(y);
  lin.assign(coef.data(), coef.data() + nl);
  return (y - x * coef).squaredNorm();
}

/// Profile minimization over p in [0, 1]: the amplitudes are projected out
/// exactly, leaving a one-dimensional search (coarse grid, then
/// golden-section refinement). Sidesteps the near-collinearity of the p
/// and D directions that can stall a joint descent.
inline double profile_search(const FitPoints &pts, bool first_order,
                             std::vector<double> &theta) {
  std::vector<double> lin;
  const int grid = 512;
  std::vector<double> sse_grid(grid + 1);
  for (int k = 0; k <= grid; ++k)
    sse_grid[k] =
        amplitude_profile(pts, static_cast<double>(k) / grid, first_order, lin);

  auto golden = [&](double lo, double hi) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = amplitude_profile(pts, x1, first_order, lin);
    double f2 = amplitude_profile(pts, x2, first_order, lin);
    while (hi - lo > 1e-13) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = amplitude_profile(pts, x1, first_order, lin);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = amplitude_profile(pts, x2, first_order, lin);
      }
    }
    return 0.5 * (lo + hi);
  };

  // the profile can be multimodal with near-degenerate basins: refine
  // every grid-local minimum, keep the global best
  double best_p = 0, best_sse = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= grid; ++k) {
    bool local_min = (k == 0 || sse_grid[k] <= sse_grid[k - 1]) &&
                     (k == grid || sse_grid[k] <= sse_grid[k + 1]);
    if (!local_min) continue;
    double lo = std::max(0.0, (k - 1.0) / grid);
    double hi = std::min(1.0, (k + 1.0) / grid);
    double p = golden(lo, hi);
    double sse = amplitude_profile(pts, p, first_order, lin);
    if (sse < best_sse) {
      best_sse = sse;
      best_p = p;
    }
  }
  best_sse = amplitude_profile(pts, best_p, first_order, lin);
  theta.assign(1, best_p);
  theta.insert(theta.end(), lin.begin(), lin.end());
  return best_sse;
}

/// B-offset guess plus log-linear regression of the residual decay.
inline void initial_zeroth(const FitPoints &pts, int d, double &p0, double &a0,
                           double &b0) {
  const size_t nm = pts.m.size();
  double tail = 0.5 * (pts.y[nm - 1] + pts.y[nm - 2]);
  b0 = std::min(tail, 1.0 / d);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (size_t i = 0; i < nm; ++i) {
    double resid = pts.y[i] - b0;
    if (resid > 1e-12) {
      double lx = pts.m[i], ly = std::log(resid);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++cnt;
    }
  }
  if (cnt >= 2 && sxx * cnt - sx * sx > 1e-12) {
    double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    double icept = (sy - slope * sx) / cnt;
    p0 = std::clamp(std::exp(slope), 1e-6, 1.0);
    a0 = std::exp(icept);
  } else {
    p0 = 0.9;
    a0 = std::max(pts.y.front() - b0, 0.1);
  }
}

}  // namespace detail

/// Weighted least-squares fit of y(m) = A p^m + B with w_m = K_m.
/// A constant curve (variance of the per-length means below 1e-10) is
/// unidentifiable: the flat_curve flag is set and no estimate is returned.
inline FitResult fit_zeroth(const RbDataset &data) {
  auto pts = detail::aggregate(data);
  if (pts.m.size() < 3)
    throw contract_error("fit_zeroth: need at least 3 distinct lengths");
  FitResult res;
  res.model = FitModel::Zeroth;
  res.d = 1 << data.n;
  if (variance(pts.y) < 1e-10) {
    res.flat_curve = true;
    return res;
  }

  auto model = [](const std::vector<double> &th, double m) {
    return th[1] * std::pow(th[0], m) + th[2];
  };
  auto jac = [](const std::vector<double> &th, double m,
                std::vector<double> &row) {
    row[0] = m >= 1 ? th[1] * m * std::pow(th[0], m - 1) : 0.0;
    row[1] = std::pow(th[0], m);
    row[2] = 1.0;
  };

  std::vector<double> theta(3);
  detail::initial_zeroth(pts, res.d, theta[0], theta[1], theta[2]);
  double sse = 0;
  res.converged = detail::gauss_newton(theta, pts, model, jac, sse);
  std::vector<double> prof;
  double prof_sse = detail::profile_search(pts, false, prof);
  if (prof_sse < sse - 1e-15) {
    theta = prof;
    res.converged = detail::gauss_newton(theta, pts, model, jac, sse);
    sse = std::min(sse, prof_sse);
  }
  auto se = detail::standard_errors(theta, pts, jac, sse);
  res.p = theta[0];
  res.a = theta[1];
  res.b = theta[2];
  res.se_p = se[0];
  res.se_a = se[1];
  res.se_b = se[2];
  res.residual_sum = sse;
  res.boundary_hit = res.p < 1e-9 || res.p > 1 - 1e-9;
  return res;
}

/// Weighted fit of y(m) = A p^m + B + D (m-1) p^{m-2}, initialized from
/// the zeroth-order fit with D = 0.
inline FitResult fit_first(const RbDataset &data) {
  auto pts = detail::aggregate(data);
  if (pts.m.size() < 4)
    throw contract_error("fit_first: need at least 4 distinct lengths");
  FitResult res;
  res.model = FitModel::First;
  res.d = 1 << data.n;
  if (variance(pts.y) < 1e-10) {
    res.flat_curve = true;
    return res;
  }

  auto model = [](const std::vector<double> &th, double m) {
    double base = th[1] * std::pow(th[0], m) + th[2];
    if (m >= 2) base += th[3] * (m - 1) * std::pow(th[0], m - 2);
    return base;
  };
  auto jac = [](const std::vector<double> &th, double m,
                std::vector<double> &row) {
    row[0] = m >= 1 ? th[1] * m * std::pow(th[0], m - 1) : 0.0;
    if (m >= 3) row[0] += th[3] * (m - 1) * (m - 2) * std::pow(th[0], m - 3);
    row[1] = std::pow(th[0], m);
    row[2] = 1.0;
    row[3] = m >= 2 ? (m - 1) * std::pow(th[0], m - 2) : 0.0;
  };

  FitResult seed = fit_zeroth(data);
  std::vector<double> theta = {seed.p, seed.a, seed.b, 0.0};
  double sse = 0;
  res.converged = detail::gauss_newton(theta, pts, model, jac, sse);
  std::vector<double> prof;
  double prof_sse = detail::profile_search(pts, true, prof);
  if (prof_sse < sse - 1e-15) {
    theta = prof;
    res.converged = detail::gauss_newton(theta, pts, model, jac, sse);
    sse = std::min(sse, prof_sse);
  }
  auto se = detail::standard_errors(theta, pts, jac, sse);
  res.p = theta[0];
  res.a = theta[1];
  res.b = theta[2];
  res.dcoef = theta[3];
  res.se_p = se[0];
  res.se_a = se[1];
  res.se_b = se[2];
  res.se_d = se[3];
  res.residual_sum = sse;
  res.boundary_hit = res.p < 1e-9 || res.p > 1 - 1e-9;
  return res;
}

/// Fits both models and flags gate dependence when the two p estimates
/// differ by more than `threshold` combined standard errors.
struct ModelComparison {
  FitResult zeroth, first;
  double p_gap = 0;
  double combined_se = 0;
  double threshold = 3.0;
  bool flat_curve = false;
  bool gate_dependent = false;
};

inline ModelComparison compare_models(const RbDataset &data,
                                      double threshold = 3.0) {
  ModelComparison cmp;
  cmp.threshold = threshold;
  cmp.zeroth = fit_zeroth(data);
  cmp.first = fit_first(data);
  if (cmp.zeroth.flat_curve || cmp.first.flat_curve) {
    cmp.flat_curve = true;
    return cmp;  // no gate-dependence decision on a flat curve
  }
  cmp.p_gap = std::abs(cmp.zeroth.p - cmp.first.p);
  cmp.combined_se = std::hypot(cmp.zeroth.se_p, cmp.first.se_p);
  cmp.gate_dependent = cmp.combined_se > 0 &&
                       cmp.p_gap > threshold * cmp.combined_se;
  return cmp;
}

// ---------------------------------------------------------------------------
// Flat-curve classification (diagnostic mode, exact coefficients)
// ---------------------------------------------------------------------------

enum class FlatCurveClass { P_ZERO, P_ONE, A0_ZERO, NOT_FLAT };

struct FlatCurveReport {
  FlatCurveClass cls = FlatCurveClass::NOT_FLAT;
  double constant_value = std::numeric_limits<double>::quiet_NaN();
};

/// A constant decay curve occurs exactly when p = 0, p = 1 or A0 = 0.
/// Precedence when several conditions hold at once: p = 0 (the totally
/// depolarizing average also forces A0 = 0), then A0 = 0 (SPAM-blind
/// measurement even with perfect gates), then p = 1. The A0 test compares
/// the two survival traces tr(E Lambda(rho)) and tr(E Lambda(I/d)).
inline FlatCurveReport classify_flat_curve(const ModelCoefficients &mc,
                                           double tol = 1e-9) {
  FlatCurveReport rep;
  const double survival_rho = mc.a0 + mc.b0;  // tr(E Lambda(rho))
  const double survival_mix = mc.b0;          // tr(E Lambda(I/d))
  if (std::abs(mc.p) <= tol) {
    rep.cls = FlatCurveClass::P_ZERO;
    rep.constant_value = mc.b0;  // tr(E_psi)/d
  } else if (std::abs(survival_rho - survival_mix) <= tol) {
    rep.cls = FlatCurveClass::A0_ZERO;
    rep.constant_value = mc.b0;
  } else if (std::abs(1.0 - mc.p) <= tol) {
    rep.cls = FlatCurveClass::P_ONE;
    rep.constant_value = survival_rho;  // tr(rho_psi E_psi)
  }
  return rep;
}

inline const char *to_string(FlatCurveClass c) {
  switch (c) {
    case FlatCurveClass::P_ZERO: return "P_ZERO";
    case FlatCurveClass::P_ONE: return "P_ONE";
    case FlatCurveClass::A0_ZERO: return "A0_ZERO";
    case FlatCurveClass::NOT_FLAT: return "NOT_FLAT";
  }
  return "NOT_FLAT";
}

}  // namespace rblab

#endif  // RBLAB_FITTING_HPP_
