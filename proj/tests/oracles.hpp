#pragma once

// Independent reference implementations used by the unit and acceptance
// suites. Nothing here calls into the solver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

// Triangular diagram with Table 1 style parameters.
struct Triangle {
  double f_max = 0.5;
  double sigma = 0.5;

  double flux(double rho, double tau) const {
    if (rho <= sigma) return f_max / sigma * rho;
    return f_max * (rho - tau) / (sigma - tau);
  }
};

// Plain cell transmission model: demand/supply per cell, min at each
// interface. Left end closed, right end discharges into vacuum (tau_vac).
inline std::vector<double> ctm_step(const std::vector<double>& rho, const std::vector<double>& tau,
                                    double lambda, double tau_vac, const Triangle& fd) {
  const std::size_t n = rho.size();
  auto demand = [&](double r, double t) { return r <= fd.sigma ? fd.flux(r, t) : fd.f_max; };
  auto supply = [&](double r, double t) { return r <= fd.sigma ? fd.f_max : fd.flux(r, t); };
  std::vector<double> q(n + 1, 0.0);
  for (std::size_t k = 1; k < n; ++k)
    q[k] = std::min(demand(rho[k - 1], tau[k - 1]), supply(rho[k], tau[k]));
  q[n] = std::min(demand(rho[n - 1], tau[n - 1]), supply(0.0, tau_vac));
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = rho[j] - lambda * (q[j + 1] - q[j]);
  return out;
}

// Exact Godunov flux for u^2/2 from its variational definition:
// min over [a, b] if a <= b, max over [b, a] otherwise.
inline double burgers_godunov(double a, double b) {
  auto g = [](double u) { return 0.5 * u * u; };
  if (a <= b) {
    if (a <= 0.0 && 0.0 <= b) return 0.0;
    return std::min(g(a), g(b));
  }
  return std::max(g(a), g(b));
}

// A self-similar solution u(x, t) = profile((x - x0)/t) that is piecewise
// linear in xi, described by breakpoints in xi and a callable.
struct SelfSimilar {
  double x0 = 0.0;
  std::vector<double> breaks;  // sorted xi values where the profile kinks or jumps
  std::function<double(double)> profile;

  // Exact mean over [a, b] at time t (Simpson per linear piece).
  double cell_mean(double a, double b, double t) const {
    std::vector<double> cuts{a};
    for (double xi : breaks) {
      const double x = x0 + xi * t;
      if (x > a && x < b) cuts.push_back(x);
    }
    cuts.push_back(b);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double l = cuts[k];
      const double r = cuts[k + 1];
      const double h = r - l;
      if (h <= 0.0) continue;
      // Sample strictly inside so jumps at the ends do not leak in.
      const double e = h * 1e-9;
      const double fl = profile((l + e - x0) / t);
      const double fm = profile((0.5 * (l + r) - x0) / t);
      const double fr = profile((r - e - x0) / t);
      acc += h * (fl + 4.0 * fm + fr) / 6.0;
    }
    return acc / (b - a);
  }
};

// Entropy solution of rho_t + f(rho)_x = 0 for the triangular diagram with
// fixed tau and Riemann data (rl, rr) at x0.
inline SelfSimilar lwr_riemann(double rl, double rr, double tau, double x0, const Triangle& fd) {
  SelfSimilar s;
  s.x0 = x0;
  const double vf = fd.f_max / fd.sigma;
  const double vc = fd.f_max / (fd.sigma - tau);  // negative
  auto speed = [&](double r) { return r <= fd.sigma ? vf : vc; };
  if (rl < rr) {
    const double sh = (fd.flux(rr, tau) - fd.flux(rl, tau)) / (rr - rl);
    s.breaks = {sh};
    s.profile = [=](double xi) { return xi < sh ? rl : rr; };
  } else if (rl > fd.sigma && rr < fd.sigma) {
    const double a = speed(rl);
    const double b = speed(rr);
    const double mid = fd.sigma;
    s.breaks = {a, b};
    s.profile = [=](double xi) { return xi < a ? rl : (xi < b ? mid : rr); };
  } else {
    const double c = speed(rl);
    s.breaks = {c};
    s.profile = [=](double xi) { return xi < c ? rl : rr; };
  }
  return s;
}

inline SelfSimilar burgers_riemann(double ul, double ur, double x0) {
  SelfSimilar s;
  s.x0 = x0;
  if (ul > ur) {
    const double sh = 0.5 * (ul + ur);
    s.breaks = {sh};
    s.profile = [=](double xi) { return xi < sh ? ul : ur; };
  } else {
    s.breaks = {ul, ur};
    s.profile = [=](double xi) { return xi < ul ? ul : (xi < ur ? xi : ur); };
  }
  return s;
}

// Least-squares slope of log(err) against log(h), i.e. the observed order.
inline double observed_order(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = std::log(h[k]);
    const double y = std::log(err[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
