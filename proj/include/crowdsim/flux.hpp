#pragma once

#include <algorithm>

#include "crowdsim/params.hpp"

// Fundamental diagram and Godunov interface fluxes. All functions are pure;
// the caller resolves which cell sends and which receives.
namespace crowdsim::flux {

/// Triangular fundamental diagram with apex (sigma, f_max) and right foot tau.
inline double fd(double rho, double tau, const SimParams& p) {
  if (rho <= p.sigma) return p.f_max / p.sigma * rho;
  return p.f_max * (rho - tau) / (p.sigma - tau);
}

/// Checked variant: throws NumericalFault when rho > tau or rho < 0.
double fd_checked(double rho, double tau, const SimParams& p);

inline double sending_rho(double rho, double tau, const SimParams& p) {
  return rho <= p.sigma ? fd(rho, tau, p) : p.f_max;
}

inline double receiving_rho(double rho, double tau, const SimParams& p) {
  return rho <= p.sigma ? p.f_max : fd(rho, tau, p);
}

/// Flux from the sending cell (rho_s, tau_s) into the receiving cell.
inline double interface_rho(double rho_s, double tau_s, double rho_r, double tau_r,
                            const SimParams& p) {
  return std::min(sending_rho(rho_s, tau_s, p), receiving_rho(rho_r, tau_r, p));
}

/// Burgers flux u^2/2. The 2D caller multiplies by |w component|.
inline double g(double u) { return 0.5 * u * u; }

inline double sending_u(double u) { return u <= 0.0 ? 0.0 : g(u); }
inline double receiving_u(double u) { return u <= 0.0 ? g(u) : 0.0; }

/// Exact Godunov flux of u^2/2 between left (sending) and right values.
inline double interface_u(double u_l, double u_r) {
  return std::max(sending_u(u_l), receiving_u(u_r));
}

}  // namespace crowdsim::flux
