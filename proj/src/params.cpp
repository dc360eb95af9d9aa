#include "crowdsim/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crowdsim/error.hpp"

namespace crowdsim {

namespace {

struct Entry {
  const char* name;
  double SimParams::*member;
};

constexpr Entry kEntries[] = {
    {"f_max", &SimParams::f_max},         {"sigma", &SimParams::sigma},
    {"tau_lo", &SimParams::tau_lo},       {"tau_hi", &SimParams::tau_hi},
    {"u_lo", &SimParams::u_lo},           {"u_hi", &SimParams::u_hi},
    {"eps", &SimParams::eps},             {"alpha_pos", &SimParams::alpha_pos},
    {"alpha_neg", &SimParams::alpha_neg}, {"beta", &SimParams::beta},
    {"gamma", &SimParams::gamma},         {"delta", &SimParams::delta},
    {"nu", &SimParams::nu},               {"dx", &SimParams::dx},
    {"dt", &SimParams::dt},               {"t_end", &SimParams::t_end},
};

const Entry* find(std::string_view name) {
  for (const auto& e : kEntries)
    if (name == e.name) return &e;
  return nullptr;
}

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(std::string("invalid parameters: ") + what);
}

}  // namespace

double SimParams::max_wave_speed() const {
  // Free branch slope, steepest congested slope (tau at its lower bound),
  // and the Burgers speed |u|.
  const double congested = f_max / (tau_lo - sigma);
  return std::max({f_max / sigma, congested, std::abs(u_lo), std::abs(u_hi)});
}

void SimParams::validate(int dims) const {
  for (const auto& e : kEntries) {
    if (!std::isfinite(this->*e.member))
      throw ConfigError(std::string("invalid parameters: ") + e.name + " is not finite");
  }
  require(f_max > 0, "f_max > 0");
  require(sigma > 0, "sigma > 0");
  require(tau_lo > 0 && tau_lo < tau_hi, "0 < tau_lo < tau_hi");
  require(sigma < tau_lo, "sigma < tau_lo");
  require(u_lo < 0 && u_hi > 0, "u_lo < 0 < u_hi");
  require(eps >= 0, "eps >= 0");
  require(alpha_pos >= 0 && alpha_neg >= 0, "alpha_pos, alpha_neg >= 0");
  require(beta > 0, "beta > 0");
  require(gamma >= 0, "gamma >= 0");
  require(delta > 0, "delta > 0");
  require(nu > 0, "nu > 0");
  require(dx > 0, "dx > 0");
  require(dt > 0, "dt > 0");
  require(t_end >= 0, "t_end >= 0");
  const double cfl = dt * max_wave_speed() / dx;
  if (cfl > 1.0) {
    std::ostringstream os;
    os << "invalid parameters: CFL number " << cfl << " exceeds 1 (dt=" << dt << ", dx=" << dx
       << ")";
    throw ConfigError(os.str());
  }
  // A 2D sweep may feed one cell from both sides at once.
  if (dims == 2 && 2.0 * dt / dx * f_max > tau_lo - sigma) {
    std::ostringstream os;
    os << "invalid parameters: 2 dt/dx f_max = " << 2.0 * dt / dx * f_max
       << " exceeds tau_lo - sigma = " << tau_lo - sigma << " (converging-flow bound)";
    throw ConfigError(os.str());
  }
}

const std::vector<std::string>& SimParams::names() {
  static const std::vector<std::string> n = [] {
    std::vector<std::string> v;
    for (const auto& e : kEntries) v.emplace_back(e.name);
    return v;
  }();
  return n;
}

bool SimParams::has(std::string_view name) const { return find(name) != nullptr; }

double SimParams::get(std::string_view name) const {
  const Entry* e = find(name);
  if (!e) throw ConfigError("unknown parameter '" + std::string(name) + "'");
  return this->*e->member;
}

void SimParams::set(std::string_view name, double value) {
  const Entry* e = find(name);
  if (!e) throw ConfigError("unknown parameter '" + std::string(name) + "'");
  this->*e->member = value;
}

}  // namespace crowdsim
