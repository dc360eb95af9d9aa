#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crowdsim/eikonal.hpp"
#include "crowdsim/grid.hpp"
#include "crowdsim/params.hpp"

namespace crowdsim {

/// Discrete forward half-balls, one per cell, in compressed-row layout.
/// Wall cells have empty stencils; every other stencil contains the cell.
class SensoryStencils {
 public:
  SensoryStencils() = default;
  SensoryStencils(std::vector<std::size_t> offsets, std::vector<std::size_t> members)
      : offsets_(std::move(offsets)), members_(std::move(members)) {}

  [[nodiscard]] std::size_t cells() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  [[nodiscard]] std::span<const std::size_t> members(std::size_t c) const {
    return std::span<const std::size_t>(members_).subspan(offsets_[c], offsets_[c + 1] - offsets_[c]);
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> members_;
};

/// Members of cell x: x itself plus every in-domain non-wall z with
/// |z - x| <= delta (center distance) and w(x).(z - x) > 0.
SensoryStencils build_stencils(const Grid& grid, const DirectionField& w, const SimParams& p);

/// Uniform stencil average of tau. The sum is correctly rounded, so the
/// result does not depend on member order.
Field tau_ave(const Field& tau, const SensoryStencils& st);

/// theta = rho - (tau_ave - nu).
Field theta(const Field& rho, const Field& tau_avg, const SimParams& p);

/// grad(theta).w from one-sided differences taken ahead along w per axis;
/// zero along an axis whose ahead-neighbor is missing or a wall.
double directional_derivative(const Field& th, const DirectionField& w, const Grid& grid,
                              std::size_t c);

/// Right-hand side of the wave equation:
///   -eps u + alpha_pos max(theta - beta D theta, 0)   where theta >= 0
///   -eps u + alpha_neg theta                          where theta < 0
Field u_rhs(const Field& u, const Field& th, const DirectionField& w, const Grid& grid,
            const SimParams& p);

/// Correctly rounded sum; independent of input order.
double exact_sum(std::span<const double> values);

}  // namespace crowdsim
