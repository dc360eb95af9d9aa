#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace crowdsim {

enum class CellKind : std::uint8_t { Interior, Wall, Exit, GateAdjacent };

/// Outward boundary face of a cell. Exit cells open exactly one such face.
enum class Face : std::uint8_t { None, XMinus, XPlus, YMinus, YPlus };

enum class Axis : std::uint8_t { X, Y };

/// Uniform Cartesian grid of nx * ny cells of size dx (ny == 1 in 1D).
/// Cell (i, j) is centered at ((i + 1/2) dx, (j + 1/2) dx); j grows with y.
/// Domain boundary faces are closed unless the adjacent cell is an exit.
class Grid {
 public:
  Grid() = default;
  static Grid line(int n, double dx);
  static Grid plane(int nx, int ny, double dx);

  [[nodiscard]] int dims() const { return dims_; }
  [[nodiscard]] int nx() const { return nx_; }
  [[nodiscard]] int ny() const { return ny_; }
  [[nodiscard]] double dx() const { return dx_; }
  [[nodiscard]] std::size_t size() const { return kind_.size(); }
  [[nodiscard]] double cell_area() const { return dims_ == 1 ? dx_ : dx_ * dx_; }

  [[nodiscard]] std::size_t index(int i, int j = 0) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(i);
  }
  [[nodiscard]] int col(std::size_t c) const { return static_cast<int>(c % nx_); }
  [[nodiscard]] int row(std::size_t c) const { return static_cast<int>(c / nx_); }
  [[nodiscard]] double xc(std::size_t c) const { return (col(c) + 0.5) * dx_; }
  [[nodiscard]] double yc(std::size_t c) const { return (row(c) + 0.5) * dx_; }

  /// Neighbor one cell along `axis` in direction `step` (+1 or -1), or
  /// nullopt outside the domain.
  [[nodiscard]] std::optional<std::size_t> neighbor(std::size_t c, Axis axis, int step) const;

  [[nodiscard]] CellKind kind(std::size_t c) const { return kind_[c]; }
  [[nodiscard]] bool is_wall(std::size_t c) const { return kind_[c] == CellKind::Wall; }
  [[nodiscard]] bool is_exit(std::size_t c) const { return kind_[c] == CellKind::Exit; }
  [[nodiscard]] Face exit_face(std::size_t c) const { return exit_face_[c]; }
  [[nodiscard]] double exit_factor(std::size_t c) const { return exit_factor_[c]; }
  [[nodiscard]] std::optional<double> pinned(std::size_t c) const;
  [[nodiscard]] bool has_pinned_cells() const;
  [[nodiscard]] bool has_exit() const;

  void set_wall(std::size_t c);
  void set_gate_adjacent(std::size_t c);
  /// Marks a boundary cell as exit. Face::None picks the outward face,
  /// preferring x faces over y faces at corners.
  void set_exit(std::size_t c, double flux_factor = 1.0, Face face = Face::None);
  /// Dirichlet density re-imposed after every step.
  void set_pinned(std::size_t c, double rho);
  /// Walls on the closed rectangle of cells containing centers in [x0,x1]x[y0,y1].
  void set_wall_rect(double x0, double x1, double y0, double y1);

  /// Throws ConfigError if an invariant is broken (exit off the boundary,
  /// factor outside [0,1], pinned value outside [0, tau_hi]).
  void validate(double tau_hi) const;

  /// Transposed copy (x <-> y); used by equivariance checks.
  [[nodiscard]] Grid transposed() const;
  /// Mirror copy about the horizontal midline (j -> ny-1-j).
  [[nodiscard]] Grid mirrored_y() const;

 private:
  int dims_ = 1;
  int nx_ = 0;
  int ny_ = 1;
  double dx_ = 1.0;
  std::vector<CellKind> kind_;
  std::vector<Face> exit_face_;
  std::vector<double> exit_factor_;
  std::vector<double> pinned_;  // NaN where unpinned
};

enum class FieldRole : std::uint8_t { Rho, Tau, U, Phi, Theta, Wx, Wy, Other };

/// One scalar per grid cell, stored row-major like Grid::index.
class Field {
 public:
  Field() = default;
  Field(std::size_t n, double value, FieldRole role = FieldRole::Other)
      : values_(n, value), role_(role) {}
  Field(std::vector<double> values, FieldRole role) : values_(std::move(values)), role_(role) {}

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t c) { return values_[c]; }
  double operator[](std::size_t c) const { return values_[c]; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::span<double> values() { return values_; }
  [[nodiscard]] FieldRole role() const { return role_; }
  void fill(double v) { values_.assign(values_.size(), v); }

  bool operator==(const Field&) const = default;

 private:
  std::vector<double> values_;
  FieldRole role_ = FieldRole::Other;
};

struct SimParams;

/// The triple (rho, tau, u) at one time level.
struct SimState {
  Field rho;
  Field tau;
  Field u;
  double t = 0.0;

  /// rho from `rho0`, tau = tau_lo, u = 0, t = 0.
  static SimState initial(Field rho0, const SimParams& p);
};

/// Clips u to [u_lo, u_hi], clips tau to [tau_lo, tau_hi] and then lifts it to
/// max(tau, rho). rho is never modified. Throws NumericalFault on non-finite
/// values, naming the cell.
void clamp_state(SimState& s, const SimParams& p);

/// Sum of rho * cell measure over non-wall cells. With `exclude_pinned`,
/// Dirichlet cells are left out as well.
double total_mass(const Field& rho, const Grid& grid, bool exclude_pinned = false);

}  // namespace crowdsim
