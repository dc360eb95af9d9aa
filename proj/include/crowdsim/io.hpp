#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "crowdsim/analysis.hpp"
#include "crowdsim/eikonal.hpp"
#include "crowdsim/grid.hpp"

namespace crowdsim::io {

/// 17 significant digits; parses back to the identical double.
std::string format_double(double v);

/// Columns x[,y],rho,tau,u; one row per non-wall cell in index order.
void write_snapshot(const std::filesystem::path& path, const SimState& s, const Grid& grid);
void write_scatter(const std::filesystem::path& path, const ScatterSeries& s);
void write_binned(const std::filesystem::path& path, const std::vector<FluxBin>& bins);
void write_mass(const std::filesystem::path& path, const MassSeries& m);
/// Columns x[,y],phi,wx[,wy] for every cell; phi = inf on walls.
void write_eikonal(const std::filesystem::path& path, const Field& phi, const DirectionField& w,
                   const Grid& grid);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Parsed CSV: header names plus numeric columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  [[nodiscard]] std::vector<double> column(const std::string& name) const;
};

Table read_csv(const std::filesystem::path& path);

}  // namespace crowdsim::io
