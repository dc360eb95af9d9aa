#include "crowdsim/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "crowdsim/error.hpp"

namespace crowdsim::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

void write_snapshot(const fs::path& path, const SimState& s, const Grid& grid) {
  auto out = open_out(path);
  const bool planar = grid.dims() == 2;
  out << (planar ? "x,y,rho,tau,u\n" : "x,rho,tau,u\n");
  for (std::size_t c = 0; c < grid.size(); ++c) {
    if (grid.is_wall(c)) continue;
    out << format_double(grid.xc(c)) << ',';
    if (planar) out << format_double(grid.yc(c)) << ',';
    out << format_double(s.rho[c]) << ',' << format_double(s.tau[c]) << ','
        << format_double(s.u[c]) << '\n';
  }
  finish(out, path);
}

void write_scatter(const fs::path& path, const ScatterSeries& s) {
  auto out = open_out(path);
  out << "t,j,rho,flux\n";
  for (const auto& r : s.records())
    out << format_double(r.t) << ',' << r.cell << ',' << format_double(r.rho) << ','
        << format_double(r.flux) << '\n';
  finish(out, path);
}

void write_binned(const fs::path& path, const std::vector<FluxBin>& bins) {
  auto out = open_out(path);
  out << "rho,mean_flux,count\n";
  for (const auto& b : bins)
    out << format_double(b.rho_center) << ',' << format_double(b.mean_flux) << ',' << b.count
        << '\n';
  finish(out, path);
}

void write_mass(const fs::path& path, const MassSeries& m) {
  auto out = open_out(path);
  out << "t,mass\n";
  for (const auto& r : m.records()) out << format_double(r.t) << ',' << format_double(r.mass) << '\n';
  finish(out, path);
}

void write_eikonal(const fs::path& path, const Field& phi, const DirectionField& w,
                   const Grid& grid) {
  auto out = open_out(path);
  const bool planar = grid.dims() == 2;
  out << (planar ? "x,y,phi,wx,wy\n" : "x,phi,wx\n");
  for (std::size_t c = 0; c < grid.size(); ++c) {
    out << format_double(grid.xc(c)) << ',';
    if (planar) out << format_double(grid.yc(c)) << ',';
    out << format_double(phi[c]) << ',' << format_double(w.wx[c]);
    if (planar) out << ',' << format_double(w.wy[c]);
    out << '\n';
  }
  finish(out, path);
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

std::vector<double> Table::column(const std::string& name) const {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] != name) continue;
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r[k]);
    return v;
  }
  throw IoError("no column named '" + name + "'");
}

Table read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  Table t;
  std::string line;
  if (!std::getline(in, line)) return t;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      if (cell == "inf")
        v = INFINITY;
      else if (cell == "-inf")
        v = -INFINITY;
      else {
        const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (res.ec != std::errc()) {
          throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
        }
      }
      row.push_back(v);
    }
    if (row.size() != t.columns.size())
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": wrong column count");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace crowdsim::io
