#include "crowdsim/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace crowdsim {

void ScatterSeries::collect(double t, const Field& rho_n, std::span<const double> fluxes) {
  if (fluxes.size() != rho_n.size() + 1)
    throw std::invalid_argument("scatter: expected one flux per interface");
  const std::size_t n = rho_n.size();
  for (std::size_t j = 0; j + 1 < n; ++j)
    records_.push_back({t, static_cast<int>(j), rho_n[j], fluxes[j + 1]});
}

std::vector<FluxBin> binned_means(const ScatterSeries& s, double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("binned_means: bad bin range");
  std::vector<FluxBin> out(static_cast<std::size_t>(bins));
  std::vector<double> sums(out.size(), 0.0);
  const double width = (hi - lo) / bins;
  for (int b = 0; b < bins; ++b) out[b].rho_center = lo + (b + 0.5) * width;
  for (const auto& r : s.records()) {
    if (r.rho < lo || r.rho > hi) continue;
    auto b = static_cast<std::size_t>((r.rho - lo) / width);
    if (b >= out.size()) b = out.size() - 1;
    sums[b] += r.flux;
    ++out[b].count;
  }
  for (std::size_t b = 0; b < out.size(); ++b)
    if (out[b].count > 0) out[b].mean_flux = sums[b] / static_cast<double>(out[b].count);
  return out;
}

void MassSeries::push(double t, double mass) {
  if (!records_.empty() && !(t > records_.back().t))
    throw std::invalid_argument("mass series: time must increase strictly");
  records_.push_back({t, mass});
}

std::optional<double> MassSeries::evacuation_time(double fraction) const {
  if (records_.empty()) return std::nullopt;
  const double threshold = fraction * records_.front().mass;
  for (const auto& r : records_)
    if (r.mass < threshold) return r.t;
  return std::nullopt;
}

SteadyStateFit fit_steady_slope(const Field& rho, const Grid& grid, int first, int last) {
  if (first < 0 || last >= static_cast<int>(rho.size()) || last - first + 1 < 5)
    throw std::invalid_argument("steady-state fit needs a window of at least 5 cells");
  const int m = last - first + 1;
  double sx = 0.0, sy = 0.0;
  for (int j = first; j <= last; ++j) {
    sx += grid.xc(static_cast<std::size_t>(j));
    sy += rho[static_cast<std::size_t>(j)];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (int j = first; j <= last; ++j) {
    const double dx = grid.xc(static_cast<std::size_t>(j)) - mx;
    sxx += dx * dx;
    sxy += dx * (rho[static_cast<std::size_t>(j)] - my);
  }
  SteadyStateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.first = first;
  fit.last = last;
  double ss = 0.0;
  for (int j = first; j <= last; ++j) {
    const double e =
        rho[static_cast<std::size_t>(j)] - (fit.intercept + fit.slope * grid.xc(static_cast<std::size_t>(j)));
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

std::optional<QueueWindow> queue_window(const SimState& s, double sigma, double tau_hi, int front,
                                        double trim) {
  if (front < 0 || front >= static_cast<int>(s.rho.size())) return std::nullopt;
  int back = front;
  while (back - 1 >= 0 && s.rho[static_cast<std::size_t>(back - 1)] > sigma) --back;
  if (s.rho[static_cast<std::size_t>(front)] <= sigma) return std::nullopt;
  int head = front;
  while (head >= back && s.tau[static_cast<std::size_t>(head)] >= tau_hi * (1.0 - 1e-9)) --head;
  const int len = head - back + 1;
  if (len < 5) return std::nullopt;
  const int cut = static_cast<int>(std::floor(trim * len));
  QueueWindow w{back + cut, head - cut};
  if (w.last - w.first + 1 < 5) return std::nullopt;
  return w;
}

}  // namespace crowdsim
