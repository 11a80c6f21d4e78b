#include "bubblelab/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "bubblelab/energy.hpp"
#include "bubblelab/observe.hpp"

namespace bubble {

namespace {

std::function<double(double)> nodal_profile(const GridState& g) {
  return [&g](double r) {
    const Eigen::Index N = g.rho_bar.size() - 1;
    const double y = std::clamp(r / g.R, 0.0, 1.0) * static_cast<double>(N);
    const Eigen::Index i = std::min<Eigen::Index>(static_cast<Eigen::Index>(y), N - 1);
    const double f = y - static_cast<double>(i);
    return (1.0 - f) * g.rho_bar[i] + f * g.rho_bar[i + 1];
  };
}

io::CsvTable make_table(const Trajectory& tr, const EnergySeries& es, const ModelParams& params,
                        const std::function<GridState(std::size_t)>& grid,
                        const std::function<double(std::size_t)>& mass,
                        const std::function<double(std::size_t, const GridState&)>& normW) {
  io::CsvTable table;
  table.header = io::trajectory_header();
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    const GridState g = grid(k);
    const double m = mass(k);
    const ReconstructedFields f = reconstruct(params, g, tr.t[k], 0.0, 2);
    table.rows.push_back({tr.t[k], g.R, g.R_dot, f.p_g, m, es.E[k], es.dEdt[k], es.diss[k],
                          es.residual[k], dist_to_manifold(params, g, m), normW(k, g)});
  }
  return table;
}

}  // namespace

io::CsvTable trajectory_table(const GalerkinSystem& sys, const Trajectory& tr) {
  const EnergySeries es = energy_series(sys, tr);
  return make_table(
      tr, es, sys.params, [&](std::size_t k) { return grid_state(sys, tr.state[k]); },
      [&](std::size_t k) { return mass_w(sys, tr.state[k]); },
      [&](std::size_t k, const GridState&) {
        return (tr.state[k] - equilibrium_w(sys, mass_w(sys, tr.state[k]))).norm();
      });
}

io::CsvTable trajectory_table(const FdSolver& fd, const Trajectory& tr,
                              const GalerkinSystem& coords) {
  const EnergySeries es = energy_series(fd, tr);
  return make_table(
      tr, es, fd.params(), [&](std::size_t k) { return fd.nodal(tr.state[k]); },
      [&](std::size_t k) { return fd.mass(tr.state[k]); },
      [&](std::size_t k, const GridState& g) {
        const Eigen::VectorXd w = initial_w(coords, nodal_profile(g), g.R, g.R_dot);
        return (w - equilibrium_w(coords, fd.mass(tr.state[k]))).norm();
      });
}

}  // namespace bubble
