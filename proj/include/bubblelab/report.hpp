#pragma once

#include "bubblelab/dynamics.hpp"
#include "bubblelab/fd_solver.hpp"
#include "bubblelab/io.hpp"

namespace bubble {

// Rows of the trajectory CSV (columns io::trajectory_header()). normW is the
// Euclidean distance, in Galerkin coordinates, from the equilibrium carrying
// the sample's mass.
io::CsvTable trajectory_table(const GalerkinSystem& sys, const Trajectory& tr);

// FD samples are projected onto the modes of `coords` for normW.
io::CsvTable trajectory_table(const FdSolver& fd, const Trajectory& tr,
                              const GalerkinSystem& coords);

}  // namespace bubble
