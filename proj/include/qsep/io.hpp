#pragma once

#include <string>
#include <vector>

#include "qsep/instance.hpp"
#include "qsep/overlap_dist.hpp"
#include "qsep/qaoa.hpp"

namespace qsep {

// write-then-rename so partial files never appear under the final name
void atomic_write(const std::string& path, const std::string& content);

std::string format_double(double v);

// columns: delta,energy_radians,density
std::string fig1a_csv(const HammingSpectrum& spectrum);
// columns: q,probability
std::string fig1b_csv(const OverlapDistribution& dist);
// columns: beta,gamma,re,im,prob (beta-major row order)
std::string grid_csv(const GridScanResult& scan);

// Dual-axis profile: compressed energy (log10 of the offset from the
// minimum) and density of states over the Hamming distance.
std::string fig1a_svg(const HammingSpectrum& spectrum);
// P(q) histogram, log-scale y by default (the peaks span many decades).
std::string fig1b_svg(const OverlapDistribution& dist, bool log_y = true);

}  // namespace qsep
