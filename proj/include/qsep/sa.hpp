#pragma once

#include <cstdint>
#include <string>

#include "qsep/instance.hpp"

namespace qsep {

struct SaSchedule {
    double t_start = 1.0;
    double t_end = 0.01;
    int sweeps = 100;
    enum class Cooling { Geometric, Linear } cooling = Cooling::Geometric;
};

// Documented defaults: geometric cooling from max-spread/n down to 0.01
// over 100*n sweeps.
SaSchedule default_sa_schedule(const Instance& instance);

struct SaResult {
    std::string final_bits;
    double final_energy = 0.0;  // radians
    int final_hamming = 0;      // distance to the target
    bool success = false;       // final state equals the target
    bool best_seen_success = false;  // target was visited at any point
    std::int64_t accepted_moves = 0;
    // audit mode: worst per-sweep gap between tracked and recomputed energy
    bool bookkeeping_exact = true;
    double max_energy_drift = 0.0;
};

// Metropolis single-spin-flip walk, fully deterministic given the seed.
// start_bits, when non-empty, overrides the random start (tests only);
// audit recomputes the tracked energy from scratch after every sweep.
SaResult sa_run(const Instance& instance, const SaSchedule& schedule, std::uint64_t seed,
                const std::string& start_bits = {}, bool audit = false);

struct SaEstimate {
    int runs = 0;
    int successes = 0;
    double estimate = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

SaEstimate sa_success_probability(const Instance& instance, const SaSchedule& schedule, int runs,
                                  std::uint64_t seed0, bool best_seen = false);

// Wilson 95% score interval for `successes` out of `runs` (z = 1.96).
std::pair<double, double> wilson_interval(int successes, int runs);

}  // namespace qsep
