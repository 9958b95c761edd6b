#pragma once

#include <string>
#include <vector>

#include "qsep/instance.hpp"

namespace qsep {

// Replica overlap q_k = (n - 2k)/n over inter-replica Hamming distance k,
// with the probability of each value under two independent Gibbs samples.
struct OverlapDistribution {
    int n = 0;
    std::vector<double> q_values;      // n+1 entries, 1 down to -1
    std::vector<double> probabilities; // n+1 entries, sum 1
};

// Exact P(q) in O(n^3) from the shell-resolved pair count, log-space
// accumulated; inverse_temperature is the Gibbs beta in 1/radians.
OverlapDistribution overlap_distribution(const HammingSpectrum& spectrum,
                                         double inverse_temperature);

// Bisects the inverse temperature until the ground shell carries a Gibbs
// weight inside [0.2, 0.5] (between the frozen and the uniform limit).
double pick_temperature(const HammingSpectrum& spectrum);

// Gibbs weight of shell d at the given inverse temperature.
std::vector<double> shell_gibbs_weights(const HammingSpectrum& spectrum,
                                        double inverse_temperature);

struct HardnessVerdict {
    double mass_below_threshold = 0.0;  // total probability at |q| < threshold
    double mass_at_q1 = 0.0;
    bool hard = false;
};

// Both-peaks heuristic: hard iff >= 25% of the mass sits at |q| < threshold
// while the q = 1 peak still carries >= 5%.
HardnessVerdict hardness_indicator(const OverlapDistribution& dist, double threshold = 0.75);

}  // namespace qsep
