#pragma once

#include <complex>
#include <string>
#include <tuple>
#include <vector>

#include "qsep/instance.hpp"

namespace qsep {

struct QaoaParams {
    double beta = 0.0;   // mixing angle, radians
    double gamma = 0.0;  // dimensionless factor on the problem Hamiltonian
};

struct AmplitudeResult {
    double re = 0.0;
    double im = 0.0;
    double prob = 0.0;  // re^2 + im^2

    std::complex<double> amplitude() const { return {re, im}; }
};

// Depth-1 overlap <t|e^{-i beta Hx} e^{-i gamma Hp}|+> collapsed onto the
// n+1 Hamming shells; O(n) terms, log-magnitude accumulation, exact mod-8
// phase arithmetic when the spectrum admits it.
AmplitudeResult overlap_collapsed(const HammingSpectrum& spectrum, const QaoaParams& params);

// Same overlap from the full 2^n statevector (n <= 20), extra_terms included.
AmplitudeResult overlap_statevector(const Instance& instance, const QaoaParams& params);

struct GridScanResult {
    QaoaParams best;
    AmplitudeResult best_result;
    // beta-major rows: (beta, gamma, result)
    std::vector<std::tuple<double, double, AmplitudeResult>> table;
};

GridScanResult grid_scan(const HammingSpectrum& spectrum, const std::vector<double>& beta_grid,
                         const std::vector<double>& gamma_grid);

struct DeterminismWitness {
    bool deterministic = false;
    QaoaParams params;
    SpectralCertificate certificate;
    double prob = 0.0;
};

DeterminismWitness verify_deterministic(const Instance& instance, double tol = 1e-9);

struct TrainedStateReport {
    bool phases_are_identity = false;   // H_2pi part acts as identity at gamma*
    bool matches_target = false;        // fidelity 1 with |t> up to global phase
    double max_phase_deviation = 0.0;   // radians mod 2pi, over all basis states
    double fidelity = 0.0;
    std::complex<double> target_amplitude;
    bool pass() const { return phases_are_identity && matches_target; }
};

TrainedStateReport trained_state_checks(const Instance& instance);

// Literal 2^n-term evaluation of the overlap sum; test oracle for the
// collapsed form, kept here so the CLI can expose it as a cross-check.
AmplitudeResult overlap_bruteforce(const HammingSpectrum& spectrum, const QaoaParams& params);

}  // namespace qsep
