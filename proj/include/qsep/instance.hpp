#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsep/errors.hpp"

namespace qsep {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kQuarterPi = kPi / 4.0;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class SignConvention { TargetIsGround, PaperLiteral };

// sigma = +1 flips the sign of the linear watermark term so the target
// sits at the bottom of the spectrum; sigma = -1 is the literal text.
inline int sigma_of(SignConvention s) { return s == SignConvention::TargetIsGround ? +1 : -1; }

struct TargetState {
    int n = 0;
    std::string bits;  // '0'/'1', length n; spin s_i = 1 - 2*b_i

    TargetState() = default;
    TargetState(int n_, std::string bits_);

    static TargetState all_zeros(int n) { return TargetState(n, std::string(n, '0')); }
};

// Energies indexed by Hamming distance to the target. ExactQuarterPi stores
// signed integers u with E(d) = u * pi/4 so phase arithmetic stays integral.
struct HammingSpectrum {
    enum class Kind { ExactQuarterPi, Float };

    int n = 0;
    Kind kind = Kind::ExactQuarterPi;
    std::vector<std::int64_t> units;   // n+1 entries when exact
    std::vector<double> radians;       // n+1 entries when float

    static HammingSpectrum exact(int n, std::vector<std::int64_t> units);
    static HammingSpectrum floating(int n, std::vector<double> radians);

    bool is_exact() const { return kind == Kind::ExactQuarterPi; }
    // Energy of shell d in radians, regardless of kind.
    double energy(int d) const;
    std::int64_t unit(int d) const { return units[static_cast<std::size_t>(d)]; }
};

struct ExtraTerm {
    std::vector<int> sites;  // sorted, duplicate-free, size <= 4
    std::int64_t m = 0;      // contributes 2*pi*m * prod_{i in sites} sigma_z^i
};

struct Instance {
    TargetState target;
    HammingSpectrum spectrum;
    std::vector<ExtraTerm> extra_terms;
    SignConvention sign = SignConvention::TargetIsGround;

    int n() const { return target.n; }
    // Diagonal energy of a computational basis state, in radians.
    double diagonal_energy(const std::string& bits) const;
    // Same in quarter-pi units; requires an exact spectrum.
    std::int64_t diagonal_units(const std::string& bits) const;
};

struct SpectralCertificate {
    double gamma = 0.0;
    double c = 0.0;             // common phase, in [0, 2pi)
    bool satisfied = false;
    double max_deviation = 0.0; // radians, circular distance to c
    bool exact_path = false;    // integer mod-8 arithmetic was used
};

int hamming_distance(const std::string& bits, const TargetState& target);

// Hard 4-local family: u(d) = sigma*(2d - n) + 8 d^2 (d - n/2)^2.
Instance build_hard_instance(int n, const TargetState& target,
                             SignConvention sign = SignConvention::TargetIsGround);
Instance build_hard_instance(int n, SignConvention sign = SignConvention::TargetIsGround);

// Pure linear watermark u(d) = sigma*(2d - n) plus verbatim 2pi-multiple terms.
Instance build_watermarked_instance(const TargetState& target,
                                    std::vector<ExtraTerm> extra_terms,
                                    SignConvention sign = SignConvention::TargetIsGround);

SpectralCertificate check_spectral_condition(const HammingSpectrum& spectrum, double gamma,
                                             double tol = 1e-9);

std::vector<double> default_gamma_candidates();

std::optional<std::pair<double, SpectralCertificate>> find_gamma(
    const HammingSpectrum& spectrum,
    const std::vector<double>& candidates = default_gamma_candidates());

// Normalized binomial density C(n,d)/2^n via log-gamma.
std::vector<double> density_of_states(int n);

double log_binomial(int n, int k);

// Instance JSON (de)serialization, format documented in the README.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace qsep
