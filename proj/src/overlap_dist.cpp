#include "qsep/overlap_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qsep {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& xs) {
    double m = kNegInf;
    for (double x : xs) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

}  // namespace

OverlapDistribution overlap_distribution(const HammingSpectrum& spectrum,
                                         double inverse_temperature) {
    if (!(inverse_temperature > 0.0))
        throw LengthMismatch("inverse temperature must be positive");
    const int n = spectrum.n;
    const double b = inverse_temperature;

    // Shift energies so the exponents stay bounded; the shift cancels in
    // the normalization.
    double e_min = spectrum.energy(0);
    for (int d = 1; d <= n; ++d) e_min = std::min(e_min, spectrum.energy(d));

    // log of the unnormalized pair count at inter-replica distance dh:
    //   sum over the first replica's shell dt and the overlap split K of
    //   C(n,dt) C(n-dt, dh-K) C(dt, K) w(dt) w(dt + dh - 2K)
    std::vector<double> log_p(static_cast<std::size_t>(n) + 1, kNegInf);
    std::vector<double> terms;
    for (int dh = 0; dh <= n; ++dh) {
        terms.clear();
        for (int dt = 0; dt <= n; ++dt) {
            for (int k = 0; k <= dh; ++k) {
                int dt2 = dt + dh - 2 * k;
                if (dt2 < 0 || dt2 > n) continue;
                if (dh - k > n - dt || k > dt) continue;
                double lg = log_binomial(n, dt) + log_binomial(n - dt, dh - k) +
                            log_binomial(dt, k) - b * (spectrum.energy(dt) - e_min) -
                            b * (spectrum.energy(dt2) - e_min);
                terms.push_back(lg);
            }
        }
        log_p[static_cast<std::size_t>(dh)] = log_sum_exp(terms);
    }

    double log_z2 = log_sum_exp(log_p);
    OverlapDistribution dist;
    dist.n = n;
    dist.q_values.resize(static_cast<std::size_t>(n) + 1);
    dist.probabilities.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        dist.q_values[static_cast<std::size_t>(k)] = static_cast<double>(n - 2 * k) / n;
        dist.probabilities[static_cast<std::size_t>(k)] =
            std::exp(log_p[static_cast<std::size_t>(k)] - log_z2);
    }
    return dist;
}

std::vector<double> shell_gibbs_weights(const HammingSpectrum& spectrum,
                                        double inverse_temperature) {
    const int n = spectrum.n;
    double e_min = spectrum.energy(0);
    for (int d = 1; d <= n; ++d) e_min = std::min(e_min, spectrum.energy(d));
    std::vector<double> lw(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d)
        lw[static_cast<std::size_t>(d)] =
            log_binomial(n, d) - inverse_temperature * (spectrum.energy(d) - e_min);
    double lz = log_sum_exp(lw);
    std::vector<double> w(lw.size());
    for (std::size_t i = 0; i < lw.size(); ++i) w[i] = std::exp(lw[i] - lz);
    return w;
}

double pick_temperature(const HammingSpectrum& spectrum) {
    const int n = spectrum.n;
    int d_min = 0;
    for (int d = 1; d <= n; ++d)
        if (spectrum.energy(d) < spectrum.energy(d_min)) d_min = d;
    for (int d = 0; d <= n; ++d)
        if (d != d_min && spectrum.energy(d) <= spectrum.energy(d_min))
            throw NoUniqueMinimum("spectrum has no unique minimum shell");

    auto ground_weight = [&](double b) {
        return shell_gibbs_weights(spectrum, b)[static_cast<std::size_t>(d_min)];
    };

    // The ground-shell weight grows monotonically with the inverse
    // temperature; land it between the uniform and the frozen limit.
    const double target = 0.35;
    double b_lo = 1e-12;
    if (ground_weight(b_lo) >= 0.2) return b_lo;  // already between the limits
    double b_hi = 1.0;
    while (ground_weight(b_hi) < target) {
        b_hi *= 2.0;
        if (b_hi > 1e12) break;
    }
    double b_mid = 0.5 * (b_lo + b_hi);
    for (int it = 0; it < 60; ++it) {
        b_mid = 0.5 * (b_lo + b_hi);
        double g = ground_weight(b_mid);
        if (g >= 0.2 && g <= 0.5) return b_mid;
        (g < target ? b_lo : b_hi) = b_mid;
    }
    return b_mid;
}

HardnessVerdict hardness_indicator(const OverlapDistribution& dist, double threshold) {
    HardnessVerdict v;
    for (std::size_t k = 0; k < dist.q_values.size(); ++k) {
        if (std::abs(dist.q_values[k]) < threshold) v.mass_below_threshold += dist.probabilities[k];
        if (dist.q_values[k] == 1.0) v.mass_at_q1 += dist.probabilities[k];
    }
    v.hard = v.mass_below_threshold >= 0.25 && v.mass_at_q1 >= 0.05;
    return v;
}

}  // namespace qsep
