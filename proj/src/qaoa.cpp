#include "qsep/qaoa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qsep/exact.hpp"

namespace qsep {

namespace {

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// True when gamma * u(d) is integral for every shell, enabling exact mod-8
// phase arithmetic in quarter-pi units.
bool exact_phase_path(const HammingSpectrum& spectrum, double gamma) {
    if (!spectrum.is_exact()) return false;
    for (std::int64_t u : spectrum.units) {
        double p = gamma * static_cast<double>(u);
        if (std::abs(p) > 9.0e18) return false;
        if (std::abs(p - std::round(p)) > 1e-9) return false;
    }
    return true;
}

AmplitudeResult finish(double re, double im) {
    AmplitudeResult r;
    r.re = re;
    r.im = im;
    r.prob = re * re + im * im;
    return r;
}

}  // namespace

AmplitudeResult overlap_collapsed(const HammingSpectrum& spectrum, const QaoaParams& params) {
    const int n = spectrum.n;
    const double c = std::cos(params.beta);
    const double s = std::sin(params.beta);
    const double log_c = std::log(std::abs(c));
    const double log_s = std::log(std::abs(s));
    const double ln2 = std::log(2.0);
    const bool exact = exact_phase_path(spectrum, params.gamma);

    KahanSum re, im;
    for (int d = 0; d <= n; ++d) {
        if (c == 0.0 && d < n) continue;
        if (s == 0.0 && d > 0) continue;
        double lmag = log_binomial(n, d) - 0.5 * n * ln2;
        if (d < n) lmag += (n - d) * log_c;
        if (d > 0) lmag += d * log_s;
        double mag = std::exp(lmag);
        if (((c < 0.0 && ((n - d) & 1)) ? 1 : 0) ^ ((s < 0.0 && (d & 1)) ? 1 : 0)) mag = -mag;

        double phi;
        if (exact) {
            auto gu = static_cast<std::int64_t>(
                std::llround(params.gamma * static_cast<double>(spectrum.unit(d))));
            phi = static_cast<double>(mod_floor(checked_add(gu, 2 * static_cast<std::int64_t>(d)), 8)) *
                  kQuarterPi;
        } else {
            phi = params.gamma * spectrum.energy(d) + 0.5 * kPi * d;
        }
        re.add(mag * std::cos(-phi));
        im.add(mag * std::sin(-phi));
    }
    return finish(re.sum, im.sum);
}

AmplitudeResult overlap_bruteforce(const HammingSpectrum& spectrum, const QaoaParams& params) {
    const int n = spectrum.n;
    if (n > 20) throw TooLarge("brute-force overlap limited to n <= 20");
    const double c = std::cos(params.beta);
    const double s = std::sin(params.beta);
    const double norm = std::pow(2.0, -0.5 * n);
    KahanSum re, im;
    const auto nstates = static_cast<std::uint32_t>(1u << n);
    for (std::uint32_t l = 0; l < nstates; ++l) {
        int d = std::popcount(l);  // gauge: target at the all-zeros string
        double mag = norm * std::pow(c, n - d) * std::pow(s, d);
        double phi = params.gamma * spectrum.energy(d) + 0.5 * kPi * d;
        re.add(mag * std::cos(-phi));
        im.add(mag * std::sin(-phi));
    }
    return finish(re.sum, im.sum);
}

AmplitudeResult overlap_statevector(const Instance& instance, const QaoaParams& params) {
    const int n = instance.n();
    if (n > 20) throw TooLarge("statevector engine limited to n <= 20");
    const auto nstates = static_cast<std::size_t>(1) << n;

    std::uint32_t target_mask = 0;
    for (int i = 0; i < n; ++i)
        if (instance.target.bits[static_cast<std::size_t>(i)] == '1') target_mask |= (1u << i);
    std::vector<std::uint32_t> extra_masks;
    for (const auto& t : instance.extra_terms) {
        std::uint32_t m = 0;
        for (int i : t.sites) m |= (1u << i);
        extra_masks.push_back(m);
    }

    // Exact mod-8 reduction keeps N^4-scale phases from eroding precision.
    bool exact = exact_phase_path(instance.spectrum, params.gamma);
    for (const auto& t : instance.extra_terms) {
        double p = params.gamma * 8.0 * static_cast<double>(t.m);
        if (std::abs(p - std::round(p)) > 1e-9) exact = false;
    }

    std::vector<std::complex<double>> psi(nstates);
    const double amp0 = std::pow(2.0, -0.5 * n);
    for (std::size_t l = 0; l < nstates; ++l) {
        int d = std::popcount(static_cast<std::uint32_t>(l) ^ target_mask);
        double phase;
        if (exact) {
            auto gu = static_cast<std::int64_t>(
                std::llround(params.gamma * static_cast<double>(instance.spectrum.unit(d))));
            for (std::size_t t = 0; t < extra_masks.size(); ++t) {
                std::int64_t parity =
                    (std::popcount(static_cast<std::uint32_t>(l) & extra_masks[t]) & 1) ? -1 : 1;
                gu = checked_add(gu, static_cast<std::int64_t>(std::llround(
                                         params.gamma * 8.0 *
                                         static_cast<double>(instance.extra_terms[t].m))) *
                                         parity);
            }
            phase = static_cast<double>(mod_floor(gu, 8)) * kQuarterPi;
        } else {
            double e = instance.spectrum.energy(d);
            for (std::size_t t = 0; t < extra_masks.size(); ++t) {
                int parity =
                    (std::popcount(static_cast<std::uint32_t>(l) & extra_masks[t]) & 1) ? -1 : 1;
                e += kTwoPi * static_cast<double>(instance.extra_terms[t].m) * parity;
            }
            phase = params.gamma * e;
        }
        psi[l] = std::polar(amp0, -phase);
    }

    // e^{-i beta sigma_x} on every qubit
    const double cb = std::cos(params.beta);
    const std::complex<double> msb(0.0, -std::sin(params.beta));
    for (int q = 0; q < n; ++q) {
        const std::size_t bit = static_cast<std::size_t>(1) << q;
        for (std::size_t l = 0; l < nstates; ++l) {
            if (l & bit) continue;
            auto a = psi[l];
            auto b = psi[l | bit];
            psi[l] = cb * a + msb * b;
            psi[l | bit] = msb * a + cb * b;
        }
    }
    auto amp = psi[target_mask];
    return finish(amp.real(), amp.imag());
}

GridScanResult grid_scan(const HammingSpectrum& spectrum, const std::vector<double>& beta_grid,
                         const std::vector<double>& gamma_grid) {
    if (beta_grid.empty() || gamma_grid.empty())
        throw LengthMismatch("grid scan needs non-empty grids");
    GridScanResult out;
    bool first = true;
    for (double beta : beta_grid)
        for (double gamma : gamma_grid) {
            QaoaParams p{beta, gamma};
            AmplitudeResult r = overlap_collapsed(spectrum, p);
            out.table.emplace_back(beta, gamma, r);
            if (first || r.prob > out.best_result.prob) {
                out.best = p;
                out.best_result = r;
                first = false;
            }
        }
    return out;
}

DeterminismWitness verify_deterministic(const Instance& instance, double tol) {
    DeterminismWitness w;
    auto found = find_gamma(instance.spectrum);
    if (found) {
        w.params = QaoaParams{kQuarterPi, found->first};
        w.certificate = found->second;
        w.prob = overlap_collapsed(instance.spectrum, w.params).prob;
        w.deterministic = w.prob >= 1.0 - tol;
        return w;
    }
    // No witness; report the best candidate gamma at beta = pi/4.
    bool first = true;
    for (double g : default_gamma_candidates()) {
        QaoaParams p{kQuarterPi, g};
        double prob = overlap_collapsed(instance.spectrum, p).prob;
        if (first || prob > w.prob) {
            w.params = p;
            w.prob = prob;
            w.certificate = check_spectral_condition(instance.spectrum, g);
            first = false;
        }
    }
    w.deterministic = false;
    return w;
}

TrainedStateReport trained_state_checks(const Instance& instance) {
    const int n = instance.n();
    if (n > 20) throw TooLarge("trained-state check limited to n <= 20");
    TrainedStateReport rep;

    double gamma;
    if (auto found = find_gamma(instance.spectrum))
        gamma = found->first;
    else
        gamma = -sigma_of(instance.sign);

    // (a) after removing the linear watermark, the remaining diagonal must
    // rotate by multiples of 2pi at gamma*
    const int sigma = sigma_of(instance.sign);
    const bool exact = exact_phase_path(instance.spectrum, gamma);
    double max_dev = 0.0;
    for (int d = 0; d <= n; ++d) {
        if (exact) {
            std::int64_t hu = checked_add(instance.spectrum.unit(d),
                                          -sigma * (2 * static_cast<std::int64_t>(d) - n));
            auto gu = static_cast<std::int64_t>(std::llround(gamma * static_cast<double>(hu)));
            if (std::abs(gamma * static_cast<double>(hu) - static_cast<double>(gu)) <= 1e-9) {
                std::int64_t r = mod_floor(gu, 8);
                max_dev = std::max(max_dev, std::min(r, 8 - r) * kQuarterPi);
                continue;
            }
        }
        double watermark = sigma * kQuarterPi * (2.0 * d - n);
        double phase = gamma * (instance.spectrum.energy(d) - watermark);
        double r = std::remainder(phase, kTwoPi);
        max_dev = std::max(max_dev, std::abs(r));
    }
    rep.max_phase_deviation = max_dev;  // extra terms are 2pi-multiples by construction
    rep.phases_are_identity = max_dev <= 1e-10 * std::max(1.0, std::abs(gamma));

    // (b) the trained state coincides with |t> up to a global phase
    auto amp = overlap_statevector(instance, QaoaParams{kQuarterPi, gamma});
    rep.fidelity = amp.prob;
    rep.target_amplitude = amp.amplitude();
    rep.matches_target = rep.fidelity >= 1.0 - 1e-10;
    return rep;
}

}  // namespace qsep
