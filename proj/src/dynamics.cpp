#include "qsep/dynamics.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qsep {

namespace {

void check_schedule(const AnnealSchedule& schedule) {
    if (!(schedule.total_time > 0.0)) throw LengthMismatch("anneal time must be positive");
    if (schedule.steps < 1) throw LengthMismatch("anneal needs at least one step");
}

}  // namespace

// Both engines propagate the identical product of exact unitaries
//   X(dt/2) D(dt) X(dt/2)   at the midpoint s of every step,
// where X is the mixer rotation and D the diagonal phase. The commuting
// single-qubit structure of the mixer makes the full-space and
// shell-space factors the same operator, so the two engines can be
// compared at machine precision.

QaResult qa_symmetric(const HammingSpectrum& spectrum, const AnnealSchedule& schedule,
                      int mixer_sign) {
    check_schedule(schedule);
    const int n = spectrum.n;
    const int dim = n + 1;

    // collective mixer <w+1|Sum sigma_x|w> = sqrt((w+1)(n-w))
    Eigen::MatrixXd mixer = Eigen::MatrixXd::Zero(dim, dim);
    for (int w = 0; w < n; ++w) {
        double v = std::sqrt(static_cast<double>(w + 1) * (n - w));
        mixer(w, w + 1) = v;
        mixer(w + 1, w) = v;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mixer);
    const Eigen::MatrixXd& V = es.eigenvectors();
    const Eigen::VectorXd& lam = es.eigenvalues();

    // |+> in the gauged frame: amplitude sqrt(C(n,w)/2^n) on shell w
    Eigen::VectorXcd psi(dim);
    const double ln2 = std::log(2.0);
    for (int w = 0; w < dim; ++w)
        psi(w) = std::exp(0.5 * (log_binomial(n, w) - n * ln2));

    const double dt = schedule.total_time / schedule.steps;
    Eigen::VectorXcd tmp(dim);
    auto apply_mixer = [&](double theta) {
        tmp.noalias() = V.transpose() * psi;
        for (int k = 0; k < dim; ++k) tmp(k) *= std::polar(1.0, -theta * lam(k));
        psi.noalias() = V * tmp;
    };
    for (int m = 0; m < schedule.steps; ++m) {
        double s = (m + 0.5) / schedule.steps;
        double theta_x = mixer_sign * (1.0 - s) * 0.5 * dt;
        apply_mixer(theta_x);
        for (int w = 0; w < dim; ++w) psi(w) *= std::polar(1.0, -dt * s * spectrum.energy(w));
        apply_mixer(theta_x);
    }

    QaResult r;
    r.success = std::norm(psi(0));
    r.norm_error = std::abs(psi.norm() - 1.0);
    return r;
}

QaResult qa_symmetric(const Instance& instance, const AnnealSchedule& schedule, int mixer_sign) {
    if (!instance.extra_terms.empty())
        throw SymmetryBroken("extra 2pi terms break the permutation symmetry");
    return qa_symmetric(instance.spectrum, schedule, mixer_sign);
}

QaResult qa_statevector(const Instance& instance, const AnnealSchedule& schedule, int mixer_sign) {
    check_schedule(schedule);
    const int n = instance.n();
    if (n > 14) throw TooLarge("full-space anneal limited to n <= 14");
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

    std::vector<double> diag(nstates);
    for (std::size_t l = 0; l < nstates; ++l) {
        int d = std::popcount(static_cast<std::uint32_t>(l) ^ target_mask);
        double e = instance.spectrum.energy(d);
        for (std::size_t t = 0; t < extra_masks.size(); ++t) {
            int parity = (std::popcount(static_cast<std::uint32_t>(l) & extra_masks[t]) & 1) ? -1 : 1;
            e += kTwoPi * static_cast<double>(instance.extra_terms[t].m) * parity;
        }
        diag[l] = e;
    }

    std::vector<std::complex<double>> psi(nstates, std::pow(2.0, -0.5 * n));
    const double dt = schedule.total_time / schedule.steps;

    auto apply_mixer = [&](double theta) {
        const double c = std::cos(theta);
        const std::complex<double> ms(0.0, -std::sin(theta));
        for (int q = 0; q < n; ++q) {
            const std::size_t bit = static_cast<std::size_t>(1) << q;
            for (std::size_t l = 0; l < nstates; ++l) {
                if (l & bit) continue;
                auto a = psi[l];
                auto b = psi[l | bit];
                psi[l] = c * a + ms * b;
                psi[l | bit] = ms * a + c * b;
            }
        }
    };
    for (int m = 0; m < schedule.steps; ++m) {
        double s = (m + 0.5) / schedule.steps;
        double theta_x = mixer_sign * (1.0 - s) * 0.5 * dt;
        apply_mixer(theta_x);
        for (std::size_t l = 0; l < nstates; ++l) psi[l] *= std::polar(1.0, -dt * s * diag[l]);
        apply_mixer(theta_x);
    }

    double norm2 = 0.0;
    for (const auto& a : psi) norm2 += std::norm(a);
    QaResult r;
    r.success = std::norm(psi[target_mask]);
    r.norm_error = std::abs(std::sqrt(norm2) - 1.0);
    return r;
}

}  // namespace qsep
