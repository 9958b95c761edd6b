#include "qsep/sa.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>
#include <vector>

#include "qsep/exact.hpp"

namespace qsep {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int env_threads() {
    const char* v = std::getenv("QSEP_THREADS");
    if (!v) return 1;
    int t = std::atoi(v);
    return t > 0 ? t : 1;
}

}  // namespace

SaSchedule default_sa_schedule(const Instance& instance) {
    const auto& sp = instance.spectrum;
    double lo = sp.energy(0), hi = sp.energy(0);
    for (int d = 1; d <= sp.n; ++d) {
        lo = std::min(lo, sp.energy(d));
        hi = std::max(hi, sp.energy(d));
    }
    SaSchedule s;
    s.t_start = std::max((hi - lo) / instance.n(), 1.0);
    s.t_end = 0.01;
    s.sweeps = 100 * instance.n();
    s.cooling = SaSchedule::Cooling::Geometric;
    return s;
}

SaResult sa_run(const Instance& instance, const SaSchedule& schedule, std::uint64_t seed,
                const std::string& start_bits, bool audit) {
    if (!(schedule.t_start >= schedule.t_end && schedule.t_end > 0.0))
        throw LengthMismatch("SA needs t_start >= t_end > 0");
    if (schedule.sweeps < 1) throw LengthMismatch("SA needs at least one sweep");
    const int n = instance.n();

    std::uint64_t key = seed;
    std::mt19937_64 rng(splitmix64(key));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, n - 1);

    std::string bits;
    if (start_bits.empty()) {
        bits.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (rng() & 1u) ? '1' : '0';
    } else {
        if (static_cast<int>(start_bits.size()) != n)
            throw LengthMismatch("start bitstring length does not match n");
        bits = start_bits;
    }

    // incremental state: distance to target plus one parity per extra term
    int d = hamming_distance(bits, instance.target);
    std::vector<int> parity(instance.extra_terms.size(), 1);
    std::vector<std::vector<int>> terms_at_site(static_cast<std::size_t>(n));
    for (std::size_t t = 0; t < instance.extra_terms.size(); ++t) {
        for (int i : instance.extra_terms[t].sites) {
            terms_at_site[static_cast<std::size_t>(i)].push_back(static_cast<int>(t));
            if (bits[static_cast<std::size_t>(i)] == '1') parity[t] = -parity[t];
        }
    }
    auto extra_energy = [&]() {
        double e = 0.0;
        for (std::size_t t = 0; t < parity.size(); ++t)
            e += kTwoPi * static_cast<double>(instance.extra_terms[t].m) * parity[t];
        return e;
    };
    double energy = instance.spectrum.energy(d) + extra_energy();

    SaResult res;
    res.best_seen_success = (d == 0);

    for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
        double temp;
        if (schedule.sweeps == 1) {
            temp = schedule.t_start;
        } else if (schedule.cooling == SaSchedule::Cooling::Geometric) {
            double r = std::pow(schedule.t_end / schedule.t_start,
                                1.0 / (schedule.sweeps - 1));
            temp = schedule.t_start * std::pow(r, sweep);
        } else {
            temp = schedule.t_start +
                   (schedule.t_end - schedule.t_start) * sweep / (schedule.sweeps - 1);
        }
        for (int move = 0; move < n; ++move) {
            int i = pick(rng);
            auto idx = static_cast<std::size_t>(i);
            bool matches = bits[idx] == instance.target.bits[idx];
            int d_new = d + (matches ? 1 : -1);
            double e_new = instance.spectrum.energy(d_new) - instance.spectrum.energy(d);
            for (int t : terms_at_site[idx])
                e_new += -2.0 * kTwoPi *
                         static_cast<double>(instance.extra_terms[static_cast<std::size_t>(t)].m) *
                         parity[static_cast<std::size_t>(t)];
            double u = unif(rng);  // drawn unconditionally to keep the stream aligned
            if (e_new <= 0.0 || u < std::exp(-e_new / temp)) {
                bits[idx] = bits[idx] == '0' ? '1' : '0';
                d = d_new;
                energy += e_new;
                for (int t : terms_at_site[idx])
                    parity[static_cast<std::size_t>(t)] = -parity[static_cast<std::size_t>(t)];
                ++res.accepted_moves;
                if (d == 0) res.best_seen_success = true;
            }
        }
        if (audit) {
            int d_fresh = hamming_distance(bits, instance.target);
            if (d_fresh != d) res.bookkeeping_exact = false;
            double e_fresh = instance.diagonal_energy(bits);
            res.max_energy_drift = std::max(res.max_energy_drift, std::abs(energy - e_fresh));
            if (instance.spectrum.is_exact()) {
                // the tracked state (d, parities) determines the energy
                // exactly in quarter-pi units; compare there as well
                std::int64_t u = instance.diagonal_units(bits);
                std::int64_t u_tracked = instance.spectrum.unit(d);
                for (std::size_t t = 0; t < parity.size(); ++t)
                    u_tracked = checked_add(
                        u_tracked, checked_mul(8, checked_mul(instance.extra_terms[t].m,
                                                              parity[t])));
                if (u != u_tracked) res.bookkeeping_exact = false;
            }
        }
    }

    res.final_bits = bits;
    res.final_hamming = d;
    // recompute from scratch so the reported number carries no drift
    res.final_energy = instance.diagonal_energy(bits);
    res.success = (d == 0);
    return res;
}

std::pair<double, double> wilson_interval(int successes, int runs) {
    if (runs <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double z2 = z * z;
    double p = static_cast<double>(successes) / runs;
    double denom = 1.0 + z2 / runs;
    double center = (p + z2 / (2.0 * runs)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / runs + z2 / (4.0 * runs * runs)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

SaEstimate sa_success_probability(const Instance& instance, const SaSchedule& schedule, int runs,
                                  std::uint64_t seed0, bool best_seen) {
    if (runs < 1) throw LengthMismatch("need at least one SA run");
    const int nthreads = std::min(env_threads(), runs);
    std::atomic<int> successes{0};

    auto work = [&](int lo, int hi) {
        int local = 0;
        for (int k = lo; k < hi; ++k) {
            SaResult r = sa_run(instance, schedule, seed0 + static_cast<std::uint64_t>(k));
            if (best_seen ? r.best_seen_success : r.success) ++local;
        }
        successes += local;
    };
    if (nthreads == 1) {
        work(0, runs);
    } else {
        std::vector<std::thread> pool;
        int chunk = (runs + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(work, t * chunk, std::min(runs, (t + 1) * chunk));
        for (auto& th : pool) th.join();
    }

    SaEstimate est;
    est.runs = runs;
    est.successes = successes.load();
    est.estimate = static_cast<double>(est.successes) / runs;
    auto [lo, hi] = wilson_interval(est.successes, runs);
    est.wilson_low = lo;
    est.wilson_high = hi;
    return est;
}

}  // namespace qsep
