#include "qsep/couplings.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <type_traits>

namespace qsep {

namespace {

// Polynomial in one variable, coefficients indexed by power.
template <typename T>
using Poly = std::vector<T>;

template <typename T>
Poly<T> poly_mul(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> r(a.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

template <typename T>
void poly_add_scaled(Poly<T>& a, const Poly<T>& b, const T& s) {
    if (a.size() < b.size()) a.resize(b.size(), T(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i] * s;
}

// Coefficients of the falling-binomial C(x, j) in the power basis.
template <typename T>
Poly<T> binomial_poly(int j) {
    Poly<T> p{T(1)};
    for (int i = 0; i < j; ++i) p = poly_mul(p, Poly<T>{T(-i), T(1)});
    // divide by j!
    T fact(1);
    for (int i = 2; i <= j; ++i) fact = fact * T(i);
    for (auto& c : p) c = c / fact;
    return p;
}

// Newton forward differences of the spectrum; the spectrum is a polynomial
// of degree <= 4 in the Hamming distance iff all differences of order >= 5
// vanish. Returns the first five differences d_0..d_4.
template <typename T>
std::vector<T> forward_differences_deg4(std::vector<T> v, double float_tol) {
    double scale = 1.0;
    if constexpr (std::is_same_v<T, double>)
        for (double x : v) scale = std::max(scale, std::abs(x));
    std::vector<T> d;
    d.reserve(5);
    for (int order = 0;; ++order) {
        if (order <= 4) {
            d.push_back(v.front());
        } else {
            // v now holds the 5th differences; a degree <= 4 polynomial has
            // them identically zero (and with them every higher order).
            for (const auto& x : v) {
                bool zero;
                if constexpr (std::is_same_v<T, double>)
                    zero = std::abs(x) <= float_tol * scale;
                else
                    zero = x.is_zero();
                if (!zero)
                    throw NotPolynomial(
                        "spectrum is not a polynomial of degree <= 4 in the Hamming distance");
            }
            break;
        }
        if (v.size() == 1) break;
        std::vector<T> w(v.size() - 1);
        for (std::size_t i = 0; i + 1 < v.size(); ++i) w[i] = v[i + 1] - v[i];
        v = std::move(w);
    }
    d.resize(5, T(0));
    return d;
}

// Expand the powers S^j (S = sum of t_i z_i, z_i^2 = 1) in the symmetric
// subset basis m_k = sum over |T|=k of prod_{i in T} t_i z_i, via
// S*m_k = (k+1) m_{k+1} + (n-k+1) m_{k-1}.
template <typename T>
std::vector<std::vector<T>> s_power_table(int n, int max_power) {
    std::vector<std::vector<T>> table;
    std::vector<T> cur(static_cast<std::size_t>(max_power) + 1, T(0));
    cur[0] = T(1);
    table.push_back(cur);
    for (int j = 0; j < max_power; ++j) {
        std::vector<T> next(cur.size(), T(0));
        for (int k = 0; k <= max_power; ++k) {
            if constexpr (std::is_same_v<T, double>) {
                if (cur[k] == 0.0) continue;
            } else {
                if (cur[k].is_zero()) continue;
            }
            if (k + 1 <= max_power) next[k + 1] += cur[k] * T(k + 1);
            if (k - 1 >= 0) next[k - 1] += cur[k] * T(n - k + 1);
        }
        cur = std::move(next);
        table.push_back(cur);
    }
    return table;
}

// Per-subset-size coefficients c_0..c_4 of the instance diagonal, in the
// spectrum's native units (quarter-pi integers or radians).
template <typename T>
std::vector<T> size_coefficients(int n, const std::vector<T>& spectrum_values, double float_tol) {
    auto d = forward_differences_deg4<T>(spectrum_values, float_tol);

    // power-basis polynomial in the Hamming distance
    Poly<T> p{T(0)};
    for (int j = 0; j <= 4; ++j) poly_add_scaled(p, binomial_poly<T>(j), d[static_cast<std::size_t>(j)]);

    // substitute distance = (n - S)/2
    Poly<T> lin{T(n) / T(2), T(-1) / T(2)};
    Poly<T> q{T(0)};
    Poly<T> lin_pow{T(1)};
    for (std::size_t j = 0; j < p.size(); ++j) {
        poly_add_scaled(q, lin_pow, p[j]);
        if (j + 1 < p.size()) lin_pow = poly_mul(lin_pow, lin);
    }
    q.resize(5, T(0));

    auto table = s_power_table<T>(n, 4);
    std::vector<T> coef(5, T(0));
    for (int j = 0; j <= 4; ++j)
        for (int k = 0; k <= 4; ++k) coef[k] += q[static_cast<std::size_t>(j)] * table[j][k];
    return coef;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    if (k == 0) {
        f(idx);
        return;
    }
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

SpinGlass expand_hamming_polynomial(const Instance& instance) {
    const int n = instance.n();
    SpinGlass sg;
    sg.n = n;
    sg.exact = instance.spectrum.is_exact();

    std::vector<Rational> coef_exact;
    std::vector<double> coef_float;
    if (sg.exact) {
        std::vector<Rational> vals;
        vals.reserve(instance.spectrum.units.size());
        for (auto u : instance.spectrum.units) vals.emplace_back(u);
        coef_exact = size_coefficients<Rational>(n, vals, 0.0);
    } else {
        coef_float = size_coefficients<double>(n, instance.spectrum.radians, 1e-9);
    }

    for (int k = 0; k <= std::min(n, 4); ++k) {
        bool zero = sg.exact ? coef_exact[static_cast<std::size_t>(k)].is_zero()
                             : coef_float[static_cast<std::size_t>(k)] == 0.0;
        if (zero) continue;
        for_each_subset(n, k, [&](const std::vector<int>& subset) {
            int tprod = 1;
            for (int i : subset)
                tprod *= instance.target.bits[static_cast<std::size_t>(i)] == '0' ? 1 : -1;
            Coupling c = sg.exact
                             ? Coupling::from_units(coef_exact[static_cast<std::size_t>(k)] *
                                                    Rational(tprod))
                             : Coupling::from_radians(coef_float[static_cast<std::size_t>(k)] *
                                                      tprod);
            sg.terms[subset] = c;
        });
    }

    // 2pi-multiple remainder terms, verbatim
    for (const auto& t : instance.extra_terms) {
        if (t.sites.size() > 4) throw LocalityExceeded("extra term touches more than 4 sites");
        Coupling add = Coupling::from_units(Rational(checked_mul(8, t.m)));
        auto it = sg.terms.find(t.sites);
        if (it == sg.terms.end()) {
            sg.terms[t.sites] = add;
        } else if (it->second.exact) {
            it->second.units += add.units;
            it->second.radians = it->second.units.to_double() * kQuarterPi;
        } else {
            it->second.radians += add.radians;
        }
    }

    sg.max_locality = 0;
    for (const auto& [subset, c] : sg.terms)
        sg.max_locality = std::max(sg.max_locality, static_cast<int>(subset.size()));
    return sg;
}

double spin_glass_energy(const SpinGlass& sg, const std::string& bits) {
    if (static_cast<int>(bits.size()) != sg.n)
        throw LengthMismatch("bitstring length does not match spin glass size");
    double e = 0.0;
    for (const auto& [subset, c] : sg.terms) {
        int prod = 1;
        for (int i : subset) prod *= bits[static_cast<std::size_t>(i)] == '0' ? 1 : -1;
        e += c.radians * prod;
    }
    return e;
}

Rational spin_glass_energy_exact(const SpinGlass& sg, const std::string& bits) {
    if (static_cast<int>(bits.size()) != sg.n)
        throw LengthMismatch("bitstring length does not match spin glass size");
    if (!sg.exact) throw NotPolynomial("spin glass has no exact coefficients");
    Rational e(0);
    for (const auto& [subset, c] : sg.terms) {
        int prod = 1;
        for (int i : subset) prod *= bits[static_cast<std::size_t>(i)] == '0' ? 1 : -1;
        e += c.units * Rational(prod);
    }
    return e;
}

ExpansionReport verify_expansion(const SpinGlass& sg, const Instance& instance) {
    const int n = instance.n();
    if (n > 14) throw TooLarge("brute-force expansion check limited to n <= 14");
    if (sg.n != n) throw LengthMismatch("spin glass and instance sizes differ");

    ExpansionReport rep;
    rep.exact_path = sg.exact && instance.spectrum.is_exact();
    rep.states_checked = 1 << n;

    // Precompute bit masks and scaled integer coefficients for speed.
    const auto nstates = static_cast<std::uint32_t>(1u << n);
    std::uint32_t target_mask = 0;
    for (int i = 0; i < n; ++i)
        if (instance.target.bits[static_cast<std::size_t>(i)] == '1')
            target_mask |= (1u << i);

    struct FastTerm {
        std::uint32_t mask;
        std::int64_t scaled;  // exact path
        double radians;       // float path
    };
    std::int64_t denom = 1;
    if (rep.exact_path)
        for (const auto& [subset, c] : sg.terms)
            denom = checked_mul(denom / std::gcd(denom, c.units.den()), c.units.den());

    std::vector<FastTerm> fast;
    fast.reserve(sg.terms.size());
    for (const auto& [subset, c] : sg.terms) {
        std::uint32_t m = 0;
        for (int i : subset) m |= (1u << i);
        FastTerm ft{m, 0, c.radians};
        if (rep.exact_path) ft.scaled = checked_mul(c.units.num(), denom / c.units.den());
        fast.push_back(ft);
    }

    std::vector<std::int64_t> extra_scaled;
    std::vector<std::uint32_t> extra_masks;
    for (const auto& t : instance.extra_terms) {
        std::uint32_t m = 0;
        for (int i : t.sites) m |= (1u << i);
        extra_masks.push_back(m);
        extra_scaled.push_back(checked_mul(8, t.m));
    }

    double max_dev = 0.0;
    bool exact_ok = true;
    for (std::uint32_t s = 0; s < nstates; ++s) {
        int d = std::popcount(s ^ target_mask);
        if (rep.exact_path) {
            std::int64_t lhs = 0;
            for (const auto& ft : fast)
                lhs += (std::popcount(s & ft.mask) & 1) ? -ft.scaled : ft.scaled;
            std::int64_t rhs = checked_mul(instance.spectrum.unit(d), denom);
            for (std::size_t t = 0; t < extra_masks.size(); ++t) {
                std::int64_t v = checked_mul(extra_scaled[t], denom);
                rhs += (std::popcount(s & extra_masks[t]) & 1) ? -v : v;
            }
            if (lhs != rhs) {
                exact_ok = false;
                max_dev = std::max(
                    max_dev, std::abs(static_cast<double>(lhs - rhs)) / denom * kQuarterPi);
            }
        } else {
            double lhs = 0.0;
            for (const auto& ft : fast)
                lhs += (std::popcount(s & ft.mask) & 1) ? -ft.radians : ft.radians;
            std::string bits(static_cast<std::size_t>(n), '0');
            for (int i = 0; i < n; ++i)
                if (s & (1u << i)) bits[static_cast<std::size_t>(i)] = '1';
            max_dev = std::max(max_dev, std::abs(lhs - instance.diagonal_energy(bits)));
        }
    }
    rep.max_deviation = rep.exact_path ? (exact_ok ? 0.0 : max_dev) : max_dev;
    rep.pass = rep.exact_path ? exact_ok : max_dev <= 1e-9;
    return rep;
}

CircuitDescription export_circuit(const SpinGlass& sg, const QaoaParams& params) {
    CircuitDescription circ;
    circ.n = sg.n;
    for (const auto& [subset, c] : sg.terms) {
        if (subset.empty()) continue;  // global phase
        circ.gates.push_back({Gate::Kind::MultiZRotation, subset, 2.0 * params.gamma * c.radians});
    }
    for (int q = 0; q < sg.n; ++q)
        circ.gates.push_back({Gate::Kind::XRotation, {q}, 2.0 * params.beta});
    return circ;
}

static std::string fmt_angle(double a) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", a);
    return buf;
}

std::string render_circuit(const CircuitDescription& circ, const QaoaParams& params,
                           bool expand_ladders) {
    std::ostringstream out;
    out << "# depth-1 qaoa circuit, n=" << circ.n << " beta=" << fmt_angle(params.beta)
        << " gamma=" << fmt_angle(params.gamma) << "\n";
    for (const auto& g : circ.gates) {
        if (g.kind == Gate::Kind::XRotation) {
            out << "RX q" << g.sites[0] << " " << fmt_angle(g.angle) << "\n";
            continue;
        }
        if (!expand_ladders) {
            out << "MZ";
            for (int s : g.sites) out << " q" << s;
            out << " " << fmt_angle(g.angle) << "\n";
            continue;
        }
        // CX ladder onto the last site, RZ there, then unwind.
        for (std::size_t i = 0; i + 1 < g.sites.size(); ++i)
            out << "CX " << g.sites[i] << " " << g.sites[i + 1] << "\n";
        out << "RZ q" << g.sites.back() << " " << fmt_angle(g.angle) << "\n";
        for (std::size_t i = g.sites.size() - 1; i-- > 0;)
            out << "CX " << g.sites[i] << " " << g.sites[i + 1] << "\n";
    }
    return out.str();
}

}  // namespace qsep
