#include "qsep/instance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <sstream>

#include "qsep/exact.hpp"

#include <nlohmann/json.hpp>

namespace qsep {

TargetState::TargetState(int n_, std::string bits_) : n(n_), bits(std::move(bits_)) {
    if (n <= 0) throw LengthMismatch("target qubit count must be positive");
    if (static_cast<int>(bits.size()) != n)
        throw LengthMismatch("target bitstring length does not match n");
    for (char c : bits)
        if (c != '0' && c != '1') throw LengthMismatch("target bits must be '0'/'1'");
}

HammingSpectrum HammingSpectrum::exact(int n, std::vector<std::int64_t> units) {
    if (static_cast<int>(units.size()) != n + 1)
        throw LengthMismatch("exact spectrum needs n+1 entries");
    HammingSpectrum s;
    s.n = n;
    s.kind = Kind::ExactQuarterPi;
    s.units = std::move(units);
    return s;
}

HammingSpectrum HammingSpectrum::floating(int n, std::vector<double> radians) {
    if (static_cast<int>(radians.size()) != n + 1)
        throw LengthMismatch("float spectrum needs n+1 entries");
    HammingSpectrum s;
    s.n = n;
    s.kind = Kind::Float;
    s.radians = std::move(radians);
    return s;
}

double HammingSpectrum::energy(int d) const {
    auto i = static_cast<std::size_t>(d);
    return is_exact() ? static_cast<double>(units[i]) * kQuarterPi : radians[i];
}

int hamming_distance(const std::string& bits, const TargetState& target) {
    if (bits.size() != target.bits.size())
        throw LengthMismatch("bitstring length does not match target");
    int d = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) d += (bits[i] != target.bits[i]);
    return d;
}

static void validate_extra_terms(int n, const std::vector<ExtraTerm>& terms) {
    for (const auto& t : terms) {
        if (t.sites.size() > 4)
            throw LocalityExceeded("extra term touches more than 4 sites");
        if (!std::is_sorted(t.sites.begin(), t.sites.end()) ||
            std::adjacent_find(t.sites.begin(), t.sites.end()) != t.sites.end())
            throw LocalityExceeded("extra term sites must be sorted and duplicate-free");
        for (int s : t.sites)
            if (s < 0 || s >= n) throw LocalityExceeded("extra term site out of range");
    }
}

double Instance::diagonal_energy(const std::string& bits) const {
    int d = hamming_distance(bits, target);
    double e = spectrum.energy(d);
    for (const auto& t : extra_terms) {
        int parity = 1;
        for (int s : t.sites) parity *= (bits[static_cast<std::size_t>(s)] == '0') ? 1 : -1;
        e += kTwoPi * static_cast<double>(t.m) * parity;
    }
    return e;
}

std::int64_t Instance::diagonal_units(const std::string& bits) const {
    if (!spectrum.is_exact()) throw NotPolynomial("exact diagonal requires an exact spectrum");
    int d = hamming_distance(bits, target);
    std::int64_t u = spectrum.unit(d);
    for (const auto& t : extra_terms) {
        std::int64_t parity = 1;
        for (int s : t.sites) parity *= (bits[static_cast<std::size_t>(s)] == '0') ? 1 : -1;
        u = checked_add(u, checked_mul(8, checked_mul(t.m, parity)));  // 2pi = 8 quarter-units
    }
    return u;
}

Instance build_hard_instance(int n, const TargetState& target, SignConvention sign) {
    if (n < 2 || n % 2 != 0) throw OddN("hard instances require even n >= 2");
    if (target.n != n) throw LengthMismatch("target size does not match n");
    const std::int64_t s = sigma_of(sign);
    const std::int64_t half = n / 2;
    std::vector<std::int64_t> u(static_cast<std::size_t>(n) + 1);
    for (std::int64_t d = 0; d <= n; ++d) {
        std::int64_t quart = checked_mul(8, checked_mul(checked_mul(d, d),
                                                        checked_mul(d - half, d - half)));
        u[static_cast<std::size_t>(d)] = checked_add(checked_mul(s, 2 * d - n), quart);
    }
    Instance inst;
    inst.target = target;
    inst.spectrum = HammingSpectrum::exact(n, std::move(u));
    inst.sign = sign;
    return inst;
}

Instance build_hard_instance(int n, SignConvention sign) {
    if (n < 2 || n % 2 != 0) throw OddN("hard instances require even n >= 2");
    return build_hard_instance(n, TargetState::all_zeros(n), sign);
}

Instance build_watermarked_instance(const TargetState& target, std::vector<ExtraTerm> extra_terms,
                                    SignConvention sign) {
    validate_extra_terms(target.n, extra_terms);
    const std::int64_t s = sigma_of(sign);
    std::vector<std::int64_t> u(static_cast<std::size_t>(target.n) + 1);
    for (std::int64_t d = 0; d <= target.n; ++d)
        u[static_cast<std::size_t>(d)] = checked_mul(s, 2 * d - target.n);
    Instance inst;
    inst.target = target;
    inst.spectrum = HammingSpectrum::exact(target.n, std::move(u));
    inst.extra_terms = std::move(extra_terms);
    inst.sign = sign;
    return inst;
}

static double circular_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

SpectralCertificate check_spectral_condition(const HammingSpectrum& spectrum, double gamma,
                                             double tol) {
    SpectralCertificate cert;
    cert.gamma = gamma;

    // Exact integer path: phases as quarter-pi units mod 8.
    if (spectrum.is_exact()) {
        bool integral = true;
        for (std::int64_t u : spectrum.units) {
            double p = gamma * static_cast<double>(u);
            if (std::abs(p - std::round(p)) > 1e-9) {
                integral = false;
                break;
            }
        }
        if (integral) {
            cert.exact_path = true;
            std::int64_t common = 0;
            bool ok = true;
            for (int d = 0; d <= spectrum.n; ++d) {
                auto gu = static_cast<std::int64_t>(
                    std::llround(gamma * static_cast<double>(spectrum.unit(d))));
                std::int64_t p = mod_floor(checked_add(gu, 2 * static_cast<std::int64_t>(d)), 8);
                if (d == 0)
                    common = p;
                else if (p != common)
                    ok = false;
            }
            if (ok) {
                cert.satisfied = true;
                cert.c = static_cast<double>(common) * kQuarterPi;
                cert.max_deviation = 0.0;
                return cert;
            }
            // fall through to the float path so max_deviation is meaningful
        }
    }

    // Float path: circular mean of the phases, then max circular distance.
    std::complex<double> mean(0.0, 0.0);
    std::vector<double> phases(static_cast<std::size_t>(spectrum.n) + 1);
    for (int d = 0; d <= spectrum.n; ++d) {
        double phi = gamma * spectrum.energy(d) + (kPi / 2.0) * d;
        phases[static_cast<std::size_t>(d)] = phi;
        mean += std::exp(std::complex<double>(0.0, phi));
    }
    double c = std::arg(mean);
    if (c < 0) c += kTwoPi;
    double max_dev = 0.0;
    for (double phi : phases) max_dev = std::max(max_dev, circular_distance(phi, c));
    cert.c = c;
    cert.max_deviation = max_dev;
    cert.satisfied = max_dev <= tol;
    return cert;
}

std::vector<double> default_gamma_candidates() { return {1.0, -1.0, 0.5, -0.5, 2.0, -2.0}; }

std::optional<std::pair<double, SpectralCertificate>> find_gamma(
    const HammingSpectrum& spectrum, const std::vector<double>& candidates) {
    for (double g : candidates) {
        SpectralCertificate cert = check_spectral_condition(spectrum, g);
        if (cert.satisfied) return std::make_pair(g, cert);
    }
    return std::nullopt;
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

std::vector<double> density_of_states(int n) {
    std::vector<double> rho(static_cast<std::size_t>(n) + 1);
    const double ln2 = std::log(2.0);
    for (int d = 0; d <= n; ++d)
        rho[static_cast<std::size_t>(d)] = std::exp(log_binomial(n, d) - n * ln2);
    return rho;
}

// --- JSON I/O ---------------------------------------------------------

using nlohmann::json;

std::string instance_to_json(const Instance& inst) {
    json j;
    j["n"] = inst.n();
    j["target"] = inst.target.bits;
    j["sign"] = inst.sign == SignConvention::TargetIsGround ? "ground" : "paper";
    if (inst.spectrum.is_exact())
        j["spectrum_quarter_pi"] = inst.spectrum.units;
    else
        j["spectrum_float"] = inst.spectrum.radians;
    // Tag the hard family when the spectrum matches it exactly.
    bool hard = inst.n() % 2 == 0 && inst.spectrum.is_exact() && inst.extra_terms.empty();
    if (hard) {
        Instance h = build_hard_instance(inst.n(), inst.target, inst.sign);
        hard = h.spectrum.units == inst.spectrum.units;
    }
    j["kind"] = hard ? "hard4local" : "custom";
    json terms = json::array();
    for (const auto& t : inst.extra_terms) terms.push_back({{"sites", t.sites}, {"m", t.m}});
    j["extra_terms"] = terms;
    return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw BadInstanceFile(std::string("invalid instance JSON: ") + e.what());
    }
    try {
        int n = j.at("n").get<int>();
        TargetState target(n, j.at("target").get<std::string>());
        std::string sign_s = j.value("sign", "ground");
        SignConvention sign =
            sign_s == "paper" ? SignConvention::PaperLiteral : SignConvention::TargetIsGround;
        std::string kind = j.value("kind", "custom");

        std::vector<ExtraTerm> extra;
        if (j.contains("extra_terms"))
            for (const auto& t : j["extra_terms"]) {
                ExtraTerm e;
                e.sites = t.at("sites").get<std::vector<int>>();
                e.m = t.at("m").get<std::int64_t>();
                extra.push_back(std::move(e));
            }
        validate_extra_terms(n, extra);

        Instance inst;
        if (kind == "hard4local") {
            inst = build_hard_instance(n, target, sign);
            if (j.contains("spectrum_quarter_pi") &&
                j["spectrum_quarter_pi"].get<std::vector<std::int64_t>>() != inst.spectrum.units)
                throw BadInstanceFile("hard4local spectrum does not match the builder");
        } else {
            bool has_exact = j.contains("spectrum_quarter_pi");
            bool has_float = j.contains("spectrum_float");
            if (has_exact == has_float)
                throw BadInstanceFile("custom instance needs exactly one spectrum field");
            inst.target = target;
            inst.sign = sign;
            if (has_exact)
                inst.spectrum =
                    HammingSpectrum::exact(n, j["spectrum_quarter_pi"].get<std::vector<std::int64_t>>());
            else
                inst.spectrum =
                    HammingSpectrum::floating(n, j["spectrum_float"].get<std::vector<double>>());
        }
        inst.extra_terms = std::move(extra);
        return inst;
    } catch (const json::exception& e) {
        throw BadInstanceFile(std::string("invalid instance JSON: ") + e.what());
    }
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInstanceFile("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return instance_from_json(ss.str());
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BadInstanceFile("cannot write instance file: " + path);
    out << instance_to_json(inst);
}

}  // namespace qsep
