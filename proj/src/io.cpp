#include "qsep/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qsep {

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fig1a_csv(const HammingSpectrum& spectrum) {
    std::ostringstream out;
    out << "delta,energy_radians,density\n";
    auto density = density_of_states(spectrum.n);
    for (int d = 0; d <= spectrum.n; ++d)
        out << d << "," << format_double(spectrum.energy(d)) << ","
            << format_double(density[static_cast<std::size_t>(d)]) << "\n";
    return out.str();
}

std::string fig1b_csv(const OverlapDistribution& dist) {
    std::ostringstream out;
    out << "q,probability\n";
    for (std::size_t k = 0; k < dist.q_values.size(); ++k)
        out << format_double(dist.q_values[k]) << "," << format_double(dist.probabilities[k])
            << "\n";
    return out.str();
}

std::string grid_csv(const GridScanResult& scan) {
    std::ostringstream out;
    out << "beta,gamma,re,im,prob\n";
    for (const auto& [beta, gamma, r] : scan.table)
        out << format_double(beta) << "," << format_double(gamma) << "," << format_double(r.re)
            << "," << format_double(r.im) << "," << format_double(r.prob) << "\n";
    return out.str();
}

namespace {

constexpr int kW = 720, kH = 440;
constexpr int kMarginL = 70, kMarginR = 70, kMarginT = 30, kMarginB = 50;

double xpos(double frac) { return kMarginL + frac * (kW - kMarginL - kMarginR); }
double ypos(double frac) { return kH - kMarginB - frac * (kH - kMarginT - kMarginB); }

std::string svg_header(const std::string& title) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << title << "</text>\n";
    return out.str();
}

void axis_frame(std::ostringstream& out, const std::string& xlabel, const std::string& ylabel_l,
                const std::string& ylabel_r = "") {
    out << "<line x1=\"" << xpos(0) << "\" y1=\"" << ypos(0) << "\" x2=\"" << xpos(1)
        << "\" y2=\"" << ypos(0) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << xpos(0) << "\" y1=\"" << ypos(0) << "\" x2=\"" << xpos(0)
        << "\" y2=\"" << ypos(1) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">" << xlabel << "</text>\n"
        << "<text x=\"18\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
        << "transform=\"rotate(-90 18 " << kH / 2 << ")\">" << ylabel_l << "</text>\n";
    if (!ylabel_r.empty())
        out << "<line x1=\"" << xpos(1) << "\" y1=\"" << ypos(0) << "\" x2=\"" << xpos(1)
            << "\" y2=\"" << ypos(1) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kW - 16 << "\" y=\"" << kH / 2
            << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(90 " << kW - 16
            << " " << kH / 2 << ")\">" << ylabel_r << "</text>\n";
}

}  // namespace

std::string fig1a_svg(const HammingSpectrum& spectrum) {
    const int n = spectrum.n;
    auto density = density_of_states(n);

    double e_min = spectrum.energy(0), e_comp_max = 0.0, rho_max = 0.0;
    for (int d = 1; d <= n; ++d) e_min = std::min(e_min, spectrum.energy(d));
    std::vector<double> e_comp(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d) {
        e_comp[static_cast<std::size_t>(d)] = std::log10(spectrum.energy(d) - e_min + 1.0);
        e_comp_max = std::max(e_comp_max, e_comp[static_cast<std::size_t>(d)]);
        rho_max = std::max(rho_max, density[static_cast<std::size_t>(d)]);
    }
    if (e_comp_max == 0.0) e_comp_max = 1.0;
    if (rho_max == 0.0) rho_max = 1.0;

    std::ostringstream out;
    out << svg_header("energy profile and density of states, n=" + std::to_string(n));
    axis_frame(out, "hamming distance to target", "log10(E - Emin + 1) [rad]",
               "density of states");

    auto polyline = [&](const std::vector<double>& ys, double ymax, const std::string& style) {
        out << "<polyline fill=\"none\" " << style << " points=\"";
        for (int d = 0; d <= n; ++d)
            out << xpos(n == 0 ? 0.5 : static_cast<double>(d) / n) << ","
                << ypos(ys[static_cast<std::size_t>(d)] / ymax) << " ";
        out << "\"/>\n";
    };
    polyline(e_comp, e_comp_max, "stroke=\"black\" stroke-dasharray=\"6 4\" stroke-width=\"1.5\"");
    polyline(density, rho_max, "stroke=\"crimson\" stroke-width=\"1.5\"");
    out << "</svg>\n";
    return out.str();
}

std::string fig1b_svg(const OverlapDistribution& dist, bool log_y) {
    const int n = dist.n;
    double p_max = 0.0;
    for (double p : dist.probabilities) p_max = std::max(p_max, p);
    if (p_max == 0.0) p_max = 1.0;
    const double floor_log = -30.0;  // clip below 1e-30

    std::ostringstream out;
    out << svg_header("replica overlap distribution P(q), n=" + std::to_string(n));
    axis_frame(out, "overlap q", log_y ? "log10 P(q)" : "P(q)");

    const double bar_w = (kW - kMarginL - kMarginR) / static_cast<double>(n + 2);
    for (std::size_t k = 0; k < dist.probabilities.size(); ++k) {
        double p = dist.probabilities[k];
        double h;
        if (log_y) {
            double lp = p > 0 ? std::max(std::log10(p), floor_log) : floor_log;
            h = (lp - floor_log) / (std::log10(p_max) - floor_log);
        } else {
            h = p / p_max;
        }
        // q runs from 1 down to -1 left to right reversed: map q to [0,1]
        double xfrac = (1.0 - dist.q_values[k]) / 2.0;
        double x = xpos(xfrac) - bar_w / 2.0;
        out << "<rect x=\"" << x << "\" y=\"" << ypos(h) << "\" width=\"" << bar_w
            << "\" height=\"" << (ypos(0) - ypos(h)) << "\" fill=\"steelblue\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace qsep
