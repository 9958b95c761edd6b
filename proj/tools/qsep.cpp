// qsep: build watermark/hard spin-glass instances, run the QAOA, SA and QA
// engines on them, and emit the CSV/JSON/SVG artifacts.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qsep/couplings.hpp"
#include "qsep/dynamics.hpp"
#include "qsep/instance.hpp"
#include "qsep/io.hpp"
#include "qsep/oracle.hpp"
#include "qsep/overlap_dist.hpp"
#include "qsep/qaoa.hpp"
#include "qsep/sa.hpp"

using json = nlohmann::json;
using namespace qsep;

namespace {

SignConvention parse_sign(const std::string& s) {
    if (s == "ground") return SignConvention::TargetIsGround;
    if (s == "paper") return SignConvention::PaperLiteral;
    throw CLI::ValidationError("--sign must be 'ground' or 'paper'");
}

void print_certificate(const SpectralCertificate& cert) {
    std::cout << "spectral condition: " << (cert.satisfied ? "satisfied" : "violated")
              << " at gamma=" << cert.gamma << " (c=" << cert.c
              << " rad, max deviation=" << cert.max_deviation
              << (cert.exact_path ? ", exact integer path" : "") << ")\n";
}

std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> v;
    if (steps <= 1) {
        v.push_back(lo);
        return v;
    }
    for (int i = 0; i < steps; ++i) v.push_back(lo + (hi - lo) * i / (steps - 1));
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic depth-1 QAOA vs simulated/quantum annealing laboratory"};
    app.require_subcommand(1);

    // --- gen -----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "build an instance file");
    int gen_n = 4;
    bool gen_hard = false, gen_watermark = false;
    std::string gen_target, gen_sign = "ground", gen_out = "instance.json";
    gen->add_option("-n,--qubits", gen_n, "qubit count");
    gen->add_flag("--hard", gen_hard, "hard 4-local family (even n)");
    gen->add_flag("--watermark", gen_watermark, "pure linear watermark");
    gen->add_option("--target", gen_target, "target bitstring (default all zeros)");
    gen->add_option("--sign", gen_sign, "'ground' (default) or 'paper'");
    gen->add_option("-o,--out", gen_out, "output instance JSON");

    // --- qaoa ----------------------------------------------------------
    auto* qaoa = app.add_subcommand("qaoa", "verify determinism or grid-scan (beta,gamma)");
    std::string qaoa_in, qaoa_csv;
    bool qaoa_grid = false;
    double bmin = 0.0, bmax = kPi / 2.0, gmin = -2.0, gmax = 2.0;
    int bsteps = 33, gsteps = 33;
    qaoa->add_option("-i,--instance", qaoa_in, "instance JSON")->required();
    qaoa->add_flag("--grid", qaoa_grid, "exhaustive grid scan instead of the certificate check");
    qaoa->add_option("--beta-min", bmin);
    qaoa->add_option("--beta-max", bmax);
    qaoa->add_option("--beta-steps", bsteps);
    qaoa->add_option("--gamma-min", gmin);
    qaoa->add_option("--gamma-max", gmax);
    qaoa->add_option("--gamma-steps", gsteps);
    qaoa->add_option("-o,--out", qaoa_csv, "grid CSV output");

    // --- sa -------------------------------------------------------------
    auto* sa = app.add_subcommand("sa", "simulated annealing success estimate");
    std::string sa_in, sa_csv, sa_json;
    int sa_runs = 1000, sa_sweeps = -1;
    std::uint64_t sa_seed = 1;
    double sa_tstart = -1.0, sa_tend = -1.0;
    bool sa_best_seen = false;
    sa->add_option("-i,--instance", sa_in)->required();
    sa->add_option("--runs", sa_runs);
    sa->add_option("--seed", sa_seed);
    sa->add_option("--sweeps", sa_sweeps, "default 100*n");
    sa->add_option("--t-start", sa_tstart, "default max-spread/n");
    sa->add_option("--t-end", sa_tend, "default 0.01");
    sa->add_flag("--best-seen", sa_best_seen, "count any visit of the target as success");
    sa->add_option("-o,--out", sa_csv, "per-run CSV (seed,success,final_energy,final_hamming)");
    sa->add_option("--summary", sa_json, "aggregate JSON");

    // --- qa -------------------------------------------------------------
    auto* qa = app.add_subcommand("qa", "quantum annealing success probability");
    std::string qa_in, qa_csv;
    double qa_time = 20.0;
    int qa_steps = 4000, qa_mixer_sign = -1;
    bool qa_full = false;
    qa->add_option("-i,--instance", qa_in)->required();
    qa->add_option("-T,--time", qa_time);
    qa->add_option("--steps", qa_steps);
    qa->add_option("--mixer-sign", qa_mixer_sign, "-1 (default) or +1 (literal reading)");
    qa->add_flag("--statevector", qa_full, "full 2^n engine (n <= 14)");
    qa->add_option("-o,--out", qa_csv, "CSV (n,T,steps,success_prob)");

    // --- pq -------------------------------------------------------------
    auto* pq = app.add_subcommand("pq", "exact replica overlap distribution P(q)");
    std::string pq_in, pq_csv, pq_svg;
    double pq_beta = -1.0;
    pq->add_option("-i,--instance", pq_in)->required();
    pq->add_option("--inverse-temperature", pq_beta, "default: bisected ground-shell bracket");
    pq->add_option("-o,--out", pq_csv, "CSV (q,probability)");
    pq->add_option("--svg", pq_svg, "histogram SVG");

    // --- oracle ----------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "classical n+1-query target recovery");
    std::string or_in;
    std::uint64_t or_seed = 1;
    bool or_log = false, or_auto = false;
    oracle->add_option("-i,--instance", or_in)->required();
    oracle->add_option("--seed", or_seed);
    oracle->add_flag("--log", or_log, "print the full query log as JSON");
    oracle->add_flag("--auto-sign", or_auto,
                     "fix the ground convention with one extra consistency query");

    // --- export-circuit ---------------------------------------------------
    auto* exp = app.add_subcommand("export-circuit", "depth-1 circuit text");
    std::string exp_in, exp_out;
    double exp_beta = kQuarterPi, exp_gamma = 0.0;
    bool exp_ladder = false, exp_gamma_set = false;
    exp->add_option("-i,--instance", exp_in)->required();
    exp->add_option("--beta", exp_beta);
    exp->add_option("--gamma", exp_gamma)->each([&](const std::string&) { exp_gamma_set = true; });
    exp->add_flag("--ladder", exp_ladder, "lower multi-Z rotations to CX ladders");
    exp->add_option("-o,--out", exp_out, "output file (default stdout)");

    // --- fig1 --------------------------------------------------------------
    auto* fig1 = app.add_subcommand("fig1", "emit both figure panels (CSV + SVG)");
    std::string f1_in, f1_dir = ".";
    fig1->add_option("-i,--instance", f1_in)->required();
    fig1->add_option("-o,--out-dir", f1_dir);

    // --- compare -------------------------------------------------------------
    auto* cmp = app.add_subcommand("compare", "QAOA vs SA vs QA vs oracle summary");
    std::string cmp_in, cmp_out;
    int cmp_runs = 1000, cmp_qa_steps = 4000;
    double cmp_qa_time = 20.0;
    std::uint64_t cmp_seed = 1;
    cmp->add_option("-i,--instance", cmp_in)->required();
    cmp->add_option("--runs", cmp_runs, "SA runs");
    cmp->add_option("--seed", cmp_seed);
    cmp->add_option("--qa-time", cmp_qa_time);
    cmp->add_option("--qa-steps", cmp_qa_steps);
    cmp->add_option("-o,--out", cmp_out, "summary JSON file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (gen_hard == gen_watermark)
                throw CLI::ValidationError("pick exactly one of --hard / --watermark");
            SignConvention sign = parse_sign(gen_sign);
            TargetState target = gen_target.empty()
                                     ? TargetState::all_zeros(gen_n)
                                     : TargetState(gen_n, gen_target);
            Instance inst = gen_hard ? build_hard_instance(gen_n, target, sign)
                                     : build_watermarked_instance(target, {}, sign);
            atomic_write(gen_out, instance_to_json(inst));
            auto found = find_gamma(inst.spectrum);
            if (found)
                print_certificate(found->second);
            else
                std::cout << "spectral condition: no gamma witness among the defaults\n";
            std::cout << "wrote " << gen_out << "\n";
        } else if (qaoa->parsed()) {
            Instance inst = load_instance(qaoa_in);
            if (qaoa_grid) {
                auto scan = grid_scan(inst.spectrum, linspace(bmin, bmax, bsteps),
                                      linspace(gmin, gmax, gsteps));
                if (!qaoa_csv.empty()) atomic_write(qaoa_csv, grid_csv(scan));
                std::cout << "best prob " << format_double(scan.best_result.prob) << " at beta="
                          << format_double(scan.best.beta)
                          << " gamma=" << format_double(scan.best.gamma) << "\n";
            } else {
                auto w = verify_deterministic(inst);
                print_certificate(w.certificate);
                std::cout << "deterministic: " << (w.deterministic ? "yes" : "no")
                          << " prob=" << format_double(w.prob)
                          << " at beta=" << format_double(w.params.beta)
                          << " gamma=" << format_double(w.params.gamma) << "\n";
                if (!w.deterministic) return 2;
            }
        } else if (sa->parsed()) {
            Instance inst = load_instance(sa_in);
            SaSchedule sched = default_sa_schedule(inst);
            if (sa_sweeps > 0) sched.sweeps = sa_sweeps;
            if (sa_tstart > 0) sched.t_start = sa_tstart;
            if (sa_tend > 0) sched.t_end = sa_tend;
            if (!sa_csv.empty()) {
                std::ostringstream csv;
                csv << "seed,success,final_energy,final_hamming\n";
                for (int k = 0; k < sa_runs; ++k) {
                    auto r = sa_run(inst, sched, sa_seed + static_cast<std::uint64_t>(k));
                    bool succ = sa_best_seen ? r.best_seen_success : r.success;
                    csv << (sa_seed + static_cast<std::uint64_t>(k)) << "," << (succ ? 1 : 0)
                        << "," << format_double(r.final_energy) << "," << r.final_hamming << "\n";
                }
                atomic_write(sa_csv, csv.str());
            }
            auto est = sa_success_probability(inst, sched, sa_runs, sa_seed, sa_best_seen);
            json j{{"runs", est.runs},
                   {"successes", est.successes},
                   {"estimate", est.estimate},
                   {"wilson_low", est.wilson_low},
                   {"wilson_high", est.wilson_high}};
            if (!sa_json.empty())
                atomic_write(sa_json, j.dump(2) + "\n");
            else
                std::cout << j.dump(2) << "\n";
        } else if (qa->parsed()) {
            Instance inst = load_instance(qa_in);
            AnnealSchedule sched{qa_time, qa_steps};
            QaResult r = qa_full ? qa_statevector(inst, sched, qa_mixer_sign)
                                 : qa_symmetric(inst, sched, qa_mixer_sign);
            std::cout << "success probability " << format_double(r.success)
                      << " (norm error " << format_double(r.norm_error) << ")\n";
            if (!qa_csv.empty()) {
                std::ostringstream csv;
                csv << "n,T,steps,success_prob\n"
                    << inst.n() << "," << format_double(qa_time) << "," << qa_steps << ","
                    << format_double(r.success) << "\n";
                atomic_write(qa_csv, csv.str());
            }
        } else if (pq->parsed()) {
            Instance inst = load_instance(pq_in);
            double b = pq_beta > 0 ? pq_beta : pick_temperature(inst.spectrum);
            auto dist = overlap_distribution(inst.spectrum, b);
            auto verdict = hardness_indicator(dist);
            std::cout << "inverse temperature " << format_double(b) << "\n"
                      << "mass(|q|<0.75)=" << format_double(verdict.mass_below_threshold)
                      << " P(q=1)=" << format_double(verdict.mass_at_q1) << " verdict "
                      << (verdict.hard ? "hard" : "easy") << "\n";
            if (!pq_csv.empty()) atomic_write(pq_csv, fig1b_csv(dist));
            if (!pq_svg.empty()) atomic_write(pq_svg, fig1b_svg(dist));
        } else if (oracle->parsed()) {
            Instance inst = load_instance(or_in);
            OracleSolution sol;
            if (or_auto) {
                EnergyOracle e = [&](const std::string& b) { return inst.diagonal_energy(b); };
                sol = solve_auto_sign(e, inst.n(), or_seed);
            } else {
                sol = solve_instance(inst, or_seed);
            }
            std::cout << "recovered " << sol.bits << " in " << sol.log.count() << " queries\n";
            if (or_log) {
                json j = json::array();
                for (const auto& [bits, e] : sol.log.queries)
                    j.push_back({{"bits", bits}, {"energy", e}});
                std::cout << j.dump(2) << "\n";
            }
        } else if (exp->parsed()) {
            Instance inst = load_instance(exp_in);
            if (!exp_gamma_set) {
                auto found = find_gamma(inst.spectrum);
                exp_gamma = found ? found->first : -sigma_of(inst.sign);
            }
            auto sg = expand_hamming_polynomial(inst);
            QaoaParams p{exp_beta, exp_gamma};
            std::string text = render_circuit(export_circuit(sg, p), p, exp_ladder);
            if (exp_out.empty())
                std::cout << text;
            else
                atomic_write(exp_out, text);
        } else if (fig1->parsed()) {
            Instance inst = load_instance(f1_in);
            std::filesystem::create_directories(f1_dir);
            auto path = [&](const char* name) {
                return (std::filesystem::path(f1_dir) / name).string();
            };
            atomic_write(path("fig1a.csv"), fig1a_csv(inst.spectrum));
            atomic_write(path("fig1a.svg"), fig1a_svg(inst.spectrum));
            double b = pick_temperature(inst.spectrum);
            auto dist = overlap_distribution(inst.spectrum, b);
            atomic_write(path("fig1b.csv"), fig1b_csv(dist));
            atomic_write(path("fig1b.svg"), fig1b_svg(dist));
            std::cout << "wrote fig1a/fig1b CSV+SVG to " << f1_dir
                      << " (inverse temperature " << format_double(b) << ")\n";
        } else if (cmp->parsed()) {
            Instance inst = load_instance(cmp_in);
            json j;
            auto w = verify_deterministic(inst);
            j["qaoa_prob"] = w.prob;
            j["qaoa_deterministic"] = w.deterministic;
            j["qaoa_beta"] = w.params.beta;
            j["qaoa_gamma"] = w.params.gamma;
            auto est = sa_success_probability(inst, default_sa_schedule(inst), cmp_runs, cmp_seed);
            j["sa_estimate"] = est.estimate;
            j["sa_ci"] = {est.wilson_low, est.wilson_high};
            if (inst.extra_terms.empty()) {
                QaResult qr = qa_symmetric(inst, AnnealSchedule{cmp_qa_time, cmp_qa_steps});
                j["qa_prob"] = qr.success;
            }
            auto sol = solve_instance(inst, cmp_seed);
            j["oracle_queries"] = sol.log.count();
            j["oracle_recovered"] = sol.bits == inst.target.bits;
            if (cmp_out.empty())
                std::cout << j.dump(2) << "\n";
            else
                atomic_write(cmp_out, j.dump(2) + "\n");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
