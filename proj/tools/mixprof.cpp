// mixprof: exact total-variation mixing curves for four Markov chain
// families, with main-term/error-term decompositions, verification suites
// and seeded trajectory simulation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mixprof/gelfand.hpp"
#include "mixprof/gibbs.hpp"
#include "mixprof/hypercube.hpp"
#include "mixprof/io.hpp"
#include "mixprof/montecarlo.hpp"
#include "mixprof/symmetric.hpp"
#include "mixprof/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

struct OutputOptions {
    std::string format = "csv";
    std::string out_path;
    std::string mode = "float";
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out_path, "write output to PATH instead of stdout");
    cmd->add_option("--mode", opts.mode, "arithmetic backend")
        ->check(CLI::IsMember({"float", "exact"}))
        ->capture_default_str();
}

struct CGrid {
    double from = -2.0;
    double to = 2.0;
    double step = 1.0;

    std::vector<double> values() const {
        if (step <= 0.0) throw CLI::ValidationError("--c-step must be positive");
        std::vector<double> cs;
        for (double c = from; c <= to + 1e-12; c += step) cs.push_back(c);
        return cs;
    }
};

void add_c_grid(CLI::App* cmd, CGrid& grid) {
    cmd->add_option("--c-from", grid.from, "window coordinate start")->capture_default_str();
    cmd->add_option("--c-to", grid.to, "window coordinate end")->capture_default_str();
    cmd->add_option("--c-step", grid.step, "window coordinate step")->capture_default_str();
}

void emit(const OutputOptions& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + opts.out_path);
    out << text;
}

mixprof::RunRecord make_record(const std::string& command,
                               std::vector<std::pair<std::string, std::string>> params,
                               const std::string& mode) {
    mixprof::RunRecord rec;
    rec.command = command;
    rec.params = std::move(params);
    rec.build_id = MIXPROF_BUILD_ID;
    rec.mode = mode;
    return rec;
}

void emit_profile(const OutputOptions& opts, const mixprof::RunRecord& record,
                  const std::vector<mixprof::ProfilePoint>& rows) {
    emit(opts, opts.format == "json" ? mixprof::profile_table_json(record, rows)
                                     : mixprof::profile_table_csv(record, rows));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixing-profile toolkit"};
    app.set_config("--config", "", "plain key=value defaults file; flags win");
    app.require_subcommand(1);

    // ---- gibbs ----
    long g_n1 = 8, g_n2 = 8;
    std::string g_p = "0.5";
    double epsilon = 1e-3;
    OutputOptions g_out;
    CGrid g_grid;
    auto* gibbs_cmd = app.add_subcommand("gibbs", "Binomial-prior Gibbs sampler profile");
    gibbs_cmd->add_option("--n1", g_n1, "prior size")->required();
    gibbs_cmd->add_option("--n2", g_n2, "noise size")->required();
    gibbs_cmd->add_option("--p", g_p, "success parameter in (0,1)")->capture_default_str();
    gibbs_cmd->add_option("--epsilon", epsilon, "error-term truncation target")
        ->capture_default_str();
    add_c_grid(gibbs_cmd, g_grid);
    add_output_options(gibbs_cmd, g_out);

    // ---- kcycle ----
    long k_n = 10, k_k = 2, k_M = 6;
    OutputOptions k_out;
    CGrid k_grid;
    auto* kcycle_cmd = app.add_subcommand("kcycle", "k-cycle walk profile on S_n (exact, n <= 14)");
    kcycle_cmd->add_option("--n", k_n, "degree of the symmetric group")->required();
    kcycle_cmd->add_option("--k", k_k, "cycle length")->required();
    kcycle_cmd->add_option("--M", k_M, "long-first-row cutoff")->capture_default_str();
    add_c_grid(kcycle_cmd, k_grid);
    add_output_options(kcycle_cmd, k_out);

    // ---- ehrenfest ----
    long e_n = 100, e_m = 1;
    double e_eps = 1e-3;
    OutputOptions e_out;
    CGrid e_grid;
    auto* ehrenfest_cmd = app.add_subcommand("ehrenfest", "multi-urn diffusion profile");
    ehrenfest_cmd->add_option("--n", e_n, "number of balls")->required();
    ehrenfest_cmd->add_option("--m", e_m, "number of extra urns")->required();
    ehrenfest_cmd->add_option("--epsilon", e_eps, "error-term truncation target")
        ->capture_default_str();
    add_c_grid(ehrenfest_cmd, e_grid);
    add_output_options(ehrenfest_cmd, e_out);

    // ---- hypercube ----
    long h_n = 64;
    OutputOptions h_out;
    CGrid h_grid;
    auto* hypercube_cmd = app.add_subcommand("hypercube", "lazy hypercube walk profile");
    hypercube_cmd->add_option("--n", h_n, "dimension")->required();
    add_c_grid(hypercube_cmd, h_grid);
    add_output_options(hypercube_cmd, h_out);

    // ---- verify ----
    std::string suite = "all";
    OutputOptions v_out;
    auto* verify_cmd = app.add_subcommand("verify", "run property suites");
    verify_cmd->add_option("--suite", suite, "lemma1|krawtchouk|characters|gelfand|binomial-clt|all")
        ->check(CLI::IsMember({"lemma1", "krawtchouk", "characters", "gelfand", "binomial-clt",
                               "all"}))
        ->capture_default_str();
    add_output_options(verify_cmd, v_out);

    // ---- simulate ----
    std::string family = "ehrenfest";
    long s_n = 4, s_m = 2, s_k = 2, s_n1 = 2, s_n2 = 2, s_t = 5, trajectories = 100000;
    double s_p = 0.5;
    std::uint64_t seed = 1;
    OutputOptions s_out;
    auto* sim_cmd = app.add_subcommand("simulate", "seeded trajectory simulation with chi-square gate");
    sim_cmd->add_option("--family", family, "kcycle|ehrenfest|gibbs")
        ->check(CLI::IsMember({"kcycle", "ehrenfest", "gibbs"}))
        ->capture_default_str();
    sim_cmd->add_option("--n", s_n, "kcycle/ehrenfest size")->capture_default_str();
    sim_cmd->add_option("--m", s_m, "ehrenfest extra urns")->capture_default_str();
    sim_cmd->add_option("--k", s_k, "kcycle length")->capture_default_str();
    sim_cmd->add_option("--n1", s_n1, "gibbs prior size")->capture_default_str();
    sim_cmd->add_option("--n2", s_n2, "gibbs noise size")->capture_default_str();
    sim_cmd->add_option("--p", s_p, "gibbs parameter")->capture_default_str();
    sim_cmd->add_option("--t", s_t, "number of steps")->capture_default_str();
    sim_cmd->add_option("--seed", seed, "rng seed")->capture_default_str();
    sim_cmd->add_option("--trajectories", trajectories, "number of trajectories")
        ->capture_default_str();
    add_output_options(sim_cmd, s_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gibbs_cmd->parsed()) {
            mixprof::GibbsModel model(g_n1, g_n2, mixprof::parse_rational(g_p));
            auto diag = mixprof::gibbs_diagnostics(model);
            auto rows = mixprof::gibbs_profile_points(model, g_grid.values(), epsilon);
            if (g_out.mode == "exact") {
                // recompute the TV column by exact kernel evolution
                if (model.n() > 64)
                    throw std::length_error("gibbs exact mode is capped at n1 + n2 = 64");
                auto chain = mixprof::gibbs_kernel<mixprof::Rat>(model);
                for (auto& row : rows)
                    row.exact_tv = mixprof::to_double(mixprof::tv_distance(
                        mixprof::evolve(chain, 0, row.t), chain.stationary()));
            }
            auto rec = make_record(
                "gibbs",
                {{"n1", std::to_string(g_n1)},
                 {"n2", std::to_string(g_n2)},
                 {"p", g_p},
                 {"epsilon", mixprof::format_full(epsilon)},
                 {"diag.min_p_1mp_n", mixprof::format_full(diag.min_p_one_minus_p_times_n)},
                 {"diag.alpha_n", mixprof::format_full(diag.alpha_times_n)}},
                g_out.mode);
            emit_profile(g_out, rec, rows);
        } else if (kcycle_cmd->parsed()) {
            std::vector<mixprof::ProfilePoint> rows;
            for (double c : k_grid.values())
                rows.push_back(mixprof::kcycle_profile_point(k_n, k_k, c, k_M));
            auto rec = make_record("kcycle",
                                   {{"n", std::to_string(k_n)},
                                    {"k", std::to_string(k_k)},
                                    {"M", std::to_string(k_M)}},
                                   "exact");
            emit_profile(k_out, rec, rows);
        } else if (ehrenfest_cmd->parsed()) {
            auto rows = mixprof::ehrenfest_profile_points(e_n, e_m, e_grid.values(), e_eps);
            if (e_out.mode == "exact") {
                if (e_n > 64) throw std::length_error("ehrenfest exact mode is capped at n = 64");
                auto s = mixprof::ehrenfest_structure<mixprof::Rat>(e_n, e_m);
                auto coeffs = mixprof::spherical_fourier_transform(
                    mixprof::ehrenfest_step_law<mixprof::Rat>(e_n, e_m), s);
                for (auto& row : rows)
                    row.exact_tv = mixprof::to_double(mixprof::hom_exact_tv(s, coeffs, row.t));
            }
            auto rec = make_record("ehrenfest",
                                   {{"n", std::to_string(e_n)},
                                    {"m", std::to_string(e_m)},
                                    {"epsilon", mixprof::format_full(e_eps)}},
                                   e_out.mode);
            emit_profile(e_out, rec, rows);
        } else if (hypercube_cmd->parsed()) {
            std::vector<mixprof::ProfilePoint> rows;
            if (h_out.mode == "exact") {
                for (double c : h_grid.values()) {
                    mixprof::ProfilePoint pt;
                    pt.c = c;
                    pt.t = mixprof::hypercube_schedule(h_n, c);
                    pt.exact_tv = mixprof::to_double(mixprof::hypercube_exact_tv_rational(h_n, pt.t));
                    pt.main_term = pt.exact_tv;
                    pt.error_term = 0.0;
                    pt.limit_value = mixprof::gaussian_profile(c);
                    rows.push_back(pt);
                }
            } else {
                rows = mixprof::hypercube_profile_points(h_n, h_grid.values());
            }
            auto rec = make_record("hypercube", {{"n", std::to_string(h_n)}}, h_out.mode);
            emit_profile(h_out, rec, rows);
        } else if (verify_cmd->parsed()) {
            auto results = mixprof::run_verification_suite(suite);
            if (v_out.format == "json") {
                emit(v_out, mixprof::verification_report_json(suite, results));
            } else {
                std::string text;
                for (const auto& r : results)
                    text += std::string(r.pass ? "[PASS] " : "[FAIL] ") + r.name + "  (" +
                            r.detail + ")\n";
                emit(v_out, text);
            }
            if (!mixprof::all_pass(results)) {
                std::cerr << "verification failures in suite '" << suite << "'\n";
                return kExitVerificationFailure;
            }
        } else if (sim_cmd->parsed()) {
            if (trajectories < 1) throw CLI::ValidationError("--trajectories must be >= 1");
            mixprof::SimConfig config{seed, trajectories};
            mixprof::Histogram hist;
            std::string footer;
            std::vector<std::pair<std::string, std::string>> params{
                {"family", family}, {"t", std::to_string(s_t)},
                {"trajectories", std::to_string(trajectories)}};
            if (family == "kcycle") {
                hist = mixprof::simulate_kcycle_fixed_points(s_n, s_k, s_t, config);
                params.push_back({"n", std::to_string(s_n)});
                params.push_back({"k", std::to_string(s_k)});
            } else if (family == "ehrenfest") {
                hist = mixprof::simulate_ehrenfest_occupancy(s_n, s_m, s_t, config);
                params.push_back({"n", std::to_string(s_n)});
                params.push_back({"m", std::to_string(s_m)});
                // chi-square against the exact inversion masses
                auto s = mixprof::ehrenfest_structure<double>(s_n, s_m);
                auto coeffs = mixprof::spherical_fourier_transform(
                    mixprof::ehrenfest_step_law<double>(s_n, s_m), s);
                auto point = mixprof::fourier_inversion(s, coeffs, s_t);
                std::vector<double> expected(s_n + 1);
                for (long l = 0; l <= s_n; ++l)
                    expected[l] = point[l] * mixprof::Rat(s.orbit_sizes[l]).get_d();
                auto gate = mixprof::chi_square_gate(hist, expected);
                footer = std::string("chi_square=") + mixprof::format_full(gate.statistic) +
                         " dof=" + std::to_string(gate.dof) +
                         " p=" + mixprof::format_full(gate.p_value) +
                         (gate.pass ? " pass" : " FAIL");
            } else {
                hist = mixprof::simulate_gibbs(s_n1, s_n2, s_p, s_t, config);
                params.push_back({"n1", std::to_string(s_n1)});
                params.push_back({"n2", std::to_string(s_n2)});
                params.push_back({"p", mixprof::format_full(s_p)});
            }
            auto rec = make_record("simulate", std::move(params), "float");
            rec.seed = seed;
            emit(s_out, s_out.format == "json" ? mixprof::histogram_json(rec, hist, footer)
                                               : mixprof::histogram_csv(rec, hist, footer));
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::length_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
    return kExitOk;
}
