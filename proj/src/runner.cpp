#include "aniso_mhd/runner.hpp"

#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "aniso_mhd/format.hpp"
#include "aniso_mhd/integrator.hpp"
#include "aniso_mhd/oracle.hpp"
#include "aniso_mhd/parallel.hpp"
#include "aniso_mhd/propagator.hpp"

namespace mhd {
namespace {

namespace fs = std::filesystem;

StepperConfig stepper_config(const RunConfig& cfg) {
    StepperConfig scfg;
    scfg.dt = cfg.dt;
    scfg.order = cfg.integrator_order;
    scfg.blowup_threshold = cfg.blowup_threshold;
    scfg.nonlinear = !cfg.linear_only;
    return scfg;
}

void write_summary_json(const SimulationResult& res, std::ostream& os) {
    const double a0v = res.a0.total;
    double a1 = 0.0, a2 = 0.0, a = 0.0;
    if (!res.ledger.empty()) {
        a1 = a1t(res.ledger);
        a2 = a2t(res.ledger);
        a = a1 + a2;
    }
    const double ratio = a0v == 0.0 ? 0.0 : a / a0v;
    os << "{\"a0\":" << fmt_g17(a0v) << ",\"a1t\":" << fmt_g17(a1) << ",\"a2t\":" << fmt_g17(a2)
       << ",\"at\":" << fmt_g17(a) << ",\"ratio_at_a0\":" << fmt_g17(ratio)
       << ",\"interp_ratio_max\":" << fmt_g17(res.interp_ratio_max)
       << ",\"energy_residual_final\":" << fmt_g17(res.energy_residual_final)
       << ",\"bounded_verdict\":" << (res.audit.bounded ? "true" : "false")
       << ",\"exit_reason\":\"" << res.exit_reason << "\"}\n";
}

std::vector<double> parse_epsilon_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

}  // namespace

SimulationResult run_simulation(const RunConfig& cfg) {
    SimulationResult res;
    State s0 = make_initial_data(cfg);
    res.a0 = a0(s0, cfg.a0_t_cut, cfg.a0_quad_dt);

    std::deque<State> window;
    auto observer = [&](const State& s) {
        ledger_update(res.ledger, snapshot(s));
        if (auto r = interpolation_ratio(res.ledger))
            res.interp_ratio_max = std::max(res.interp_ratio_max, *r);
        window.push_back(s);
        if (window.size() > 3) window.pop_front();
    };

    try {
        integrate(s0, stepper_config(cfg), cfg.t_end, observer, 1);
    } catch (const BlowupError&) {
        res.exit_reason = "blowup";
        res.exit_code = kExitBlowup;
    }

    if (window.size() == 3) {
        // centered difference needs equal spacing; a trailing partial step
        // (t_end off the dt lattice) leaves the final residual unreported
        const double h0 = window[1].t - window[0].t;
        const double h1 = window[2].t - window[1].t;
        if (std::abs(h1 - h0) <= 1e-9 * h0) {
            const State& mid = window[1];
            res.energy_residual_final =
                energy_identity_residual(mid, rhs_full(mid), window[0], window[2], h0);
        }
    }
    res.audit = theorem_audit(res.ledger, res.a0.total, cfg.ratio_cap);
    return res;
}

namespace {

int cmd_simulate(const RunConfig& cfg) {
    std::cerr << "aniso_mhd: advective dt scale "
              << advective_scale(make_initial_data(cfg), cfg.dt) << '\n';
    const SimulationResult res = run_simulation(cfg);

    fs::create_directories(cfg.output_path);
    {
        std::ofstream csv(fs::path(cfg.output_path) / "timeseries.csv", std::ios::binary);
        // The CSV keeps the configured output cadence; the ledger itself is
        // sampled every step.
        write_csv_header(csv);
        const std::size_t n = res.ledger.history.size();
        for (std::size_t i = 0; i < n; ++i)
            if (i % static_cast<std::size_t>(cfg.sample_every) == 0 || i + 1 == n)
                write_csv_row(res.ledger.history[i], csv);
    }
    {
        std::ofstream js(fs::path(cfg.output_path) / "summary.json", std::ios::binary);
        write_summary_json(res, js);
    }
    return res.exit_code;
}

int cmd_sweep(const RunConfig& cfg) {
    const std::vector<double> eps = parse_epsilon_list(cfg.sweep_epsilons);
    if (eps.empty()) throw ConfigError(0, "sweep_epsilons is empty");

    fs::create_directories(cfg.output_path);
    std::ofstream table(fs::path(cfg.output_path) / "sweep_summary.csv", std::ios::binary);
    table << "epsilon,a0,a1t,a2t,at,ratio_at_a0,bounded_verdict,exit_reason\n";
    int code = kExitOk;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        RunConfig run = cfg;
        run.epsilon = eps[i];
        const SimulationResult res = run_simulation(run);
        double a1 = 0.0, a2 = 0.0;
        if (!res.ledger.empty()) {
            a1 = a1t(res.ledger);
            a2 = a2t(res.ledger);
        }
        const double ratio = res.a0.total == 0.0 ? 0.0 : (a1 + a2) / res.a0.total;
        table << fmt_g17(eps[i]) << ',' << fmt_g17(res.a0.total) << ',' << fmt_g17(a1) << ','
              << fmt_g17(a2) << ',' << fmt_g17(a1 + a2) << ',' << fmt_g17(ratio) << ','
              << (res.audit.bounded ? "true" : "false") << ',' << res.exit_reason << '\n';
        std::ofstream js(fs::path(cfg.output_path) / ("sweep_" + std::to_string(i) + "_summary.json"),
                         std::ios::binary);
        write_summary_json(res, js);
        if (res.exit_code != kExitOk) code = res.exit_code;
    }
    return code;
}

int cmd_propagator_audit(const RunConfig& cfg) {
    // Quadrature lattice: spacing 1/16, extent 16, doubled once for the
    // stability column of the report.
    const GridSpec lattice = GridSpec::square(512, 32.0 * M_PI);
    const std::vector<double> ts = {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
    BoundsAuditReport rep = bounds_audit(lattice, ts, AuditDomain::SetA);

    // Multipliers against the RK4 mode oracle on seeded random data.
    std::mt19937_64 rng(cfg.seed);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    };
    const int samples = 100;
    std::vector<std::array<double, 3>> cases(samples);
    for (auto& c : cases) c = {uniform(-8.0, 8.0), uniform(-8.0, 8.0), uniform(0.0, 2.0)};
    std::vector<double> errs(samples);
    parallel_for(samples, [&](std::size_t i) {
        const auto [x1, x2, t] = cases[i];
        const Complex psi0(0.3, -0.7), alpha(0.9, 0.4);
        const double r = std::hypot(x1, x2);
        const Complex v10 = r == 0.0 ? Complex(0.5, 0.0) : -x2 / r * alpha;
        const Complex v20 = r == 0.0 ? Complex(0.0, 0.5) : x1 / r * alpha;
        const auto ode = oracle::mode_ode_solve(x1, x2, psi0, v10, v20, t, oracle::OracleConfig{});
        const ModeMultipliers m = multipliers(x1, x2, t);
        const Complex mp = m.m11 * psi0 + m.m12 * v20;
        const Complex m1 = m.m21 * psi0 + m.m22 * v10;
        const Complex m2 = m.m31 * psi0 + m.m32 * v20;
        const double num = std::sqrt(std::norm(mp - ode.psi) + std::norm(m1 - ode.v1) +
                                     std::norm(m2 - ode.v2));
        const double den = std::sqrt(std::norm(ode.psi) + std::norm(ode.v1) + std::norm(ode.v2));
        errs[i] = den == 0.0 ? num : num / den;
    });
    for (int i = 0; i < samples; ++i)
        rep.rows.push_back({"ODE", "oracle_rel_err", cases[i][2], errs[i], 1e-8, 1e-8 - errs[i]});

    fs::create_directories(cfg.output_path);
    std::ofstream csv(fs::path(cfg.output_path) / "propagator_audit.csv", std::ios::binary);
    write_csv(rep, csv);
    return kExitOk;
}

int cmd_energy_audit(const RunConfig& cfg) {
    auto run_residual = [&](double dt) {
        RunConfig run = cfg;
        run.dt = dt;
        State s0 = make_initial_data(run);
        Stepper stepper(s0.grid(), stepper_config(run));
        const long n = static_cast<long>(std::llround(cfg.t_end / dt));
        State prev = s0;
        State cur = stepper.step(prev);
        double sum = 0.0;
        long count = 0;
        for (long k = 1; k < n; ++k) {
            State next = stepper.step(cur);
            sum += energy_identity_residual(cur, rhs_full(cur), prev, next, dt);
            ++count;
            prev = std::move(cur);
            cur = std::move(next);
        }
        return count == 0 ? 0.0 : sum / count;
    };

    const double r_coarse = run_residual(cfg.dt);
    const double r_fine = run_residual(0.5 * cfg.dt);

    fs::create_directories(cfg.output_path);
    std::ofstream csv(fs::path(cfg.output_path) / "energy_audit.csv", std::ios::binary);
    csv << "quantity,dt,value\n";
    csv << "avg_residual," << fmt_g17(cfg.dt) << ',' << fmt_g17(r_coarse) << '\n';
    csv << "avg_residual," << fmt_g17(0.5 * cfg.dt) << ',' << fmt_g17(r_fine) << '\n';
    csv << "ratio," << fmt_g17(cfg.dt) << ','
        << fmt_g17(r_fine == 0.0 ? 0.0 : r_coarse / r_fine) << '\n';
    return kExitOk;
}

int cmd_interp_audit(const RunConfig& cfg) {
    const std::vector<double> ratios = interpolation_corpus(200, cfg.seed);
    fs::create_directories(cfg.output_path);
    std::ofstream csv(fs::path(cfg.output_path) / "interp_audit.csv", std::ios::binary);
    csv << "trajectory,ratio\n";
    double maxr = 0.0;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        csv << i << ',' << fmt_g17(ratios[i]) << '\n';
        maxr = std::max(maxr, ratios[i]);
    }
    csv << "max," << fmt_g17(maxr) << '\n';
    return kExitOk;
}

}  // namespace

std::vector<double> interpolation_corpus(int count, std::uint64_t seed) {
    // Synthetic band-limited psi trajectories: random Hermitian coefficients
    // under damped harmonic time envelopes, sampled into a ledger.
    const GridSpec g = GridSpec::square(32, 8.0 * M_PI);
    const int kmax = 4;
    const double dt = 0.05;
    const int steps = 50;

    std::vector<double> ratios;
    ratios.reserve(count);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    for (int traj = 0; traj < count; ++traj) {
        struct ModeTerm {
            int k1, k2;
            Complex amp;
            double omega, damp, phase;
        };
        std::vector<ModeTerm> terms;
        for (int k1 = 0; k1 <= kmax; ++k1) {
            for (int k2 = -kmax; k2 <= kmax; ++k2) {
                if (k1 == 0 && k2 <= 0) continue;
                if (k1 * k1 + k2 * k2 > kmax * kmax) continue;
                ModeTerm t;
                t.k1 = k1;
                t.k2 = k2;
                t.amp = Complex(2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0);
                t.omega = 0.2 + 2.0 * u01(rng);
                t.damp = 0.1 + 0.9 * u01(rng);
                t.phase = 2.0 * M_PI * u01(rng);
                terms.push_back(t);
            }
        }

        DiagnosticsLedger ledger;
        State s(g);
        for (int j = 0; j <= steps; ++j) {
            const double t = j * dt;
            s.t = t;
            std::fill(s.psi.coef.begin(), s.psi.coef.end(), Complex(0.0, 0.0));
            for (const ModeTerm& m : terms) {
                const Complex c =
                    m.amp * std::cos(m.omega * t + m.phase) * std::exp(-m.damp * t);
                s.psi.at_mode(m.k1, m.k2) = c;
                s.psi.at_mode(-m.k1, -m.k2) = std::conj(c);
            }
            ledger_update(ledger, snapshot(s));
        }
        const auto r = interpolation_ratio(ledger);
        ratios.push_back(r ? *r : 0.0);
    }
    return ratios;
}

int run_subcommand(const std::string& name, const RunConfig& cfg) {
    try {
        if (name == "simulate") return cmd_simulate(cfg);
        if (name == "sweep") return cmd_sweep(cfg);
        if (name == "propagator-audit") return cmd_propagator_audit(cfg);
        if (name == "energy-audit") return cmd_energy_audit(cfg);
        if (name == "interp-audit") return cmd_interp_audit(cfg);
        if (name == "print-defaults") {
            std::cout << serialize(cfg);
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const BlowupError& e) {
        std::cerr << "error: blow-up at t = " << e.t << '\n';
        return kExitBlowup;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternal;
    }
    std::cerr << "error: unknown subcommand '" << name << "'\n";
    return kExitConfig;
}

}  // namespace mhd
