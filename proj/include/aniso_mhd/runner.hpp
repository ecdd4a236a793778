#pragma once

#include <string>

#include "aniso_mhd/diagnostics.hpp"
#include "aniso_mhd/run_config.hpp"

namespace mhd {

// Exit codes of the command line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowup = 3;

struct SimulationResult {
    DiagnosticsLedger ledger;
    A0Result a0;
    TheoremAuditReport audit;
    double interp_ratio_max = 0.0;
    double energy_residual_final = 0.0;
    std::string exit_reason = "ok";
    int exit_code = kExitOk;
};

// Runs a simulation in memory (no files); used by `simulate` and `sweep`.
SimulationResult run_simulation(const RunConfig& cfg);

// `simulate`, `propagator-audit`, `energy-audit`, `interp-audit`, `sweep`,
// `print-defaults`; artifacts land under cfg.output_path.
int run_subcommand(const std::string& name, const RunConfig& cfg);

// Synthetic band-limited psi-trajectory corpus for the interpolation audit;
// returns the per-trajectory ratios.
std::vector<double> interpolation_corpus(int count, std::uint64_t seed);

}  // namespace mhd
