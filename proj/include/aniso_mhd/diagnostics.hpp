#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "aniso_mhd/state.hpp"

namespace mhd {

// Instantaneous norms entering A_{1,T}, A_{2,T} and the probe terms.
struct NormSnapshot {
    double t = 0.0;
    double h2_v = 0.0;              // ||v||_{H2}
    double h2_grad_psi = 0.0;       // ||grad psi||_{H2}
    double h2_grad_v = 0.0;         // ||grad v||_{H2}
    double h1_d1_grad_psi = 0.0;    // ||d1 grad psi||_{H1}
    double linf_grad_psi = 0.0;     // grid max of |grad psi|
    double l1xi_v = 0.0;            // discrete L1_xi of v^
    double l1xi_d1psi = 0.0;        // discrete L1_xi of (d1 psi)^
    std::array<double, 3> region_l1xi_v{};      // indexed by RegionTag
    std::array<double, 3> region_l1xi_d1psi{};
    double trilinear = 0.0;         // int d2 v2 (d2^3 psi)^2 dx
    double h1_grad_psi = 0.0;       // ||grad psi||_{H1}, for the interpolation ratio
};

NormSnapshot snapshot(const State& s);

// Running suprema and trapezoid time-integrals assembling the A-functionals.
struct DiagnosticsLedger {
    double sup_h2_v = 0.0;
    double sup_h2_grad_psi = 0.0;
    double int_h2_grad_v_sq = 0.0;
    double int_h1_d1_grad_psi_sq = 0.0;
    double int_l1xi_v_sq = 0.0;
    double int_l1xi_d1psi_sq = 0.0;
    double int_linf4_grad_psi = 0.0;
    std::vector<NormSnapshot> history;

    bool empty() const { return history.empty(); }
};

// Rejects out-of-order times.
void ledger_update(DiagnosticsLedger& ledger, const NormSnapshot& snap);

double a1t(const DiagnosticsLedger& ledger);
double a2t(const DiagnosticsLedger& ledger);
double at(const DiagnosticsLedger& ledger);

// A_0 = A_{1,0} + A_{2,0}; the heat-weighted part is integrated by
// quadrature on [0, t_cut] plus an analytic exponential tail bound.
struct A0Result {
    double a1_0 = 0.0;
    double a2_0 = 0.0;
    double total = 0.0;
    double tail_estimate = 0.0;  // contribution of the [t_cut, inf) bound
};

A0Result a0(const State& s0, double t_cut, double quad_dt);

// ||grad psi||_{L4_T Linf} / (||d1 grad psi||^{1/2}_{L2_T H1} ||grad psi||^{1/2}_{Linf_T H1}).
// nullopt when psi has no xi1-content (zero denominator).
std::optional<double> interpolation_ratio(const DiagnosticsLedger& ledger);

// Pieces of the exact energy identity; exposed for the convergence audit.
double energy_bracket(const State& s);
double energy_dissipation(const State& s);
double energy_rhs(const State& s, const RhsBundle& rhs);

// |d/dt bracket + dissipation - rhs| / max(1, |rhs|) with the time derivative
// by centered difference over (s_prev, s_next).
double energy_identity_residual(const State& s, const RhsBundle& rhs, const State& s_prev,
                                const State& s_next, double dt);

struct RegionNorms {
    std::array<double, 3> v{};
    std::array<double, 3> d1psi{};
};

RegionNorms region_norms(const State& s);

struct TheoremAuditReport {
    double a0_value = 0.0;
    std::vector<double> ratio_history;    // A_T / A_0 per snapshot prefix
    double final_ratio = 0.0;
    double max_ratio = 0.0;
    double tail_fraction_grad_v = 0.0;    // share of int ||grad v||^2 in the last 10%
    double tail_fraction_d1psi = 0.0;     // share of int ||d1 grad psi||^2 in the last 10%
    bool bounded = false;
};

TheoremAuditReport theorem_audit(const DiagnosticsLedger& ledger, double a0_value,
                                 double ratio_cap);

// One row per snapshot, fixed column order, 17 significant digits.
void write_csv(const DiagnosticsLedger& ledger, std::ostream& os);
void write_csv_header(std::ostream& os);
void write_csv_row(const NormSnapshot& snap, std::ostream& os);

}  // namespace mhd
