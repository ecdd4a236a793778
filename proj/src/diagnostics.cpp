#include "aniso_mhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "aniso_mhd/format.hpp"
#include "aniso_mhd/oracle.hpp"

namespace mhd {
namespace {

// Weighted spectral sums sum_xi w_Hs(xi) * extra(xi) * |f|^2 * l1 l2.
template <typename Extra>
double weighted_l2_sq(const SpectralField& f, int s, Extra&& extra) {
    const GridSpec& g = f.grid;
    double sum = 0.0;
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double x1 = g.xi1(i1), x2 = g.xi2(i2);
            sum += sobolev_weight(x1, x2, s, false) * extra(x1, x2) * std::norm(f.at(i1, i2));
        }
    }
    return sum * g.area();
}

SpectralField laplacian(const SpectralField& f) {
    const GridSpec& g = f.grid;
    SpectralField out(g);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double x1 = g.xi1(i1), x2 = g.xi2(i2);
            out.at(i1, i2) = -(x1 * x1 + x2 * x2) * f.at(i1, i2);
        }
    }
    return out;
}

}  // namespace

NormSnapshot snapshot(const State& s) {
    NormSnapshot snap;
    snap.t = s.t;

    const auto r2 = [](double x1, double x2) { return x1 * x1 + x2 * x2; };
    snap.h2_v = std::sqrt(sobolev_inner(s.v1, s.v1, 2) + sobolev_inner(s.v2, s.v2, 2));
    snap.h2_grad_psi = std::sqrt(weighted_l2_sq(s.psi, 2, r2));
    snap.h2_grad_v =
        std::sqrt(weighted_l2_sq(s.v1, 2, r2) + weighted_l2_sq(s.v2, 2, r2));
    snap.h1_d1_grad_psi = std::sqrt(weighted_l2_sq(
        s.psi, 1, [](double x1, double x2) { return x1 * x1 * (x1 * x1 + x2 * x2); }));
    snap.h1_grad_psi = std::sqrt(weighted_l2_sq(s.psi, 1, r2));

    const PhysicalField p1 = inverse(derivative(s.psi, 1));
    const PhysicalField p2 = inverse(derivative(s.psi, 2));
    double linf = 0.0;
    for (std::size_t i = 0; i < p1.val.size(); ++i)
        linf = std::max(linf, std::hypot(p1.val[i], p2.val[i]));
    snap.linf_grad_psi = linf;

    const SpectralField d1psi = derivative(s.psi, 1);
    snap.l1xi_v = l1xi_norm_pair(s.v1, s.v2);
    snap.l1xi_d1psi = l1xi_norm(d1psi);
    for (RegionTag tag : {RegionTag::HI, RegionTag::LO_SMALL, RegionTag::LO_LARGE}) {
        snap.region_l1xi_v[static_cast<int>(tag)] = l1xi_norm_pair(s.v1, s.v2, tag);
        snap.region_l1xi_d1psi[static_cast<int>(tag)] = l1xi_norm(d1psi, tag);
    }

    const PhysicalField d2v2 = inverse(derivative(s.v2, 2));
    const PhysicalField d23psi = inverse(derivative(s.psi, 2, 3));
    snap.trilinear = oracle::quadrature_integral({&d2v2, &d23psi, &d23psi});
    return snap;
}

void ledger_update(DiagnosticsLedger& ledger, const NormSnapshot& snap) {
    if (!ledger.history.empty()) {
        const NormSnapshot& prev = ledger.history.back();
        if (snap.t < prev.t)
            throw std::invalid_argument("ledger_update: out-of-order snapshot time");
        const double dt = snap.t - prev.t;
        auto trap = [dt](double a, double b) { return 0.5 * dt * (a + b); };
        ledger.int_h2_grad_v_sq += trap(prev.h2_grad_v * prev.h2_grad_v,
                                        snap.h2_grad_v * snap.h2_grad_v);
        ledger.int_h1_d1_grad_psi_sq += trap(prev.h1_d1_grad_psi * prev.h1_d1_grad_psi,
                                             snap.h1_d1_grad_psi * snap.h1_d1_grad_psi);
        ledger.int_l1xi_v_sq += trap(prev.l1xi_v * prev.l1xi_v, snap.l1xi_v * snap.l1xi_v);
        ledger.int_l1xi_d1psi_sq +=
            trap(prev.l1xi_d1psi * prev.l1xi_d1psi, snap.l1xi_d1psi * snap.l1xi_d1psi);
        ledger.int_linf4_grad_psi += trap(std::pow(prev.linf_grad_psi, 4),
                                          std::pow(snap.linf_grad_psi, 4));
    }
    ledger.sup_h2_v = std::max(ledger.sup_h2_v, snap.h2_v);
    ledger.sup_h2_grad_psi = std::max(ledger.sup_h2_grad_psi, snap.h2_grad_psi);
    ledger.history.push_back(snap);
}

double a1t(const DiagnosticsLedger& ledger) {
    if (ledger.empty()) throw std::invalid_argument("a1t: empty ledger");
    return ledger.sup_h2_v + ledger.sup_h2_grad_psi + std::sqrt(ledger.int_h2_grad_v_sq) +
           std::sqrt(ledger.int_h1_d1_grad_psi_sq);
}

double a2t(const DiagnosticsLedger& ledger) {
    if (ledger.empty()) throw std::invalid_argument("a2t: empty ledger");
    return std::sqrt(ledger.int_l1xi_v_sq) + std::sqrt(ledger.int_l1xi_d1psi_sq);
}

double at(const DiagnosticsLedger& ledger) { return a1t(ledger) + a2t(ledger); }

A0Result a0(const State& s0, double t_cut, double quad_dt) {
    if (!(t_cut > 0.0) || !(quad_dt > 0.0))
        throw std::invalid_argument("a0: t_cut and quad_dt must be positive");
    const GridSpec& g = s0.grid();

    const double v0_mean = std::abs(s0.v1.coef[0]) + std::abs(s0.v2.coef[0]);
    if (v0_mean > 1e-13 * (1.0 + coef_l2_norm(s0.v1) + coef_l2_norm(s0.v2)))
        throw std::domain_error("a0: velocity zero mode must vanish");

    A0Result res;
    res.a1_0 = std::sqrt(weighted_l2_sq(s0.psi, 2,
                                        [](double x1, double x2) { return x1 * x1 + x2 * x2; })) +
               std::sqrt(sobolev_inner(s0.v1, s0.v1, 2) + sobolev_inner(s0.v2, s0.v2, 2));

    // Heat-damped L1_xi integrands; quadrature over [0, t_cut] then the
    // exponential tail bound e^{-2 ximin^2 (t - t_cut)} g(t_cut)^2.
    std::vector<double> mag_gpsi, mag_v, rr;
    mag_gpsi.reserve(g.size());
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double x1 = g.xi1(i1), x2 = g.xi2(i2);
            const double r2 = x1 * x1 + x2 * x2;
            if (r2 == 0.0) continue;
            mag_gpsi.push_back(std::sqrt(r2) * std::abs(s0.psi.at(i1, i2)));
            mag_v.push_back(std::hypot(std::abs(s0.v1.at(i1, i2)), std::abs(s0.v2.at(i1, i2))));
            rr.push_back(r2);
        }
    }
    const double unit = l1xi_unit(g);
    auto eval = [&](double t, const std::vector<double>& mag) {
        double sum = 0.0;
        for (std::size_t i = 0; i < mag.size(); ++i)
            if (mag[i] != 0.0) sum += mag[i] * std::exp(-rr[i] * t);
        return sum * unit;
    };

    const long n = static_cast<long>(std::ceil(t_cut / quad_dt - 1e-12));
    double int_gpsi = 0.0, int_v = 0.0;
    double prev_gpsi = eval(0.0, mag_gpsi), prev_v = eval(0.0, mag_v);
    double t_prev = 0.0;
    for (long k = 1; k <= n; ++k) {
        const double t = std::min(k * quad_dt, t_cut);
        const double g1 = eval(t, mag_gpsi), g2 = eval(t, mag_v);
        int_gpsi += 0.5 * (t - t_prev) * (prev_gpsi * prev_gpsi + g1 * g1);
        int_v += 0.5 * (t - t_prev) * (prev_v * prev_v + g2 * g2);
        prev_gpsi = g1;
        prev_v = g2;
        t_prev = t;
    }
    const double ximin2 = std::min(g.dxi1 * g.dxi1, g.dxi2 * g.dxi2);
    const double tail_gpsi = prev_gpsi * prev_gpsi / (2.0 * ximin2);
    const double tail_v = prev_v * prev_v / (2.0 * ximin2);

    res.a2_0 = std::sqrt(int_gpsi + tail_gpsi) + std::sqrt(int_v + tail_v);
    res.tail_estimate = res.a2_0 - (std::sqrt(int_gpsi) + std::sqrt(int_v));
    res.total = res.a1_0 + res.a2_0;
    return res;
}

std::optional<double> interpolation_ratio(const DiagnosticsLedger& ledger) {
    if (ledger.empty()) throw std::invalid_argument("interpolation_ratio: empty ledger");
    double sup_h1 = 0.0;
    for (const NormSnapshot& s : ledger.history) sup_h1 = std::max(sup_h1, s.h1_grad_psi);
    const double den =
        std::pow(ledger.int_h1_d1_grad_psi_sq, 0.25) * std::sqrt(sup_h1);
    if (den == 0.0) return std::nullopt;
    return std::pow(ledger.int_linf4_grad_psi, 0.25) / den;
}

double energy_bracket(const State& s) {
    const SpectralField lap_psi = laplacian(s.psi);
    const double v_h2 = sobolev_inner(s.v1, s.v1, 2) + sobolev_inner(s.v2, s.v2, 2);
    const double gpsi_h2 =
        weighted_l2_sq(s.psi, 2, [](double x1, double x2) { return x1 * x1 + x2 * x2; });
    const double lap_h1 = sobolev_inner(lap_psi, lap_psi, 1);
    return 0.5 * (v_h2 + gpsi_h2 + 0.25 * lap_h1) + 0.25 * sobolev_inner(s.v2, lap_psi, 1);
}

double energy_dissipation(const State& s) {
    const auto r2 = [](double x1, double x2) { return x1 * x1 + x2 * x2; };
    const double grad_v_h2 = weighted_l2_sq(s.v1, 2, r2) + weighted_l2_sq(s.v2, 2, r2);
    const double grad_v2_h1 = weighted_l2_sq(s.v2, 1, r2);
    const double grad_d1psi_h1 = weighted_l2_sq(
        s.psi, 1, [](double x1, double x2) { return x1 * x1 * (x1 * x1 + x2 * x2); });
    return grad_v_h2 - 0.25 * grad_v2_h1 + 0.25 * grad_d1psi_h1;
}

double energy_rhs(const State& s, const RhsBundle& rhs) {
    const QuadraticTerms q = quadratic_terms(s);
    const SpectralField lap_psi = laplacian(s.psi);
    const GridSpec& g = s.grid();

    // div(grad psi (x) grad psi)_i = d1 S_i1 + d2 S_i2
    SpectralField div_s1(g), div_s2(g);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const Complex ix1(0.0, g.xi1(i1)), ix2(0.0, g.xi2(i2));
            div_s1.at(i1, i2) = ix1 * q.s11.at(i1, i2) + ix2 * q.s12.at(i1, i2);
            div_s2.at(i1, i2) = ix1 * q.s12.at(i1, i2) + ix2 * q.s22.at(i1, i2);
        }
    }

    double total = 0.0;
    total -= sobolev_inner(q.adv_v1, s.v1, 2) + sobolev_inner(q.adv_v2, s.v2, 2);
    total += sobolev_inner(q.adv_psi, lap_psi, 2);
    total -= sobolev_inner(div_s1, s.v1, 2) + sobolev_inner(div_s2, s.v2, 2);
    total -= 0.25 * sobolev_inner(q.adv_v2, lap_psi, 1);
    total += 0.25 * sobolev_inner(rhs.f2_hat, lap_psi, 1);
    total += 0.25 * (sobolev_inner(derivative(s.v2, 1), derivative(q.adv_psi, 1), 1) +
                     sobolev_inner(derivative(s.v2, 2), derivative(q.adv_psi, 2), 1));
    total -= 0.25 * sobolev_inner(laplacian(q.adv_psi), lap_psi, 1);
    return total;
}

double energy_identity_residual(const State& s, const RhsBundle& rhs, const State& s_prev,
                                const State& s_next, double dt) {
    const double dE = (energy_bracket(s_next) - energy_bracket(s_prev)) / (2.0 * dt);
    const double rhs_val = energy_rhs(s, rhs);
    return std::abs(dE + energy_dissipation(s) - rhs_val) / std::max(1.0, std::abs(rhs_val));
}

RegionNorms region_norms(const State& s) {
    RegionNorms out;
    const SpectralField d1psi = derivative(s.psi, 1);
    for (RegionTag tag : {RegionTag::HI, RegionTag::LO_SMALL, RegionTag::LO_LARGE}) {
        out.v[static_cast<int>(tag)] = l1xi_norm_pair(s.v1, s.v2, tag);
        out.d1psi[static_cast<int>(tag)] = l1xi_norm(d1psi, tag);
    }
    return out;
}

TheoremAuditReport theorem_audit(const DiagnosticsLedger& ledger, double a0_value,
                                 double ratio_cap) {
    TheoremAuditReport rep;
    rep.a0_value = a0_value;
    if (ledger.empty()) {
        rep.bounded = true;
        return rep;
    }

    // Prefix replay of A_T / A_0.
    DiagnosticsLedger prefix;
    double max_ratio = 0.0, final_ratio = 0.0;
    rep.ratio_history.reserve(ledger.history.size());
    for (const NormSnapshot& snap : ledger.history) {
        ledger_update(prefix, snap);
        final_ratio = a0_value == 0.0 ? 0.0 : at(prefix) / a0_value;
        rep.ratio_history.push_back(final_ratio);
        max_ratio = std::max(max_ratio, final_ratio);
    }
    rep.final_ratio = final_ratio;
    rep.max_ratio = max_ratio;

    // Share of the dissipation integrals accumulated over the last 10% of
    // the run; segments crossing the window edge are split linearly.
    const double t0 = ledger.history.front().t;
    const double t1 = ledger.history.back().t;
    const double tw = t0 + 0.9 * (t1 - t0);
    double tail_grad_v = 0.0, tail_d1psi = 0.0;
    for (std::size_t i = 1; i < ledger.history.size(); ++i) {
        const NormSnapshot& a = ledger.history[i - 1];
        const NormSnapshot& b = ledger.history[i];
        if (b.t <= tw || b.t == a.t) continue;
        const double lo = std::max(a.t, tw);
        auto lerp_sq = [&](double fa, double fb, double t) {
            const double u = (t - a.t) / (b.t - a.t);
            const double f = fa + u * (fb - fa);
            return f * f;
        };
        tail_grad_v += 0.5 * (b.t - lo) *
                       (lerp_sq(a.h2_grad_v, b.h2_grad_v, lo) + b.h2_grad_v * b.h2_grad_v);
        tail_d1psi += 0.5 * (b.t - lo) *
                      (lerp_sq(a.h1_d1_grad_psi, b.h1_d1_grad_psi, lo) +
                       b.h1_d1_grad_psi * b.h1_d1_grad_psi);
    }
    rep.tail_fraction_grad_v =
        ledger.int_h2_grad_v_sq == 0.0 ? 0.0 : tail_grad_v / ledger.int_h2_grad_v_sq;
    rep.tail_fraction_d1psi =
        ledger.int_h1_d1_grad_psi_sq == 0.0 ? 0.0 : tail_d1psi / ledger.int_h1_d1_grad_psi_sq;
    rep.bounded = max_ratio <= ratio_cap;
    return rep;
}

void write_csv_header(std::ostream& os) {
    os << "t,h2_v,h2_grad_psi,h2_grad_v,h1_d1_grad_psi,linf_grad_psi,l1xi_v,l1xi_d1psi,"
          "l1xi_v_hi,l1xi_d1psi_hi,l1xi_v_lo_small,l1xi_d1psi_lo_small,"
          "l1xi_v_lo_large,l1xi_d1psi_lo_large,trilinear\n";
}

void write_csv_row(const NormSnapshot& s, std::ostream& os) {
    os << fmt_g17(s.t) << ',' << fmt_g17(s.h2_v) << ',' << fmt_g17(s.h2_grad_psi) << ','
       << fmt_g17(s.h2_grad_v) << ',' << fmt_g17(s.h1_d1_grad_psi) << ','
       << fmt_g17(s.linf_grad_psi) << ',' << fmt_g17(s.l1xi_v) << ',' << fmt_g17(s.l1xi_d1psi);
    for (int r = 0; r < 3; ++r)
        os << ',' << fmt_g17(s.region_l1xi_v[r]) << ',' << fmt_g17(s.region_l1xi_d1psi[r]);
    os << ',' << fmt_g17(s.trilinear) << '\n';
}

void write_csv(const DiagnosticsLedger& ledger, std::ostream& os) {
    write_csv_header(os);
    for (const NormSnapshot& s : ledger.history) write_csv_row(s, os);
}

}  // namespace mhd
