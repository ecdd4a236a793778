#include "aniso_mhd/integrator.hpp"

#include <cmath>

namespace mhd {
namespace {

struct Triple {
    SpectralField psi, v1, v2;

    explicit Triple(const GridSpec& g) : psi(g), v1(g), v2(g) {}
    explicit Triple(const State& s) : psi(s.psi), v1(s.v1), v2(s.v2) {}
    Triple(const RhsBundle& r) : psi(r.F_hat), v1(r.G1_hat), v2(r.G2_hat) {}

    void axpy(double a, const Triple& x) {
        for (std::size_t i = 0; i < psi.coef.size(); ++i) {
            psi.coef[i] += a * x.psi.coef[i];
            v1.coef[i] += a * x.v1.coef[i];
            v2.coef[i] += a * x.v2.coef[i];
        }
    }
};

State to_state(Triple&& tr, double t) {
    State s;
    s.psi = std::move(tr.psi);
    s.v1 = std::move(tr.v1);
    s.v2 = std::move(tr.v2);
    s.t = t;
    return s;
}

State substate(const Triple& tr, double t) {
    State s;
    s.psi = tr.psi;
    s.v1 = tr.v1;
    s.v2 = tr.v2;
    s.t = t;
    return s;
}

}  // namespace

Stepper::Stepper(const GridSpec& g, const StepperConfig& cfg, Forcing forcing)
    : cfg_(cfg), forcing_(std::move(forcing)) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("Stepper: dt must be positive");
    if (cfg.order != 2 && cfg.order != 4)
        throw std::invalid_argument("Stepper: order must be 2 or 4");
    e_full_ = PropagatorTable(g, cfg.dt);
    e_half_ = PropagatorTable(g, 0.5 * cfg.dt);
}

RhsBundle Stepper::stage_rhs(const State& s) const {
    RhsBundle rhs;
    if (cfg_.nonlinear) {
        rhs = rhs_full(s, cfg_.dealias);
    } else {
        rhs.F_hat = SpectralField(s.grid());
        rhs.G1_hat = SpectralField(s.grid());
        rhs.G2_hat = SpectralField(s.grid());
        rhs.f2_hat = SpectralField(s.grid());
    }
    if (forcing_) forcing_(s, rhs);
    return rhs;
}

void Stepper::check_blowup(const State& s) const {
    if (!all_finite(s.psi) || !all_finite(s.v1) || !all_finite(s.v2)) throw BlowupError(s.t);
    const double size = sobolev_norm(s.v1, 2) + sobolev_norm(s.v2, 2) +
                        sobolev_norm(derivative(s.psi, 1), 2) +
                        sobolev_norm(derivative(s.psi, 2), 2);
    if (!(size <= cfg_.blowup_threshold)) throw BlowupError(s.t);
}

State Stepper::step(const State& s) const {
    const double h = cfg_.dt;
    const double t0 = s.t;

    State out = [&] {
        if (cfg_.order == 2) {
            // Lawson midpoint: u = E_{h/2}(y + h/2 N(y)); y+ = E_h y + h E_{h/2} N(u).
            Triple k1(stage_rhs(s));
            Triple u(s);
            u.axpy(0.5 * h, k1);
            e_half_.apply(u.psi, u.v1, u.v2);
            Triple k2(stage_rhs(substate(u, t0 + 0.5 * h)));
            e_half_.apply(k2.psi, k2.v1, k2.v2);
            Triple y(s);
            e_full_.apply(y.psi, y.v1, y.v2);
            y.axpy(h, k2);
            return to_state(std::move(y), t0 + h);
        }
        // Lawson RK4.
        Triple k1(stage_rhs(s));
        Triple ehy(s);
        e_half_.apply(ehy.psi, ehy.v1, ehy.v2);  // E_{h/2} y

        Triple u2 = ehy;
        Triple ehk1 = k1;
        e_half_.apply(ehk1.psi, ehk1.v1, ehk1.v2);
        u2.axpy(0.5 * h, ehk1);
        Triple k2(stage_rhs(substate(u2, t0 + 0.5 * h)));

        Triple u3 = ehy;
        u3.axpy(0.5 * h, k2);
        Triple k3(stage_rhs(substate(u3, t0 + 0.5 * h)));

        Triple u4 = ehy;
        e_half_.apply(u4.psi, u4.v1, u4.v2);  // E_h y
        Triple ehk3 = k3;
        e_half_.apply(ehk3.psi, ehk3.v1, ehk3.v2);
        u4.axpy(h, ehk3);
        Triple k4(stage_rhs(substate(u4, t0 + h)));

        Triple y(s);
        e_full_.apply(y.psi, y.v1, y.v2);
        Triple efk1 = k1;
        e_full_.apply(efk1.psi, efk1.v1, efk1.v2);
        y.axpy(h / 6.0, efk1);
        Triple mid = k2;
        mid.axpy(1.0, k3);
        e_half_.apply(mid.psi, mid.v1, mid.v2);
        y.axpy(h / 3.0, mid);
        y.axpy(h / 6.0, k4);
        return to_state(std::move(y), t0 + h);
    }();

    enforce_state_invariants(out);
    check_blowup(out);
    return out;
}

State step(const State& s, const StepperConfig& cfg) {
    return Stepper(s.grid(), cfg).step(s);
}

double advective_scale(const State& s, double dt) {
    const PhysicalField v1 = inverse(s.v1);
    const PhysicalField v2 = inverse(s.v2);
    double vmax = 0.0;
    for (std::size_t i = 0; i < v1.val.size(); ++i)
        vmax = std::max(vmax, std::hypot(v1.val[i], v2.val[i]));
    const GridSpec& g = s.grid();
    const double ximax = std::hypot(0.5 * g.n1 * g.dxi1, 0.5 * g.n2 * g.dxi2);
    return dt * vmax * ximax;
}

State integrate(const State& s0, const StepperConfig& cfg, double t_end,
                const std::function<void(const State&)>& observer, int observe_every,
                Forcing forcing) {
    if (t_end < s0.t) throw std::invalid_argument("integrate: t_end must be >= s0.t");
    if (t_end == s0.t) return s0;
    if (observe_every < 1) observe_every = 1;

    const double span = t_end - s0.t;
    long full = static_cast<long>(std::floor(span / cfg.dt + 1e-9));
    double rem = span - full * cfg.dt;
    if (rem <= 1e-12 * cfg.dt) rem = 0.0;  // hit t_end on a whole step
    const long n_steps = full + (rem > 0.0 ? 1 : 0);
    if (n_steps > cfg.max_steps) throw std::invalid_argument("integrate: max_steps exceeded");

    Stepper stepper(s0.grid(), cfg, forcing);
    State s = s0;
    if (observer) observer(s);
    for (long k = 1; k <= full; ++k) {
        s = stepper.step(s);
        s.t = s0.t + k * cfg.dt;  // avoid accumulated addition drift
        if (observer && (k % observe_every == 0 || k == n_steps)) observer(s);
    }
    if (rem > 0.0) {
        StepperConfig last = cfg;
        last.dt = rem;
        s = Stepper(s.grid(), last, forcing).step(s);
        s.t = t_end;
        if (observer) observer(s);
    }
    return s;
}

}  // namespace mhd
