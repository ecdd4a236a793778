#pragma once

#include <functional>
#include <stdexcept>

#include "aniso_mhd/propagator.hpp"
#include "aniso_mhd/state.hpp"

namespace mhd {

struct StepperConfig {
    double dt = 0.01;
    int order = 2;                    // 2 or 4
    bool dealias = true;
    long max_steps = 100'000'000;
    double blowup_threshold = 1e6;    // cap on ||v||_{H2} + ||grad psi||_{H2}
    bool nonlinear = true;
};

struct BlowupError : std::runtime_error {
    double t;
    explicit BlowupError(double t_)
        : std::runtime_error("field norm exceeded blow-up threshold"), t(t_) {}
};

// Optional extra forcing added to the stage right-hand sides (manufactured
// solutions and similar studies).
using Forcing = std::function<void(const State&, RhsBundle&)>;

// Integrating-factor (Lawson) Runge-Kutta: the linear block flows exactly
// through the multiplier tables, the nonlinearity is advanced explicitly.
class Stepper {
  public:
    Stepper(const GridSpec& g, const StepperConfig& cfg, Forcing forcing = nullptr);

    State step(const State& s) const;
    const StepperConfig& config() const { return cfg_; }

  private:
    StepperConfig cfg_;
    Forcing forcing_;
    PropagatorTable e_full_, e_half_;

    RhsBundle stage_rhs(const State& s) const;
    void check_blowup(const State& s) const;
};

State step(const State& s, const StepperConfig& cfg);

// dt times the advective eigenvalue scale max|v| max|xi|.  Values above ~1
// flag an under-resolved explicit part; nothing is enforced since the stiff
// linear block is integrated exactly.
double advective_scale(const State& s, double dt);

// Repeated stepping to t_end; the observer sees every observe_every-th state
// plus the final one.  No observer call when t_end == s0.t.
State integrate(const State& s0, const StepperConfig& cfg, double t_end,
                const std::function<void(const State&)>& observer = nullptr,
                int observe_every = 1, Forcing forcing = nullptr);

}  // namespace mhd
