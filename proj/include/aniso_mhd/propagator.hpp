#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aniso_mhd/state.hpp"

namespace mhd {

enum class EigenRegime { Oscillatory, Degenerate, Overdamped };

// Roots of lambda^2 + |xi|^2 lambda + xi1^2 = 0, classified by the sign of
// 4 xi1^2 - |xi|^4.  a = |xi|^2/2, omega = sqrt(|4 xi1^2 - |xi|^4|)/2.
struct ModeEigen {
    Complex lambda_plus, lambda_minus;
    EigenRegime regime = EigenRegime::Degenerate;
    double a = 0.0;
    double omega = 0.0;
};

ModeEigen eigenvalues(double xi1, double xi2);

// Entries of the per-mode solution operator of the linear flow at time t:
//   psi <- m11 psi + m12 v2
//   v1  <- m21 psi + m22 v1
//   v2  <- m31 psi + m32 v2
// Exact on divergence-free velocity; m32 = m22, m21 = xi1 xi2 m12,
// m31 = -xi1^2 m12, m22 = m11 + |xi|^2 m12.
struct ModeMultipliers {
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;
    double m31 = 0.0, m32 = 1.0;
};

ModeMultipliers multipliers(double xi1, double xi2, double t);

// Multipliers precomputed over a grid for a fixed time increment.
class PropagatorTable {
  public:
    PropagatorTable() = default;
    PropagatorTable(const GridSpec& g, double dt);

    double dt() const { return dt_; }
    const GridSpec& grid() const { return grid_; }
    void apply(SpectralField& psi, SpectralField& v1, SpectralField& v2) const;

  private:
    GridSpec grid_;
    double dt_ = 0.0;
    std::vector<double> m11_, m12_, m21_, m22_, m31_;
};

// Exact linear flow over dt >= 0 (advances s.t as well).
State apply_homogeneous(const State& s, double dt);

// ---------------------------------------------------------------------------
// Audits of the pointwise multiplier bounds and of the t^{-3/4} kernel-norm
// decay on A = {|xi1| >= |xi|^2} (or its |xi| < 1 part).

enum class AuditDomain { SetA, LoLarge };

struct BoundsAuditRow {
    std::string region;
    std::string quantity;
    double t = 0.0;
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

struct BoundsAuditReport {
    std::vector<BoundsAuditRow> rows;

    // sup over the sampled (xi, t) lattice of |m11| e^{|xi|^2 t / 2} and
    // |xi1 m12| e^{|xi|^2 t / 2}.
    double sup_m11_weighted = 0.0;
    double sup_xi1m12_weighted = 0.0;

    std::vector<double> ts;
    std::vector<double> knorm_m11;  // ||xi1 M11 1_A||, sup over xi1 then l2 over xi2
    std::vector<double> knorm_m12;  // ||xi1 M12 1_A||, l2 over xi1 then l1 over xi2
    std::vector<double> gnorm_m11;  // same mixed norms of the Gaussian kernel
    std::vector<double> gnorm_m12;  //   xi1 e^{-|xi|^2 t/2} resp. e^{-|xi|^2 t/2}
};

// The lattice argument fixes the quadrature: spacing dxi and extent n/2*dxi.
BoundsAuditReport bounds_audit(const GridSpec& lattice, const std::vector<double>& t_samples,
                               AuditDomain domain);

void write_csv(const BoundsAuditReport& report, std::ostream& os);

// Analytic constants of the audit.
double bound_m11_weighted();    // 1 + 3^{-1/2}
double bound_xi1m12_weighted(); // 2 * 3^{-1/2}
double gauss_l2linf_const();    // t^{3/4} ||xi1 e^{-|xi|^2 t/2}||_{L2(Linf)} = e^{-1/2} pi^{1/4}
double gauss_l1l2_const();      // t^{3/4} ||e^{-|xi|^2 t/2}||_{L1(L2)} = sqrt(2 pi) pi^{1/4}

}  // namespace mhd
