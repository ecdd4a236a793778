#include "aniso_mhd/oracle.hpp"

#include <cmath>

namespace mhd {
namespace oracle {

PhysicalField fd_derivative(const PhysicalField& f, int axis, int order) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("fd_derivative: axis must be 1 or 2");
    if (order < 1 || order > 3)
        throw std::invalid_argument("fd_derivative: order must be in {1,2,3}");
    const GridSpec& g = f.grid;
    const int n = axis == 1 ? g.n1 : g.n2;
    const double h = (axis == 1 ? g.l1 : g.l2) / n;
    PhysicalField out(g);

    auto sample = [&](int j1, int j2, int shift) {
        if (axis == 1)
            return f.at(((j1 + shift) % n + n) % n, j2);
        return f.at(j1, ((j2 + shift) % n + n) % n);
    };

    for (int j1 = 0; j1 < g.n1; ++j1) {
        for (int j2 = 0; j2 < g.n2; ++j2) {
            double v = 0.0;
            switch (order) {
                case 1:
                    v = (sample(j1, j2, 1) - sample(j1, j2, -1)) / (2.0 * h);
                    break;
                case 2:
                    v = (sample(j1, j2, 1) - 2.0 * f.at(j1, j2) + sample(j1, j2, -1)) / (h * h);
                    break;
                case 3:
                    v = (sample(j1, j2, 2) - 2.0 * sample(j1, j2, 1) + 2.0 * sample(j1, j2, -1) -
                         sample(j1, j2, -2)) /
                        (2.0 * h * h * h);
                    break;
            }
            out.at(j1, j2) = v;
        }
    }
    return out;
}

PhysicalField resample(const SpectralField& f, const GridSpec& fine) {
    if (fine.n1 < f.grid.n1 || fine.n2 < f.grid.n2 || fine.l1 != f.grid.l1 ||
        fine.l2 != f.grid.l2)
        throw std::invalid_argument("resample: target must refine the source grid");
    SpectralField padded(fine);
    const GridSpec& g = f.grid;
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            padded.at_mode(g.k1(i1), g.k2(i2)) = f.at(i1, i2);
    return inverse(padded);
}

ModeSolution mode_ode_solve(double xi1, double xi2, Complex psi0, Complex v10, Complex v20,
                            double t_end, double rk_dt) {
    if (!(rk_dt > 0.0)) throw std::invalid_argument("mode_ode_solve: rk_dt must be positive");
    const double r2 = xi1 * xi1 + xi2 * xi2;
    const double c12 = xi1 * xi2;
    const double c11 = xi1 * xi1;

    struct Vec {
        Complex p, u, w;
    };
    auto deriv = [&](const Vec& y) {
        return Vec{-y.w, -r2 * y.u - c12 * y.p, -r2 * y.w + c11 * y.p};
    };
    auto axpy = [](const Vec& y, double a, const Vec& k) {
        return Vec{y.p + a * k.p, y.u + a * k.u, y.w + a * k.w};
    };

    Vec y{psi0, v10, v20};
    const long n = static_cast<long>(std::ceil(t_end / rk_dt - 1e-12));
    for (long i = 0; i < n; ++i) {
        const double h = std::min(rk_dt, t_end - i * rk_dt);
        const Vec k1 = deriv(y);
        const Vec k2 = deriv(axpy(y, 0.5 * h, k1));
        const Vec k3 = deriv(axpy(y, 0.5 * h, k2));
        const Vec k4 = deriv(axpy(y, h, k3));
        y.p += (h / 6.0) * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
        y.u += (h / 6.0) * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
        y.w += (h / 6.0) * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
    }
    return {y.p, y.u, y.w};
}

ModeSolution mode_ode_solve(double xi1, double xi2, Complex psi0, Complex v10, Complex v20,
                            double t_end, const OracleConfig& cfg) {
    return mode_ode_solve(xi1, xi2, psi0, v10, v20, t_end, cfg.rk_dt);
}

SpectralField small_grid_convolution(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f.grid, g.grid, "small_grid_convolution");
    const GridSpec& gr = f.grid;
    if (gr.n1 > 8 || gr.n2 > 8)
        throw std::invalid_argument("small_grid_convolution: grid too large");

    // True (alias-free) convolution: coefficients combine at the exact
    // integer mode sum, contributions landing outside the mode set drop.
    SpectralField out(gr);
    const int h1 = gr.n1 / 2, h2 = gr.n2 / 2;
    for (int ka = -h1; ka < h1; ++ka) {
        for (int kb = -h2; kb < h2; ++kb) {
            const Complex fa = f.at_mode(ka, kb);
            if (fa == Complex(0.0, 0.0)) continue;
            for (int ja = -h1; ja < h1; ++ja) {
                for (int jb = -h2; jb < h2; ++jb) {
                    const int ra = ka + ja, rb = kb + jb;
                    if (ra < -h1 || ra >= h1 || rb < -h2 || rb >= h2) continue;
                    out.at_mode(ra, rb) += fa * g.at_mode(ja, jb);
                }
            }
        }
    }
    dealias_inplace(out);
    return out;
}

double quadrature_integral(const std::vector<const PhysicalField*>& fields) {
    if (fields.empty()) throw std::invalid_argument("quadrature_integral: no fields");
    const GridSpec& g = fields.front()->grid;
    for (const PhysicalField* f : fields) require_same_grid(f->grid, g, "quadrature_integral");
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double prod = 1.0;
        for (const PhysicalField* f : fields) prod *= f->val[i];
        sum += prod;
    }
    return sum * g.cell_area();
}

}  // namespace oracle
}  // namespace mhd
