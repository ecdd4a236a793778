#include "aniso_mhd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mhd {

SpectralField derivative(const SpectralField& f, int axis, int order) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("derivative: axis must be 1 or 2");
    if (order < 1) throw std::invalid_argument("derivative: order must be >= 1");
    const GridSpec& g = f.grid;
    SpectralField out(g);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double xi = axis == 1 ? g.xi1(i1) : g.xi2(i2);
            Complex factor(1.0, 0.0);
            const Complex ixi(0.0, xi);
            for (int k = 0; k < order; ++k) factor *= ixi;
            out.at(i1, i2) = factor * f.at(i1, i2);
        }
    }
    return out;
}

SpectralField inv_neg_laplacian(const SpectralField& f) {
    const GridSpec& g = f.grid;
    SpectralField out(g);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double x1 = g.xi1(i1), x2 = g.xi2(i2);
            const double r2 = x1 * x1 + x2 * x2;
            out.at(i1, i2) = r2 == 0.0 ? Complex(0.0, 0.0) : f.at(i1, i2) / r2;
        }
    }
    return out;
}

bool inside_dealias_ball(const GridSpec& g, int i1, int i2) {
    return 3 * std::abs(g.k1(i1)) <= g.n1 && 3 * std::abs(g.k2(i2)) <= g.n2;
}

void dealias_inplace(SpectralField& f) {
    const GridSpec& g = f.grid;
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            if (!inside_dealias_ball(g, i1, i2)) f.at(i1, i2) = Complex(0.0, 0.0);
}

SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    dealias_inplace(out);
    return out;
}

double sobolev_weight(double xi1, double xi2, int s, bool homogeneous) {
    const double r1 = xi1 * xi1, r2 = xi2 * xi2;
    // sum over distinct multi-indices |alpha| = k of xi^{2 alpha}
    auto wk = [&](int k) {
        switch (k) {
            case 0: return 1.0;
            case 1: return r1 + r2;
            case 2: return r1 * r1 + r1 * r2 + r2 * r2;
            default: return r1 * r1 * r1 + r1 * r1 * r2 + r1 * r2 * r2 + r2 * r2 * r2;
        }
    };
    if (homogeneous) return wk(s);
    double w = 0.0;
    for (int k = 0; k <= s; ++k) w += wk(k);
    return w;
}

double sobolev_inner(const SpectralField& f, const SpectralField& g, int s, bool homogeneous) {
    require_same_grid(f.grid, g.grid, "sobolev_inner");
    if (s < 0 || s > 3) throw std::invalid_argument("sobolev_inner: s must be in {0,1,2,3}");
    const GridSpec& gr = f.grid;
    double sum = 0.0;
    for (int i1 = 0; i1 < gr.n1; ++i1) {
        for (int i2 = 0; i2 < gr.n2; ++i2) {
            const double w = sobolev_weight(gr.xi1(i1), gr.xi2(i2), s, homogeneous);
            const Complex a = f.at(i1, i2), b = g.at(i1, i2);
            sum += w * (a.real() * b.real() + a.imag() * b.imag());
        }
    }
    return sum * gr.area();
}

double sobolev_norm(const SpectralField& f, int s, bool homogeneous) {
    return std::sqrt(std::max(0.0, sobolev_inner(f, f, s, homogeneous)));
}

double l1xi_unit(const GridSpec& g) {
    return g.dxi1 * g.dxi2 * g.area() / (4.0 * M_PI * M_PI);
}

double l1xi_norm(const SpectralField& f) {
    double sum = 0.0;
    for (const Complex& c : f.coef) sum += std::abs(c);
    return sum * l1xi_unit(f.grid);
}

double l1xi_norm(const SpectralField& f, RegionTag mask) {
    const GridSpec& g = f.grid;
    double sum = 0.0;
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            if (classify_region(g.xi1(i1), g.xi2(i2)) == mask) sum += std::abs(f.at(i1, i2));
    return sum * l1xi_unit(g);
}

double l1xi_norm_pair(const SpectralField& f1, const SpectralField& f2) {
    require_same_grid(f1.grid, f2.grid, "l1xi_norm_pair");
    double sum = 0.0;
    for (std::size_t i = 0; i < f1.coef.size(); ++i)
        sum += std::hypot(std::abs(f1.coef[i]), std::abs(f2.coef[i]));
    return sum * l1xi_unit(f1.grid);
}

double l1xi_norm_pair(const SpectralField& f1, const SpectralField& f2, RegionTag mask) {
    require_same_grid(f1.grid, f2.grid, "l1xi_norm_pair");
    const GridSpec& g = f1.grid;
    double sum = 0.0;
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            if (classify_region(g.xi1(i1), g.xi2(i2)) == mask)
                sum += std::hypot(std::abs(f1.at(i1, i2)), std::abs(f2.at(i1, i2)));
    return sum * l1xi_unit(g);
}

std::vector<std::uint8_t> region_mask(const GridSpec& g, RegionTag tag) {
    std::vector<std::uint8_t> mask(g.size(), 0);
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            mask[g.idx(i1, i2)] = classify_region(g.xi1(i1), g.xi2(i2)) == tag ? 1 : 0;
    return mask;
}

void project_divfree(SpectralField& v1, SpectralField& v2) {
    require_same_grid(v1.grid, v2.grid, "project_divfree");
    const GridSpec& g = v1.grid;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    // Modes whose divergence already sits at the rounding floor of the whole
    // field are left untouched, which makes the projection bitwise idempotent.
    double scale = 0.0;
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double x1 = g.xi1(i1), x2 = g.xi2(i2);
            scale = std::max(scale, std::abs(x1) * std::abs(v1.at(i1, i2)) +
                                        std::abs(x2) * std::abs(v2.at(i1, i2)));
        }
    }
    const double floor = 64.0 * eps * scale;

    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double x1 = g.xi1(i1), x2 = g.xi2(i2);
            const double r2 = x1 * x1 + x2 * x2;
            Complex& c1 = v1.at(i1, i2);
            Complex& c2 = v2.at(i1, i2);
            if (r2 == 0.0) {
                c1 = Complex(0.0, 0.0);
                c2 = Complex(0.0, 0.0);
                continue;
            }
            const Complex d = x1 * c1 + x2 * c2;
            if (std::abs(d) <= floor) continue;
            const Complex q = d / r2;
            c1 -= x1 * q;
            c2 -= x2 * q;
        }
    }
}

SpectralField spectral_product(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f.grid, g.grid, "spectral_product");
    PhysicalField a = inverse(f), b = inverse(g);
    PhysicalField prod(f.grid);
    for (std::size_t i = 0; i < prod.val.size(); ++i) prod.val[i] = a.val[i] * b.val[i];
    SpectralField out = forward(prod);
    dealias_inplace(out);
    return out;
}

double max_divergence(const SpectralField& v1, const SpectralField& v2) {
    require_same_grid(v1.grid, v2.grid, "max_divergence");
    const GridSpec& g = v1.grid;
    double m = 0.0;
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            m = std::max(m, std::abs(g.xi1(i1) * v1.at(i1, i2) + g.xi2(i2) * v2.at(i1, i2)));
    return m;
}

double coef_l2_norm(const SpectralField& f) {
    double s = 0.0;
    for (const Complex& c : f.coef) s += std::norm(c);
    return std::sqrt(s);
}

double coef_linf_norm(const SpectralField& f) {
    double m = 0.0;
    for (const Complex& c : f.coef) m = std::max(m, std::abs(c));
    return m;
}

double hermitian_defect(const SpectralField& f) {
    const GridSpec& g = f.grid;
    double m = 0.0;
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const int j1 = (g.n1 - i1) % g.n1;
            const int j2 = (g.n2 - i2) % g.n2;
            m = std::max(m, std::abs(f.at(i1, i2) - std::conj(f.at(j1, j2))));
        }
    }
    return m;
}

bool all_finite(const SpectralField& f) {
    for (const Complex& c : f.coef)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

}  // namespace mhd
