#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mhd {

using Complex = std::complex<double>;

// Frequency regions of the low/high decomposition.  The three tags
// partition the plane: HI = {|xi| >= 1}, LO_SMALL = {|xi| < 1, |xi1| <= |xi|^2},
// LO_LARGE = {|xi| < 1, |xi1| > |xi|^2}.
enum class RegionTag { HI = 0, LO_SMALL = 1, LO_LARGE = 2 };

inline RegionTag classify_region(double xi1, double xi2) {
    const double r2 = xi1 * xi1 + xi2 * xi2;
    if (r2 >= 1.0) return RegionTag::HI;
    return std::abs(xi1) <= r2 ? RegionTag::LO_SMALL : RegionTag::LO_LARGE;
}

inline const char* region_name(RegionTag tag) {
    switch (tag) {
        case RegionTag::HI: return "HI";
        case RegionTag::LO_SMALL: return "LO_SMALL";
        default: return "LO_LARGE";
    }
}

// Periodic grid [0,l1) x [0,l2) with n1 x n2 points.  Mode k ranges over
// [-n/2, n/2) per axis; index i maps to k = i for i < n/2 and k = i - n above.
struct GridSpec {
    int n1 = 0, n2 = 0;
    double l1 = 0.0, l2 = 0.0;
    double dxi1 = 0.0, dxi2 = 0.0;

    GridSpec() = default;

    GridSpec(int n1_, int n2_, double l1_, double l2_) : n1(n1_), n2(n2_), l1(l1_), l2(l2_) {
        if (n1 < 8 || n2 < 8 || n1 % 2 != 0 || n2 % 2 != 0)
            throw std::invalid_argument("GridSpec: n1, n2 must be even and >= 8");
        if (!(l1 > 0.0) || !(l2 > 0.0))
            throw std::invalid_argument("GridSpec: domain lengths must be positive");
        dxi1 = 2.0 * M_PI / l1;
        dxi2 = 2.0 * M_PI / l2;
    }

    static GridSpec square(int n, double l) { return GridSpec(n, n, l, l); }

    std::size_t size() const { return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2); }
    std::size_t idx(int i1, int i2) const { return static_cast<std::size_t>(i1) * n2 + i2; }

    int k1(int i1) const { return i1 < n1 / 2 ? i1 : i1 - n1; }
    int k2(int i2) const { return i2 < n2 / 2 ? i2 : i2 - n2; }
    double xi1(int i1) const { return k1(i1) * dxi1; }
    double xi2(int i2) const { return k2(i2) * dxi2; }

    int index_of_k1(int k) const { return k >= 0 ? k : k + n1; }
    int index_of_k2(int k) const { return k >= 0 ? k : k + n2; }

    double x1(int j1) const { return l1 * j1 / n1; }
    double x2(int j2) const { return l2 * j2 / n2; }

    double cell_area() const { return l1 * l2 / (static_cast<double>(n1) * n2); }
    double area() const { return l1 * l2; }

    bool operator==(const GridSpec&) const = default;
};

// Complex Fourier coefficients of a scalar field, normalized so that
// coef(xi) = (1/(n1*n2)) sum_x val(x) e^{-i x.xi}.
struct SpectralField {
    GridSpec grid;
    std::vector<Complex> coef;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), coef(g.size(), Complex(0.0, 0.0)) {}

    Complex& at(int i1, int i2) { return coef[grid.idx(i1, i2)]; }
    const Complex& at(int i1, int i2) const { return coef[grid.idx(i1, i2)]; }

    // Access by signed mode number.
    Complex& at_mode(int k1, int k2) { return coef[grid.idx(grid.index_of_k1(k1), grid.index_of_k2(k2))]; }
    const Complex& at_mode(int k1, int k2) const {
        return coef[grid.idx(grid.index_of_k1(k1), grid.index_of_k2(k2))];
    }
};

struct PhysicalField {
    GridSpec grid;
    std::vector<double> val;

    PhysicalField() = default;
    explicit PhysicalField(const GridSpec& g) : grid(g), val(g.size(), 0.0) {}

    double& at(int j1, int j2) { return val[grid.idx(j1, j2)]; }
    const double& at(int j1, int j2) const { return val[grid.idx(j1, j2)]; }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace mhd
