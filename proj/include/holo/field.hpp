#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "holo/errors.hpp"

namespace holo {

using Complex = std::complex<double>;

// Sampled rectangular region. Sample (i, j) sits at the physical point
//   x = (i - nx/2) * pitch,   y = (j - ny/2) * pitch   (integer division),
// so the sample (nx/2, ny/2) is exactly at the origin. For a DMD panel the
// samples are the micro-mirror centers.
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double pitch = 0.0;  // meters per sample

    double x(int i) const { return (i - nx / 2) * pitch; }
    double y(int j) const { return (j - ny / 2) * pitch; }
    std::size_t samples() const { return std::size_t(nx) * std::size_t(ny); }

    bool operator==(const GridSpec& o) const {
        return nx == o.nx && ny == o.ny && pitch == o.pitch;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

// Throws DomainError unless nx, ny >= 2 and pitch > 0.
void validate(const GridSpec& grid);

// 2D complex scalar amplitude on a GridSpec, row-major with y as the outer
// index: values[j * nx + i].
struct ComplexField {
    GridSpec grid;
    std::vector<Complex> values;

    ComplexField() = default;
    explicit ComplexField(const GridSpec& g) : grid(g), values(g.samples()) {}

    Complex& at(int i, int j) { return values[std::size_t(j) * grid.nx + i]; }
    const Complex& at(int i, int j) const { return values[std::size_t(j) * grid.nx + i]; }
};

// Real-valued image on the same sample layout (intensities, interferograms).
struct RealImage {
    GridSpec grid;
    std::vector<double> values;

    RealImage() = default;
    explicit RealImage(const GridSpec& g) : grid(g), values(g.samples()) {}

    double& at(int i, int j) { return values[std::size_t(j) * grid.nx + i]; }
    double at(int i, int j) const { return values[std::size_t(j) * grid.nx + i]; }
};

// Riemann-sum inner product <f,g> = sum conj(f) * g * pitch^2, conjugate
// linear in the first argument. Grids must match.
Complex inner_product(const ComplexField& f, const ComplexField& g);

// sqrt(<f,f>), the L2 norm under the grid quadrature.
double field_norm(const ComplexField& f);

double max_abs(const ComplexField& f);

// Scales so that max |value| = 1; phases untouched. All-zero input is an error.
ComplexField normalize_peak(const ComplexField& f);

// Sum of wrapped phase differences around the circle of given radius,
// sampled by bilinear interpolation; ~ 2*pi*ell for an ell-vortex. Errors if
// the loop leaves the grid or the field amplitude drops below 1e-12 on it.
double phase_circulation(const ComplexField& f, double radius);

// |f|^2 per sample.
RealImage intensity(const ComplexField& f);

}  // namespace holo
