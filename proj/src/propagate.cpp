#include "holo/propagate.hpp"

#include <fftw3.h>

#include <cmath>

namespace holo {

namespace {

// Centered unitary transform via index remapping around the plain FFT:
// gather with ifftshift, transform, scatter with fftshift. Both maps are
// (k + n/2) mod n, which are mutual inverses for the gather/scatter roles
// they play here.
void centered_fft2(const GridSpec& grid, const std::vector<Complex>& in,
                   std::vector<Complex>& out, int direction) {
    const int nx = grid.nx;
    const int ny = grid.ny;
    const std::size_t n = grid.samples();

    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_complex* res = fftw_alloc_complex(n);

    for (int j = 0; j < ny; ++j) {
        const int js = (j + ny / 2) % ny;
        for (int i = 0; i < nx; ++i) {
            const int is = (i + nx / 2) % nx;
            const Complex v = in[std::size_t(js) * nx + is];
            buf[std::size_t(j) * nx + i][0] = v.real();
            buf[std::size_t(j) * nx + i][1] = v.imag();
        }
    }

    fftw_plan plan = fftw_plan_dft_2d(ny, nx, buf, res, direction, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    const double scale = 1.0 / std::sqrt(double(n));
    out.resize(n);
    for (int j = 0; j < ny; ++j) {
        const int js = (j + ny / 2) % ny;
        for (int i = 0; i < nx; ++i) {
            const int is = (i + nx / 2) % nx;
            out[std::size_t(js) * nx + is] =
                Complex(res[std::size_t(j) * nx + i][0], res[std::size_t(j) * nx + i][1]) * scale;
        }
    }

    fftw_free(buf);
    fftw_free(res);
}

}  // namespace

SpectrumField forward_spectrum(const ComplexField& f) {
    validate(f.grid);
    SpectrumField s;
    s.grid = f.grid;
    centered_fft2(f.grid, f.values, s.values, FFTW_FORWARD);
    return s;
}

ComplexField inverse_spectrum(const SpectrumField& s) {
    validate(s.grid);
    ComplexField f(s.grid);
    centered_fft2(s.grid, s.values, f.values, FFTW_BACKWARD);
    return f;
}

ApertureSpec default_aperture(const GratingConfig& config, double pitch) {
    validate(config);
    const double x0 = config.period_samples * pitch;
    return ApertureSpec{1.0 / x0, 0.0, 1.0 / (2.0 * x0)};
}

ComplexField extract_first_order(const SpectrumField& s, const ApertureSpec& aperture) {
    if (!(aperture.radius > 0.0))
        throw DomainError("aperture radius must be positive");
    const GridSpec& grid = s.grid;
    const double fx_min = s.fx(0);
    const double fx_max = s.fx(grid.nx - 1);
    const double fy_min = s.fy(0);
    const double fy_max = s.fy(grid.ny - 1);
    if (aperture.center_x - aperture.radius < fx_min ||
        aperture.center_x + aperture.radius > fx_max ||
        aperture.center_y - aperture.radius < fy_min ||
        aperture.center_y + aperture.radius > fy_max)
        throw DomainError("aperture does not fit inside the frequency grid");

    SpectrumField masked;
    masked.grid = grid;
    masked.values.assign(grid.samples(), Complex(0.0, 0.0));
    const double r2 = aperture.radius * aperture.radius;
    for (int ky = 0; ky < grid.ny; ++ky) {
        const double dy = s.fy(ky) - aperture.center_y;
        for (int kx = 0; kx < grid.nx; ++kx) {
            const double dx = s.fx(kx) - aperture.center_x;
            if (dx * dx + dy * dy <= r2)
                masked.at(kx, ky) = s.at(kx, ky);
        }
    }

    ComplexField env = inverse_spectrum(masked);
    // Exact demodulation: the aperture center is generally not a whole
    // frequency bin, so shift it to zero as a spatial phase ramp.
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            env.at(i, j) *=
                std::polar(1.0, -2.0 * M_PI * (aperture.center_x * x + aperture.center_y * y));
        }
    }
    return env;
}

ComplexField pad_centered(const ComplexField& f, int factor) {
    if (factor < 1)
        throw DomainError("pad factor must be >= 1");
    const GridSpec& g = f.grid;
    GridSpec padded{g.nx * factor, g.ny * factor, g.pitch};
    ComplexField out(padded);
    const int ox = padded.nx / 2 - g.nx / 2;
    const int oy = padded.ny / 2 - g.ny / 2;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.at(i + ox, j + oy) = f.at(i, j);
    return out;
}

ComplexField crop_centered(const ComplexField& f, int nx, int ny) {
    const GridSpec& g = f.grid;
    if (nx > g.nx || ny > g.ny)
        throw DomainError("crop window exceeds the grid");
    GridSpec cropped{nx, ny, g.pitch};
    ComplexField out(cropped);
    const int ox = g.nx / 2 - nx / 2;
    const int oy = g.ny / 2 - ny / 2;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            out.at(i, j) = f.at(i + ox, j + oy);
    return out;
}

namespace {

ComplexField transmittance(const BinaryHologram& holo) {
    ComplexField f(holo.grid);
    for (std::size_t k = 0; k < holo.bits.size(); ++k)
        f.values[k] = Complex(double(holo.bits[k]), 0.0);
    return f;
}

}  // namespace

ComplexField simulate_reconstruction(const BinaryHologram& holo, const ApertureSpec& aperture) {
    const SpectrumField s = forward_spectrum(pad_centered(transmittance(holo), 2));
    const ComplexField env = extract_first_order(s, aperture);
    return crop_centered(env, holo.grid.nx, holo.grid.ny);
}

double diffraction_efficiency(const BinaryHologram& holo, const ApertureSpec& aperture) {
    const SpectrumField s = forward_spectrum(pad_centered(transmittance(holo), 2));
    const double r2 = aperture.radius * aperture.radius;
    double captured = 0.0;
    for (int ky = 0; ky < s.grid.ny; ++ky) {
        const double dy = s.fy(ky) - aperture.center_y;
        for (int kx = 0; kx < s.grid.nx; ++kx) {
            const double dx = s.fx(kx) - aperture.center_x;
            if (dx * dx + dy * dy <= r2)
                captured += std::norm(s.at(kx, ky));
        }
    }
    return captured / double(holo.grid.samples());
}

}  // namespace holo
