#pragma once

#include "holo/field.hpp"
#include "holo/hologram.hpp"

namespace holo {

// Complex amplitude on the discrete frequency grid conjugate to a GridSpec,
// zero-frequency centered: bin k maps to (k - n/2) / (n * pitch) cycles/m per
// axis. The transform pair is unitary, so sum |S|^2 = sum |f|^2.
struct SpectrumField {
    GridSpec grid;  // the spatial grid this spectrum is conjugate to
    std::vector<Complex> values;

    double freq_step_x() const { return 1.0 / (grid.nx * grid.pitch); }
    double freq_step_y() const { return 1.0 / (grid.ny * grid.pitch); }
    double fx(int k) const { return (k - grid.nx / 2) * freq_step_x(); }
    double fy(int k) const { return (k - grid.ny / 2) * freq_step_y(); }

    Complex& at(int kx, int ky) { return values[std::size_t(ky) * grid.nx + kx]; }
    const Complex& at(int kx, int ky) const { return values[std::size_t(ky) * grid.nx + kx]; }
};

// Unitary centered 2D DFT: S(nu) = (1/sqrt(N)) sum f(x) e^{-i 2 pi nu x},
// summed over the centered sample coordinates.
SpectrumField forward_spectrum(const ComplexField& f);
ComplexField inverse_spectrum(const SpectrumField& s);

// Hard-edged disk in the Fourier plane, in cycles/meter.
struct ApertureSpec {
    double center_x = 0.0;
    double center_y = 0.0;
    double radius = 0.0;
};

// Disk of radius 1/(2 x0) centered on the +1 carrier order (1/x0, 0): the
// widest pass band that stays clear of the DC order.
ApertureSpec default_aperture(const GratingConfig& config, double pitch);

// Zero everything outside the aperture disk, inverse transform, and
// demodulate (shift the aperture center to zero frequency, applied exactly
// as a spatial-domain phase ramp). Result: the slowly-varying envelope of
// the selected order on the spatial grid.
ComplexField extract_first_order(const SpectrumField& s, const ApertureSpec& aperture);

// Embed centered in a frame grown by `factor` per axis (zero fill).
ComplexField pad_centered(const ComplexField& f, int factor);
// Undo pad_centered: cut the centered window of the given dimensions.
ComplexField crop_centered(const ComplexField& f, int nx, int ny);

// Plane-wave illumination of the mirror map, far field, aperture selection,
// demodulation; output cropped back to the panel grid. The hologram is
// embedded in a 2x zero-padded frame before transforming.
ComplexField simulate_reconstruction(const BinaryHologram& holo, const ApertureSpec& aperture);

// Power passed by the aperture over the power incident on the panel
// (nx * ny * pitch^2 of unit-amplitude illumination).
double diffraction_efficiency(const BinaryHologram& holo, const ApertureSpec& aperture);

}  // namespace holo
