#pragma once

#include <string>
#include <vector>

#include "holo/field.hpp"
#include "holo/hologram.hpp"
#include "holo/modes.hpp"
#include "holo/propagate.hpp"

namespace holo {

// Small dense real matrix, row-major.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c, 0.0) {}

    double& at(int r, int c) { return data[std::size_t(r) * cols + c]; }
    double at(int r, int c) const { return data[std::size_t(r) * cols + c]; }
};

// Complex coefficients of a field over a declared orthonormal basis.
// residual_power is clamped at zero; the raw value (which can round to a
// tiny negative) is kept alongside.
struct DecompositionResult {
    std::vector<ModeSpec> basis;  // may be empty when the basis is ad hoc
    std::vector<Complex> coefficients;
    double residual_power = 0.0;
    double residual_power_raw = 0.0;
};

// Modified Gram-Schmidt under inner_product. Errors on rank deficiency
// (pivot norm < 1e-12).
std::vector<ComplexField> orthonormalize(const std::vector<ComplexField>& fields);

// c_k = <b_k, f> / ||f|| for an orthonormalized basis; residual_power =
// 1 - sum |c_k|^2.
DecompositionResult decompose(const ComplexField& f, const std::vector<ComplexField>& basis);

// Normalized squared overlap |<t,f>|^2 / (||t||^2 ||f||^2); 1 iff the fields
// are proportional up to a global complex scale.
double fidelity(const ComplexField& f, const ComplexField& target);

// I(x,y) = |f + ref_amplitude e^{i 2 pi (nu_x x + nu_y y)}|^2, the intensity
// of interference with a tilted plane-wave reference.
RealImage interferogram(const ComplexField& f, double tilt_x, double tilt_y,
                        double ref_amplitude);

// M[ell + n_ell][j] = normalized |<u_ell, theta_j>|^2 over the 2 n_ell + 1
// OAM modes and ANG modes sharing the base profile. Mutual unbiasedness puts
// every entry at 1/(2 n_ell + 1).
Matrix mub_matrix(const GridSpec& grid, int n_ell,
                  const std::variant<VortexSpec, LgSpec>& base);

// One DMD frame: the hologram shown and for how long.
struct SwitchFrame {
    BinaryHologram hologram;
    double duration = 0.0;  // seconds
};

struct TimelineSample {
    double time = 0.0;
    std::vector<double> channel_power;  // normalized per channel to its max
};

// Frame-sequenced switching with ideal modal-projection detection: per time
// sample the active frame's reconstruction (cached per unique hologram) is
// projected on each channel mode; each channel trace is then divided by its
// own maximum. Holograms change instantaneously at frame boundaries.
std::vector<TimelineSample> switching_timeline(const std::vector<SwitchFrame>& frames,
                                               double sample_rate,
                                               const std::vector<ModeSpec>& channels);

// synthesize -> simulate_reconstruction, or a pass-through when identity is
// set (for isolating the decomposition machinery).
struct ReconstructionPipeline {
    GratingConfig grating;
    ApertureSpec aperture;
    bool identity = false;

    ComplexField run(const ComplexField& target) const;
};

// X[i][k] = |<b_k, reconstruct(mode_i)>|^2 with b the orthonormalized mode
// set itself; each row is normalized by the reconstruction's total power.
Matrix crosstalk_matrix(const GridSpec& grid, const std::vector<ModeSpec>& modes,
                        const ReconstructionPipeline& pipeline);

}  // namespace holo
