#pragma once

#include <cstdint>
#include <vector>

#include "holo/field.hpp"

namespace holo {

// Carrier grating configuration. The carrier runs along +x; one period spans
// period_samples mirrors. Below 4 samples/period the duty-cycle quantization
// destroys amplitude control.
struct GratingConfig {
    int period_samples = 20;
};

void validate(const GratingConfig& config);

// Binary on/off mirror map plus the carrier it was synthesized with.
// bits hold 0 or 1, same layout as ComplexField values.
struct BinaryHologram {
    GridSpec grid;
    std::vector<std::uint8_t> bits;
    GratingConfig config;

    std::uint8_t& at(int i, int j) { return bits[std::size_t(j) * grid.nx + i]; }
    std::uint8_t at(int i, int j) const { return bits[std::size_t(j) * grid.nx + i]; }
};

// Pulse parameters of the 1D train: duty cycle w in [0,1] and position p in
// [0,2). p is 2-periodic in the carrier, so [0,2) covers phases [0,2*pi).
struct PulseParams {
    double w = 0.0;
    double p = 0.0;
};

// 1 iff |u| <= 1/2 (boundary inclusive).
int rect(double u);

// Direct enumeration of the pulse train: mirror m (center position
// (m + 1/2) * pitch) is on iff some pulse, centered at (k + p) * x0 with
// width w * x0, covers it. Reference for the Fourier-coefficient checks.
std::vector<std::uint8_t> uniform_grating_1d(int n, int period_samples,
                                             const PulseParams& params);

// Fourier coefficient of the ideal pulse train: sin(pi m w)/(pi m) *
// e^{i 2 pi m p}; the m = 0 limit is w. The m-th coefficient pairs with the
// e^{+i 2 pi m x / x0} kernel (kFourierKernelSign).
Complex analytic_coefficient(int m, const PulseParams& params);

// Sign of the exponent that extracts the coefficient matching
// analytic_coefficient from a sampled grating. Fixed once against the direct
// quadrature oracle in the test suite.
inline constexpr int kFourierKernelSign = +1;

// w = arcsin(a)/pi for a in [0,1]; sin(pi w) = a exactly.
double encode_amplitude(double a);

// p = phi/pi with phi wrapped to [0, 2*pi).
double encode_phase(double phi);

// Threshold synthesis: bit(i,j) = 1 iff
//   cos(2 pi x / x0 + pi p(x,y)) >= cos(pi w(x,y)),
// with w, p encoded from the local field value. Bits where the amplitude is
// zero, or where the pulse would be narrower than half a mirror
// (w < 1/(2 period)), stay off; such pulses are not realizable and would
// otherwise leave stray always-on columns at the carrier peaks. The field
// must be peak-normalized.
BinaryHologram synthesize(const ComplexField& field, const GratingConfig& config);

// Slowly-varying first-order prediction: (1/pi) sin(pi w) e^{i phi}
// pointwise, i.e. field/pi under the encode maps. Ground truth for the
// simulated reconstruction.
ComplexField predicted_first_order(const ComplexField& field);

// Fraction of on-mirrors per carrier-period window, one row of windows per
// mirror row. The last window may be partial; its fraction is taken over the
// mirrors it actually covers.
struct DutyCycleProfile {
    int windows = 0;  // per row
    int ny = 0;
    std::vector<double> values;  // row-major [ny][windows]

    double at(int win, int j) const { return values[std::size_t(j) * windows + win]; }
};

DutyCycleProfile duty_cycle_profile(const BinaryHologram& holo);

}  // namespace holo
