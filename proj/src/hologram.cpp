#include "holo/hologram.hpp"

#include <cmath>

namespace holo {

void validate(const GratingConfig& config) {
    if (config.period_samples < 4)
        throw DomainError("carrier period must be at least 4 samples");
}

namespace {

void validate(const PulseParams& params) {
    if (!(params.w >= 0.0 && params.w <= 1.0))
        throw DomainError("pulse duty cycle w must lie in [0,1]");
    if (!(params.p >= 0.0 && params.p < 2.0))
        throw DomainError("pulse position p must lie in [0,2)");
}

// Signed distance to the nearest integer, in [-1/2, 1/2].
double wrap_half(double t) { return t - std::round(t); }

void check_peak_normalized(const ComplexField& field) {
    const double m = max_abs(field);
    if (std::abs(m - 1.0) > 1e-9)
        throw DomainError("field must be peak-normalized (max |value| = 1)");
}

}  // namespace

int rect(double u) { return std::abs(u) <= 0.5 ? 1 : 0; }

std::vector<std::uint8_t> uniform_grating_1d(int n, int period_samples,
                                             const PulseParams& params) {
    validate(GratingConfig{period_samples});
    validate(params);
    if (n < period_samples)
        throw DomainError("uniform_grating_1d: need at least one full period");

    std::vector<std::uint8_t> bits(n, 0);
    if (params.w == 0.0)
        return bits;  // rect is ill-defined at zero width; no pulse at all
    for (int m = 0; m < n; ++m) {
        // Mirror m occupies [m, m+1) sample units; evaluate at its center.
        const double t = (m + 0.5) / period_samples - params.p;
        bits[m] = std::uint8_t(rect(wrap_half(t) / params.w));
    }
    return bits;
}

Complex analytic_coefficient(int m, const PulseParams& params) {
    if (m == 0)
        return Complex(params.w, 0.0);
    const double mag = std::sin(M_PI * m * params.w) / (M_PI * m);
    return std::polar(mag, 2.0 * M_PI * m * params.p);
}

double encode_amplitude(double a) {
    // Admit a hair of rounding slop from normalize_peak.
    if (a < 0.0 || a > 1.0 + 1e-12) {
        if (a >= -1e-12 && a < 0.0)
            a = 0.0;
        else
            throw DomainError("encode_amplitude: amplitude outside [0,1]");
    }
    if (a > 1.0)
        a = 1.0;
    return std::asin(a) / M_PI;
}

double encode_phase(double phi) {
    double p = phi / M_PI;
    p -= 2.0 * std::floor(p / 2.0);
    if (p >= 2.0)  // floor slop at tiny negative phi
        p = 0.0;
    return p;
}

BinaryHologram synthesize(const ComplexField& field, const GratingConfig& config) {
    validate(config);
    check_peak_normalized(field);

    const GridSpec& grid = field.grid;
    const int period = config.period_samples;
    // Pulses narrower than half a mirror round to no pulse; without this the
    // threshold keeps the columns at the carrier peaks on for arbitrarily
    // small amplitudes (cos(carrier) = 1 >= cos(pi w) for any w > 0).
    const double w_min = 0.5 / period;

    BinaryHologram holo{grid, std::vector<std::uint8_t>(grid.samples(), 0), config};
    // Carrier phase per column, reduced mod one period before scaling so the
    // argument stays small and pulse edges land exactly where the dyadic
    // sample fractions put them.
    std::vector<double> carrier_x(grid.nx);
    for (int i = 0; i < grid.nx; ++i) {
        const double t = double(i - grid.nx / 2) / period;
        carrier_x[i] = 2.0 * M_PI * (t - std::floor(t));
    }

    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const Complex v = field.at(i, j);
            const double a = std::min(std::abs(v), 1.0);
            const double w = encode_amplitude(a);
            if (w < w_min)
                continue;
            const double p = encode_phase(std::arg(v));
            const double carrier = carrier_x[i] + M_PI * p;
            if (std::cos(carrier) >= std::cos(M_PI * w))
                holo.at(i, j) = 1;
        }
    }
    return holo;
}

ComplexField predicted_first_order(const ComplexField& field) {
    check_peak_normalized(field);
    ComplexField out(field.grid);
    for (std::size_t k = 0; k < field.values.size(); ++k) {
        const Complex v = field.values[k];
        const double a = std::min(std::abs(v), 1.0);
        if (a == 0.0)
            continue;
        const double w = encode_amplitude(a);
        const double phi = M_PI * encode_phase(std::arg(v));
        out.values[k] = std::polar(std::sin(M_PI * w) / M_PI, phi);
    }
    return out;
}

DutyCycleProfile duty_cycle_profile(const BinaryHologram& holo) {
    const int nx = holo.grid.nx;
    const int ny = holo.grid.ny;
    const int period = holo.config.period_samples;
    const int windows = (nx + period - 1) / period;

    DutyCycleProfile profile{windows, ny, std::vector<double>(std::size_t(windows) * ny, 0.0)};
    for (int j = 0; j < ny; ++j) {
        for (int win = 0; win < windows; ++win) {
            const int begin = win * period;
            const int end = std::min(begin + period, nx);
            int on = 0;
            for (int i = begin; i < end; ++i)
                on += holo.at(i, j);
            profile.values[std::size_t(j) * windows + win] = double(on) / (end - begin);
        }
    }
    return profile;
}

}  // namespace holo
