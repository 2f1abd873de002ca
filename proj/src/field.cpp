#include "holo/field.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

void validate(const GridSpec& grid) {
    if (grid.nx < 2 || grid.ny < 2)
        throw DomainError("grid must have at least 2 samples per axis");
    if (!(grid.pitch > 0.0))
        throw DomainError("grid pitch must be positive");
}

Complex inner_product(const ComplexField& f, const ComplexField& g) {
    if (f.grid != g.grid)
        throw DomainError("inner_product: grid mismatch");
    Complex acc(0.0, 0.0);
    const std::size_t n = f.values.size();
    for (std::size_t k = 0; k < n; ++k)
        acc += std::conj(f.values[k]) * g.values[k];
    const double cell = f.grid.pitch * f.grid.pitch;
    return acc * cell;
}

double field_norm(const ComplexField& f) {
    double acc = 0.0;
    for (const Complex& v : f.values)
        acc += std::norm(v);
    return std::sqrt(acc) * f.grid.pitch;
}

double max_abs(const ComplexField& f) {
    double m = 0.0;
    for (const Complex& v : f.values)
        m = std::max(m, std::abs(v));
    return m;
}

ComplexField normalize_peak(const ComplexField& f) {
    const double m = max_abs(f);
    if (m == 0.0)
        throw DomainError("normalize_peak: field is identically zero");
    ComplexField out = f;
    for (Complex& v : out.values)
        v /= m;
    return out;
}

namespace {

Complex bilinear(const ComplexField& f, double x, double y) {
    const GridSpec& g = f.grid;
    const double fi = x / g.pitch + g.nx / 2;
    const double fj = y / g.pitch + g.ny / 2;
    if (fi < 0.0 || fj < 0.0 || fi >= g.nx - 1 || fj >= g.ny - 1)
        throw DomainError("phase_circulation: loop leaves the grid");
    const int i = int(fi);
    const int j = int(fj);
    const double tx = fi - i;
    const double ty = fj - j;
    return f.at(i, j) * ((1 - tx) * (1 - ty)) + f.at(i + 1, j) * (tx * (1 - ty)) +
           f.at(i, j + 1) * ((1 - tx) * ty) + f.at(i + 1, j + 1) * (tx * ty);
}

}  // namespace

double phase_circulation(const ComplexField& f, double radius) {
    if (!(radius > 0.0))
        throw DomainError("phase_circulation: radius must be positive");
    // Enough samples to keep per-step phase increments well below pi even for
    // |ell| ~ 10, and to track the grid-scale structure of the loop.
    const int circumference = int(std::ceil(2.0 * M_PI * radius / f.grid.pitch));
    const int n = std::max(1024, 4 * circumference);

    std::vector<Complex> loop(n);
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * M_PI * k / n;
        loop[k] = bilinear(f, radius * std::cos(th), radius * std::sin(th));
        if (std::abs(loop[k]) < 1e-12)
            throw DomainError("phase_circulation: amplitude vanishes on the loop");
    }
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        const Complex step = loop[(k + 1) % n] * std::conj(loop[k]);
        total += std::arg(step);  // wrapped difference in (-pi, pi]
    }
    return total;
}

RealImage intensity(const ComplexField& f) {
    RealImage img(f.grid);
    for (std::size_t k = 0; k < f.values.size(); ++k)
        img.values[k] = std::norm(f.values[k]);
    return img;
}

}  // namespace holo
