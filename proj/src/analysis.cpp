#include "holo/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

std::vector<ComplexField> orthonormalize(const std::vector<ComplexField>& fields) {
    if (fields.empty())
        throw DomainError("orthonormalize: empty input");
    std::vector<ComplexField> basis;
    basis.reserve(fields.size());
    for (const ComplexField& f : fields) {
        ComplexField v = f;
        for (const ComplexField& b : basis) {
            const Complex proj = inner_product(b, v);
            for (std::size_t k = 0; k < v.values.size(); ++k)
                v.values[k] -= proj * b.values[k];
        }
        const double nrm = field_norm(v);
        if (nrm < 1e-12)
            throw DomainError("orthonormalize: rank-deficient input");
        for (Complex& val : v.values)
            val /= nrm;
        basis.push_back(std::move(v));
    }
    return basis;
}

DecompositionResult decompose(const ComplexField& f, const std::vector<ComplexField>& basis) {
    const double nrm = field_norm(f);
    if (nrm == 0.0)
        throw DomainError("decompose: zero field");

    DecompositionResult result;
    result.coefficients.reserve(basis.size());
    double captured = 0.0;
    for (const ComplexField& b : basis) {
        const Complex c = inner_product(b, f) / nrm;  // throws on grid mismatch
        captured += std::norm(c);
        result.coefficients.push_back(c);
    }
    result.residual_power_raw = 1.0 - captured;
    result.residual_power = std::max(0.0, result.residual_power_raw);
    return result;
}

double fidelity(const ComplexField& f, const ComplexField& target) {
    const double nf = field_norm(f);
    const double nt = field_norm(target);
    if (nf == 0.0 || nt == 0.0)
        throw DomainError("fidelity: zero field");
    const Complex ov = inner_product(target, f);
    return std::norm(ov) / (nf * nf * nt * nt);
}

RealImage interferogram(const ComplexField& f, double tilt_x, double tilt_y,
                        double ref_amplitude) {
    if (!(ref_amplitude > 0.0))
        throw DomainError("interferogram: reference amplitude must be positive");
    RealImage img(f.grid);
    for (int j = 0; j < f.grid.ny; ++j) {
        const double y = f.grid.y(j);
        for (int i = 0; i < f.grid.nx; ++i) {
            const double x = f.grid.x(i);
            const Complex ref = std::polar(ref_amplitude, 2.0 * M_PI * (tilt_x * x + tilt_y * y));
            img.at(i, j) = std::norm(f.at(i, j) + ref);
        }
    }
    return img;
}

Matrix mub_matrix(const GridSpec& grid, int n_ell,
                  const std::variant<VortexSpec, LgSpec>& base) {
    if (n_ell < 1)
        throw DomainError("mub_matrix: n_ell must be >= 1");
    const int count = 2 * n_ell + 1;

    std::vector<ComplexField> oam;
    oam.reserve(count);
    for (int ell = -n_ell; ell <= n_ell; ++ell)
        oam.push_back(std::holds_alternative<VortexSpec>(base)
                          ? vortex_mode(grid, ell, std::get<VortexSpec>(base).radius)
                          : lg_mode(grid, std::get<LgSpec>(base).p_r, ell,
                                    std::get<LgSpec>(base).waist));

    std::vector<double> oam_norm2(count);
    for (int row = 0; row < count; ++row) {
        const double n = field_norm(oam[row]);
        oam_norm2[row] = n * n;
    }

    Matrix m(count, count);
    for (int j = 0; j < count; ++j) {
        const ComplexField theta = ang_mode(grid, j, n_ell, base);
        const double nt = field_norm(theta);
        for (int row = 0; row < count; ++row) {
            const Complex ov = inner_product(oam[row], theta);
            m.at(row, j) = std::norm(ov) / (oam_norm2[row] * nt * nt);
        }
    }
    return m;
}

std::vector<TimelineSample> switching_timeline(const std::vector<SwitchFrame>& frames,
                                               double sample_rate,
                                               const std::vector<ModeSpec>& channels) {
    if (frames.empty())
        throw DomainError("switching_timeline: empty frame list");
    if (channels.empty())
        throw DomainError("switching_timeline: no detection channels");

    double total = 0.0;
    double min_duration = frames.front().duration;
    for (const SwitchFrame& fr : frames) {
        if (!(fr.duration > 0.0))
            throw DomainError("switching_timeline: frame duration must be positive");
        total += fr.duration;
        min_duration = std::min(min_duration, fr.duration);
    }
    if (sample_rate < 10.0 / min_duration)
        throw DomainError("switching_timeline: sample rate below 10x the frame rate");

    const GridSpec& grid = frames.front().hologram.grid;
    std::vector<ComplexField> channel_fields;
    channel_fields.reserve(channels.size());
    for (const ModeSpec& spec : channels)
        channel_fields.push_back(make_mode(grid, spec));
    channel_fields = orthonormalize(channel_fields);

    // Reconstruct each distinct hologram once.
    std::vector<int> frame_slot(frames.size());
    std::vector<std::vector<double>> slot_powers;  // per unique hologram, per channel
    std::vector<const BinaryHologram*> seen;
    for (std::size_t fi = 0; fi < frames.size(); ++fi) {
        const BinaryHologram& h = frames[fi].hologram;
        if (h.grid != grid)
            throw DomainError("switching_timeline: frames must share a grid");
        int slot = -1;
        for (std::size_t si = 0; si < seen.size(); ++si)
            if (seen[si]->config.period_samples == h.config.period_samples &&
                seen[si]->bits == h.bits) {
                slot = int(si);
                break;
            }
        if (slot < 0) {
            const ComplexField rec =
                simulate_reconstruction(h, default_aperture(h.config, grid.pitch));
            const double nrm = field_norm(rec);
            std::vector<double> powers(channel_fields.size(), 0.0);
            if (nrm > 0.0)
                for (std::size_t c = 0; c < channel_fields.size(); ++c)
                    powers[c] = std::norm(inner_product(channel_fields[c], rec) / nrm);
            slot = int(slot_powers.size());
            slot_powers.push_back(std::move(powers));
            seen.push_back(&h);
        }
        frame_slot[fi] = slot;
    }

    std::vector<double> frame_end(frames.size());
    double acc = 0.0;
    for (std::size_t fi = 0; fi < frames.size(); ++fi) {
        acc += frames[fi].duration;
        frame_end[fi] = acc;
    }

    std::vector<TimelineSample> timeline;
    std::vector<double> channel_max(channel_fields.size(), 0.0);
    for (long n = 0;; ++n) {
        const double t = double(n) / sample_rate;
        if (t >= total)
            break;
        std::size_t fi = 0;
        while (t >= frame_end[fi])
            ++fi;
        TimelineSample sample;
        sample.time = t;
        sample.channel_power = slot_powers[frame_slot[fi]];
        for (std::size_t c = 0; c < channel_max.size(); ++c)
            channel_max[c] = std::max(channel_max[c], sample.channel_power[c]);
        timeline.push_back(std::move(sample));
    }

    // Each channel trace is divided by its own maximum over the run.
    for (TimelineSample& sample : timeline)
        for (std::size_t c = 0; c < channel_max.size(); ++c)
            if (channel_max[c] > 0.0)
                sample.channel_power[c] /= channel_max[c];
    return timeline;
}

ComplexField ReconstructionPipeline::run(const ComplexField& target) const {
    if (identity)
        return target;
    return simulate_reconstruction(synthesize(target, grating), aperture);
}

Matrix crosstalk_matrix(const GridSpec& grid, const std::vector<ModeSpec>& modes,
                        const ReconstructionPipeline& pipeline) {
    if (modes.empty())
        throw DomainError("crosstalk_matrix: empty mode set");
    std::vector<ComplexField> targets;
    targets.reserve(modes.size());
    for (const ModeSpec& spec : modes)
        targets.push_back(make_mode(grid, spec));
    const std::vector<ComplexField> basis = orthonormalize(targets);

    Matrix x(int(modes.size()), int(modes.size()));
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const DecompositionResult d = decompose(pipeline.run(targets[i]), basis);
        for (std::size_t k = 0; k < modes.size(); ++k)
            x.at(int(i), int(k)) = std::norm(d.coefficients[k]);
    }
    return x;
}

}  // namespace holo
