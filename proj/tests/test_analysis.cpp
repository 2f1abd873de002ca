#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holo/analysis.hpp"
#include "test_support.hpp"

using namespace holo;

namespace {

const GridSpec kGrid{256, 256, 7.5e-6};
const double kRadius = 0.7e-3;

}  // namespace

TEST_CASE("orthonormalize keeps an orthogonal set, scaled to unit norm") {
    const std::vector<ComplexField> modes = {vortex_mode(kGrid, 0, kRadius),
                                             vortex_mode(kGrid, 1, kRadius)};
    const auto basis = orthonormalize(modes);
    for (const auto& b : basis)
        CHECK(field_norm(b) == doctest::Approx(1.0).epsilon(1e-12));
    // Directions unchanged: each output is proportional to its input.
    for (int k = 0; k < 2; ++k)
        CHECK(fidelity(basis[k], modes[k]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(inner_product(basis[0], basis[1])) < 1e-10);
}

TEST_CASE("orthonormalize rejects dependent inputs") {
    ComplexField f = vortex_mode(kGrid, 1, kRadius);
    ComplexField g = f;
    for (Complex& v : g.values)
        v *= 2.0;
    CHECK_THROWS_AS(orthonormalize({f, g}), DomainError);
    CHECK_THROWS_AS(orthonormalize({}), DomainError);
}

TEST_CASE("orthonormalize delivers pairwise delta inner products") {
    std::vector<ComplexField> modes;
    for (int ell : {0, 1, -1})
        modes.push_back(lg_mode(kGrid, 0, ell, 0.25e-3));
    modes.push_back(lg_mode(kGrid, 1, 0, 0.25e-3));
    const auto basis = orthonormalize(modes);
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Complex ip = inner_product(basis[a], basis[b]);
            const double expected = a == b ? 1.0 : 0.0;
            CHECK(std::abs(ip - Complex(expected, 0.0)) < 1e-10);
        }
}

TEST_CASE("decompose recovers basis members and equal superpositions") {
    const auto basis = orthonormalize({vortex_mode(kGrid, 0, kRadius),
                                       vortex_mode(kGrid, 1, kRadius),
                                       vortex_mode(kGrid, 2, kRadius)});
    const DecompositionResult pure = decompose(basis[1], basis);
    CHECK(std::abs(pure.coefficients[1]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(pure.coefficients[0]) < 1e-8);
    CHECK(std::abs(pure.coefficients[2]) < 1e-8);
    CHECK(pure.residual_power < 1e-8);

    ComplexField mix(kGrid);
    for (std::size_t k = 0; k < mix.values.size(); ++k)
        mix.values[k] = (basis[0].values[k] + basis[1].values[k]) / std::sqrt(2.0);
    const DecompositionResult half = decompose(mix, basis);
    CHECK(std::norm(half.coefficients[0]) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::norm(half.coefficients[1]) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(half.residual_power >= 0.0);
}

TEST_CASE("decompose validates grids and the zero field") {
    const auto basis = orthonormalize({vortex_mode(kGrid, 0, kRadius)});
    CHECK_THROWS_AS(decompose(ComplexField(GridSpec{64, 64, 7.5e-6}), basis), DomainError);
    CHECK_THROWS_AS(decompose(ComplexField(kGrid), basis), DomainError);
}

TEST_CASE("fidelity is a projective match score") {
    const ComplexField f = lg_mode(kGrid, 1, 1, 0.25e-3);
    CHECK(fidelity(f, f) == doctest::Approx(1.0).epsilon(1e-12));

    ComplexField scaled = f;
    for (Complex& v : scaled.values)
        v *= std::polar(0.37, 1.9);  // global phase and scale drop out
    CHECK(fidelity(scaled, f) == doctest::Approx(1.0).epsilon(1e-12));

    const ComplexField other = vortex_mode(kGrid, 2, kRadius);
    const ComplexField base = vortex_mode(kGrid, 1, kRadius);
    CHECK(fidelity(other, base) < 1e-8);

    CHECK_THROWS_AS(fidelity(ComplexField(kGrid), f), DomainError);
}

TEST_CASE("interferogram of a plane pair is uniform, tilt makes fringes") {
    const GridSpec g{128, 64, 7.5e-6};
    ComplexField ones(g);
    for (Complex& v : ones.values)
        v = Complex(1.0, 0.0);

    const RealImage flat = interferogram(ones, 0.0, 0.0, 1.0);
    for (double v : flat.values)
        CHECK(v == doctest::Approx(4.0).epsilon(1e-12));

    // Tilt nu: straight fringes of period 1/nu along x.
    const double nu = 1.0 / (16 * g.pitch);
    const RealImage fringes = interferogram(ones, nu, 0.0, 1.0);
    for (int i = 0; i + 16 < g.nx; ++i)
        CHECK(fringes.at(i, 10) == doctest::Approx(fringes.at(i + 16, 10)).epsilon(1e-9));
    CHECK(fringes.at(g.nx / 2, 5) == doctest::Approx(4.0));          // crest at x = 0
    CHECK(fringes.at(g.nx / 2 + 8, 5) == doctest::Approx(0.0).epsilon(1e-9));

    CHECK_THROWS_AS(interferogram(ones, 0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("mub matrix entries sit at 1/(2n+1) with unit row sums") {
    for (int n : {1, 2}) {
        const Matrix m = mub_matrix(kGrid, n, VortexSpec{0, kRadius});
        const double expected = 1.0 / (2 * n + 1);
        for (int r = 0; r < m.rows; ++r) {
            double row_sum = 0.0;
            for (int c = 0; c < m.cols; ++c) {
                CHECK(std::abs(m.at(r, c) - expected) < 1e-3);
                row_sum += m.at(r, c);
            }
            CHECK(row_sum == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("mub matrix works on an LG base") {
    const Matrix m = mub_matrix(kGrid, 1, LgSpec{0, 0, 0.25e-3});
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            CHECK(std::abs(m.at(r, c) - 1.0 / 3.0) < 1e-3);
    CHECK_THROWS_AS(mub_matrix(kGrid, 0, VortexSpec{0, kRadius}), DomainError);
}

TEST_CASE("a single frame with its matching channel detects constant 1") {
    const GridSpec g{128, 128, 7.5e-6};
    const double radius = 0.35e-3;
    const GratingConfig config{16};
    std::vector<SwitchFrame> frames = {
        {synthesize(vortex_mode(g, 1, radius), config), 1e-3}};
    const auto timeline =
        switching_timeline(frames, 20000.0, {VortexSpec{1, radius}});
    CHECK(timeline.size() == 20);
    for (const TimelineSample& s : timeline)
        CHECK(s.channel_power[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("switching timeline follows the frame schedule") {
    const GridSpec g{256, 256, 7.5e-6};
    const double radius = 0.7e-3;
    const GratingConfig config{16};
    const double slot = 0.25e-3;
    std::vector<SwitchFrame> frames;
    for (int ell : {5, -5, 0})
        frames.push_back({synthesize(vortex_mode(g, ell, radius), config), slot});
    const std::vector<ModeSpec> channels = {VortexSpec{5, radius}, VortexSpec{-5, radius},
                                            VortexSpec{0, radius}};
    const auto timeline = switching_timeline(frames, 80000.0, channels);
    REQUIRE(timeline.size() == 60);

    std::vector<double> slot_max(3, 0.0);
    for (const TimelineSample& s : timeline) {
        for (double p : s.channel_power) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0 + 1e-12);
        }
        const int active = std::min(2, int(s.time / slot));
        int argmax = 0;
        for (int c = 1; c < 3; ++c)
            if (s.channel_power[c] > s.channel_power[argmax])
                argmax = c;
        CHECK(argmax == active);
        slot_max[active] = std::max(slot_max[active], s.channel_power[active]);
        for (int c = 0; c < 3; ++c)
            if (c != active)
                CHECK(s.channel_power[c] < 1e-4);  // |delta ell| >= 5 leaks ~2e-5
    }
    for (double m : slot_max)
        CHECK(m == doctest::Approx(1.0));  // each channel attains 1 in its own slot

    // Traces are constant strictly inside a slot: transitions only at frame
    // boundaries (the ideal DMD model has no dynamics).
    for (std::size_t k = 1; k < timeline.size(); ++k) {
        const int a = std::min(2, int(timeline[k - 1].time / slot));
        const int b = std::min(2, int(timeline[k].time / slot));
        if (a == b)
            for (int c = 0; c < 3; ++c)
                CHECK(timeline[k].channel_power[c] ==
                      doctest::Approx(timeline[k - 1].channel_power[c]).epsilon(1e-12));
    }
}

TEST_CASE("switching timeline validates its inputs") {
    const GridSpec g{64, 64, 7.5e-6};
    const GratingConfig config{16};
    std::vector<SwitchFrame> frames = {
        {synthesize(vortex_mode(g, 0, 0.15e-3), config), 1e-3}};
    CHECK_THROWS_AS(switching_timeline({}, 1e5, {VortexSpec{0, 0.15e-3}}), DomainError);
    CHECK_THROWS_AS(switching_timeline(frames, 5000.0, {VortexSpec{0, 0.15e-3}}),
                    DomainError);  // below 10x frame rate
    CHECK_THROWS_AS(switching_timeline(frames, 1e5, {}), DomainError);
}

TEST_CASE("identity pipeline gives the identity crosstalk matrix") {
    std::vector<ModeSpec> modes;
    for (int ell = -1; ell <= 1; ++ell)
        modes.push_back(VortexSpec{ell, kRadius});
    ReconstructionPipeline pipe{GratingConfig{16},
                                default_aperture(GratingConfig{16}, kGrid.pitch), true};
    const Matrix x = crosstalk_matrix(kGrid, modes, pipe);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k)
            CHECK(std::abs(x.at(i, k) - (i == k ? 1.0 : 0.0)) < 1e-8);

    // Widening to ell in [-2,2] brings in the (-2,2) pair, whose overlap is
    // set by the square lattice's fourfold anisotropy rather than by the
    // decomposition machinery; it stays at the quadrature level.
    std::vector<ModeSpec> wide;
    for (int ell = -2; ell <= 2; ++ell)
        wide.push_back(VortexSpec{ell, kRadius});
    const Matrix xw = crosstalk_matrix(kGrid, wide, pipe);
    for (int i = 0; i < xw.rows; ++i)
        for (int k = 0; k < xw.cols; ++k)
            CHECK(std::abs(xw.at(i, k) - (i == k ? 1.0 : 0.0)) < 1e-6);
}

TEST_CASE("crosstalk matrix commutes with mode relabeling") {
    std::vector<ModeSpec> modes, reversed;
    for (int ell = -1; ell <= 1; ++ell)
        modes.push_back(VortexSpec{ell, kRadius});
    reversed.assign(modes.rbegin(), modes.rend());

    ReconstructionPipeline pipe{GratingConfig{16},
                                default_aperture(GratingConfig{16}, kGrid.pitch), false};
    const Matrix a = crosstalk_matrix(kGrid, modes, pipe);
    const Matrix b = crosstalk_matrix(kGrid, reversed, pipe);
    const int n = a.rows;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            CHECK(a.at(i, k) ==
                  doctest::Approx(b.at(n - 1 - i, n - 1 - k)).epsilon(1e-12));
}

TEST_CASE("full-pipeline crosstalk is diagonally dominant at default sampling") {
    // Regression anchors from the pipeline oracle at 608x684, 20
    // samples/period, radius 1 mm: min diagonal 0.8966, max off-diagonal
    // 1.7e-4, max row sum 0.96494.
    const GridSpec g{608, 684, 7.5e-6};
    const double radius = 1.0e-3;
    std::vector<ModeSpec> modes;
    for (int ell = -5; ell <= 5; ++ell)
        modes.push_back(VortexSpec{ell, radius});
    const GratingConfig config{20};
    ReconstructionPipeline pipe{config, default_aperture(config, g.pitch), false};
    const Matrix x = crosstalk_matrix(g, modes, pipe);
    for (int i = 0; i < x.rows; ++i) {
        double row_sum = 0.0;
        for (int k = 0; k < x.cols; ++k) {
            row_sum += x.at(i, k);
            if (i == k) {
                CHECK(x.at(i, k) > 0.85);
            } else {
                CHECK(x.at(i, k) < x.at(i, i));
                CHECK(x.at(i, k) < 1e-3);
            }
        }
        CHECK(row_sum <= 1.0 + 1e-9);
    }
    // The ell=2 reconstruction is dominated by c_2 (measured 0.956).
    CHECK(x.at(7, 7) > 0.93);
}
