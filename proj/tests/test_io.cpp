#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "holo/config.hpp"
#include "holo/io.hpp"
#include "holo/modes.hpp"
#include "test_support.hpp"

using namespace holo;
namespace fs = std::filesystem;

namespace {

std::string scratch_path(const std::string& name) {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "holo_io_tests";
        fs::create_directories(p);
        return p;
    }();
    return (dir / name).string();
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ComplexField random_field(int nx, int ny, double pitch, std::uint64_t seed) {
    test::Lcg rng(seed);
    ComplexField f(GridSpec{nx, ny, pitch});
    for (Complex& v : f.values)
        v = Complex(rng.uniform() * 2 - 1, rng.uniform() * 2 - 1);
    return f;
}

}  // namespace

TEST_CASE("cf64 round-trips bit-exactly") {
    const ComplexField f = random_field(17, 9, 7.5e-6, 42);
    const std::string path = scratch_path("field.cf64");
    write_cf64(path, f);
    const ComplexField back = read_cf64(path);
    CHECK(back.grid == f.grid);
    CHECK(back.values == f.values);

    const std::string again = scratch_path("field2.cf64");
    write_cf64(again, back);
    CHECK(read_bytes(path) == read_bytes(again));
}

TEST_CASE("cf64 rejects foreign and truncated files") {
    const std::string bad = scratch_path("bad.cf64");
    std::ofstream(bad, std::ios::binary) << "not a field";
    CHECK_THROWS_AS(read_cf64(bad), IoError);

    const ComplexField f = random_field(8, 8, 1e-5, 1);
    const std::string path = scratch_path("trunc.cf64");
    write_cf64(path, f);
    std::string bytes = read_bytes(path);
    std::ofstream(path, std::ios::binary) << bytes.substr(0, bytes.size() - 5);
    CHECK_THROWS_AS(read_cf64(path), IoError);

    CHECK_THROWS_AS(read_cf64(scratch_path("missing.cf64")), IoError);
}

TEST_CASE("hologram images round-trip with their sidecars") {
    test::Lcg rng(9);
    const GridSpec g{37, 21, 7.5e-6};  // width deliberately not a byte multiple
    BinaryHologram h{g, std::vector<std::uint8_t>(g.samples(), 0), GratingConfig{20}};
    for (auto& b : h.bits)
        b = std::uint8_t(rng.next() & 1);

    for (bool packed : {true, false}) {
        const std::string path = scratch_path(packed ? "holo.pbm" : "holo.pgm");
        write_hologram(path, h, packed);
        const BinaryHologram back = read_hologram(path);
        CHECK(back.grid == h.grid);
        CHECK(back.config.period_samples == h.config.period_samples);
        CHECK(back.bits == h.bits);

        const std::string again = scratch_path(packed ? "holo2.pbm" : "holo2.pgm");
        write_hologram(again, back, packed);
        CHECK(read_bytes(path) == read_bytes(again));
        CHECK(read_bytes(path + ".txt") == read_bytes(again + ".txt"));
    }
}

TEST_CASE("p5 reader insists on binary pixel values") {
    const std::string path = scratch_path("gray.pgm");
    std::ofstream out(path, std::ios::binary);
    out << "P5\n2 1\n255\n";
    out.put(char(255));
    out.put(char(128));
    out.close();
    std::ofstream(path + ".txt") << "period_samples=20\npitch_m=7.5e-06\n";
    CHECK_THROWS_AS(read_hologram(path), IoError);
}

TEST_CASE("pnm reader accepts comment lines") {
    const std::string path = scratch_path("comment.pbm");
    {
        std::ofstream out(path, std::ios::binary);
        out << "P4\n# a comment\n8 2\n";
        out.put(char(0xA5));
        out.put(char(0x5A));
    }
    std::ofstream(path + ".txt") << "period_samples=4\npitch_m=1e-05\n";
    const BinaryHologram h = read_hologram(path);
    CHECK(h.grid.nx == 8);
    CHECK(h.grid.ny == 2);
    CHECK(h.at(0, 0) == 1);
    CHECK(h.at(1, 0) == 0);
    CHECK(h.at(0, 1) == 0);
    CHECK(h.at(1, 1) == 1);
}

TEST_CASE("intensity pgm maps the maximum to 255") {
    RealImage img(GridSpec{4, 2, 1e-5});
    img.values = {0.0, 1.0, 2.0, 4.0, 0.5, 3.0, 0.25, 2.5};
    const std::string path = scratch_path("intensity.pgm");
    write_intensity_pgm(path, img);
    const std::string bytes = read_bytes(path);
    const std::string header = "P5\n4 2\n255\n";
    REQUIRE(bytes.size() == header.size() + 8);
    CHECK(bytes.substr(0, header.size()) == header);
    CHECK(std::uint8_t(bytes[header.size() + 3]) == 255);  // the 4.0 sample
    CHECK(std::uint8_t(bytes[header.size() + 0]) == 0);
}

TEST_CASE("matrix csv round-trips values, labels, and bytes") {
    test::Lcg rng(77);
    Matrix m(3, 4);
    for (double& v : m.data)
        v = rng.uniform() * 2e3 - 1e3;
    m.at(2, 1) = 0.5;  // an exactly representable value
    const std::vector<std::string> rows = {"vortex_ell-1", "vortex_ell+0", "vortex_ell+1"};
    const std::vector<std::string> cols = {"a", "b", "c", "d"};

    const std::string path = scratch_path("matrix.csv");
    write_matrix_csv(path, m, "mode", rows, cols);
    const MatrixCsv back = read_matrix_csv(path);
    CHECK(back.corner == "mode");
    CHECK(back.row_labels == rows);
    CHECK(back.col_labels == cols);
    REQUIRE(back.matrix.rows == 3);
    REQUIRE(back.matrix.cols == 4);
    CHECK(back.matrix.data == m.data);

    const std::string again = scratch_path("matrix2.csv");
    write_matrix_csv(again, back.matrix, back.corner, back.row_labels, back.col_labels);
    CHECK(read_bytes(path) == read_bytes(again));
}

TEST_CASE("timeline csv round-trips") {
    std::vector<TimelineSample> timeline;
    test::Lcg rng(5);
    for (int n = 0; n < 7; ++n) {
        TimelineSample s;
        s.time = n * 1.25e-5;
        for (int c = 0; c < 3; ++c)
            s.channel_power.push_back(rng.uniform());
        timeline.push_back(s);
    }
    const std::vector<std::string> labels = {"vortex_ell+5", "vortex_ell-5", "vortex_ell+0"};
    const std::string path = scratch_path("timeline.csv");
    write_timeline_csv(path, timeline, labels);

    const TimelineCsv back = read_timeline_csv(path);
    CHECK(back.channel_labels == labels);
    REQUIRE(back.samples.size() == timeline.size());
    for (std::size_t n = 0; n < timeline.size(); ++n) {
        CHECK(back.samples[n].time == timeline[n].time);
        CHECK(back.samples[n].channel_power == timeline[n].channel_power);
    }

    const std::string again = scratch_path("timeline2.csv");
    write_timeline_csv(again, back.samples, back.channel_labels);
    CHECK(read_bytes(path) == read_bytes(again));
}

TEST_CASE("job config round-trips losslessly") {
    JobConfig config;
    config.grid = GridSpec{512, 512, 7.4999999999e-6};
    config.grating.period_samples = 16;
    config.aperture = ApertureSpec{6666.6666666666, 0.0, 3333.3333333333};
    config.out_dir = "results/run_1";
    config.modes = {VortexSpec{2, 1e-3}, LgSpec{1, -2, 0.4e-3},
                    AngSpec{1, 2, VortexSpec{0, 1e-3}}};
    config.frames = {VortexSpec{5, 1e-3}, VortexSpec{-5, 1e-3}, VortexSpec{0, 1e-3}};
    config.frame_duration_s = 0.00025;
    config.sample_rate_hz = 80000.0;
    config.channels = config.frames;

    const std::string text = serialize_config(config);
    const JobConfig back = parse_config(text);
    CHECK(back == config);
    CHECK(serialize_config(back) == text);

    const std::string path = scratch_path("job.cfg");
    write_config(path, config);
    CHECK(read_config(path) == config);
}

TEST_CASE("config parser accepts comments and validates keys") {
    const JobConfig c = parse_config(
        "# comment\n"
        "grid_nx=128\n"
        "grid_ny=64\n"
        "\n"
        "pitch_m=1e-05\n"
        "aperture=auto\n");
    CHECK(c.grid.nx == 128);
    CHECK(c.grid.ny == 64);
    CHECK(!c.aperture.has_value());
    CHECK(c.grating.period_samples == 20);  // default

    CHECK_THROWS_AS(parse_config("bogus_key=1\n"), DomainError);
    CHECK_THROWS_AS(parse_config("grid_nx=not_a_number\n"), DomainError);
    CHECK_THROWS_AS(parse_config("no equals sign\n"), DomainError);
    CHECK_THROWS_AS(parse_config("aperture=1,2\n"), DomainError);
    CHECK_THROWS_AS(read_config(scratch_path("missing.cfg")), IoError);
}

TEST_CASE("default config matches the device") {
    const JobConfig c;
    CHECK(c.grid.nx == 608);
    CHECK(c.grid.ny == 684);
    CHECK(c.grid.pitch == 7.5e-6);
    CHECK(c.grating.period_samples == 20);
    const ApertureSpec ap = c.resolved_aperture();
    CHECK(ap.center_x == doctest::Approx(1.0 / (20 * 7.5e-6)));
    CHECK(ap.center_y == 0.0);
    CHECK(ap.radius == doctest::Approx(1.0 / (40 * 7.5e-6)));
}
