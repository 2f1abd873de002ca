// dmdholo: generate structured-light modes, encode them as binary amplitude
// holograms for a DMD, and verify them by simulated first-order diffraction.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "holo/analysis.hpp"
#include "holo/config.hpp"
#include "holo/io.hpp"
#include "holo/text.hpp"

namespace fs = std::filesystem;
using namespace holo;

namespace {

struct GlobalArgs {
    std::vector<std::string> grid;  // NX NY PITCH_M
    int period = 0;
    std::string out_dir;
    std::string config_path;
};

// Configuration file first, explicit flags on top.
JobConfig resolve_config(const GlobalArgs& args) {
    JobConfig config;
    if (!args.config_path.empty())
        config = read_config(args.config_path);
    if (!args.grid.empty()) {
        config.grid.nx = parse_int(args.grid[0]);
        config.grid.ny = parse_int(args.grid[1]);
        config.grid.pitch = parse_double(args.grid[2]);
    }
    if (args.period > 0)
        config.grating.period_samples = args.period;
    if (!args.out_dir.empty())
        config.out_dir = args.out_dir;
    validate(config.grid);
    validate(config.grating);
    return config;
}

std::string ensure_out_dir(const JobConfig& config) {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + config.out_dir + "'");
    return config.out_dir;
}

struct ModeFlags {
    std::optional<int> vortex_ell;
    std::vector<int> lg;   // p ell
    std::vector<int> ang;  // j n
    double radius = 0.0;
    double waist = 0.0;
    double base_vortex_radius = 0.0;
    int base_lg_p = -1;
    double base_lg_waist = 0.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--vortex", vortex_ell, "vortex mode: winding number ell");
        cmd->add_option("--lg", lg, "LG mode: radial index p and ell")->expected(2);
        cmd->add_option("--ang", ang, "ANG mode: index j and n_ell")->expected(2);
        cmd->add_option("--radius", radius, "vortex aperture radius [m]");
        cmd->add_option("--waist", waist, "LG waist [m]");
        cmd->add_option("--base-vortex-radius", base_vortex_radius,
                        "ANG base: top-hat vortex of this radius [m]");
        cmd->add_option("--base-lg-p", base_lg_p, "ANG base: LG radial index");
        cmd->add_option("--base-lg-waist", base_lg_waist, "ANG base: LG waist [m]");
    }

    std::variant<VortexSpec, LgSpec> base() const {
        if (base_vortex_radius > 0.0)
            return VortexSpec{0, base_vortex_radius};
        if (base_lg_p >= 0 || base_lg_waist > 0.0) {
            if (base_lg_p < 0 || !(base_lg_waist > 0.0))
                throw DomainError("ANG LG base needs both --base-lg-p and --base-lg-waist");
            return LgSpec{base_lg_p, 0, base_lg_waist};
        }
        throw DomainError("ANG mode needs --base-vortex-radius or --base-lg-p/--base-lg-waist");
    }

    ModeSpec spec() const {
        const int kinds = int(vortex_ell.has_value()) + int(!lg.empty()) + int(!ang.empty());
        if (kinds != 1)
            throw DomainError("specify exactly one of --vortex, --lg, --ang");
        if (vortex_ell) {
            if (!(radius > 0.0))
                throw DomainError("vortex mode needs --radius");
            return VortexSpec{*vortex_ell, radius};
        }
        if (!lg.empty()) {
            if (!(waist > 0.0))
                throw DomainError("LG mode needs --waist");
            return LgSpec{lg[0], lg[1], waist};
        }
        return AngSpec{ang[0], ang[1], base()};
    }

    bool any() const { return vortex_ell || !lg.empty() || !ang.empty(); }
};

ApertureSpec parse_aperture(const std::string& text, const JobConfig& config) {
    if (text.empty() || text == "auto")
        return config.resolved_aperture();
    const std::vector<std::string> parts = split(text, ',');
    if (parts.size() != 3)
        throw DomainError("--aperture takes 'auto' or CENTER_X,CENTER_Y,RADIUS in cycles/m");
    return ApertureSpec{parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

int cmd_mode(const JobConfig& config, const ModeFlags& flags, std::string name) {
    const ModeSpec spec = flags.spec();
    const ComplexField field = make_mode(config.grid, spec);
    const std::string dir = ensure_out_dir(config);
    if (name.empty())
        name = mode_label(spec);
    const std::string cf_path = dir + "/" + name + ".cf64";
    const std::string pgm_path = dir + "/" + name + "_intensity.pgm";
    write_cf64(cf_path, field);
    write_intensity_pgm(pgm_path, intensity(field));
    std::cout << cf_path << "\n" << pgm_path << "\n";
    return 0;
}

int cmd_holo(const JobConfig& config, const ModeFlags& flags, const std::string& field_path,
             bool plain, std::string name) {
    ComplexField field;
    if (!field_path.empty()) {
        field = read_cf64(field_path);
        if (name.empty())
            name = stem_of(field_path);
    } else if (flags.any()) {
        const ModeSpec spec = flags.spec();
        field = make_mode(config.grid, spec);
        if (name.empty())
            name = mode_label(spec);
    } else {
        throw DomainError("holo needs --field FILE or an inline mode spec");
    }
    // An identically dark field trivially maps to an all-off panel; only
    // nonzero fields go through the peak-normalization contract.
    const BinaryHologram holo =
        max_abs(field) == 0.0
            ? BinaryHologram{field.grid,
                             std::vector<std::uint8_t>(field.grid.samples(), 0), config.grating}
            : synthesize(field, config.grating);
    const std::string dir = ensure_out_dir(config);
    const std::string path = dir + "/" + name + "_holo." + (plain ? "pgm" : "pbm");
    write_hologram(path, holo, !plain);
    std::cout << path << "\n" << path << ".txt\n";
    return 0;
}

int cmd_simulate(const JobConfig& config, const std::string& holo_path,
                 const std::string& aperture_text, const std::string& target_path,
                 std::string name) {
    const BinaryHologram holo = read_hologram(holo_path);
    JobConfig effective = config;
    effective.grating = holo.config;
    effective.grid = holo.grid;
    const ApertureSpec aperture = parse_aperture(aperture_text, effective);

    const ComplexField recon = simulate_reconstruction(holo, aperture);
    const double efficiency = diffraction_efficiency(holo, aperture);

    const std::string dir = ensure_out_dir(config);
    if (name.empty())
        name = stem_of(holo_path);
    const std::string cf_path = dir + "/" + name + "_recon.cf64";
    write_cf64(cf_path, recon);

    std::string metrics = "efficiency=" + format_double(efficiency) + "\n";
    if (!target_path.empty()) {
        const ComplexField target = read_cf64(target_path);
        metrics += "fidelity=" + format_double(fidelity(recon, target)) + "\n";
    }
    const std::string metrics_path = dir + "/" + name + "_metrics.txt";
    std::ofstream out(metrics_path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + metrics_path + "' for writing");
    out << metrics;
    std::cout << cf_path << "\n" << metrics_path << "\n" << metrics;
    return 0;
}

int cmd_interfere(const JobConfig& config, const std::string& field_path,
                  const std::vector<double>& tilt, double ref_amplitude, std::string name) {
    const ComplexField field = read_cf64(field_path);
    const RealImage image = interferogram(field, tilt[0], tilt[1], ref_amplitude);
    const std::string dir = ensure_out_dir(config);
    if (name.empty())
        name = stem_of(field_path);
    const std::string path = dir + "/" + name + "_interferogram.pgm";
    write_intensity_pgm(path, image);
    std::cout << path << "\n";
    return 0;
}

int cmd_sequence(const JobConfig& config) {
    if (config.frames.empty())
        throw DomainError("sequence needs at least one frame= entry in the config");
    std::vector<SwitchFrame> frames;
    frames.reserve(config.frames.size());
    for (const ModeSpec& spec : config.frames)
        frames.push_back(
            {synthesize(make_mode(config.grid, spec), config.grating), config.frame_duration_s});

    const std::vector<ModeSpec>& channels =
        config.channels.empty() ? config.frames : config.channels;
    const std::vector<TimelineSample> timeline =
        switching_timeline(frames, config.sample_rate_hz, channels);

    std::vector<std::string> labels;
    labels.reserve(channels.size());
    for (const ModeSpec& spec : channels)
        labels.push_back(mode_label(spec));

    const std::string dir = ensure_out_dir(config);
    const std::string path = dir + "/timeline.csv";
    write_timeline_csv(path, timeline, labels);
    std::cout << path << "\n";
    return 0;
}

int cmd_report(const JobConfig& config, const ModeFlags& flags, int mub_n, bool crosstalk,
               const std::vector<int>& vortex_range) {
    const std::string dir = ensure_out_dir(config);
    bool wrote = false;

    if (mub_n > 0) {
        const Matrix m = mub_matrix(config.grid, mub_n, flags.base());
        std::vector<std::string> rows, cols;
        for (int ell = -mub_n; ell <= mub_n; ++ell)
            rows.push_back("oam_ell" + std::string(ell < 0 ? "" : "+") + std::to_string(ell));
        for (int j = 0; j <= 2 * mub_n; ++j)
            cols.push_back("ang_j" + std::to_string(j));
        const std::string path = dir + "/mub_n" + std::to_string(mub_n) + ".csv";
        write_matrix_csv(path, m, "mode", rows, cols);
        std::cout << path << "\n";
        wrote = true;
    }

    if (crosstalk) {
        if (vortex_range.size() != 2 || vortex_range[0] > vortex_range[1])
            throw DomainError("--crosstalk needs --vortex-range MIN MAX with MIN <= MAX");
        if (!(flags.radius > 0.0))
            throw DomainError("--crosstalk needs --radius for the vortex modes");
        std::vector<ModeSpec> modes;
        for (int ell = vortex_range[0]; ell <= vortex_range[1]; ++ell)
            modes.push_back(VortexSpec{ell, flags.radius});
        ReconstructionPipeline pipeline{config.grating, config.resolved_aperture(), false};
        const Matrix x = crosstalk_matrix(config.grid, modes, pipeline);
        std::vector<std::string> labels;
        for (const ModeSpec& spec : modes)
            labels.push_back(mode_label(spec));
        const std::string path = dir + "/crosstalk.csv";
        write_matrix_csv(path, x, "mode", labels, labels);
        std::cout << path << "\n";
        wrote = true;
    }

    if (!wrote)
        throw DomainError("report needs --mub N and/or --crosstalk");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary amplitude holograms for structured light on a DMD"};
    app.require_subcommand(1);

    GlobalArgs globals;
    app.add_option("--grid", globals.grid, "grid: NX NY PITCH_M")->expected(3);
    app.add_option("--period", globals.period, "carrier period in mirrors (default 20)");
    app.add_option("--out", globals.out_dir, "output directory");
    app.add_option("--config", globals.config_path, "job configuration file");

    std::string name, field_path, holo_path, target_path, aperture_text;
    bool plain = false;
    std::vector<double> tilt;
    double ref_amplitude = 1.0;
    int mub_n = 0;
    bool crosstalk = false;
    std::vector<int> vortex_range;

    CLI::App* mode = app.add_subcommand("mode", "generate a mode field (CF64 + intensity PGM)");
    mode->fallthrough();
    ModeFlags mode_flags;
    mode_flags.add_to(mode);
    mode->add_option("--name", name, "output base name");

    CLI::App* holo = app.add_subcommand("holo", "synthesize a binary hologram (PBM + sidecar)");
    holo->fallthrough();
    ModeFlags holo_flags;
    holo_flags.add_to(holo);
    holo->add_option("--field", field_path, "input CF64 field");
    holo->add_flag("--plain", plain, "write plain P5 instead of packed P4");
    holo->add_option("--name", name, "output base name");

    CLI::App* simulate =
        app.add_subcommand("simulate", "reconstruct the first order (CF64 + metrics)");
    simulate->fallthrough();
    simulate->add_option("--holo", holo_path, "hologram image (with sidecar)")->required();
    simulate->add_option("--aperture", aperture_text, "'auto' or CX,CY,R in cycles/m");
    simulate->add_option("--target", target_path, "CF64 target for fidelity");
    simulate->add_option("--name", name, "output base name");

    CLI::App* interfere =
        app.add_subcommand("interfere", "plane-wave interferogram of a field (PGM)");
    interfere->fallthrough();
    interfere->add_option("--field", field_path, "input CF64 field")->required();
    interfere->add_option("--tilt", tilt, "reference tilt NUX NUY in cycles/m")
        ->expected(2)
        ->required();
    interfere->add_option("--ref-amplitude", ref_amplitude, "reference amplitude (default 1)");
    interfere->add_option("--name", name, "output base name");

    CLI::App* sequence =
        app.add_subcommand("sequence", "frame-switching timeline from a config (CSV)");
    sequence->fallthrough();

    CLI::App* report = app.add_subcommand("report", "MUB and crosstalk matrices (CSV)");
    report->fallthrough();
    ModeFlags report_flags;
    report_flags.add_to(report);
    report->add_option("--mub", mub_n, "MUB matrix for n_ell = N");
    report->add_flag("--crosstalk", crosstalk, "vortex crosstalk matrix");
    report->add_option("--vortex-range", vortex_range, "crosstalk ell range MIN MAX")->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // bad usage is a validation failure
    }

    try {
        const JobConfig config = resolve_config(globals);
        if (app.got_subcommand(mode))
            return cmd_mode(config, mode_flags, name);
        if (app.got_subcommand(holo))
            return cmd_holo(config, holo_flags, field_path, plain, name);
        if (app.got_subcommand(simulate))
            return cmd_simulate(config, holo_path, aperture_text, target_path, name);
        if (app.got_subcommand(interfere))
            return cmd_interfere(config, field_path, tilt, ref_amplitude, name);
        if (app.got_subcommand(sequence))
            return cmd_sequence(config);
        if (app.got_subcommand(report))
            return cmd_report(config, report_flags, mub_n, crosstalk, vortex_range);
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
