#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holo/field.hpp"
#include "holo/hologram.hpp"
#include "holo/modes.hpp"
#include "holo/propagate.hpp"

namespace holo {

// Everything a CLI run needs, with the device defaults baked in (608 x 684
// mirrors of 7.5 um, 20 samples per carrier period). Serialized as
// line-oriented key=value text; '#' starts a comment. All operations are
// deterministic, so there is no seed.
struct JobConfig {
    GridSpec grid{608, 684, 7.5e-6};
    GratingConfig grating{20};
    std::optional<ApertureSpec> aperture;  // nullopt = derive from the grating
    std::string out_dir = ".";
    std::vector<ModeSpec> modes;

    // Frame-sequenced switching runs.
    std::vector<ModeSpec> frames;
    double frame_duration_s = 0.00025;  // 4 kHz switching
    double sample_rate_hz = 80000.0;
    std::vector<ModeSpec> channels;  // empty = detect the frame modes

    ApertureSpec resolved_aperture() const {
        return aperture ? *aperture : default_aperture(grating, grid.pitch);
    }

    bool operator==(const JobConfig& o) const;
};

std::string serialize_config(const JobConfig& config);
JobConfig parse_config(const std::string& text);

void write_config(const std::string& path, const JobConfig& config);
JobConfig read_config(const std::string& path);

}  // namespace holo
