#include "holo/config.hpp"

#include <fstream>
#include <sstream>

#include "holo/text.hpp"

namespace holo {

bool JobConfig::operator==(const JobConfig& o) const {
    const bool aperture_equal =
        aperture.has_value() == o.aperture.has_value() &&
        (!aperture || (aperture->center_x == o.aperture->center_x &&
                       aperture->center_y == o.aperture->center_y &&
                       aperture->radius == o.aperture->radius));
    return grid == o.grid && grating.period_samples == o.grating.period_samples &&
           aperture_equal && out_dir == o.out_dir && modes == o.modes && frames == o.frames &&
           frame_duration_s == o.frame_duration_s && sample_rate_hz == o.sample_rate_hz &&
           channels == o.channels;
}

std::string serialize_config(const JobConfig& config) {
    std::ostringstream out;
    out << "grid_nx=" << config.grid.nx << "\n";
    out << "grid_ny=" << config.grid.ny << "\n";
    out << "pitch_m=" << format_double(config.grid.pitch) << "\n";
    out << "period_samples=" << config.grating.period_samples << "\n";
    if (config.aperture)
        out << "aperture=" << format_double(config.aperture->center_x) << ","
            << format_double(config.aperture->center_y) << ","
            << format_double(config.aperture->radius) << "\n";
    else
        out << "aperture=auto\n";
    out << "out_dir=" << config.out_dir << "\n";
    for (const ModeSpec& m : config.modes)
        out << "mode=" << format_mode(m) << "\n";
    out << "frame_duration_s=" << format_double(config.frame_duration_s) << "\n";
    out << "sample_rate_hz=" << format_double(config.sample_rate_hz) << "\n";
    for (const ModeSpec& m : config.frames)
        out << "frame=" << format_mode(m) << "\n";
    for (const ModeSpec& m : config.channels)
        out << "channel=" << format_mode(m) << "\n";
    return out.str();
}

JobConfig parse_config(const std::string& text) {
    JobConfig config;
    config.modes.clear();
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config: expected key=value, got '" + line + "'");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);

        if (key == "grid_nx")
            config.grid.nx = parse_int(value);
        else if (key == "grid_ny")
            config.grid.ny = parse_int(value);
        else if (key == "pitch_m")
            config.grid.pitch = parse_double(value);
        else if (key == "period_samples")
            config.grating.period_samples = parse_int(value);
        else if (key == "aperture") {
            if (value == "auto")
                config.aperture.reset();
            else {
                const std::vector<std::string> parts = split(value, ',');
                if (parts.size() != 3)
                    throw DomainError("config: aperture needs center_x,center_y,radius");
                config.aperture = ApertureSpec{parse_double(parts[0]), parse_double(parts[1]),
                                               parse_double(parts[2])};
            }
        } else if (key == "out_dir")
            config.out_dir = value;
        else if (key == "mode")
            config.modes.push_back(parse_mode(value));
        else if (key == "frame")
            config.frames.push_back(parse_mode(value));
        else if (key == "frame_duration_s")
            config.frame_duration_s = parse_double(value);
        else if (key == "sample_rate_hz")
            config.sample_rate_hz = parse_double(value);
        else if (key == "channel")
            config.channels.push_back(parse_mode(value));
        else
            throw DomainError("config: unknown key '" + key + "'");
    }
    validate(config.grid);
    validate(config.grating);
    return config;
}

void write_config(const std::string& path, const JobConfig& config) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << serialize_config(config);
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

JobConfig read_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace holo
