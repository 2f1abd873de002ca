#include "holo/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "holo/text.hpp"

namespace holo {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    return in;
}

void put_u32_le(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int k = 0; k < 4; ++k)
        b[k] = char((v >> (8 * k)) & 0xff);
    out.write(b, 4);
}

void put_f64_le(std::ostream& out, double v) {
    const std::uint64_t u = std::bit_cast<std::uint64_t>(v);
    char b[8];
    for (int k = 0; k < 8; ++k)
        b[k] = char((u >> (8 * k)) & 0xff);
    out.write(b, 8);
}

std::uint32_t get_u32_le(std::istream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw IoError("'" + path + "': truncated file");
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
           std::uint32_t(b[3]) << 24;
}

double get_f64_le(std::istream& in, const std::string& path) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8))
        throw IoError("'" + path + "': truncated file");
    std::uint64_t u = 0;
    for (int k = 7; k >= 0; --k)
        u = (u << 8) | b[k];
    return std::bit_cast<double>(u);
}

}  // namespace

void write_cf64(const std::string& path, const ComplexField& field) {
    validate(field.grid);
    std::ofstream out = open_out(path);
    out.write("CF64", 4);
    put_u32_le(out, std::uint32_t(field.grid.nx));
    put_u32_le(out, std::uint32_t(field.grid.ny));
    put_f64_le(out, field.grid.pitch);
    for (const Complex& v : field.values) {
        put_f64_le(out, v.real());
        put_f64_le(out, v.imag());
    }
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

ComplexField read_cf64(const std::string& path) {
    std::ifstream in = open_in(path);
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "CF64", 4) != 0)
        throw IoError("'" + path + "': not a CF64 file");
    GridSpec grid;
    grid.nx = int(get_u32_le(in, path));
    grid.ny = int(get_u32_le(in, path));
    grid.pitch = get_f64_le(in, path);
    validate(grid);
    ComplexField field(grid);
    for (Complex& v : field.values) {
        const double re = get_f64_le(in, path);
        const double im = get_f64_le(in, path);
        v = Complex(re, im);
    }
    in.peek();
    if (!in.eof())
        throw IoError("'" + path + "': trailing bytes after CF64 payload");
    return field;
}

namespace {

// Reads one PNM header token, skipping whitespace and '#' comments.
std::string pnm_token(std::istream& in, const std::string& path) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c))
            continue;
        break;
    }
    if (c == EOF)
        throw IoError("'" + path + "': truncated PNM header");
    do {
        tok.push_back(char(c));
        c = in.get();
    } while (c != EOF && !std::isspace(c));
    return tok;
}

}  // namespace

void write_pbm_p4(const std::string& path, const GridSpec& grid,
                  const std::vector<std::uint8_t>& bits) {
    validate(grid);
    if (bits.size() != grid.samples())
        throw DomainError("hologram bit array does not match its grid");
    std::ofstream out = open_out(path);
    out << "P4\n" << grid.nx << " " << grid.ny << "\n";
    const int row_bytes = (grid.nx + 7) / 8;
    std::vector<char> row(row_bytes);
    for (int j = 0; j < grid.ny; ++j) {
        std::fill(row.begin(), row.end(), 0);
        for (int i = 0; i < grid.nx; ++i)
            if (bits[std::size_t(j) * grid.nx + i])
                row[i / 8] |= char(0x80 >> (i % 8));
        out.write(row.data(), row_bytes);
    }
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

void write_pgm_p5_bits(const std::string& path, const GridSpec& grid,
                       const std::vector<std::uint8_t>& bits) {
    validate(grid);
    if (bits.size() != grid.samples())
        throw DomainError("hologram bit array does not match its grid");
    std::ofstream out = open_out(path);
    out << "P5\n" << grid.nx << " " << grid.ny << "\n255\n";
    std::vector<char> row(grid.nx);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i)
            row[i] = bits[std::size_t(j) * grid.nx + i] ? char(255) : char(0);
        out.write(row.data(), grid.nx);
    }
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

namespace {

std::vector<std::uint8_t> read_pnm_bits(const std::string& path, int& nx, int& ny) {
    std::ifstream in = open_in(path);
    const std::string magic = pnm_token(in, path);
    if (magic != "P4" && magic != "P5")
        throw IoError("'" + path + "': expected a P4 or P5 image");
    nx = parse_int(pnm_token(in, path));
    ny = parse_int(pnm_token(in, path));
    if (nx < 1 || ny < 1)
        throw IoError("'" + path + "': bad image dimensions");

    std::vector<std::uint8_t> bits(std::size_t(nx) * ny);
    if (magic == "P4") {
        // The single whitespace after the header was consumed by pnm_token's
        // trailing read; raster starts here.
        const int row_bytes = (nx + 7) / 8;
        std::vector<unsigned char> row(row_bytes);
        for (int j = 0; j < ny; ++j) {
            if (!in.read(reinterpret_cast<char*>(row.data()), row_bytes))
                throw IoError("'" + path + "': truncated raster");
            for (int i = 0; i < nx; ++i)
                bits[std::size_t(j) * nx + i] = (row[i / 8] >> (7 - i % 8)) & 1;
        }
    } else {
        const int maxval = parse_int(pnm_token(in, path));
        if (maxval != 255)
            throw IoError("'" + path + "': expected maxval 255");
        std::vector<unsigned char> row(nx);
        for (int j = 0; j < ny; ++j) {
            if (!in.read(reinterpret_cast<char*>(row.data()), nx))
                throw IoError("'" + path + "': truncated raster");
            for (int i = 0; i < nx; ++i) {
                if (row[i] != 0 && row[i] != 255)
                    throw IoError("'" + path + "': pixel value is neither 0 nor 255");
                bits[std::size_t(j) * nx + i] = row[i] ? 1 : 0;
            }
        }
    }
    in.peek();
    if (!in.eof())
        throw IoError("'" + path + "': trailing bytes after raster");
    return bits;
}

}  // namespace

void write_hologram(const std::string& path, const BinaryHologram& holo, bool packed) {
    if (packed)
        write_pbm_p4(path, holo.grid, holo.bits);
    else
        write_pgm_p5_bits(path, holo.grid, holo.bits);
    std::ofstream side = open_out(path + ".txt");
    side << "period_samples=" << holo.config.period_samples << "\n"
         << "pitch_m=" << format_double(holo.grid.pitch) << "\n";
    if (!side)
        throw IoError("failed writing '" + path + ".txt'");
}

BinaryHologram read_hologram(const std::string& path) {
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> bits = read_pnm_bits(path, nx, ny);

    std::ifstream side = open_in(path + ".txt");
    int period = 0;
    double pitch = 0.0;
    std::string line;
    while (std::getline(side, line)) {
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError("'" + path + ".txt': expected key=value lines");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "period_samples")
            period = parse_int(value);
        else if (key == "pitch_m")
            pitch = parse_double(value);
        else
            throw IoError("'" + path + ".txt': unknown key '" + key + "'");
    }
    if (period == 0 || pitch == 0.0)
        throw IoError("'" + path + ".txt': missing period_samples or pitch_m");

    BinaryHologram holo{GridSpec{nx, ny, pitch}, std::move(bits), GratingConfig{period}};
    validate(holo.grid);
    validate(holo.config);
    return holo;
}

void write_intensity_pgm(const std::string& path, const RealImage& image) {
    validate(image.grid);
    double peak = 0.0;
    for (double v : image.values)
        peak = std::max(peak, v);
    std::ofstream out = open_out(path);
    out << "P5\n" << image.grid.nx << " " << image.grid.ny << "\n255\n";
    std::vector<char> row(image.grid.nx);
    for (int j = 0; j < image.grid.ny; ++j) {
        for (int i = 0; i < image.grid.nx; ++i) {
            const double v = peak > 0.0 ? image.at(i, j) / peak : 0.0;
            row[i] = char(std::lround(v * 255.0));
        }
        out.write(row.data(), image.grid.nx);
    }
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

namespace {

std::string csv_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

double parse_csv_value(const std::string& s) { return parse_double(s); }

}  // namespace

void write_matrix_csv(const std::string& path, const Matrix& m, const std::string& corner,
                      const std::vector<std::string>& row_labels,
                      const std::vector<std::string>& col_labels) {
    if (int(row_labels.size()) != m.rows || int(col_labels.size()) != m.cols)
        throw DomainError("matrix CSV: label counts do not match the matrix");
    std::ofstream out = open_out(path);
    out << corner;
    for (const std::string& label : col_labels)
        out << "," << label;
    out << "\n";
    for (int r = 0; r < m.rows; ++r) {
        out << row_labels[r];
        for (int c = 0; c < m.cols; ++c)
            out << "," << csv_value(m.at(r, c));
        out << "\n";
    }
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

MatrixCsv read_matrix_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line))
        throw IoError("'" + path + "': empty CSV");
    std::vector<std::string> header = split(line, ',');
    MatrixCsv out;
    out.corner = header.front();
    out.col_labels.assign(header.begin() + 1, header.end());

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const std::vector<std::string> cells = split(line, ',');
        if (cells.size() != header.size())
            throw IoError("'" + path + "': ragged CSV row");
        out.row_labels.push_back(cells.front());
        std::vector<double> row;
        for (std::size_t c = 1; c < cells.size(); ++c)
            row.push_back(parse_csv_value(cells[c]));
        rows.push_back(std::move(row));
    }
    out.matrix = Matrix(int(rows.size()), int(out.col_labels.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            out.matrix.at(int(r), int(c)) = rows[r][c];
    return out;
}

void write_timeline_csv(const std::string& path, const std::vector<TimelineSample>& timeline,
                        const std::vector<std::string>& channel_labels) {
    std::ofstream out = open_out(path);
    out << "time_s";
    for (const std::string& label : channel_labels)
        out << "," << label;
    out << "\n";
    for (const TimelineSample& sample : timeline) {
        if (sample.channel_power.size() != channel_labels.size())
            throw DomainError("timeline CSV: sample width does not match the labels");
        out << csv_value(sample.time);
        for (double p : sample.channel_power)
            out << "," << csv_value(p);
        out << "\n";
    }
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

TimelineCsv read_timeline_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line))
        throw IoError("'" + path + "': empty CSV");
    std::vector<std::string> header = split(line, ',');
    if (header.empty() || header.front() != "time_s")
        throw IoError("'" + path + "': expected a time_s column");
    TimelineCsv out;
    out.channel_labels.assign(header.begin() + 1, header.end());
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const std::vector<std::string> cells = split(line, ',');
        if (cells.size() != header.size())
            throw IoError("'" + path + "': ragged CSV row");
        TimelineSample sample;
        sample.time = parse_csv_value(cells.front());
        for (std::size_t c = 1; c < cells.size(); ++c)
            sample.channel_power.push_back(parse_csv_value(cells[c]));
        out.samples.push_back(std::move(sample));
    }
    return out;
}

}  // namespace holo
