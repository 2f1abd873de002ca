#pragma once

#include <string>
#include <vector>

#include "holo/analysis.hpp"
#include "holo/field.hpp"
#include "holo/hologram.hpp"

namespace holo {

// CF64 container: magic "CF64", little-endian u32 nx, u32 ny, f64
// pitch_meters, then ny*nx (f64 real, f64 imag) records, row-major with y as
// the outer loop. No padding anywhere.
void write_cf64(const std::string& path, const ComplexField& field);
ComplexField read_cf64(const std::string& path);

// Binary PBM ("P4", packed 1-bit, MSB first within a byte, rows padded to
// whole bytes) and plain PGM ("P5", maxval 255, bits stored as 0/255).
// Writers emit a canonical header so write/read/write is byte-identical;
// readers also accept PNM comment lines.
void write_pbm_p4(const std::string& path, const GridSpec& grid,
                  const std::vector<std::uint8_t>& bits);
void write_pgm_p5_bits(const std::string& path, const GridSpec& grid,
                       const std::vector<std::uint8_t>& bits);

// A hologram image travels with a sidecar "<image path>.txt" of key=value
// lines (period_samples, pitch_m) that restore the non-image state.
void write_hologram(const std::string& path, const BinaryHologram& holo, bool packed = true);
BinaryHologram read_hologram(const std::string& path);

// 8-bit intensity view: values linearly mapped to 0..255 with
// max-normalization per image.
void write_intensity_pgm(const std::string& path, const RealImage& image);

// Matrix CSV: corner label + column labels on the header row, one labeled
// data row per matrix row. Values are %.16e so every double survives the
// text round trip with a fixed width.
void write_matrix_csv(const std::string& path, const Matrix& m, const std::string& corner,
                      const std::vector<std::string>& row_labels,
                      const std::vector<std::string>& col_labels);

struct MatrixCsv {
    std::string corner;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    Matrix matrix;
};
MatrixCsv read_matrix_csv(const std::string& path);

// Timeline CSV: header "time_s,<channel>,...", one row per sample.
void write_timeline_csv(const std::string& path, const std::vector<TimelineSample>& timeline,
                        const std::vector<std::string>& channel_labels);

struct TimelineCsv {
    std::vector<std::string> channel_labels;
    std::vector<TimelineSample> samples;
};
TimelineCsv read_timeline_csv(const std::string& path);

}  // namespace holo
