#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fusion/matrix.hpp"
#include "fusion/model.hpp"

namespace fusion::io {

// Fusion frame document (JSON):
//   {"ambient_dim": M, "subspaces": [{"weight": v, "basis": [[col 1], [col 2], ...]}, ...]}
// Spectrum document (JSON):
//   {"lambdas": [...], "num_subspaces": N, "subspace_dim": m}
// Matrices and vectors are CSV: comma-separated entries, one row per line.
// Every number is written with 17 significant digits.

FusionFrame parse_fusion_frame(std::string_view text);
std::string format_fusion_frame(const FusionFrame& ff);

SpectrumSpec parse_spectrum(std::string_view text);
std::string format_spectrum(const SpectrumSpec& spec);

Matrix parse_matrix_csv(std::string_view text);
std::string format_matrix_csv(const Matrix& m);

/// Accepts a single row or a single column.
Vector parse_vector_csv(std::string_view text);
std::string format_vector_csv(const Vector& v);

std::string format_report_text(const VerificationReport& report);
std::string format_report_json(const VerificationReport& report);

/// %.17g
std::string format_number(double x);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

inline FusionFrame load_fusion_frame(const std::filesystem::path& p) { return parse_fusion_frame(read_file(p)); }
inline void save_fusion_frame(const std::filesystem::path& p, const FusionFrame& ff) {
    write_file(p, format_fusion_frame(ff));
}
inline SpectrumSpec load_spectrum(const std::filesystem::path& p) { return parse_spectrum(read_file(p)); }
inline void save_spectrum(const std::filesystem::path& p, const SpectrumSpec& s) { write_file(p, format_spectrum(s)); }
inline Matrix load_matrix(const std::filesystem::path& p) { return parse_matrix_csv(read_file(p)); }
inline void save_matrix(const std::filesystem::path& p, const Matrix& m) { write_file(p, format_matrix_csv(m)); }
inline Vector load_vector(const std::filesystem::path& p) { return parse_vector_csv(read_file(p)); }
inline void save_vector(const std::filesystem::path& p, const Vector& v) { write_file(p, format_vector_csv(v)); }

} // namespace fusion::io
