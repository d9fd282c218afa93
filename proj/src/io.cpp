#include "fusion/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fusion/error.hpp"

namespace fusion::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::ParseError, where + ": " + what);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) parse_fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) parse_fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

std::size_t as_count(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0) parse_fail(where, "expected a non-negative integer");
    return v.get<std::size_t>();
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) parse_fail(where, "expected a number");
    return v.get<double>();
}

Vector as_numbers(const json& v, const std::string& where) {
    if (!v.is_array()) parse_fail(where, "expected an array of numbers");
    Vector out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

void append_numbers(std::string& out, std::span<const double> xs) {
    out += '[';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += format_number(xs[i]);
    }
    out += ']';
}

double parse_csv_number(std::string_view cell, std::size_t line, std::size_t column) {
    std::size_t b = 0;
    std::size_t e = cell.size();
    while (b < e && std::isspace(static_cast<unsigned char>(cell[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(cell[e - 1]))) --e;
    const std::string s(cell.substr(b, e - b));
    const std::string where = "line " + std::to_string(line) + ", field " + std::to_string(column);
    if (s.empty()) parse_fail(where, "empty field");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
        parse_fail(where, "'" + s + "' is not a finite number");
    }
    return v;
}

std::vector<Vector> parse_csv_rows(std::string_view text) {
    std::vector<Vector> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        ++line_no;
        pos = nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        Vector row;
        std::size_t start = 0;
        std::size_t column = 1;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            const std::string_view cell = line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start);
            row.push_back(parse_csv_number(cell, line_no, column++));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            parse_fail("line " + std::to_string(line_no),
                       "expected " + std::to_string(rows.front().size()) + " fields, found " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string short_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace

std::string format_number(double x) {
    if (x == 0.0) return "0"; // also folds -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

FusionFrame parse_fusion_frame(std::string_view text) {
    const json doc = parse_json(text);
    const std::size_t m = as_count(field(doc, "ambient_dim", "document"), "ambient_dim");
    if (m == 0) throw Error(ErrorCode::InvariantViolation, "ambient_dim must be positive");
    const json& subs = field(doc, "subspaces", "document");
    if (!subs.is_array()) parse_fail("subspaces", "expected an array");

    std::vector<WeightedSubspace> members;
    members.reserve(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const std::string where = "subspaces[" + std::to_string(i) + "]";
        const double weight = as_number(field(subs[i], "weight", where), where + ".weight");
        const json& basis = field(subs[i], "basis", where);
        if (!basis.is_array() || basis.empty()) parse_fail(where + ".basis", "expected a non-empty array of columns");
        std::vector<Vector> cols;
        for (std::size_t c = 0; c < basis.size(); ++c) {
            const std::string cw = where + ".basis[" + std::to_string(c) + "]";
            Vector col = as_numbers(basis[c], cw);
            if (col.size() != m) {
                parse_fail(cw, "expected " + std::to_string(m) + " numbers, found " + std::to_string(col.size()));
            }
            cols.push_back(std::move(col));
        }
        try {
            members.emplace_back(Subspace(Matrix::from_columns(m, cols), kBasisTol), weight);
        } catch (const Error& e) {
            throw Error(ErrorCode::InvariantViolation, where + ": " + e.what());
        }
    }
    try {
        return FusionFrame(m, std::move(members));
    } catch (const Error& e) {
        throw Error(ErrorCode::InvariantViolation, e.what());
    }
}

std::string format_fusion_frame(const FusionFrame& ff) {
    std::string out = "{\n  \"ambient_dim\": " + std::to_string(ff.ambient_dim()) + ",\n  \"subspaces\": [\n";
    for (std::size_t i = 0; i < ff.size(); ++i) {
        const Matrix& u = ff[i].subspace.basis();
        out += "    {\n      \"weight\": " + format_number(ff[i].weight) + ",\n      \"basis\": [\n";
        for (std::size_t c = 0; c < u.cols(); ++c) {
            out += "        ";
            append_numbers(out, u.column(c));
            out += c + 1 < u.cols() ? ",\n" : "\n";
        }
        out += "      ]\n    }";
        out += i + 1 < ff.size() ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

SpectrumSpec parse_spectrum(std::string_view text) {
    const json doc = parse_json(text);
    Vector lambdas = as_numbers(field(doc, "lambdas", "document"), "lambdas");
    const std::size_t n = as_count(field(doc, "num_subspaces", "document"), "num_subspaces");
    const std::size_t m = as_count(field(doc, "subspace_dim", "document"), "subspace_dim");
    return make_spectrum_spec(std::move(lambdas), n, m);
}

std::string format_spectrum(const SpectrumSpec& spec) {
    std::string out = "{\n  \"lambdas\": ";
    append_numbers(out, spec.lambdas);
    out += ",\n  \"num_subspaces\": " + std::to_string(spec.num_subspaces) + ",\n  \"subspace_dim\": " +
           std::to_string(spec.subspace_dim) + "\n}\n";
    return out;
}

Matrix parse_matrix_csv(std::string_view text) {
    const auto rows = parse_csv_rows(text);
    if (rows.empty()) parse_fail("matrix", "no rows");
    std::vector<double> data;
    data.reserve(rows.size() * rows.front().size());
    for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
    return Matrix(rows.size(), rows.front().size(), std::move(data));
}

std::string format_matrix_csv(const Matrix& m) {
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out += ',';
            out += format_number(m(r, c));
        }
        out += '\n';
    }
    return out;
}

Vector parse_vector_csv(std::string_view text) {
    const auto rows = parse_csv_rows(text);
    if (rows.empty()) parse_fail("vector", "no entries");
    if (rows.size() == 1) return rows.front();
    if (rows.front().size() != 1) parse_fail("vector", "expected a single row or a single column");
    Vector v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r.front());
    return v;
}

std::string format_vector_csv(const Vector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_number(v[i]);
    }
    out += '\n';
    return out;
}

std::string format_report_text(const VerificationReport& r) {
    std::ostringstream os;
    os << "subspaces: " << r.dims.size() << '\n';
    os << "dimensions:";
    for (auto d : r.dims) os << ' ' << d;
    os << "\nspectrum:";
    for (double l : r.spectrum) os << ' ' << short_number(l);
    os << "\nbounds: A = " << short_number(r.bounds.lower) << ", B = " << short_number(r.bounds.upper) << '\n';
    os << "fusion frame: " << yes_no(r.is_fusion_frame) << '\n';
    os << "tight: " << yes_no(r.is_tight) << '\n';
    os << "parseval: " << yes_no(r.is_parseval) << '\n';
    os << "tolerance: " << short_number(r.tol) << '\n';
    os << "chordal distance^2 (" << r.chordal_convention << "):\n";
    for (const auto& row : r.chordal_sq) {
        os << ' ';
        for (double d : row) os << ' ' << short_number(d);
        os << '\n';
    }
    os << "residuals:\n";
    for (const auto& [name, value] : r.residuals) os << "  " << name << ": " << short_number(value) << '\n';
    return os.str();
}

std::string format_report_json(const VerificationReport& r) {
    json j;
    j["spectrum"] = r.spectrum;
    j["bounds"] = {{"A", r.bounds.lower}, {"B", r.bounds.upper}};
    j["is_fusion_frame"] = r.is_fusion_frame;
    j["is_tight"] = r.is_tight;
    j["is_parseval"] = r.is_parseval;
    j["tolerance"] = r.tol;
    j["dims"] = r.dims;
    j["chordal_sq"] = r.chordal_sq;
    j["chordal_convention"] = r.chordal_convention;
    j["residuals"] = r.residuals;
    return j.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out << contents;
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

} // namespace fusion::io
