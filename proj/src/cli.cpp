#include "fusion/cli.hpp"

#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fusion/complements.hpp"
#include "fusion/completion.hpp"
#include "fusion/error.hpp"
#include "fusion/io.hpp"
#include "fusion/reconstruct.hpp"
#include "fusion/spectral_tetris.hpp"

namespace fusion {

namespace {

// Carries an exit code out of a subcommand after its diagnostics are printed.
struct Exit {
    int code;
};

struct Options {
    double tol = kSpectralTol;

    std::string spectrum_path;
    std::string mode = "real";
    std::string out_path;
    std::string matrix_path;

    std::string frame_path;
    bool json = false;

    std::string complement_kind;
    std::optional<long> constant;
    std::string added_path;
    std::string combined_path;

    std::string signal_path;
    bool reduced = false;
};

FusionFrame load_frame(const std::string& path, std::ostream& err) {
    try {
        return io::load_fusion_frame(path);
    } catch (const Error& e) {
        err << "error: " << path << ": " << e.what() << '\n';
        throw Exit{kExitIo};
    }
}

std::filesystem::path default_matrix_path(const std::string& out) {
    std::filesystem::path p(out);
    p.replace_extension();
    p += ".W.csv";
    return p;
}

Matrix rows_to_matrix(const std::vector<Vector>& rows, std::size_t cols) {
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
    return Matrix(rows.size(), cols, std::move(data));
}

void print_violations(const std::vector<std::string>& msgs, std::ostream& err) {
    for (const auto& m : msgs) err << "  violated: " << m << '\n';
}

int cmd_construct(const Options& o, std::ostream& out, std::ostream& err) {
    SpectrumSpec spec;
    try {
        spec = io::load_spectrum(o.spectrum_path);
    } catch (const Error& e) {
        err << "error: " << o.spectrum_path << ": " << e.what() << '\n';
        return e.code() == ErrorCode::InvariantViolation ? kExitInfeasible : kExitIo;
    }

    const Feasibility feas = o.mode == "integer" ? check_feasibility_integer(spec) : check_feasibility_real(spec);
    if (!feas.ok()) {
        err << "error: spectrum is infeasible for the " << o.mode << " construction\n";
        print_violations(feas.messages(), err);
        return kExitInfeasible;
    }

    Matrix w;
    std::optional<FusionFrame> frame;
    if (o.mode == "frame") {
        if (spec.subspace_dim != 1) {
            err << "error: frame mode needs subspace_dim = 1\n";
            return kExitInfeasible;
        }
        const auto vectors = fcre(spec.lambdas, spec.num_subspaces);
        w = rows_to_matrix(vectors, spec.ambient_dim());
        std::vector<WeightedSubspace> members;
        for (const auto& v : vectors) members.emplace_back(Subspace(Matrix::from_columns(v.size(), {v})), 1.0);
        frame.emplace(spec.ambient_dim(), std::move(members));
    } else {
        Construction c = o.mode == "integer" ? ffcie(spec) : ffcre(spec);
        w = std::move(c.matrix.rows);
        frame.emplace(std::move(c.frame));
    }

    const std::filesystem::path matrix_path = o.matrix_path.empty() ? default_matrix_path(o.out_path) : std::filesystem::path(o.matrix_path);
    io::save_fusion_frame(o.out_path, *frame);
    io::save_matrix(matrix_path, w);
    out << "wrote " << frame->size() << " subspaces of R^" << frame->ambient_dim() << " to " << o.out_path << '\n';
    out << "wrote " << w.rows() << "x" << w.cols() << " matrix to " << matrix_path.string() << '\n';
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    const FusionFrame ff = load_frame(o.frame_path, err);
    const VerificationReport report = validate(ff, o.tol);
    out << (o.json ? io::format_report_json(report) : io::format_report_text(report));
    if (!report.is_fusion_frame) {
        err << "error: lower frame bound " << report.bounds.lower << " is not positive; not a fusion frame\n";
        return kExitVerify;
    }
    return kExitOk;
}

int cmd_complement(const Options& o, std::ostream& out, std::ostream& err) {
    const FusionFrame ff = load_frame(o.frame_path, err);
    FusionFrame result = ff;
    if (o.complement_kind == "spatial") {
        result = spatial_complement(ff, o.tol);
    } else {
        FusionFrame parseval = ff;
        const VerificationReport report = validate(ff, o.tol);
        if (report.is_tight && !report.is_parseval) {
            out << "input is " << report.bounds.lower << "-tight; rescaling weights to make it Parseval\n";
            parseval = to_parseval(ff, o.tol);
        }
        const NaimarkComplement nc = naimark_complement(parseval, o.tol);
        out << "dilation space R^" << nc.dilation_dim << '\n';
        result = nc.frame;
    }
    io::save_fusion_frame(o.out_path, result);
    out << "wrote " << result.size() << " subspaces of R^" << result.ambient_dim() << " to " << o.out_path << '\n';
    return kExitOk;
}

int cmd_complete_tight(const Options& o, std::ostream& out, std::ostream& err) {
    const FusionFrame ff = load_frame(o.frame_path, err);
    const TightCompletion tc = tight_completion(ff, o.constant, o.tol);
    io::save_fusion_frame(o.added_path, tc.added);
    io::save_fusion_frame(o.combined_path, tc.combined);
    out << "A = " << tc.constant << ", added " << tc.added.size() << " subspaces, total " << tc.combined.size()
        << '\n';
    return kExitOk;
}

int cmd_complete_shifts(const Options& o, std::ostream& out, std::ostream& err) {
    const FusionFrame ff = load_frame(o.frame_path, err);
    std::vector<Subspace> subspaces;
    subspaces.reserve(ff.size());
    for (const auto& w : ff.members()) subspaces.push_back(w.subspace);
    const FusionFrame result = shift_completion(subspaces);
    io::save_fusion_frame(o.out_path, result);
    out << "wrote " << result.size() << " subspaces of R^" << result.ambient_dim() << " to " << o.out_path << '\n';
    return kExitOk;
}

int cmd_reconstruct(const Options& o, std::ostream& out, std::ostream& err) {
    const FusionFrame ff = load_frame(o.frame_path, err);
    Vector f;
    try {
        f = io::load_vector(o.signal_path);
    } catch (const Error& e) {
        err << "error: " << o.signal_path << ": " << e.what() << '\n';
        return kExitIo;
    }
    const MeasurementMode mode = o.reduced ? MeasurementMode::Reduced : MeasurementMode::Full;
    Reconstructor rec(ff, kOrthoTol);
    const Vector g = rec.reconstruct(measure(ff, f, mode));
    double diff = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) diff += (g[i] - f[i]) * (g[i] - f[i]);
    out << io::format_vector_csv(g);
    out << "residual " << io::format_number(std::sqrt(diff)) << '\n';
    return kExitOk;
}

int exit_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::Io:
    case ErrorCode::ParseError:
        return kExitIo;
    case ErrorCode::SingularOperator:
        return kExitVerify;
    default:
        return kExitInfeasible;
    }
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Fusion frame construction and verification"};
    app.name("fusionctl");
    app.require_subcommand(1);
    app.add_option("--tol", o.tol, "Tolerance for every numerical check")->check(CLI::PositiveNumber);

    auto* construct = app.add_subcommand("construct", "Spectral tetris construction from a spectrum document");
    construct->add_option("--spectrum", o.spectrum_path, "Spectrum document")->required();
    construct->add_option("--mode", o.mode, "integer, real or frame")
        ->check(CLI::IsMember({"integer", "real", "frame"}));
    construct->add_option("--out", o.out_path, "Output fusion frame document")->required();
    construct->add_option("--matrix-out", o.matrix_path, "Output CSV for W (default: <out>.W.csv)");

    auto* verify = app.add_subcommand("verify", "Report bounds, spectrum, dimensions and chordal distances");
    verify->add_option("--frame", o.frame_path, "Fusion frame document")->required();
    verify->add_flag("--json", o.json, "Emit JSON");

    auto* complement = app.add_subcommand("complement", "Spatial or Naimark complement");
    complement->add_option("kind", o.complement_kind, "spatial or naimark")
        ->required()
        ->check(CLI::IsMember({"spatial", "naimark"}));
    complement->add_option("--frame", o.frame_path, "Fusion frame document")->required();
    complement->add_option("--out", o.out_path, "Output fusion frame document")->required();

    auto* complete = app.add_subcommand("complete", "Tight or shift completion");
    complete->require_subcommand(1);
    auto* tight = complete->add_subcommand("tight", "Add subspaces until the frame is A-tight");
    tight->add_option("--frame", o.frame_path, "Fusion frame document")->required();
    tight->add_option("--A", o.constant, "Tight constant (default: smallest admissible)");
    tight->add_option("--out-added", o.added_path, "Output for the added subspaces")->required();
    tight->add_option("--out-combined", o.combined_path, "Output for the union")->required();
    auto* shifts = complete->add_subcommand("shifts", "Circular-shift completion");
    shifts->add_option("--frame", o.frame_path, "Fusion frame document")->required();
    shifts->add_option("--out", o.out_path, "Output fusion frame document")->required();

    auto* recon = app.add_subcommand("reconstruct", "Measure a signal and reconstruct it");
    recon->add_option("--frame", o.frame_path, "Fusion frame document")->required();
    recon->add_option("--signal", o.signal_path, "Signal CSV")->required();
    recon->add_flag("--reduced", o.reduced, "Use subspace coefficients instead of projections");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitIo;
    }

    try {
        if (construct->parsed()) return cmd_construct(o, out, err);
        if (verify->parsed()) return cmd_verify(o, out, err);
        if (complement->parsed()) return cmd_complement(o, out, err);
        if (tight->parsed()) return cmd_complete_tight(o, out, err);
        if (shifts->parsed()) return cmd_complete_shifts(o, out, err);
        if (recon->parsed()) return cmd_reconstruct(o, out, err);
    } catch (const Exit& e) {
        return e.code;
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << '\n';
        print_violations(e.violations(), err);
        return kExitInfeasible;
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_for(e.code());
    }
    return kExitIo;
}

} // namespace fusion
