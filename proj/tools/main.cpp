// Command-line front end: builds flapped simplex pairs, verifies expansions,
// samples the half-turn motion, measures embedding dimension, runs the
// obstruction pipeline, searches for low-dimensional motions, and renders
// planar snapshots.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "flapex/expansion.hpp"
#include "flapex/flaps.hpp"
#include "flapex/io.hpp"
#include "flapex/motion.hpp"
#include "flapex/obstruction.hpp"
#include "flapex/search.hpp"
#include "flapex/simplex.hpp"
#include "flapex/svg.hpp"

namespace {

using namespace flapex;

// --out wins verbatim; otherwise default names land in FLAPEX_OUT_DIR (or .).
std::string resolve_out(const std::string& user_path, const std::string& default_name) {
    if (!user_path.empty()) return user_path;
    const char* dir = std::getenv("FLAPEX_OUT_DIR");
    std::string base = dir && *dir ? dir : ".";
    if (base.back() != '/') base += '/';
    return base + default_name;
}

FlappedPair load_pair(const std::string& path) {
    return flapped_pair_from_json(read_text_file(path));
}

MotionSample alexander_sample(const FlappedPair& pair, int subdivisions, int ambient) {
    const Motion motion = alexander_motion(pair.p, pair.q);
    MotionSample sample = sample_motion(motion, subdivisions);
    if (ambient < sample.ambient_dim) return truncate_sample(sample, ambient);
    if (ambient > sample.ambient_dim) {
        MotionSample padded;
        padded.ambient_dim = ambient;
        padded.grid = sample.grid;
        padded.labels = sample.labels;
        padded.frames.reserve(sample.frames.size());
        for (const auto& frame : sample.frames) {
            std::vector<Vec> wide;
            wide.reserve(frame.size());
            for (const Vec& x : frame) wide.push_back(include_vector(x, ambient));
            padded.frames.push_back(std::move(wide));
        }
        return padded;
    }
    return sample;
}

int cmd_simplex(int dim, const std::string& out) {
    const Simplex s = regular_simplex(dim);
    const ObtuseCheck check = normals_pairwise_obtuse(s);
    const std::string report = simplex_report_to_json(s, check);
    if (!out.empty()) write_text_file(out, report);
    std::cout << "{\"command\":\"simplex\",\"dim\":" << dim << ",\"pairwiseObtuse\":"
              << (check.pairwise_obtuse ? "true" : "false")
              << ",\"worstDot\":" << format_double(check.worst_dot) << "}\n";
    return 0;
}

int cmd_build(int dim, double depth, const std::string& out) {
    const FlappedPair pair = build_flapped_pair(make_flap_spec(regular_simplex(dim), depth));
    const std::string path = resolve_out(out, "pair.json");
    write_text_file(path, flapped_pair_to_json(pair));
    std::cout << "{\"command\":\"build\",\"dim\":" << dim << ",\"depth\":" << format_double(depth)
              << ",\"points\":" << pair.p.size() << ",\"out\":\"" << path << "\"}\n";
    return 0;
}

int cmd_verify(const std::string& pair_path, double tol, const std::string& out) {
    const FlappedPair pair = load_pair(pair_path);
    const ExpansionReport report = expansion_report(pair.p, pair.q, tol);
    if (!out.empty()) write_text_file(out, expansion_report_to_csv(report));
    std::string summary = expansion_report_summary_json(report);
    summary.insert(1, "\"command\":\"verify\",");
    std::cout << summary << "\n";
    return report.is_expansion ? 0 : 1;
}

int cmd_motion(const std::string& pair_path, int samples, double tol, const std::string& out,
               const std::string& csv) {
    const FlappedPair pair = load_pair(pair_path);
    const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), samples);
    const MonotonicityReport report = monotonicity_report(sample, tol);
    if (!out.empty()) write_text_file(out, motion_sample_to_json(sample));
    if (!csv.empty()) write_text_file(csv, motion_sample_to_csv(sample));
    std::cout << "{\"command\":\"motion\",\"ambientDim\":" << sample.ambient_dim
              << ",\"frames\":" << sample.frame_count()
              << ",\"ok\":" << (report.ok ? "true" : "false")
              << ",\"minIncrement\":" << format_double(report.min_increment) << "}\n";
    return report.ok ? 0 : 1;
}

int cmd_embed(const std::string& pair_path, const std::string& config_path,
              const std::string& motion_kind, double t, double rel_tol,
              const std::string& out) {
    std::vector<Vec> points;
    if (!pair_path.empty()) {
        if (motion_kind != "alexander")
            throw InputError("embed: unknown motion '" + motion_kind + "'");
        const FlappedPair pair = load_pair(pair_path);
        const Configuration frame = motion_frame(alexander_motion(pair.p, pair.q), t);
        points = frame.points;
    } else {
        const Configuration config = configuration_from_json(read_text_file(config_path));
        points = config.points;
    }
    const EmbeddingReport report = embedding_dimension(points, rel_tol);
    if (!out.empty()) write_text_file(out, embedding_report_to_json(report));
    std::cout << "{\"command\":\"embed\",\"t\":" << format_double(t)
              << ",\"rank\":" << report.numeric_rank << ",\"euclideanConsistent\":"
              << (report.euclidean_consistent ? "true" : "false") << "}\n";
    return 0;
}

int cmd_obstruct(const std::string& pair_path, const std::string& sample_path, int ambient,
                 int samples, double tol, const std::string& out) {
    const FlappedPair pair = load_pair(pair_path);
    MotionSample sample;
    if (!sample_path.empty()) {
        sample = motion_sample_from_json(read_text_file(sample_path));
        if (ambient > 0 && ambient != sample.ambient_dim)
            throw InputError("obstruct: --ambient disagrees with the sample file");
    } else {
        if (ambient < 1) throw InputError("obstruct: --ambient is required without --sample");
        sample = alexander_sample(pair, samples, ambient);
    }
    const PipelineResult result = obstruction_pipeline(sample, pair.spec, tol);
    if (!out.empty()) write_text_file(out, pipeline_result_to_json(result));
    std::cout << "{\"command\":\"obstruct\",\"ambient\":" << sample.ambient_dim
              << ",\"outcome\":\"" << (result.obstructed() ? "certificate" : "noObstruction")
              << "\",";
    if (result.obstructed())
        std::cout << "\"kind\":\"" << certificate_kind_name(result.certificate->kind) << "\"";
    else
        std::cout << "\"reason\":\"" << no_obstruction_reason_name(*result.reason) << "\"";
    std::cout << "}\n";
    return 0;
}

int cmd_search(const std::string& pair_path, int ambient, int waypoints, int budget,
               int restarts, std::uint64_t seed, const std::string& out,
               const std::string& csv) {
    const FlappedPair pair = load_pair(pair_path);
    SearchOptions options;
    options.ambient_dim = ambient;
    options.waypoint_count = waypoints;
    options.budget = budget;
    options.restarts = restarts;
    options.seed = seed;
    const SearchResult result = optimize_expansion_path(pair.p, pair.q, options);
    if (!out.empty()) write_text_file(out, search_result_to_json(result));
    if (!csv.empty()) write_text_file(csv, search_history_to_csv(result));
    std::cout << "{\"command\":\"search\",\"evidence\":true,\"ambient\":" << ambient
              << ",\"bestResidual\":" << format_double(result.best_residual)
              << ",\"refinedResidual\":" << format_double(result.refined_residual)
              << ",\"restarts\":" << restarts << "}\n";
    return 0;
}

int cmd_snapshot(const std::string& pair_path, double t, int samples, const std::string& out) {
    const FlappedPair pair = load_pair(pair_path);
    const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), samples);
    const std::string path = resolve_out(out, "snapshot.svg");
    svg_snapshot(sample, t, path);
    std::cout << "{\"command\":\"snapshot\",\"t\":" << format_double(t) << ",\"out\":\"" << path
              << "\"}\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flapped-simplex expansion toolkit"};
    app.require_subcommand(1);

    int dim = 2;
    double depth = 0.5;
    double tol = 1e-9;
    double rel_tol = 1e-8;
    double t = 0.5;
    int samples = 200;
    int ambient = 0;
    int waypoints = 8;
    int budget = 2000;
    int restarts = 20;
    std::uint64_t seed = 1;
    std::string pair_path;
    std::string config_path;
    std::string sample_path;
    std::string motion_kind = "alexander";
    std::string out;
    std::string csv;

    CLI::App* simplex_cmd = app.add_subcommand("simplex", "regular simplex and its face normals");
    simplex_cmd->add_option("--dim", dim, "base dimension d")->required();
    simplex_cmd->add_option("--out", out, "write the JSON report here");

    CLI::App* build_cmd = app.add_subcommand("build", "build the flapped pair (p, q)");
    build_cmd->add_option("--dim", dim, "base dimension d")->required();
    build_cmd->add_option("--depth", depth, "flap depth s > 0")->required();
    build_cmd->add_option("--out", out, "pair file (default pair.json)");

    CLI::App* verify_cmd = app.add_subcommand("verify", "check that q expands p, pair by pair");
    verify_cmd->add_option("--pair", pair_path, "pair file from 'build'")->required();
    verify_cmd->add_option("--tol", tol, "classification tolerance");
    verify_cmd->add_option("--out", out, "write the per-pair CSV here");

    CLI::App* motion_cmd = app.add_subcommand("motion", "sample the half-turn motion");
    motion_cmd->add_option("--pair", pair_path, "pair file")->required();
    motion_cmd->add_option("--samples", samples, "grid subdivisions M");
    motion_cmd->add_option("--tol", tol, "monotonicity tolerance");
    motion_cmd->add_option("--out", out, "write the sample JSON here");
    motion_cmd->add_option("--csv", csv, "write the sample CSV here");

    CLI::App* embed_cmd = app.add_subcommand("embed", "embedding dimension of a frame");
    embed_cmd->add_option("--pair", pair_path, "pair file");
    embed_cmd->add_option("--config", config_path, "standalone configuration JSON");
    embed_cmd->add_option("--motion", motion_kind, "motion kind (alexander)");
    embed_cmd->add_option("--t", t, "motion time in [0, 1]");
    embed_cmd->add_option("--tol", rel_tol, "relative eigenvalue tolerance");
    embed_cmd->add_option("--out", out, "write the JSON report here");

    CLI::App* obstruct_cmd = app.add_subcommand("obstruct", "run the obstruction pipeline");
    obstruct_cmd->add_option("--pair", pair_path, "pair file")->required();
    obstruct_cmd->add_option("--ambient", ambient, "ambient dimension f of the motion");
    obstruct_cmd->add_option("--samples", samples, "grid subdivisions M");
    obstruct_cmd->add_option("--sample", sample_path, "analyze this sample JSON instead");
    obstruct_cmd->add_option("--tol", tol, "pipeline tolerance");
    obstruct_cmd->add_option("--out", out, "write the certificate/result JSON here");

    CLI::App* search_cmd = app.add_subcommand("search", "search for a motion in dimension f");
    search_cmd->add_option("--pair", pair_path, "pair file")->required();
    search_cmd->add_option("--ambient", ambient, "ambient dimension f")->required();
    search_cmd->add_option("--waypoints", waypoints, "interior waypoints per trajectory");
    search_cmd->add_option("--budget", budget, "gradient iterations per restart");
    search_cmd->add_option("--restarts", restarts, "independent seeded restarts");
    search_cmd->add_option("--seed", seed, "base random seed");
    search_cmd->add_option("--out", out, "write the result JSON here");
    search_cmd->add_option("--csv", csv, "write the descent history CSV here");

    CLI::App* snapshot_cmd = app.add_subcommand("snapshot", "SVG snapshot of a planar frame");
    snapshot_cmd->add_option("--pair", pair_path, "pair file (d must be 2)")->required();
    snapshot_cmd->add_option("--t", t, "grid time to draw")->required();
    snapshot_cmd->add_option("--samples", samples, "grid subdivisions M");
    snapshot_cmd->add_option("--out", out, "SVG path (default snapshot.svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(simplex_cmd)) return cmd_simplex(dim, out);
        if (app.got_subcommand(build_cmd)) return cmd_build(dim, depth, out);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(pair_path, tol, out);
        if (app.got_subcommand(motion_cmd)) return cmd_motion(pair_path, samples, tol, out, csv);
        if (app.got_subcommand(embed_cmd)) {
            if (pair_path.empty() == config_path.empty())
                throw InputError("embed: pass exactly one of --pair or --config");
            return cmd_embed(pair_path, config_path, motion_kind, t, rel_tol, out);
        }
        if (app.got_subcommand(obstruct_cmd))
            return cmd_obstruct(pair_path, sample_path, ambient, samples, tol, out);
        if (app.got_subcommand(search_cmd))
            return cmd_search(pair_path, ambient, waypoints, budget, restarts, seed, out, csv);
        if (app.got_subcommand(snapshot_cmd)) return cmd_snapshot(pair_path, t, samples, out);
    } catch (const flapex::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
