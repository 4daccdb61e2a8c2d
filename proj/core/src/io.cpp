#include "flapex/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace flapex {

namespace {

using nlohmann::json;

std::string escape_json(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

std::string coords_json(const Vec& v) {
    std::string out = "[";
    for (int i = 0; i < v.dim(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    out += "]";
    return out;
}

std::string label_json(const PointLabel& label) {
    if (label.kind == PointLabel::Kind::Vertex)
        return "{\"kind\":\"vertex\",\"i\":" + std::to_string(label.i) + "}";
    return "{\"kind\":\"flap\",\"i\":" + std::to_string(label.i) +
           ",\"j\":" + std::to_string(label.j) + "}";
}

std::string config_json_body(const Configuration& config) {
    std::string out = "{\"dim\":" + std::to_string(config.dim) + ",\"points\":[";
    for (int k = 0; k < config.size(); ++k) {
        if (k) out += ",";
        out += "{\"label\":" + label_json(config.labels[static_cast<std::size_t>(k)]) +
               ",\"coords\":" + coords_json(config.points[static_cast<std::size_t>(k)]) + "}";
    }
    out += "]}";
    return out;
}

double parse_finite(const json& j, const char* what) {
    if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InputError(std::string(what) + ": non-finite value");
    return v;
}

Vec parse_coords(const json& j, int expected_dim) {
    if (!j.is_array() || j.empty()) throw InputError("coords: expected a nonempty array");
    Vec v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = parse_finite(j[i], "coords");
    if (expected_dim >= 0 && v.dim() != expected_dim)
        throw InputError("coords: dimension mismatch");
    return v;
}

PointLabel parse_label(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("i"))
        throw InputError("label: expected an object with kind and i");
    PointLabel label;
    const std::string kind = j.at("kind").get<std::string>();
    label.i = j.at("i").get<int>();
    if (kind == "vertex") {
        label.kind = PointLabel::Kind::Vertex;
        label.j = -1;
        if (label.i < 0) throw InputError("label: negative vertex index");
    } else if (kind == "flap") {
        label.kind = PointLabel::Kind::Flap;
        if (!j.contains("j")) throw InputError("label: flap labels need j");
        label.j = j.at("j").get<int>();
        if (label.i < 0 || label.j < 0 || label.i == label.j)
            throw InputError("label: invalid flap indices");
    } else {
        throw InputError("label: unknown kind '" + kind + "'");
    }
    return label;
}

Configuration parse_configuration(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("points"))
        throw InputError("configuration: expected an object with dim and points");
    Configuration config;
    config.dim = j.at("dim").get<int>();
    if (config.dim < 1) throw InputError("configuration: dim must be positive");
    const json& pts = j.at("points");
    if (!pts.is_array() || pts.empty())
        throw InputError("configuration: points must be a nonempty array");
    for (const json& entry : pts) {
        if (!entry.is_object() || !entry.contains("label") || !entry.contains("coords"))
            throw InputError("configuration: each point needs label and coords");
        config.labels.push_back(parse_label(entry.at("label")));
        config.points.push_back(parse_coords(entry.at("coords"), config.dim));
    }
    for (std::size_t a = 0; a < config.labels.size(); ++a)
        for (std::size_t b = a + 1; b < config.labels.size(); ++b)
            if (config.labels[a] == config.labels[b])
                throw InputError("configuration: duplicate label " +
                                 label_to_string(config.labels[a]));
    return config;
}

json parse_root(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError(std::string(what) + ": malformed JSON");
    return j;
}

}  // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) throw InputError("format_double: non-finite value");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string configuration_to_json(const Configuration& config) {
    return config_json_body(config);
}

Configuration configuration_from_json(const std::string& text) {
    return parse_configuration(parse_root(text, "configuration"));
}

std::string flapped_pair_to_json(const FlappedPair& pair) {
    const Simplex& s = pair.spec.simplex;
    std::string out = "{\"dim\":" + std::to_string(s.dim);
    out += ",\"depth\":" + format_double(pair.spec.depth);
    out += ",\"simplex\":{\"kind\":\"";
    out += (s.kind == SimplexKind::Regular ? "regular" : "general");
    out += "\",\"vertices\":[";
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
        if (i) out += ",";
        out += coords_json(s.vertices[i]);
    }
    out += "]},\"normalsPairwiseObtuse\":";
    out += pair.normals_pairwise_obtuse ? "true" : "false";
    out += ",\"p\":" + config_json_body(pair.p);
    out += ",\"q\":" + config_json_body(pair.q);
    out += "}";
    return out;
}

FlappedPair flapped_pair_from_json(const std::string& text) {
    const json j = parse_root(text, "flapped pair");
    if (!j.contains("dim") || !j.contains("depth") || !j.contains("simplex") ||
        !j.contains("p") || !j.contains("q"))
        throw InputError("flapped pair: missing dim/depth/simplex/p/q");
    const int d = j.at("dim").get<int>();
    const double depth = parse_finite(j.at("depth"), "depth");
    if (d < 1 || !(depth > 0.0)) throw InputError("flapped pair: invalid dim or depth");

    const json& simplex_j = j.at("simplex");
    const std::string kind = simplex_j.at("kind").get<std::string>();
    std::vector<Vec> vertices;
    for (const json& vj : simplex_j.at("vertices")) vertices.push_back(parse_coords(vj, d));
    if (static_cast<int>(vertices.size()) != d + 1)
        throw InputError("flapped pair: simplex needs d+1 vertices");

    Simplex simplex;
    if (kind == "regular") {
        for (int a = 0; a <= d; ++a) {
            if (std::abs(norm(vertices[static_cast<std::size_t>(a)]) - 1.0) > 1e-9)
                throw InputError("flapped pair: regular simplex vertex is not unit length");
            for (int b = a + 1; b <= d; ++b)
                if (std::abs(dot(vertices[static_cast<std::size_t>(a)],
                                 vertices[static_cast<std::size_t>(b)]) + 1.0 / d) > 1e-9)
                    throw InputError("flapped pair: regular simplex inner products are off");
        }
        simplex.dim = d;
        simplex.vertices = vertices;
        simplex.kind = SimplexKind::Regular;
    } else if (kind == "general") {
        simplex = make_general_simplex(vertices);
    } else {
        throw InputError("flapped pair: unknown simplex kind '" + kind + "'");
    }

    FlappedPair pair;
    pair.spec = make_flap_spec(std::move(simplex), depth);
    pair.p = parse_configuration(j.at("p"));
    pair.q = parse_configuration(j.at("q"));
    if (pair.p.labels != canonical_labels(d) || pair.q.labels != canonical_labels(d))
        throw InputError("flapped pair: configurations are not in canonical flapped order");
    if (pair.p.dim != d || pair.q.dim != d)
        throw InputError("flapped pair: configuration dimension differs from dim");
    if (j.contains("normalsPairwiseObtuse"))
        pair.normals_pairwise_obtuse = j.at("normalsPairwiseObtuse").get<bool>();
    else
        pair.normals_pairwise_obtuse = normals_pairwise_obtuse(pair.spec.simplex).pairwise_obtuse;
    return pair;
}

std::string motion_sample_to_json(const MotionSample& sample) {
    std::string out = "{\"ambientDim\":" + std::to_string(sample.ambient_dim) + ",\"grid\":[";
    for (std::size_t m = 0; m < sample.grid.size(); ++m) {
        if (m) out += ",";
        out += format_double(sample.grid[m]);
    }
    out += "],\"frames\":[";
    for (int m = 0; m < sample.frame_count(); ++m) {
        if (m) out += ",";
        Configuration frame;
        frame.dim = sample.ambient_dim;
        frame.labels = sample.labels;
        frame.points = sample.frames[static_cast<std::size_t>(m)];
        out += config_json_body(frame);
    }
    out += "]}";
    return out;
}

MotionSample motion_sample_from_json(const std::string& text) {
    const json j = parse_root(text, "motion sample");
    if (!j.contains("ambientDim") || !j.contains("grid") || !j.contains("frames"))
        throw InputError("motion sample: missing ambientDim/grid/frames");
    MotionSample sample;
    sample.ambient_dim = j.at("ambientDim").get<int>();
    if (sample.ambient_dim < 1) throw InputError("motion sample: ambientDim must be positive");
    for (const json& g : j.at("grid")) sample.grid.push_back(parse_finite(g, "grid"));
    if (sample.grid.size() < 2 || sample.grid.front() != 0.0 || sample.grid.back() != 1.0)
        throw InputError("motion sample: grid must run from exactly 0 to exactly 1");
    for (std::size_t m = 0; m + 1 < sample.grid.size(); ++m)
        if (!(sample.grid[m] < sample.grid[m + 1]))
            throw InputError("motion sample: grid must be strictly increasing");

    const json& frames = j.at("frames");
    if (!frames.is_array() || frames.size() != sample.grid.size())
        throw InputError("motion sample: frames must match the grid length");
    for (const json& fj : frames) {
        Configuration frame = parse_configuration(fj);
        if (frame.dim != sample.ambient_dim)
            throw InputError("motion sample: frame dimension differs from ambientDim");
        if (sample.labels.empty())
            sample.labels = frame.labels;
        else if (frame.labels != sample.labels)
            throw InputError("motion sample: frames carry different labels");
        sample.frames.push_back(std::move(frame.points));
    }
    return sample;
}

std::string motion_sample_to_csv(const MotionSample& sample) {
    std::string out = "t,label,kind,i,j";
    for (int c = 0; c < sample.ambient_dim; ++c) out += ",x" + std::to_string(c);
    out += "\n";
    for (int m = 0; m < sample.frame_count(); ++m) {
        for (int k = 0; k < sample.size(); ++k) {
            const PointLabel& label = sample.labels[static_cast<std::size_t>(k)];
            out += format_double(sample.grid[static_cast<std::size_t>(m)]);
            out += "," + label_to_string(label);
            out += label.kind == PointLabel::Kind::Vertex ? ",vertex" : ",flap";
            out += "," + std::to_string(label.i);
            out += label.kind == PointLabel::Kind::Flap ? "," + std::to_string(label.j) : ",";
            const Vec& x = sample.frames[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
            for (int c = 0; c < sample.ambient_dim; ++c) out += "," + format_double(x[c]);
            out += "\n";
        }
    }
    return out;
}

std::string expansion_report_to_csv(const ExpansionReport& report) {
    std::string out = "label1,label2,dBefore,dAfter,gap,class,caseTag\n";
    for (const PairClass& pc : report.pairs) {
        out += label_to_string(pc.a) + "," + label_to_string(pc.b);
        out += "," + format_double(pc.d_before);
        out += "," + format_double(pc.d_after);
        out += "," + format_double(pc.gap());
        out += "," + pair_class_name(pc.cls);
        out += "," + pair_case_name(pc.case_tag);
        out += "\n";
    }
    return out;
}

std::string expansion_report_summary_json(const ExpansionReport& report) {
    int equal = 0;
    int expand = 0;
    int contract = 0;
    for (const PairClass& pc : report.pairs) {
        if (pc.cls == PairClassKind::Equal) ++equal;
        else if (pc.cls == PairClassKind::Expand) ++expand;
        else ++contract;
    }
    std::ostringstream out;
    out << "{\"isExpansion\":" << (report.is_expansion ? "true" : "false")
        << ",\"pairs\":" << report.pairs.size() << ",\"minGap\":" << format_double(report.min_gap)
        << ",\"tolerance\":" << format_double(report.tolerance) << ",\"equal\":" << equal
        << ",\"expand\":" << expand << ",\"contract\":" << contract << "}";
    return out.str();
}

namespace {

std::string certificate_json(const ObstructionCertificate& cert) {
    std::string out = "{\"kind\":\"" + certificate_kind_name(cert.kind) + "\"";
    out += ",\"t0\":" + format_double(cert.t0);
    out += ",\"akValues\":[";
    for (std::size_t k = 0; k < cert.ak_values.size(); ++k) {
        if (k) out += ",";
        out += format_double(cert.ak_values[k]);
    }
    out += "],\"wkVectors\":[";
    for (std::size_t k = 0; k < cert.wk_vectors.size(); ++k) {
        if (k) out += ",";
        out += coords_json(cert.wk_vectors[k]);
    }
    out += "],\"pairwiseDots\":[";
    for (std::size_t a = 0; a < cert.pairwise_dots.size(); ++a) {
        if (a) out += ",";
        out += "[";
        for (std::size_t b = 0; b < cert.pairwise_dots[a].size(); ++b) {
            if (b) out += ",";
            out += format_double(cert.pairwise_dots[a][b]);
        }
        out += "]";
    }
    out += "],\"narrative\":\"" + escape_json(cert.narrative) + "\"}";
    return out;
}

std::string family_json(const ComplementFamilyInfo& info) {
    std::string out = "{\"t0\":" + format_double(info.t0);
    out += ",\"ak\":[";
    for (std::size_t k = 0; k < info.ak.size(); ++k) {
        if (k) out += ",";
        out += format_double(info.ak[k]);
    }
    out += "],\"wk\":[";
    for (std::size_t k = 0; k < info.wk.size(); ++k) {
        if (k) out += ",";
        out += coords_json(info.wk[k]);
    }
    out += "],\"dots\":[";
    for (std::size_t a = 0; a < info.dots.size(); ++a) {
        if (a) out += ",";
        out += "[";
        for (std::size_t b = 0; b < info.dots[a].size(); ++b) {
            if (b) out += ",";
            out += format_double(info.dots[a][b]);
        }
        out += "]";
    }
    out += "],\"pairwiseObtuse\":";
    out += info.pairwise_obtuse ? "true" : "false";
    out += "}";
    return out;
}

}  // namespace

std::string pipeline_result_to_json(const PipelineResult& result) {
    std::string out = "{\"outcome\":\"";
    out += result.obstructed() ? "certificate" : "noObstruction";
    out += "\"";
    if (result.reason) out += ",\"reason\":\"" + no_obstruction_reason_name(*result.reason) + "\"";
    if (result.certificate) out += ",\"certificate\":" + certificate_json(*result.certificate);
    if (result.info) out += ",\"info\":" + family_json(*result.info);
    out += ",\"narrative\":\"" + escape_json(result.narrative) + "\"}";
    return out;
}

std::string search_result_to_json(const SearchResult& result) {
    std::string out = "{\"evidence\":true";
    out += ",\"bestResidual\":" + format_double(result.best_residual);
    out += ",\"refinedResidual\":" + format_double(result.refined_residual);
    out += ",\"iterations\":" + std::to_string(result.iterations);
    out += ",\"seed\":" + std::to_string(result.seed);
    out += ",\"bestRestart\":" + std::to_string(result.best_restart);
    out += ",\"restartResiduals\":[";
    for (std::size_t r = 0; r < result.restart_residuals.size(); ++r) {
        if (r) out += ",";
        out += format_double(result.restart_residuals[r]);
    }
    out += "],\"restartObjectives\":[";
    for (std::size_t r = 0; r < result.restart_objectives.size(); ++r) {
        if (r) out += ",";
        out += format_double(result.restart_objectives[r]);
    }
    out += "],\"history\":[";
    for (std::size_t h = 0; h < result.history.size(); ++h) {
        if (h) out += ",";
        out += "[" + std::to_string(result.history[h].first) + "," +
               format_double(result.history[h].second) + "]";
    }
    out += "],\"motion\":{\"ambientDim\":" + std::to_string(result.motion.ambient_dim);
    out += ",\"waypointCount\":" + std::to_string(result.motion.waypoint_count);
    out += ",\"points\":[";
    for (int i = 0; i < result.motion.size(); ++i) {
        if (i) out += ",";
        out += "{\"label\":" + label_json(result.motion.labels[static_cast<std::size_t>(i)]);
        out += ",\"start\":" + coords_json(result.motion.start[static_cast<std::size_t>(i)]);
        out += ",\"finish\":" + coords_json(result.motion.finish[static_cast<std::size_t>(i)]);
        out += ",\"waypoints\":[";
        const auto& rows = result.motion.waypoints[static_cast<std::size_t>(i)];
        for (std::size_t w = 0; w < rows.size(); ++w) {
            if (w) out += ",";
            out += coords_json(rows[w]);
        }
        out += "]}";
    }
    out += "]}}";
    return out;
}

std::string search_history_to_csv(const SearchResult& result) {
    std::string out = "iteration,residual\n";
    for (const auto& [it, res] : result.history)
        out += std::to_string(it) + "," + format_double(res) + "\n";
    return out;
}

std::string simplex_report_to_json(const Simplex& simplex, const ObtuseCheck& check) {
    std::string out = "{\"dim\":" + std::to_string(simplex.dim);
    out += ",\"kind\":\"";
    out += (simplex.kind == SimplexKind::Regular ? "regular" : "general");
    out += "\",\"vertices\":[";
    for (std::size_t i = 0; i < simplex.vertices.size(); ++i) {
        if (i) out += ",";
        out += coords_json(simplex.vertices[i]);
    }
    out += "],\"normals\":[";
    for (int i = 0; i <= simplex.dim; ++i) {
        if (i) out += ",";
        out += coords_json(outward_normal(simplex, i));
    }
    out += "],\"pairwiseObtuse\":";
    out += check.pairwise_obtuse ? "true" : "false";
    out += ",\"worstPair\":[" + std::to_string(check.worst_i) + "," +
           std::to_string(check.worst_j) + "]";
    out += ",\"worstDot\":" + format_double(check.worst_dot);
    out += "}";
    return out;
}

std::string embedding_report_to_json(const EmbeddingReport& report) {
    std::string out = "{\"rank\":" + std::to_string(report.numeric_rank);
    out += ",\"relTolerance\":" + format_double(report.rel_tolerance);
    out += ",\"euclideanConsistent\":";
    out += report.euclidean_consistent ? "true" : "false";
    out += ",\"eigenvalues\":[";
    for (std::size_t k = 0; k < report.eigenvalues.size(); ++k) {
        if (k) out += ",";
        out += format_double(report.eigenvalues[k]);
    }
    out += "]}";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("write_text_file: cannot open '" + path + "' for writing");
    out << content;
    if (content.empty() || content.back() != '\n') out << '\n';
    if (!out) throw InputError("write_text_file: write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("read_text_file: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace flapex
