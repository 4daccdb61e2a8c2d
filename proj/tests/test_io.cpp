#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "flapex/expansion.hpp"
#include "flapex/io.hpp"
#include "flapex/motion.hpp"
#include "flapex/obstruction.hpp"
#include "flapex/search.hpp"
#include "flapex/svg.hpp"

using namespace flapex;

namespace {

FlappedPair planar_pair(double s = 0.5) {
    return build_flapped_pair(make_flap_spec(regular_simplex(2), s));
}

}  // namespace

TEST_CASE("doubles serialize with full precision and round-trip exactly") {
    const double third = 1.0 / 3.0;
    const std::string text = format_double(third);
    CHECK(std::stod(text) == third);
    CHECK(text.size() >= 17);  // 17 significant digits for non-terminating values
    CHECK(format_double(0.5) == "0.5");
    CHECK_THROWS_AS(format_double(std::nan("")), InputError);
}

TEST_CASE("configuration JSON round trip is exact") {
    const FlappedPair pair = planar_pair(1.0 / 3.0);
    const std::string text = configuration_to_json(pair.p);
    const Configuration back = configuration_from_json(text);
    CHECK(back.dim == pair.p.dim);
    REQUIRE(back.labels == pair.p.labels);
    for (int k = 0; k < back.size(); ++k)
        CHECK(back.points[static_cast<std::size_t>(k)] ==
              pair.p.points[static_cast<std::size_t>(k)]);
}

TEST_CASE("configuration parser rejects malformed input") {
    CHECK_THROWS_AS(configuration_from_json("not json"), InputError);
    CHECK_THROWS_AS(configuration_from_json("{\"dim\":2}"), InputError);
    CHECK_THROWS_AS(configuration_from_json(
                        R"({"dim":2,"points":[{"label":{"kind":"vertex","i":0},"coords":[1]}]})"),
                    InputError);
    CHECK_THROWS_AS(
        configuration_from_json(
            R"({"dim":1,"points":[{"label":{"kind":"flap","i":1,"j":1},"coords":[1]}]})"),
        InputError);
    // duplicate labels
    CHECK_THROWS_AS(
        configuration_from_json(
            R"({"dim":1,"points":[{"label":{"kind":"vertex","i":0},"coords":[1]},)"
            R"({"label":{"kind":"vertex","i":0},"coords":[2]}]})"),
        InputError);
}

TEST_CASE("flapped pair files round-trip bit-for-bit on classifications") {
    const FlappedPair pair = planar_pair(0.5);
    const ExpansionReport direct = expansion_report(pair.p, pair.q, 1e-9);

    const std::string text = flapped_pair_to_json(pair);
    const FlappedPair back = flapped_pair_from_json(text);
    CHECK(back.spec.depth == pair.spec.depth);
    CHECK(back.normals_pairwise_obtuse == pair.normals_pairwise_obtuse);
    const ExpansionReport reread = expansion_report(back.p, back.q, 1e-9);

    REQUIRE(direct.pairs.size() == reread.pairs.size());
    CHECK(direct.is_expansion == reread.is_expansion);
    for (std::size_t k = 0; k < direct.pairs.size(); ++k) {
        CHECK(direct.pairs[k].cls == reread.pairs[k].cls);
        CHECK(direct.pairs[k].case_tag == reread.pairs[k].case_tag);
        CHECK(direct.pairs[k].d_before == reread.pairs[k].d_before);
        CHECK(direct.pairs[k].d_after == reread.pairs[k].d_after);
    }
    CHECK(expansion_report_to_csv(direct) == expansion_report_to_csv(reread));
}

TEST_CASE("expansion report serializations") {
    const FlappedPair pair = planar_pair();
    const ExpansionReport report = expansion_report(pair.p, pair.q, 1e-9);

    const std::string csv = expansion_report_to_csv(report);
    CHECK(csv.rfind("label1,label2,dBefore,dAfter,gap,class,caseTag\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == report.pairs.size() + 1);

    const std::string summary = expansion_report_summary_json(report);
    const auto parsed = nlohmann::json::parse(summary);
    CHECK(parsed.at("isExpansion").get<bool>());
    CHECK(parsed.at("pairs").get<int>() == 36);
    CHECK(parsed.at("contract").get<int>() == 0);
}

TEST_CASE("motion sample JSON and CSV") {
    const FlappedPair pair = planar_pair();
    const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 4);

    const std::string text = motion_sample_to_json(sample);
    const MotionSample back = motion_sample_from_json(text);
    CHECK(back.ambient_dim == sample.ambient_dim);
    REQUIRE(back.grid == sample.grid);
    REQUIRE(back.labels == sample.labels);
    for (int m = 0; m < sample.frame_count(); ++m)
        for (int k = 0; k < sample.size(); ++k)
            CHECK(back.frames[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] ==
                  sample.frames[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)]);

    const std::string csv = motion_sample_to_csv(sample);
    CHECK(csv.rfind("t,label,kind,i,j,x0,x1,x2,x3\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == static_cast<std::size_t>(sample.frame_count() * sample.size()) + 1);

    CHECK_THROWS_AS(motion_sample_from_json("{\"ambientDim\":4}"), InputError);
}

TEST_CASE("pipeline results serialize with their certificates") {
    const FlappedPair pair = planar_pair();
    const MotionSample sample =
        truncate_sample(sample_motion(alexander_motion(pair.p, pair.q), 50), 3);
    const PipelineResult result = obstruction_pipeline(sample, pair.spec, 1e-9);
    const std::string text = pipeline_result_to_json(result);
    const auto parsed = nlohmann::json::parse(text);
    CHECK(parsed.at("outcome").get<std::string>() == "certificate");
    CHECK(parsed.at("certificate").at("kind").get<std::string>() == "monotonicityViolation");
    CHECK(!parsed.at("narrative").get<std::string>().empty());
}

TEST_CASE("search results serialize with evidence labeling") {
    const FlappedPair pair = planar_pair();
    SearchOptions options;
    options.ambient_dim = 3;
    options.waypoint_count = 3;
    options.budget = 10;
    options.restarts = 2;
    options.seed = 2;
    const SearchResult result = optimize_expansion_path(pair.p, pair.q, options);

    const auto parsed = nlohmann::json::parse(search_result_to_json(result));
    CHECK(parsed.at("evidence").get<bool>());
    CHECK(parsed.at("restartResiduals").size() == 2);
    CHECK(parsed.at("motion").at("waypointCount").get<int>() == 3);

    const std::string csv = search_history_to_csv(result);
    CHECK(csv.rfind("iteration,residual\n", 0) == 0);
}

TEST_CASE("svg snapshots are deterministic and validated") {
    const FlappedPair pair = planar_pair();
    const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 4);

    const std::string a = svg_snapshot_string(sample, 0.5);
    const std::string b = svg_snapshot_string(sample, 0.5);
    CHECK(a == b);
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);

    // off-grid times and non-planar layouts are rejected
    CHECK_THROWS_AS(svg_snapshot_string(sample, 0.3), InputError);
    const FlappedPair solid = build_flapped_pair(make_flap_spec(regular_simplex(3), 0.5));
    const MotionSample sample3 = sample_motion(alexander_motion(solid.p, solid.q), 4);
    CHECK_THROWS_AS(svg_snapshot_string(sample3, 0.5), DimensionError);
}

TEST_CASE("text files gain exactly one trailing newline") {
    const std::string path = "/tmp/flapex_io_test.txt";
    write_text_file(path, "hello");
    CHECK(read_text_file(path) == "hello\n");
    write_text_file(path, "hello\n");
    CHECK(read_text_file(path) == "hello\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_text_file("/nonexistent/nowhere.json"), InputError);
}
