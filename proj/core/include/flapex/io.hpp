#pragma once

#include <string>

#include "flapex/expansion.hpp"
#include "flapex/flaps.hpp"
#include "flapex/motion.hpp"
#include "flapex/obstruction.hpp"
#include "flapex/search.hpp"

namespace flapex {

/// Shortest fixed formatting that round-trips doubles exactly (17 significant
/// digits); used by every serializer below.
std::string format_double(double v);

std::string configuration_to_json(const Configuration& config);
Configuration configuration_from_json(const std::string& text);

std::string flapped_pair_to_json(const FlappedPair& pair);
FlappedPair flapped_pair_from_json(const std::string& text);

std::string motion_sample_to_json(const MotionSample& sample);
MotionSample motion_sample_from_json(const std::string& text);
std::string motion_sample_to_csv(const MotionSample& sample);

std::string expansion_report_to_csv(const ExpansionReport& report);
std::string expansion_report_summary_json(const ExpansionReport& report);

std::string pipeline_result_to_json(const PipelineResult& result);

std::string search_result_to_json(const SearchResult& result);
std::string search_history_to_csv(const SearchResult& result);

std::string simplex_report_to_json(const Simplex& simplex, const ObtuseCheck& check);

std::string embedding_report_to_json(const EmbeddingReport& report);

/// Writes content to path, ensuring exactly one trailing newline.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace flapex
