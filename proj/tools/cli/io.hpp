#pragma once

// File formats of the command-line tool: channel and strategy JSON documents,
// frontier CSV and its JSON sidecar, and JSON renderings of every report.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bcregions/bounds.hpp"
#include "bcregions/channel.hpp"
#include "bcregions/identity_lab.hpp"
#include "bcregions/region_search.hpp"

namespace bcr::cli {

using json = nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Document does not have the expected members, types or array shapes.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

// Throws SchemaError for structural problems and ValidationError listing every
// normalization or sign violation with its index path. The result is normalized.
StateBroadcastChannel channel_from_json(const json& doc);
StateBroadcastChannel parse_channel(const std::filesystem::path& path);
json channel_to_json(const StateBroadcastChannel& c);

// Shapes are checked against the channel's alphabets.
Strategy strategy_from_json(const json& doc, const StateBroadcastChannel& c);
Strategy parse_strategy(const std::filesystem::path& path, const StateBroadcastChannel& c);
json strategy_to_json(const Strategy& s, const Alphabets& a);

// 17 significant digits.
std::string format_double(double v);

json rates_to_json(const RateTriple& t);
json eval_to_json(const StateBroadcastChannel& c, const Strategy& s, double markov_tolerance);
json audit_to_json(const AuditReport& r);
json frontier_to_json(const FrontierPolyline& f);
json comparison_to_json(const BoundComparison& cmp);

// Header "mu1,mu2,R1,R2,value", one row per frontier vertex.
std::string frontier_csv(const FrontierPolyline& f);
json frontier_sidecar(const FrontierPolyline& f, const StateBroadcastChannel& c,
                      const SearchConfig& cfg);
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

}  // namespace bcr::cli
