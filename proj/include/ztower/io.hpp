#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ztower/error.hpp"
#include "ztower/iwasawa.hpp"
#include "ztower/pipeline.hpp"
#include "ztower/tower.hpp"

namespace ztower::io {

using nlohmann::json;

struct InputIssue {
    std::string pointer; // JSON pointer into the document, "" for parse errors
    std::string message;
};

class InputError : public Error {
  public:
    explicit InputError(std::vector<InputIssue> issues);
    const std::vector<InputIssue> &issues() const noexcept { return issues_; }

  private:
    std::vector<InputIssue> issues_;
};

struct EdgeSpec {
    std::string id;
    std::string from;
    std::string to;
    PadicScalar voltage;
};

/// {p, vertices, edges: [{id, from, to, voltage}], ramification: {name: k}}.
/// Voltages are integers, decimal strings, or {digits: [d0, d1, ...], precision: N}.
struct InputDocument {
    unsigned p = 2;
    std::vector<std::string> vertices;
    std::vector<EdgeSpec> edges;
    std::map<std::string, unsigned> ramification;
};

InputDocument parse_input(const std::string &text);
InputDocument load_input(const std::filesystem::path &path);

/// Base edge i of the document becomes directed edges 2i (as listed) and 2i+1.
VoltageGraph to_voltage_graph(const InputDocument &doc);

json level_to_json(const LevelGraph &level, const VoltageGraph &vg,
                   const std::vector<std::string> &edge_ids);
/// Inverse of level_to_json; throws InputError on inconsistent documents.
LevelGraph level_from_json(const json &doc, const VoltageGraph &vg,
                           const std::vector<std::string> &edge_ids);
std::string level_to_dot(const LevelGraph &level, const VoltageGraph &vg,
                         const std::vector<std::string> &edge_ids);

json char_series_to_json(const CharSeries &f);
json invariants_to_json(const Invariants &inv);
json level_data_to_json(const LevelData &level);
json report_to_json(const VerificationReport &report);

} // namespace ztower::io
