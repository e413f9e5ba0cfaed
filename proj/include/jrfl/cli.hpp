#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jrfl/place.hpp"
#include "jrfl/satake.hpp"

namespace jrfl::cli {

enum class OutputFormat { json, csv, table };
std::string to_string(OutputFormat format);
OutputFormat output_format_from_string(const std::string& text);

// Everything a run depends on.  Sampled inputs are a pure function of
// (seed, trial index), so records do not depend on `workers`.
struct RunConfig {
    int q = 0;  // 0: the smallest prime exceeding 2n
    int ext_degree = 1;
    int n = 2;
    PlaceKind place = PlaceKind::inert;
    int prec = 30;
    std::uint64_t seed = 1;
    int trials = 10;
    std::string lambda;          // "1,-1"; empty means the zero coweight
    std::optional<int> bound;    // max val Disc of sampled points
    int workers = 1;
    std::optional<OutputFormat> out;  // default: csv for kostka, table for selftest, json otherwise
    std::string parity = "any";  // even | odd | any, for sampled points
    // casecheck
    std::string scenario_case = "A";
    std::string involution;      // 1-based images, e.g. "1,3,2,4"; default identity (A) or swap of 1,2 (B)
    std::string e, e_dual;       // comma-separated valuations, default zeros
    // kostka
    int size = 4;

    int resolved_q() const;
    int residue_characteristic() const;
    PlaceData place_data() const;
    Coweight lambda_coweight() const;
    OutputFormat output_for(const std::string& subcommand) const;
    nlohmann::json to_json() const;
};

using Record = nlohmann::json;

struct RunResult {
    int exit_status = 0;
    std::vector<Record> records;  // one per trial, in trial order
    std::size_t passed = 0, failed = 0;
    std::string digest;
    std::vector<std::vector<std::string>> summary;  // selftest: subcommand, trials, passed, failed
};

const std::vector<std::string>& subcommand_names();

// Deterministic given (name, config); exit_status is nonzero when any record
// has a verdict other than the expected one.  Throws ConfigError.
RunResult run_subcommand(const std::string& name, const RunConfig& config);

// SHA-256 over the canonical serialization of the records, one per line.
std::string report_digest(const std::vector<Record>& records);

void write_report(std::ostream& out, const std::string& name, const RunConfig& config, const RunResult& result);

// Thrown by parse_command_line for --help; carries the usage text.
struct HelpRequested {
    std::string text;
};

struct Invocation {
    std::string subcommand;
    RunConfig config;
};
// Parses flags and an optional flat key=value file given by --config;
// command-line flags take precedence over the file.  Throws ConfigError.
Invocation parse_command_line(const std::vector<std::string>& args);

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jrfl::cli
