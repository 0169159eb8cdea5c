#pragma once

// Command orchestration shared by the C API and the command line tool:
// config parsing and validation, the six commands, and atomic artifact
// emission (report.json, table.csv, optional field.dump).

#include <cstdint>
#include <memory>
#include <string>

#include "json.hpp"

namespace bsq {

using Json = nlohmann::ordered_json;

struct RunResult {
    int exit_code = 0;      // 0 pass, 1 checks failed, 2 config rejected
    Json report;            // report.json payload
    std::string table;      // table.csv payload
    std::string field_dump; // field.dump payload, empty when not requested
};

extern const char* const kCommands[6];  // selftest, verify-domain, rates-approx,
                                        // rates-recovery, stechkin, extend

// runs one command against a parsed config; seed_override replaces the
// config seed when has_seed is set; throws std::invalid_argument with a
// config field path on validation errors
RunResult run_command(const std::string& command, const Json& config, std::uint64_t seed_override,
                      bool has_seed);

// builds a domain from its JSON description ({"type":"ball",...});
// throws std::invalid_argument naming the offending field
class Domain;
std::shared_ptr<const Domain> domain_from_json(const Json& spec);

// writes report.json, table.csv, and field.dump (when present) under
// out_dir; each file lands through a temp name plus rename
void write_artifacts(const RunResult& res, const std::string& out_dir);

// convenience wrapper: load config from a file, run, write artifacts
// atomically under out_dir; returns the exit code and fills error_out on
// rejection
int run_to_directory(const std::string& command, const std::string& config_path,
                     const std::string& out_dir, std::uint64_t seed_override, bool has_seed,
                     std::string& error_out);

}  // namespace bsq
