#ifndef ZK_EXPERIMENT_HPP
#define ZK_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zk/config.hpp"

namespace zk {

// A named run: kind selects the experiment, config carries flat key = value
// parameters (validated against the kind's schema: unknown keys are rejected,
// missing required keys are reported by name), seed feeds every random draw,
// and out_dir receives the artifacts plus a manifest with their checksums.
struct ExperimentSpec {
    std::string kind;
    Config config;
    uint64_t seed = 0;
    std::string out_dir = ".";
};

struct ExperimentResult {
    std::vector<std::string> artifacts;  // file names written into out_dir
    std::string summary;                 // contents of summary.txt
};

const std::vector<std::string>& experiment_kinds();

// Byte-deterministic for a fixed (kind, config, seed): reruns produce identical
// artifacts.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Re-render columns of a CSV artifact as whitespace-separated plot data.  An
// empty column list selects every column; log10 maps nonpositive entries to nan.
void emit_plotdata(const std::string& csv_path, const std::string& out_path,
                   const std::vector<std::string>& columns = {}, bool log10 = false);

} // namespace zk

#endif
