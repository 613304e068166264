#pragma once

#include <cstdint>
#include <string>

#include "elci/mc.hpp"

namespace elci {
namespace tables {

struct TableResult {
    std::string tsv;          // full report, header line first
    double max_deviation = 0.0;  // vs the published cell values
    std::size_t cells = 0;
    std::string summary;      // one-line human summary
};

// Reproduces one of the five built-in study tables (1..5) at the given
// replication count. Output is byte-stable for a fixed seed regardless of
// thread count or execution policy.
TableResult run_table(int table_id, std::size_t reps, std::uint64_t seed,
                      ExecPolicy policy = ExecPolicy::openmp,
                      int max_threads = 0);

// Runs a study described by a JSON scenario file (see README for schema).
TableResult run_custom(const std::string& json_text, std::size_t reps,
                       std::uint64_t seed,
                       ExecPolicy policy = ExecPolicy::openmp,
                       int max_threads = 0);

}  // namespace tables
}  // namespace elci
