#ifndef COPOS_SEARCH_HPP
#define COPOS_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "copos/cones.hpp"

namespace copos {

struct SearchParams {
    int samples = 100;
    std::uint64_t seed = 0;
    int max_depth = 12;
    int max_iter = 20'000;
    double tol = 1e-8;
    double witness_tol = 1e-10;
};

struct SampleVerdict {
    int index = 0;
    std::string flavor;
    std::uint64_t sample_seed = 0;  // full replay parameter
    std::string copositivity;
    int depth = 0;
    std::optional<std::vector<double>> witness;
    double witness_value = 0.0;
    bool spn_found = false;
    double gap = 0.0;
    bool candidate = false;  // copositive with no decomposition found
};

struct SearchReport {
    SearchParams params;
    std::vector<SampleVerdict> results;
    std::vector<int> candidates;
    double wall_seconds = 0.0;  // measured per run; not serialized
};

// Sweeps order-6 T6-patterned samples (nonnegative fillings, pivot lifts of
// certifiable T5 instances, and perturbed lifts), filters for shapes that
// look copositive but resist the SPN search, and reports them as unresolved
// candidates for human follow-up. Deterministic for a fixed seed.
SearchReport run_search_t6(const SearchParams& params);

// Deterministic serialization: wall time is deliberately excluded so repeat
// runs with the same seed produce byte-identical files.
std::string report_to_json(const SearchReport& report);

void write_search_report(const std::string& path, const SearchReport& report);

} // namespace copos

#endif
