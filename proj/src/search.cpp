#include "copos/search.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

#include "copos/generators.hpp"
#include "json.hpp"

namespace copos {

using nlohmann::json;

SearchReport run_search_t6(const SearchParams& params) {
    if (params.samples < 1) throw std::invalid_argument("search: samples must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    SearchReport report;
    report.params = params;
    for (int i = 0; i < params.samples; ++i) {
        const T6Flavor flavor = static_cast<T6Flavor>(i % 3);
        const std::uint64_t sample_seed = params.seed * 0x100000001b3ull + i;
        const GeneratedInstance inst = gen_t6(flavor, sample_seed);

        SampleVerdict v;
        v.index = i;
        v.flavor = inst.labels.at("flavor");
        v.sample_seed = sample_seed;

        CopositivityOptions copt;
        copt.max_depth = params.max_depth;
        copt.witness_tol = params.witness_tol;
        const CopositivityVerdict cv = check_copositive(inst.matrix, copt);
        v.copositivity = to_string(cv.status);
        v.depth = cv.depth;
        if (cv.witness) {
            v.witness = cv.witness;
            v.witness_value = cv.witness_value;
        }

        const SpnSearch sv = check_spn(inst.matrix, params.max_iter, params.tol);
        v.spn_found = sv.certificate.has_value();
        v.gap = sv.gap;

        v.candidate = (cv.status == CopositivityStatus::Copositive) && !v.spn_found;
        if (v.candidate) report.candidates.push_back(i);
        report.results.push_back(std::move(v));
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::string report_to_json(const SearchReport& report) {
    json j;
    j["schema"] = 1;
    j["kind"] = "t6-search";
    j["params"] = {{"samples", report.params.samples},
                   {"seed", report.params.seed},
                   {"max_depth", report.params.max_depth},
                   {"max_iter", report.params.max_iter},
                   {"tol", report.params.tol},
                   {"witness_tol", report.params.witness_tol}};
    json rows = json::array();
    for (const auto& r : report.results) {
        json row = {{"index", r.index},
                    {"flavor", r.flavor},
                    {"sample_seed", r.sample_seed},
                    {"copositivity", r.copositivity},
                    {"depth", r.depth},
                    {"spn", r.spn_found ? "FOUND" : "NOT_FOUND"},
                    {"gap", r.gap},
                    {"unresolved_candidate", r.candidate}};
        if (r.witness) {
            row["witness"] = *r.witness;
            row["witness_value"] = r.witness_value;
        }
        rows.push_back(std::move(row));
    }
    j["results"] = std::move(rows);
    j["candidates"] = report.candidates;
    return j.dump(2) + "\n";
}

void write_search_report(const std::string& path, const SearchReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << report_to_json(report);
}

} // namespace copos
