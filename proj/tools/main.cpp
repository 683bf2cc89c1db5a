// Command-line surface for the order-5 copositive-cone toolkit: instance
// generation, cone membership checks with certificates, constructive SPN
// certification, family classification, and the order-6 search harness.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "copos/certify.hpp"
#include "copos/cones.hpp"
#include "copos/generators.hpp"
#include "copos/graphs.hpp"
#include "copos/matrix_io.hpp"
#include "copos/s_family.hpp"
#include "copos/search.hpp"
#include "json.hpp"

namespace {

using namespace copos;
using nlohmann::json;

constexpr int kExitVerified = 0;
constexpr int kExitNegative = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitInputError = 4;

// Bare output names land in COPOS_OUT_DIR when it is set.
std::string resolve_out(const std::string& name) {
    if (name.empty() || name.find('/') != std::string::npos) return name;
    const char* dir = std::getenv("COPOS_OUT_DIR");
    if (!dir || !*dir) return name;
    std::string d(dir);
    if (d.back() != '/') d += '/';
    return d + name;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

json upper_json(const SymMatrix& m) {
    return json(std::vector<double>(m.upper().begin(), m.upper().end()));
}

json certificate_json(const SpnCertificate& cert) {
    return json{{"schema", 1},
                {"type", "spn-certificate"},
                {"order", cert.p.order()},
                {"p_upper", upper_json(cert.p)},
                {"n_upper", upper_json(cert.n)},
                {"tol", cert.tol}};
}

json trace_json(const CertifyTrace& trace) {
    json steps = json::array();
    for (const auto& st : trace.steps) steps.push_back({{"op", st.op}, {"detail", st.detail}});
    return json{{"schema", 1},
                {"type", "certify-trace"},
                {"route", to_string(trace.route)},
                {"steps", std::move(steps)},
                {"certificate", certificate_json(trace.certificate)}};
}

ThetaVector parse_theta(const std::vector<double>& vals) {
    if (vals.size() != 5) throw std::invalid_argument("theta needs exactly 5 components");
    std::array<double, 5> t{};
    std::copy(vals.begin(), vals.end(), t.begin());
    return ThetaVector(t);
}

int cmd_gen(const std::string& kind, std::uint64_t seed, const std::vector<double>& theta,
            int n, const std::string& route, const std::string& out) {
    GeneratedInstance inst = gen_horn();
    if (kind == "horn") {
        inst = gen_horn();
    } else if (kind == "s-theta") {
        inst = gen_s_theta(parse_theta(theta));
    } else if (kind == "hildebrand") {
        inst = gen_hildebrand(seed);
    } else if (kind == "t5-spn") {
        T5Flavor flavor = T5Flavor::Theta;
        if (route == "auto" || route.empty())
            flavor = static_cast<T5Flavor>(seed % 5);
        else if (route == "theta")
            flavor = T5Flavor::Theta;
        else if (route == "slack")
            flavor = T5Flavor::Slack;
        else if (route == "boundary")
            flavor = T5Flavor::Boundary;
        else if (route == "bordered")
            flavor = T5Flavor::Bordered;
        else if (route == "schur")
            flavor = T5Flavor::Schur;
        else
            throw std::invalid_argument("unknown t5-spn route: " + route);
        inst = gen_t5(flavor, seed);
    } else if (kind == "k2n") {
        inst = (route == "nonneg") ? gen_k2n_nonneg(n, seed) : gen_k2n(n, seed);
    } else if (kind == "dominating") {
        inst = gen_dominating(seed);
    } else if (kind == "t6") {
        T6Flavor flavor = T6Flavor::Lift;
        if (route == "nonneg")
            flavor = T6Flavor::Nonneg;
        else if (route == "perturbed")
            flavor = T6Flavor::Perturbed;
        inst = gen_t6(flavor, seed);
    } else {
        throw std::invalid_argument("unknown generator kind: " + kind);
    }
    const MatrixDocument doc = MatrixDocument::from_instance(inst);
    if (out.empty()) {
        std::cout << to_json(doc);
    } else {
        write_matrix_document(resolve_out(out), doc);
        std::cout << "wrote " << resolve_out(out) << "\n";
    }
    return kExitVerified;
}

int cmd_check(const std::string& file, const std::string& which, std::optional<double> tol,
              int max_depth, int max_iter, const std::string& out, const std::string& format) {
    const MatrixDocument doc = read_matrix_document(file);
    const SymMatrix& a = doc.matrix;
    json result{{"file", file}, {"which", which}, {"order", a.order()}};
    int exit_code = kExitVerified;
    std::string text;

    if (which == "psd") {
        const auto r = is_psd(a, tol.value_or(1e-9));
        result["psd"] = r.psd;
        result["min_eigenvalue"] = r.min_eigenvalue;
        text = std::string(r.psd ? "PSD" : "NOT_PSD") +
               " (min eigenvalue " + std::to_string(r.min_eigenvalue) + ")";
        exit_code = r.psd ? kExitVerified : kExitNegative;
    } else if (which == "nonneg") {
        const auto r = is_nonneg(a, tol.value_or(1e-12));
        result["nonneg"] = r.nonneg;
        result["min_entry"] = r.min_entry;
        text = std::string(r.nonneg ? "NONNEGATIVE" : "NOT_NONNEGATIVE") + " (min entry " +
               std::to_string(r.min_entry) + ")";
        exit_code = r.nonneg ? kExitVerified : kExitNegative;
    } else if (which == "copositive") {
        CopositivityOptions opt;
        opt.max_depth = max_depth;
        opt.witness_tol = tol.value_or(1e-10);
        const auto v = check_copositive(a, opt);
        result["status"] = to_string(v.status);
        result["depth"] = v.depth;
        result["cells"] = v.cells;
        text = std::string(to_string(v.status)) + " (depth " + std::to_string(v.depth) + ", " +
               std::to_string(v.cells) + " cells)";
        if (v.status == CopositivityStatus::NotCopositive) {
            exit_code = kExitNegative;
            result["witness"] = *v.witness;
            result["witness_value"] = v.witness_value;
            if (!out.empty())
                write_text(resolve_out(out), json{{"schema", 1},
                                                  {"type", "witness"},
                                                  {"x", *v.witness},
                                                  {"value", v.witness_value}}
                                                 .dump(2) +
                                                 "\n");
        } else if (v.status == CopositivityStatus::Inconclusive) {
            exit_code = kExitInconclusive;
        }
    } else if (which == "spn") {
        const auto r = check_spn(a, max_iter, tol.value_or(1e-8));
        if (r.certificate) {
            result["status"] = "FOUND";
            result["iterations"] = r.iterations;
            text = "SPN certificate found (" + std::to_string(r.iterations) + " iterations)";
            if (!out.empty())
                write_text(resolve_out(out), certificate_json(*r.certificate).dump(2) + "\n");
        } else {
            // evidence only, never a proof of non-membership
            result["status"] = "NOT_FOUND";
            result["gap"] = r.gap;
            text = "NOT_FOUND (gap " + std::to_string(r.gap) + "; numerical evidence only)";
            exit_code = kExitInconclusive;
        }
    } else {
        throw std::invalid_argument("unknown check: " + which);
    }

    if (format == "json")
        std::cout << result.dump(2) << "\n";
    else
        std::cout << text << "\n";
    return exit_code;
}

int cmd_certify(const std::string& file, const std::string& theorem, bool allow_unproved,
                const std::string& out, const std::string& format) {
    const MatrixDocument doc = read_matrix_document(file);
    try {
        CertifyTrace trace = (theorem == "t5") ? certify_t5(doc.matrix)
                                               : certify_k2n(doc.matrix, allow_unproved);
        const bool valid = validate_certificate(doc.matrix, trace.certificate);
        if (!out.empty()) write_text(resolve_out(out), trace_json(trace).dump(2) + "\n");
        if (format == "json") {
            json j = trace_json(trace);
            j["validated"] = valid;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "route " << to_string(trace.route) << ", "
                      << (valid ? "certificate validates" : "CERTIFICATE INVALID") << "\n";
            for (const auto& st : trace.steps)
                std::cout << "  " << st.op << (st.detail.empty() ? "" : ": " + st.detail) << "\n";
        }
        return valid ? kExitVerified : kExitInconclusive;
    } catch (const out_of_proved_range& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const certify_error& e) {
        std::cerr << e.what() << "\n";
        for (const auto& d : e.diagnostics()) std::cerr << "  " << d << "\n";
        return kExitInconclusive;
    }
}

int cmd_classify(const std::string& file, const std::string& format) {
    const MatrixDocument doc = read_matrix_document(file);
    json result{{"file", file}, {"order", doc.matrix.order()}};
    std::string text;
    if (doc.theta) {
        const SFamilyClass cls = classify_s(ThetaVector(*doc.theta));
        result["family_class"] = to_string(cls);
        text += std::string("family class: ") + to_string(cls) + "\n";
    }
    if (doc.matrix.order() == 5) {
        if (const auto m = match_t5(doc.matrix)) {
            result["pattern"] = to_string(m->kind);
            result["permutation"] = m->permutation;
            text += std::string("pattern: ") + to_string(m->kind) + "\n";
        }
    }
    if (const auto k = match_k2n(doc.matrix)) {
        result["pattern"] = to_string(k->kind);
        result["n"] = k->n;
        text += "pattern: K_{2," + std::to_string(k->n) + "}\n";
    }
    if (!result.contains("pattern") && !doc.theta) {
        result["pattern"] = "OTHER";
        text = "no family parameter and no recognized pattern\n";
    }
    if (format == "json")
        std::cout << result.dump(2) << "\n";
    else
        std::cout << text;
    return kExitVerified;
}

int cmd_search(int samples, std::uint64_t seed, int max_depth, int max_iter,
               const std::string& out, const std::string& format) {
    SearchParams params;
    params.samples = samples;
    params.seed = seed;
    params.max_depth = max_depth;
    params.max_iter = max_iter;
    const SearchReport report = run_search_t6(params);
    if (!out.empty()) write_search_report(resolve_out(out), report);
    if (format == "json") {
        std::cout << report_to_json(report);
    } else {
        int cop = 0, notcop = 0, inconc = 0;
        for (const auto& r : report.results) {
            if (r.copositivity == "COPOSITIVE") ++cop;
            else if (r.copositivity == "NOT_COPOSITIVE") ++notcop;
            else ++inconc;
        }
        std::cout << report.results.size() << " samples: " << cop << " copositive, " << notcop
                  << " not, " << inconc << " inconclusive; " << report.candidates.size()
                  << " unresolved candidates\n";
        for (int idx : report.candidates)
            std::cout << "  candidate #" << idx << " (seed "
                      << report.results[idx].sample_seed << ", gap "
                      << report.results[idx].gap << ")\n";
    }
    // Timing goes to stderr so report files stay byte-reproducible.
    std::cerr << "search wall time: " << report.wall_seconds << " s\n";
    return kExitVerified;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"order-5 copositive cone toolkit"};
    app.require_subcommand(1);

    std::string kind, file, which = "copositive", theorem = "t5", route, out, format = "text";
    std::vector<double> theta;
    std::uint64_t seed = 0;
    int n = 3, max_depth = 24, max_iter = 50'000, samples = 100;
    std::optional<double> tol;
    bool allow_unproved = false;

    auto* gen = app.add_subcommand("gen", "generate a matrix document");
    gen->add_option("kind", kind, "horn | s-theta | hildebrand | t5-spn | k2n | dominating | t6")
        ->required();
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--theta", theta, "five angles (radians)")->delimiter(',');
    gen->add_option("--n", n, "part-two size for k2n");
    gen->add_option("--route", route, "flavor selector for t5-spn / k2n / t6");
    gen->add_option("--out", out, "output file (default: stdout)");

    auto* check = app.add_subcommand("check", "cone membership checks");
    check->add_option("file", file, "matrix document")->required();
    check->add_option("--which", which, "psd | nonneg | copositive | spn");
    check->add_option("--tol", tol, "tolerance for the selected check");
    check->add_option("--max-depth", max_depth, "subdivision depth limit");
    check->add_option("--max-iter", max_iter, "projection iteration limit");
    check->add_option("--out", out, "certificate/witness file");
    check->add_option("--format", format, "text | json");

    auto* certify = app.add_subcommand("certify", "constructive SPN certification");
    certify->add_option("file", file, "matrix document")->required();
    certify->add_option("--theorem", theorem, "t5 | k2n");
    certify->add_flag("--allow-unproved", allow_unproved,
                      "attempt K_{2,n} beyond the proved range heuristically");
    certify->add_option("--out", out, "trace file");
    certify->add_option("--format", format, "text | json");

    auto* classify = app.add_subcommand("classify", "family class and graph pattern");
    classify->add_option("file", file, "matrix document")->required();
    classify->add_option("--format", format, "text | json");

    auto* search = app.add_subcommand("search-t6", "order-6 open-question harness");
    search->add_option("--samples", samples, "number of samples");
    search->add_option("--seed", seed, "search seed");
    search->add_option("--max-depth", max_depth, "subdivision depth per sample")
        ->default_val(12);
    search->add_option("--max-iter", max_iter, "projection iterations per sample")
        ->default_val(20'000);
    search->add_option("--out", out, "report file");
    search->add_option("--format", format, "text | json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(kind, seed, theta, n, route, out);
        if (check->parsed())
            return cmd_check(file, which, tol, max_depth, max_iter, out, format);
        if (certify->parsed()) return cmd_certify(file, theorem, allow_unproved, out, format);
        if (classify->parsed()) return cmd_classify(file, format);
        if (search->parsed()) return cmd_search(samples, seed, max_depth, max_iter, out, format);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
