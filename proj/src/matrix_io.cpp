#include "copos/matrix_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace copos {

using nlohmann::json;

MatrixDocument MatrixDocument::from_instance(const GeneratedInstance& inst) {
    MatrixDocument doc;
    doc.matrix = inst.matrix;
    doc.theta = inst.theta;
    doc.metadata = inst.labels;
    doc.metadata["generator"] = inst.kind;
    doc.metadata["seed"] = std::to_string(inst.seed);
    return doc;
}

std::string to_json(const MatrixDocument& doc) {
    json j;
    j["schema"] = doc.schema;
    j["order"] = doc.matrix.order();
    j["upper"] = std::vector<double>(doc.matrix.upper().begin(), doc.matrix.upper().end());
    json meta = json::object();
    for (const auto& [k, v] : doc.metadata) meta[k] = v;
    if (doc.theta) meta["theta_values"] = std::vector<double>(doc.theta->begin(), doc.theta->end());
    j["metadata"] = meta;
    return j.dump(2) + "\n";
}

MatrixDocument parse_matrix_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("matrix document: ") + e.what());
    }
    if (!j.contains("schema") || j["schema"].get<int>() != 1)
        throw std::invalid_argument("matrix document: unsupported schema");
    const int order = j.at("order").get<int>();
    if (order < 1 || order > 32)
        throw std::invalid_argument("matrix document: order out of range");
    auto upper = j.at("upper").get<std::vector<double>>();
    if (static_cast<int>(upper.size()) != order * (order + 1) / 2)
        throw std::invalid_argument("matrix document: upper-triangle entry count mismatch");

    MatrixDocument doc;
    doc.matrix = SymMatrix::from_upper(order, std::move(upper));
    if (j.contains("metadata")) {
        for (const auto& [k, v] : j["metadata"].items()) {
            if (k == "theta_values") {
                const auto vals = v.get<std::vector<double>>();
                if (vals.size() != 5)
                    throw std::invalid_argument("matrix document: theta must have 5 components");
                std::array<double, 5> t{};
                std::copy(vals.begin(), vals.end(), t.begin());
                ThetaVector check(t);  // enforces the angle invariants
                doc.theta = t;
            } else if (v.is_string()) {
                doc.metadata[k] = v.get<std::string>();
            } else {
                doc.metadata[k] = v.dump();
            }
        }
    }
    return doc;
}

void write_matrix_document(const std::string& path, const MatrixDocument& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << to_json(doc);
}

MatrixDocument read_matrix_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix_document(ss.str());
}

} // namespace copos
