#ifndef COPOS_MATRIX_IO_HPP
#define COPOS_MATRIX_IO_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "copos/generators.hpp"
#include "copos/sym_matrix.hpp"

namespace copos {

// On-disk matrix document (schema 1): order, row-major upper triangle, and
// free-form string metadata plus an optional angle vector. Floats are
// serialized with shortest round-trip representations, so write -> read is
// lossless and files stay diffable.
struct MatrixDocument {
    int schema = 1;
    SymMatrix matrix{1};
    std::optional<std::array<double, 5>> theta;
    std::map<std::string, std::string> metadata;

    static MatrixDocument from_instance(const GeneratedInstance& inst);
};

std::string to_json(const MatrixDocument& doc);
MatrixDocument parse_matrix_document(const std::string& text);

void write_matrix_document(const std::string& path, const MatrixDocument& doc);
MatrixDocument read_matrix_document(const std::string& path);

} // namespace copos

#endif
