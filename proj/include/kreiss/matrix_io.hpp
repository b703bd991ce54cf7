#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "kreiss/linalg.hpp"

namespace kreiss {

// Matrix file format: {"n": <int>, "entries": [[[re, im], ...], ...]} row-major, with an
// optional "spectrum": [[re, im], ...] listing the exact eigenvalues.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
/// Throws ParseError naming the offending field on ragged rows, wrong counts or non-finite values.
ComplexMatrix matrix_from_json(const nlohmann::json& doc);
ComplexMatrix read_matrix_file(const std::string& path);

/// The optional "spectrum" member; must hold exactly n values when present.
std::optional<Spectrum> spectrum_from_json(const nlohmann::json& doc, std::size_t n);
/// Parses a whole stream as JSON, raising ParseError("<root>") on syntax errors.
nlohmann::json parse_json(std::istream& in);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& value, const std::string& field);

}  // namespace kreiss
