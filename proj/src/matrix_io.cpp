#include "kreiss/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kreiss/error.hpp"

namespace kreiss {

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& value, const std::string& field) {
  if (value.is_number()) {
    const double re = value.get<double>();
    if (!std::isfinite(re)) throw ParseError(field, "non-finite value");
    return {re, 0.0};
  }
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
    throw ParseError(field, "expected [re, im]");
  }
  const double re = value[0].get<double>();
  const double im = value[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError(field, "non-finite value");
  return {re, im};
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", m.size()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("<root>", "expected a JSON object");
  if (!doc.contains("n")) throw ParseError("n", "missing");
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw ParseError("n", "expected a positive integer");
  }
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
  if (!doc.contains("entries")) throw ParseError("entries", "missing");
  const auto& rows = doc["entries"];
  if (!rows.is_array() || rows.size() != n) {
    throw ParseError("entries", "expected " + std::to_string(n) + " rows");
  }
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_field = "entries[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || rows[i].size() != n) {
      throw ParseError(row_field, "ragged row, expected " + std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      entries.push_back(complex_from_json(rows[i][j], row_field + "[" + std::to_string(j) + "]"));
    }
  }
  return ComplexMatrix(n, std::move(entries));
}

nlohmann::json parse_json(std::istream& in) {
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("<root>", e.what());
  }
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("<file>", "cannot open '" + path + "'");
  return matrix_from_json(parse_json(in));
}

std::optional<Spectrum> spectrum_from_json(const nlohmann::json& doc, std::size_t n) {
  if (!doc.is_object() || !doc.contains("spectrum")) return std::nullopt;
  const auto& values = doc["spectrum"];
  if (!values.is_array() || values.size() != n) {
    throw ParseError("spectrum", "expected " + std::to_string(n) + " eigenvalues");
  }
  std::vector<Complex> eig;
  for (std::size_t i = 0; i < n; ++i) eig.push_back(complex_from_json(values[i], "spectrum[" + std::to_string(i) + "]"));
  return Spectrum::from_eigenvalues(std::move(eig));
}

}  // namespace kreiss
