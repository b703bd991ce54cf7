#pragma once

#include "kreiss/linalg.hpp"
#include "oracles.hpp"

inline oracle::Dense to_dense(const kreiss::ComplexMatrix& m) {
  oracle::Dense d = oracle::zeros(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) d[i][j] = m(i, j);
  return d;
}

inline kreiss::ComplexMatrix from_rows(std::initializer_list<std::initializer_list<kreiss::Complex>> rows) {
  kreiss::ComplexMatrix m(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline double max_abs_difference(const kreiss::ComplexMatrix& a, const kreiss::ComplexMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
  return d;
}
