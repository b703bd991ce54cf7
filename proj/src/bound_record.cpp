#include "kreiss/bound_record.hpp"

#include <cmath>

#include <fmt/format.h>

namespace kreiss {

BoundRecord BoundRecord::make(std::string id, double lhs, double rhs, double tol,
                              std::map<std::string, double> params, std::string norm) {
  BoundRecord r;
  r.inequality_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tol = tol;
  r.params = std::move(params);
  r.norm = std::move(norm);
  if (std::isinf(rhs) && rhs > 0) {
    r.margin = std::isinf(lhs) && lhs > 0 ? 0.0 : rhs;
    r.pass = true;
  } else {
    r.margin = rhs - lhs;
    r.pass = lhs <= rhs + tol;
  }
  return r;
}

namespace {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", x);
}

std::string param_field(const BoundRecord& r, const char* key) {
  const auto it = r.params.find(key);
  return it == r.params.end() ? std::string{} : format_number(it->second);
}

}  // namespace

std::string csv_header() { return "inequality_id,n,r,alpha,l,p,norm,lhs,rhs,margin,pass"; }

std::string to_csv_row(const BoundRecord& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{}", r.inequality_id, param_field(r, "n"),
                     param_field(r, "r"), param_field(r, "alpha"), param_field(r, "l"),
                     param_field(r, "p"), r.norm, format_number(r.lhs), format_number(r.rhs),
                     format_number(r.margin), r.pass ? "true" : "false");
}

}  // namespace kreiss
