#pragma once

#include <map>
#include <string>

namespace kreiss {

/// One evaluated inequality instance: lhs <= rhs (+ tol).
struct BoundRecord {
  std::string inequality_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  std::map<std::string, double> params;
  std::string norm;  // "l1", "l2", "linf" or empty for function-space checks
  double tol = 0.0;
  bool pass = false;

  static BoundRecord make(std::string id, double lhs, double rhs, double tol,
                          std::map<std::string, double> params = {}, std::string norm = {});
};

/// Header and row of the CSV serialization:
/// inequality_id,n,r,alpha,l,p,norm,lhs,rhs,margin,pass
std::string csv_header();
std::string to_csv_row(const BoundRecord& record);

}  // namespace kreiss
