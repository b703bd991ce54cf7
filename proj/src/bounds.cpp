#include "kreiss/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kreiss/error.hpp"
#include "kreiss/gallery.hpp"

namespace kreiss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kUnitRadius = 1.0 - 1e-9;
constexpr std::size_t kDsSamples = 40;

double tolerance(double rhs) { return 1e-6 * std::max(1.0, std::abs(rhs)); }

struct IdName {
  InequalityId id;
  std::string_view name;
};

constexpr IdName kNames[] = {
    {InequalityId::rho_le_P, "rho_le_P"},
    {InequalityId::kreiss_matrix_2en, "kreiss_matrix_2en"},
    {InequalityId::spijker_en, "spijker_en"},
    {InequalityId::bernstein_thmA, "bernstein_thmA"},
    {InequalityId::thm3_upper, "thm3_upper"},
    {InequalityId::thm3_sharpness, "thm3_sharpness"},
    {InequalityId::thm3_kmt, "thm3_kmt"},
    {InequalityId::thm4_probe, "thm4_probe"},
    {InequalityId::ds_bound, "ds_bound"},
    {InequalityId::z3_bound, "z3_bound"},
    {InequalityId::thm7_probe, "thm7_probe"},
    {InequalityId::hardy_w, "hardy_w"},
};

void require_l2(InequalityId id, NormKind norm) {
  if (norm != NormKind::l2) {
    throw HypothesisViolation(std::string(to_string(id)) + " holds for the Hilbert norm only");
  }
}

void require_inside(InequalityId id, double radius) {
  if (radius >= kUnitRadius) {
    throw HypothesisViolation(std::string(to_string(id)) + " requires spectral radius < 1");
  }
}

BoundRecord probe_record(InequalityId id, double lhs, double normalizer, double power,
                         std::map<std::string, double> params, NormKind norm) {
  params["K_fit"] = lhs / (normalizer * power);
  BoundRecord rec = BoundRecord::make(std::string(to_string(id)), lhs, kInf, 0.0, std::move(params),
                                      std::string(to_string(norm)));
  rec.pass = std::isfinite(lhs);
  return rec;
}

}  // namespace

std::string_view to_string(InequalityId id) {
  for (const auto& entry : kNames) {
    if (entry.id == id) return entry.name;
  }
  return "unknown";
}

InequalityId parse_inequality_id(std::string_view text) {
  for (const auto& entry : kNames) {
    if (entry.name == text) return entry.id;
  }
  throw std::invalid_argument("unknown inequality id '" + std::string(text) + "'");
}

const std::vector<InequalityId>& all_inequality_ids() {
  static const std::vector<InequalityId> ids = [] {
    std::vector<InequalityId> out;
    for (const auto& entry : kNames) out.push_back(entry.id);
    return out;
  }();
  return ids;
}

bool is_function_inequality(InequalityId id) {
  return id == InequalityId::bernstein_thmA || id == InequalityId::hardy_w;
}

double thmA_constant(int n, double r, double p) {
  if (std::isinf(p)) return n;
  return std::pow(1.0 + r, 1.0 / p) * n / std::pow(1.0 - r, 1.0 / p);
}

double thm3_constant(int n, double r, double alpha) {
  return (std::numbers::pi + 1.0) * std::pow(2.0 * (1.0 + r), 1.0 - alpha) * n / std::pow(1.0 - r, 1.0 - alpha);
}

double spijker_constant(int n) { return std::numbers::e * n; }

double leveque_trefethen_constant(int n) { return 2.0 * std::numbers::e * n; }

double ds_constant(int n, double dist) { return std::pow(3.0 * n / dist, 1.5); }

double z3_constant(int n) {
  return (5.0 * std::numbers::pi / 3.0 + 2.0 * std::numbers::sqrt2) * std::pow(static_cast<double>(n), 1.5);
}

double thm4_normalizer(int n, int k, double r, double alpha) {
  return std::pow(static_cast<double>(n), k) * std::pow(1.0 - r, -(1.0 - alpha));
}

double thm7_normalizer(int n, int l) { return std::pow(static_cast<double>(n), l + 0.5); }

VerificationContext::VerificationContext(ComplexMatrix t, NormKind norm, std::optional<Spectrum> known_spectrum)
    : t_(std::move(t)), norm_(norm), spectrum_(std::move(known_spectrum)) {}

const Spectrum& VerificationContext::spectrum() {
  if (!spectrum_) spectrum_ = kreiss::spectrum(t_);
  return *spectrum_;
}

const PowerBound& VerificationContext::power_bound() {
  if (!power_) power_ = kreiss::power_bound(t_, norm_, spectrum().spectral_radius);
  return *power_;
}

const SupResult& VerificationContext::sup(const ResolventWeight& weight, const SupOptions& options) {
  const auto key = std::make_tuple(static_cast<int>(weight.kind), weight.power, weight.alpha);
  auto it = sups_.find(key);
  if (it == sups_.end()) {
    it = sups_.emplace(key, sup_weighted_resolvent(t_, norm_, weight, spectrum(), options)).first;
  }
  return it->second;
}

BoundRecord verify(InequalityId id, VerificationContext& ctx, const VerifyParams& params) {
  if (is_function_inequality(id)) {
    throw std::invalid_argument(std::string(to_string(id)) + " is evaluated on rational functions");
  }
  if (id == InequalityId::thm3_sharpness) {
    throw std::invalid_argument("thm3_sharpness is evaluated by thm3_sharpness_probe");
  }
  const PowerBound& pb = ctx.power_bound();
  // An uncertified bound still growing in the second half of the run is treated as unbounded.
  if (pb.unbounded || (!pb.certified && 2 * pb.k_attained > pb.k_last)) {
    throw HypothesisViolation("the matrix is not power bounded");
  }
  const double power = pb.value;
  const int n = ctx.dimension();
  const double radius = ctx.spectrum().spectral_radius;
  const NormKind norm = ctx.norm();
  const std::string norm_name(to_string(norm));
  const std::string name(to_string(id));
  std::map<std::string, double> base{{"n", n}, {"r", radius}};

  auto make = [&](double lhs, double rhs, std::map<std::string, double> extra = {}) {
    std::map<std::string, double> p = base;
    p.insert(extra.begin(), extra.end());
    return BoundRecord::make(name, lhs, rhs, tolerance(rhs), std::move(p), norm_name);
  };

  switch (id) {
    case InequalityId::rho_le_P:
      return make(ctx.sup(ResolventWeight::kreiss(1.0), params.sup).value, power);
    case InequalityId::kreiss_matrix_2en:
      require_l2(id, norm);
      return make(power, leveque_trefethen_constant(n) * ctx.sup(ResolventWeight::kreiss(1.0), params.sup).value);
    case InequalityId::spijker_en:
      require_l2(id, norm);
      return make(power, spijker_constant(n) * ctx.sup(ResolventWeight::kreiss(1.0), params.sup).value);
    case InequalityId::thm3_upper: {
      require_inside(id, radius);
      const double lhs = ctx.sup(ResolventWeight::kreiss(params.alpha), params.sup).value;
      return make(lhs, thm3_constant(n, radius, params.alpha) * power, {{"alpha", params.alpha}});
    }
    case InequalityId::thm3_kmt: {
      require_l2(id, norm);
      const SupResult& s = ctx.sup(ResolventWeight::kreiss(params.alpha), params.sup);
      return make(power, spijker_constant(n) * s.value, {{"alpha", params.alpha}});
    }
    case InequalityId::thm4_probe: {
      require_inside(id, radius);
      const double lhs = ctx.sup(ResolventWeight::iterated(params.l, params.alpha), params.sup).value;
      std::map<std::string, double> p = base;
      p["alpha"] = params.alpha;
      p["l"] = params.l;
      return probe_record(id, lhs, thm4_normalizer(n, params.l, radius, params.alpha), power, std::move(p), norm);
    }
    case InequalityId::ds_bound: {
      require_l2(id, norm);
      // Worst relative margin over sampled |z| >= 1.
      constexpr double kRadii[] = {1.0, 1.01, 1.1, 1.5};
      std::optional<BoundRecord> worst;
      double worst_ratio = -kInf;
      for (std::size_t m = 0; m < kDsSamples; ++m) {
        const double theta = 2.0 * std::numbers::pi * (static_cast<double>(m) + 0.5) / kDsSamples;
        const Complex z = std::polar(kRadii[m % 4], theta);
        const double dist = ctx.spectrum().distance(z);
        if (dist < 1e-10) continue;
        double lhs = 0.0;
        try {
          lhs = operator_norm(resolvent_power(ctx.matrix(), z, 1), norm);
        } catch (const SingularResolvent&) {
          continue;
        }
        const double rhs = ds_constant(n, dist) * power;
        const double ratio = lhs / rhs;
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          worst = make(lhs, rhs, {{"dist", dist}, {"z_re", z.real()}, {"z_im", z.imag()}});
        }
      }
      if (!worst) throw HypothesisViolation("ds_bound: no admissible sample point");
      return *worst;
    }
    case InequalityId::z3_bound:
      return make(ctx.sup(ResolventWeight::strong(1), params.sup).value, z3_constant(n) * power);
    case InequalityId::thm7_probe: {
      const double lhs = ctx.sup(ResolventWeight::strong(params.l), params.sup).value;
      std::map<std::string, double> p = base;
      p["l"] = params.l;
      return probe_record(id, lhs, thm7_normalizer(n, params.l), power, std::move(p), norm);
    }
    default:
      break;
  }
  throw std::invalid_argument("unsupported inequality " + name);
}

BoundRecord verify(InequalityId id, const RationalFunction& f, double r, const VerifyParams& params) {
  if (id == InequalityId::hardy_w) return hardy_inequality_check(f);
  if (id != InequalityId::bernstein_thmA) {
    throw std::invalid_argument(std::string(to_string(id)) + " is evaluated on matrices");
  }
  if (!(r >= 0.0 && r < 1.0)) throw HypothesisViolation("bernstein_thmA requires r in [0, 1)");
  const double required = r == 0.0 ? kInf : 1.0 / r;
  if (f.pole_margin() < required * (1.0 - 1e-12)) {
    throw HypothesisViolation("bernstein_thmA: a pole lies inside the disk of radius 1/r");
  }
  const int n = static_cast<int>(f.degree());
  const double lhs = hardy_norm(f.derivative(), 1.0);
  const double rhs = thmA_constant(n, r, params.p) * hardy_norm(f, params.p);
  return BoundRecord::make("bernstein_thmA", lhs, rhs, tolerance(rhs), {{"n", n}, {"r", r}, {"p", params.p}});
}

double thm3_probe_value(int n, double alpha, double r) {
  const LambdaNu ln = lambda_nu_of_r(r, alpha);
  const ComplexMatrix a = mobius_of_nilpotent(n, r);
  const double resolvent = operator_norm(resolvent_power(a, ln.lambda, 1), NormKind::l2);
  return std::pow(1.0 - r, (1.0 - alpha) / 2.0) * std::pow(ln.lambda - 1.0, alpha) * resolvent;
}

BoundRecord thm3_sharpness_probe(int n, double alpha, double r) {
  const double probe = thm3_probe_value(n, alpha, r);
  const double cot = 1.0 / std::tan(std::numbers::pi / (4.0 * n));
  return BoundRecord::make("thm3_sharpness", probe, cot, tolerance(cot),
                           {{"n", n}, {"r", r}, {"alpha", alpha}, {"ratio", probe / cot}}, "l2");
}

}  // namespace kreiss
