#include "kreiss/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "kreiss/bernstein.hpp"
#include "kreiss/bounds.hpp"
#include "kreiss/error.hpp"
#include "kreiss/gallery.hpp"
#include "kreiss/matrix_io.hpp"

namespace kreiss::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr const char* kVerifyColumns = "CSV columns: inequality_id,n,r,alpha,l,p,norm,lhs,rhs,margin,pass";
constexpr const char* kSweepColumns =
    "CSV columns: family,n,r,alpha,l,trial,spectral_radius,P,P_certified,rho,rho_alpha,rho_alpha_l,"
    "rho_strong_l,thm3_rhs,z3_rhs,K_alpha_l,K_l,probe,probe_over_cot";

struct Options {
  std::string input = "-";
  std::string ids;
  std::string family;
  std::string n = "4";
  std::string r = "0.5";
  std::string alpha = "0.5";
  std::string l = "1";
  std::string p = "inf";
  std::string norm = "l2";
  int trials = 1;
  std::uint64_t seed = 1;
  std::string output;
  std::string format = "csv";
  std::string plot;
  bool skip_unmet = false;
  bool allow_unit_radius = false;
  bool dump = false;
  std::size_t budget = 2000;
  std::string mode = "h1_hp";
};

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", x);
}

nlohmann::json json_number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

double parse_real(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

/// Routes the report to --output or to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

nlohmann::json sup_to_json(const SupResult& s) {
  return {{"value", json_number(s.value)},
          {"divergent", s.infinite},
          {"argmax", complex_to_json(s.argmax)},
          {"at_infinity", s.at_infinity},
          {"converged", s.converged},
          {"nodes", s.nodes},
          {"refinement_iterations", s.refinement_iterations}};
}

nlohmann::json power_bound_to_json(const PowerBound& pb) {
  return {{"value", json_number(pb.value)},
          {"certified", pb.certified},
          {"unbounded", pb.unbounded},
          {"k_attained", pb.k_attained},
          {"k_last", pb.k_last}};
}

nlohmann::json record_to_json(const BoundRecord& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.params) params[k] = json_number(v);
  return {{"inequality_id", r.inequality_id},
          {"lhs", json_number(r.lhs)},
          {"rhs", json_number(r.rhs)},
          {"margin", json_number(r.margin)},
          {"tol", r.tol},
          {"norm", r.norm},
          {"pass", r.pass},
          {"params", std::move(params)}};
}

nlohmann::json read_json_input(const std::string& path, std::istream& stdin_stream) {
  if (path == "-") return parse_json(stdin_stream);
  std::ifstream in(path);
  if (!in) throw ParseError("<file>", "cannot open '" + path + "'");
  return parse_json(in);
}

/// --family: a family name, or an InstanceSpec JSON object.
struct FamilyArg {
  InstanceSpec base;
  bool from_json = false;
};

FamilyArg parse_family(const std::string& text) {
  FamilyArg out;
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("--family is required");
  if (t.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(t);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("family", e.what());
    }
    out.base = spec_from_json(doc);
    out.from_json = true;
  } else {
    out.base.kind = parse_family_kind(t);
  }
  return out;
}

struct Grid {
  std::vector<int> ns;
  std::vector<double> rs;
  std::vector<double> alphas;
  std::vector<int> ls;
  std::vector<double> ps;
};

Grid parse_grid(const Options& o, const FamilyArg& family) {
  Grid g;
  g.ns = family.from_json ? std::vector<int>{family.base.n} : parse_int_list(o.n);
  g.rs = family.from_json ? std::vector<double>{family.base.r} : parse_real_list(o.r);
  g.alphas = family.from_json ? std::vector<double>{family.base.alpha} : parse_real_list(o.alpha);
  g.ls = parse_int_list(o.l);
  g.ps = parse_real_list(o.p);
  for (int n : g.ns)
    if (n < 1) throw std::invalid_argument("grid: n must be positive");
  for (double r : g.rs)
    if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("grid: r must lie in [0, 1)");
  for (double a : g.alphas)
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("grid: alpha must lie in (0, 1]");
  for (int l : g.ls)
    if (l < 1) throw std::invalid_argument("grid: l must be positive");
  for (double p : g.ps)
    if (!(p >= 1.0)) throw std::invalid_argument("grid: p must lie in [1, inf]");
  if (o.trials < 1) throw std::invalid_argument("--trials must be at least 1");
  return g;
}

InstanceSpec instance_spec(const FamilyArg& family, int n, double r, double alpha, int trial, const Options& o) {
  InstanceSpec spec = family.base;
  if (!family.from_json) {
    spec.n = n;
    spec.r = r;
    spec.alpha = alpha;
    spec.norm = parse_norm_kind(o.norm);
    spec.allow_unit_radius = o.allow_unit_radius;
    spec.seed = o.seed;
  }
  spec.seed += static_cast<std::uint64_t>(trial);
  return spec;
}

/// "all" expands to the ids that apply to the family.
std::vector<InequalityId> parse_ids(const std::string& text, FamilyKind family) {
  if (trim(text).empty()) throw std::invalid_argument("--ids is required");
  const bool rational = family == FamilyKind::random_rational;
  std::vector<InequalityId> ids;
  for (const auto& item : split(text, ',')) {
    if (item == "all") {
      for (InequalityId id : all_inequality_ids()) {
        if (is_function_inequality(id) != rational) continue;
        if (id == InequalityId::thm3_sharpness && family != FamilyKind::mobius_of_nilpotent) continue;
        ids.push_back(id);
      }
    } else {
      ids.push_back(parse_inequality_id(item));
    }
  }
  return ids;
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const NormKind norm = parse_norm_kind(o.norm);
  const nlohmann::json doc = read_json_input(o.input, in);
  const ComplexMatrix t = matrix_from_json(doc);
  const std::optional<Spectrum> known = spectrum_from_json(doc, t.size());
  const Spectrum sigma = known ? *known : spectrum(t);
  const PowerBound pb = power_bound(t, norm, sigma.spectral_radius);

  nlohmann::json eig = nlohmann::json::array();
  for (const Complex& e : sigma.eigenvalues) eig.push_back(complex_to_json(e));

  nlohmann::json report{{"n", t.size()},
                        {"norm", std::string(to_string(norm))},
                        {"spectral_radius", sigma.spectral_radius},
                        {"spectrum_source", known ? "file" : "qr"},
                        {"spectrum", std::move(eig)},
                        {"power_bound", power_bound_to_json(pb)}};
  report["rho"] = sup_to_json(sup_weighted_resolvent(t, norm, ResolventWeight::kreiss(1.0), sigma));
  nlohmann::json rho_alpha = nlohmann::json::object();
  for (double a : {0.25, 0.5, 0.75}) {
    rho_alpha[fmt::format("{}", a)] = sup_to_json(sup_weighted_resolvent(t, norm, ResolventWeight::kreiss(a), sigma));
  }
  report["rho_alpha"] = std::move(rho_alpha);
  nlohmann::json strong = nlohmann::json::object();
  for (int l : {1, 2, 3}) {
    strong[std::to_string(l)] = sup_to_json(sup_weighted_resolvent(t, norm, ResolventWeight::strong(l), sigma));
  }
  report["rho_strong"] = std::move(strong);

  nlohmann::json samples = nlohmann::json::array();
  const bool inside = sigma.spectral_radius < 1.0 - 1e-10;
  if (inside && std::isfinite(pb.value)) {
    for (Complex lambda : {Complex(1.1), Complex(0.0, 1.5), Complex(-2.0), Complex(2.0, 2.0)}) {
      for (int l : {1, 2}) {
        const double bound = lemma2_bound(sigma, pb.value, lambda, l);
        const double actual = operator_norm(resolvent_power(t, lambda, l), norm);
        samples.push_back({{"lambda", complex_to_json(lambda)},
                           {"l", l},
                           {"bound", bound},
                           {"resolvent_norm", actual},
                           {"dominated", actual <= bound * (1.0 + 1e-8)}});
      }
    }
    report["lemma2_samples"] = std::move(samples);
  } else {
    report["lemma2_samples"] = nullptr;
    err << "note: lemma2 samples skipped (spectrum touches the unit circle or P(T) is unbounded)\n";
  }
  Sink sink(o.output, out);
  sink.stream() << report.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const FamilyArg family = parse_family(o.family);
  const std::vector<InequalityId> ids = parse_ids(o.ids, family.base.kind);
  const Grid grid = parse_grid(o, family);
  if (o.format != "csv" && o.format != "json") throw std::invalid_argument("--format must be csv or json");
  const bool rational_family = family.base.kind == FamilyKind::random_rational;
  for (InequalityId id : ids) {
    if (is_function_inequality(id) != rational_family) {
      throw std::invalid_argument(fmt::format("inequality {} does not apply to family {}", to_string(id),
                                              to_string(family.base.kind)));
    }
    if (id == InequalityId::thm3_sharpness && family.base.kind != FamilyKind::mobius_of_nilpotent) {
      throw std::invalid_argument("thm3_sharpness requires --family mobius_of_nilpotent");
    }
  }

  std::vector<BoundRecord> records;
  std::size_t skipped = 0;
  auto attempt = [&](auto&& produce) {
    try {
      records.push_back(produce());
    } catch (const HypothesisViolation& e) {
      if (!o.skip_unmet) throw;
      ++skipped;
      err << "skipped: " << e.what() << "\n";
    }
  };

  for (int n : grid.ns) {
    for (double r : grid.rs) {
      for (int trial = 0; trial < o.trials; ++trial) {
        if (rational_family) {
          const InstanceSpec spec = instance_spec(family, n, r, grid.alphas.front(), trial, o);
          const RationalFunction f = make_rational(spec);
          for (double p : grid.ps) {
            VerifyParams params;
            params.p = p;
            for (InequalityId id : ids) attempt([&] { return verify(id, f, spec.r, params); });
          }
          continue;
        }
        std::optional<VerificationContext> ctx;
        std::optional<Instance> inst;
        for (double alpha : grid.alphas) {
          for (int l : grid.ls) {
            VerifyParams params;
            params.alpha = alpha;
            params.l = l;
            for (InequalityId id : ids) {
              if (id == InequalityId::thm3_sharpness) {
                attempt([&] { return thm3_sharpness_probe(n, alpha, r); });
                continue;
              }
              if (!ctx) {
                inst = make_instance(instance_spec(family, n, r, alpha, trial, o));
                ctx.emplace(inst->matrix, parse_norm_kind(o.norm), inst->known_spectrum);
              }
              attempt([&] { return verify(id, *ctx, params); });
            }
          }
        }
      }
    }
  }

  Sink sink(o.output, out);
  if (o.format == "csv") {
    sink.stream() << csv_header() << "\n";
    for (const auto& r : records) sink.stream() << to_csv_row(r) << "\n";
  } else {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : records) doc.push_back(record_to_json(r));
    sink.stream() << doc.dump(2) << "\n";
  }
  std::size_t failures = 0;
  for (const auto& r : records) failures += r.pass ? 0 : 1;
  err << fmt::format("{} rows, {} failing, {} skipped\n", records.size(), failures, skipped);
  return failures == 0 ? kOk : kFailingRows;
}

// ---------------------------------------------------------------- sweep

std::string color_for(double t) {
  // Blue to yellow ramp on t in [0, 1].
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(68 + t * (253 - 68)));
  const int g = static_cast<int>(std::lround(1 + t * (231 - 1)));
  const int b = static_cast<int>(std::lround(84 + t * (37 - 84)));
  return fmt::format("#{:02x}{:02x}{:02x}", r, g, b);
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const FamilyArg family = parse_family(o.family);
  if (family.base.kind == FamilyKind::random_rational) {
    throw std::invalid_argument("sweep requires a matrix family");
  }
  const Grid grid = parse_grid(o, family);
  if (o.format != "csv" && o.format != "json") throw std::invalid_argument("--format must be csv or json");
  const NormKind norm = parse_norm_kind(o.norm);
  const bool mobius = family.base.kind == FamilyKind::mobius_of_nilpotent;

  struct Row {
    std::string family;
    int n;
    double r, alpha;
    int l, trial;
    double radius, power;
    bool certified;
    double rho, rho_alpha, rho_alpha_l, rho_strong_l, thm3_rhs, z3_rhs, k_alpha_l, k_l, probe, probe_ratio;
  };
  std::vector<Row> rows;
  double k_alpha_max = 0.0;
  double k_l_max = 0.0;
  std::optional<Instance> plotted;

  for (int n : grid.ns) {
    for (double r : grid.rs) {
      for (int trial = 0; trial < o.trials; ++trial) {
        const Instance inst = make_instance(instance_spec(family, n, r, grid.alphas.front(), trial, o));
        if (!plotted) plotted = inst;
        VerificationContext ctx(inst.matrix, norm, inst.known_spectrum);
        const PowerBound& pb = ctx.power_bound();
        const double radius = ctx.spectrum().spectral_radius;
        const int dim = ctx.dimension();
        for (double alpha : grid.alphas) {
          for (int l : grid.ls) {
            Row row{std::string(to_string(inst.spec.kind)), dim, r, alpha, l, trial, radius, pb.value, pb.certified};
            row.rho = ctx.sup(ResolventWeight::kreiss(1.0)).value;
            row.rho_alpha = ctx.sup(ResolventWeight::kreiss(alpha)).value;
            row.rho_alpha_l = ctx.sup(ResolventWeight::iterated(l, alpha)).value;
            row.rho_strong_l = ctx.sup(ResolventWeight::strong(l)).value;
            const bool inside = radius < 1.0 - 1e-9;
            row.thm3_rhs = inside && alpha < 1.0 ? thm3_constant(dim, radius, alpha) * pb.value : kInf;
            row.z3_rhs = z3_constant(dim) * pb.value;
            row.k_alpha_l = inside ? row.rho_alpha_l / (thm4_normalizer(dim, l, radius, alpha) * pb.value) : kInf;
            row.k_l = row.rho_strong_l / (thm7_normalizer(dim, l) * pb.value);
            row.probe = row.probe_ratio = std::numeric_limits<double>::quiet_NaN();
            if (mobius && alpha < 1.0 && r > 0.0) {
              const BoundRecord probe = thm3_sharpness_probe(dim, alpha, r);
              row.probe = probe.lhs;
              row.probe_ratio = probe.lhs / probe.rhs;
            }
            if (std::isfinite(row.k_alpha_l)) k_alpha_max = std::max(k_alpha_max, row.k_alpha_l);
            if (std::isfinite(row.k_l)) k_l_max = std::max(k_l_max, row.k_l);
            rows.push_back(row);
          }
        }
      }
    }
  }

  auto opt = [](double x) { return std::isnan(x) ? std::string{} : number(x); };
  Sink sink(o.output, out);
  if (o.format == "csv") {
    sink.stream() << std::string(kSweepColumns).substr(13) << "\n";
    for (const Row& w : rows) {
      sink.stream() << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", w.family, w.n,
                                   number(w.r), number(w.alpha), w.l, w.trial, number(w.radius), number(w.power),
                                   w.certified ? "true" : "false", number(w.rho), number(w.rho_alpha),
                                   number(w.rho_alpha_l), number(w.rho_strong_l), number(w.thm3_rhs),
                                   number(w.z3_rhs), number(w.k_alpha_l), number(w.k_l), opt(w.probe),
                                   opt(w.probe_ratio));
    }
  } else {
    nlohmann::json doc = nlohmann::json::array();
    for (const Row& w : rows) {
      doc.push_back({{"family", w.family},
                     {"n", w.n},
                     {"r", w.r},
                     {"alpha", w.alpha},
                     {"l", w.l},
                     {"trial", w.trial},
                     {"spectral_radius", w.radius},
                     {"P", json_number(w.power)},
                     {"P_certified", w.certified},
                     {"rho", json_number(w.rho)},
                     {"rho_alpha", json_number(w.rho_alpha)},
                     {"rho_alpha_l", json_number(w.rho_alpha_l)},
                     {"rho_strong_l", json_number(w.rho_strong_l)},
                     {"thm3_rhs", json_number(w.thm3_rhs)},
                     {"z3_rhs", json_number(w.z3_rhs)},
                     {"K_alpha_l", json_number(w.k_alpha_l)},
                     {"K_l", json_number(w.k_l)},
                     {"probe", json_number(w.probe)},
                     {"probe_over_cot", json_number(w.probe_ratio)}});
    }
    sink.stream() << doc.dump(2) << "\n";
  }
  err << fmt::format("{} rows; fitted K_alpha_l = {}, K_l = {}\n", rows.size(), number(k_alpha_max),
                     number(k_l_max));

  if (!o.plot.empty() && plotted) {
    const ResolventWeight weight = ResolventWeight::kreiss(grid.alphas.front());
    const Spectrum sigma = plotted->known_spectrum ? *plotted->known_spectrum : spectrum(plotted->matrix);
    const ResolventHeatmap map = resolvent_heatmap(plotted->matrix, norm, weight, sigma, 64, 32);
    std::ofstream svg(o.plot);
    if (!svg) throw std::invalid_argument("cannot open plot file '" + o.plot + "'");
    svg << heatmap_svg(map, plotted->label() + " " + weight.label());
  }
  return kOk;
}

// ---------------------------------------------------------------- gallery

int cmd_gallery(const Options& o, std::ostream& out) {
  Sink sink(o.output, out);
  if (!o.dump) {
    nlohmann::json doc = nlohmann::json::array();
    for (const Instance& inst : standard_gallery()) {
      doc.push_back({{"label", inst.label()},
                     {"spec", spec_to_json(inst.spec)},
                     {"spectral_radius", inst.known_spectrum ? inst.known_spectrum->spectral_radius : 0.0}});
    }
    sink.stream() << doc.dump(2) << "\n";
    return kOk;
  }
  const FamilyArg family = parse_family(o.family);
  const Grid grid = parse_grid(o, family);
  const InstanceSpec spec = instance_spec(family, grid.ns.front(), grid.rs.front(), grid.alphas.front(), 0, o);
  if (spec.kind == FamilyKind::random_rational) {
    sink.stream() << rational_to_json(make_rational(spec)).dump(2) << "\n";
    return kOk;
  }
  const Instance inst = make_instance(spec);
  nlohmann::json doc = matrix_to_json(inst.matrix);
  if (inst.known_spectrum) {
    nlohmann::json eig = nlohmann::json::array();
    for (const Complex& e : inst.known_spectrum->eigenvalues) eig.push_back(complex_to_json(e));
    doc["spectrum"] = std::move(eig);
  }
  sink.stream() << doc.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- bernstein

int cmd_bernstein(const Options& o, std::ostream& out, std::ostream& err) {
  const std::vector<int> ns = parse_int_list(o.n);
  const std::vector<double> rs = parse_real_list(o.r);
  const std::vector<double> ps = parse_real_list(o.p);
  BernsteinMode mode;
  if (o.mode == "h1_hp") {
    mode = BernsteinMode::h1_hp;
  } else if (o.mode == "h2_h2") {
    mode = BernsteinMode::h2_h2;
  } else {
    throw std::invalid_argument("--mode must be h1_hp or h2_h2");
  }
  nlohmann::json doc = nlohmann::json::array();
  std::size_t violations = 0;
  for (int n : ns) {
    for (double r : rs) {
      for (double p : ps) {
        const SearchResult res = bernstein_lower_search(n, r, p, o.budget, o.seed, mode);
        nlohmann::json item = search_result_to_json(res);
        item["n"] = n;
        item["r"] = r;
        item["p"] = json_number(p);
        item["ratio_over_n"] = res.best_ratio / n;
        doc.push_back(std::move(item));
        if (res.best_ratio > res.upper_bound * (1.0 + 1e-6)) ++violations;
      }
    }
  }
  Sink sink(o.output, out);
  sink.stream() << doc.dump(2) << "\n";
  if (violations > 0) err << violations << " searches exceeded the upper bound\n";
  return violations == 0 ? kOk : kFailingRows;
}

void add_grid_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--family", o.family, "Family name or InstanceSpec JSON object");
  cmd->add_option("--n", o.n, "Dimensions: list '2,4,8' or range '2..16'")->capture_default_str();
  cmd->add_option("--r", o.r, "Family parameter r (list)")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Fractional exponent alpha (list)")->capture_default_str();
  cmd->add_option("--l", o.l, "Resolvent power l (list or range)")->capture_default_str();
  cmd->add_option("--p", o.p, "Hardy exponent p (list; 'inf' allowed)")->capture_default_str();
  cmd->add_option("--norm", o.norm, "Vector norm: l1, l2 or linf")->capture_default_str();
  cmd->add_option("--trials", o.trials, "Instances per grid point (seeds seed, seed+1, ...)")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  cmd->add_option("--output", o.output, "Write the report to this file instead of stdout");
  cmd->add_flag("--allow-unit-radius", o.allow_unit_radius, "Scale random contractions to norm 1 instead of 0.999");
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item));
      continue;
    }
    const int lo = parse_int(trim(item.substr(0, dots)));
    const int hi = parse_int(trim(item.substr(dots + 2)));
    if (hi < lo) throw std::invalid_argument("empty range '" + item + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    const double v = parse_real(item);
    if (std::isnan(v)) throw std::invalid_argument("NaN in list '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::string heatmap_svg(const ResolventHeatmap& map, const std::string& title) {
  constexpr int kCell = 8;
  constexpr int kMargin = 40;
  const std::size_t cols = map.thetas.size();
  const std::size_t rows = map.radii_offsets.size();
  double lo = kInf;
  double hi = -kInf;
  for (double v : map.values) {
    if (std::isfinite(v) && v > 0.0) {
      lo = std::min(lo, std::log10(v));
      hi = std::max(hi, std::log10(v));
    }
  }
  const double span = hi > lo ? hi - lo : 1.0;
  const int width = static_cast<int>(cols) * kCell + 2 * kMargin;
  const int height = static_cast<int>(rows) * kCell + 2 * kMargin;
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", width, height,
      width, height);
  std::string escaped;
  for (char c : title) {
    if (c == '<') {
      escaped += "&lt;";
    } else if (c == '>') {
      escaped += "&gt;";
    } else if (c == '&') {
      escaped += "&amp;";
    } else {
      escaped += c;
    }
  }
  svg += fmt::format("<title>{}</title>\n", escaped);
  svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">{}; x: theta, y: log10 s; color: log10 value in [{}, {}]</text>\n",
                     kMargin, kMargin / 2, escaped, number(lo), number(hi));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = map.values[i * cols + j];
      const std::string fill =
          std::isfinite(v) && v > 0.0 ? color_for((std::log10(v) - lo) / span) : std::string("#808080");
      // Larger s at the top.
      const int y = kMargin + static_cast<int>(rows - 1 - i) * kCell;
      svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                         kMargin + static_cast<int>(j) * kCell, y, kCell, kCell, fill);
    }
  }
  svg += "</svg>\n";
  return svg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resolvent constants, power bounds and inequality checks for matrices"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Report P(T), r(T), sigma(T), Kreiss-type and strong constants");
  analyze->add_option("input", o.input, "Matrix JSON file ('-' for stdin)")->capture_default_str();
  analyze->add_option("--norm", o.norm, "Vector norm: l1, l2 or linf")->capture_default_str();
  analyze->add_option("--output", o.output, "Write the report to this file instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "Evaluate inequalities on a family of instances");
  verify_cmd->add_option("--ids", o.ids, "Comma-separated inequality ids; 'all' selects those applicable to --family");
  add_grid_options(verify_cmd, o);
  verify_cmd->add_option("--format", o.format, "csv or json")->capture_default_str();
  verify_cmd->add_flag("--skip-unmet", o.skip_unmet, "Skip instances violating a hypothesis instead of exiting 4");
  verify_cmd->footer(kVerifyColumns);

  auto* sweep = app.add_subcommand("sweep", "Cartesian sweep over (n, r, alpha, l)");
  add_grid_options(sweep, o);
  sweep->add_option("--format", o.format, "csv or json")->capture_default_str();
  sweep->add_option("--plot", o.plot, "SVG heatmap of the weighted resolvent norm for the first instance");
  sweep->footer(kSweepColumns);

  auto* gallery = app.add_subcommand("gallery", "List the standard gallery or dump one instance");
  add_grid_options(gallery, o);
  gallery->add_flag("--dump", o.dump, "Print the matrix JSON of the first grid instance of --family");

  auto* bernstein = app.add_subcommand("bernstein", "Lower-bound search for Bernstein constants over R_{n,r}");
  bernstein->add_option("--n", o.n, "Number of poles (list)")->capture_default_str();
  bernstein->add_option("--r", o.r, "Pole class parameter r (list)")->capture_default_str();
  bernstein->add_option("--p", o.p, "Hardy exponent p (list; 'inf' allowed)")->capture_default_str();
  bernstein->add_option("--budget", o.budget, "Objective evaluations per search")->capture_default_str();
  bernstein->add_option("--seed", o.seed, "Seed")->capture_default_str();
  bernstein->add_option("--mode", o.mode, "h1_hp or h2_h2")->capture_default_str();
  bernstein->add_option("--output", o.output, "Write the report to this file instead of stdout");

  std::vector<std::string> argv_storage{"kreiss"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*analyze) return cmd_analyze(o, std::cin, out, err);
    if (*verify_cmd) return cmd_verify(o, out, err);
    if (*sweep) return cmd_sweep(o, out, err);
    if (*gallery) return cmd_gallery(o, out);
    if (*bernstein) return cmd_bernstein(o, out, err);
  } catch (const ParseError& e) {
    err << "error: parse failure in field '" << e.field() << "': " << e.what() << "\n";
    return kBadInput;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const HypothesisViolation& e) {
    err << "error: hypothesis violated: " << e.what() << "\n";
    return kHypothesis;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace kreiss::cli
