#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kreiss/cli.hpp"
#include "kreiss/gallery.hpp"
#include "kreiss/matrix_io.hpp"

using namespace kreiss;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("kreiss_cli_test_" + name);
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = temp_file(name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("list parsing") {
  CHECK(cli::parse_int_list("2..5") == std::vector<int>{2, 3, 4, 5});
  CHECK(cli::parse_int_list("2,4, 8") == std::vector<int>{2, 4, 8});
  CHECK(cli::parse_int_list("1,3..4") == std::vector<int>{1, 3, 4});
  CHECK_THROWS_AS(cli::parse_int_list("5..2"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_int_list("x"), std::invalid_argument);
  const auto reals = cli::parse_real_list("0.5,inf");
  CHECK(reals[0] == 0.5);
  CHECK(std::isinf(reals[1]));
  CHECK_THROWS_AS(cli::parse_real_list("0.5,"), std::invalid_argument);
}

TEST_CASE("analyze the zero matrix") {
  const std::string path = write_temp("zero.json", matrix_to_json(ComplexMatrix(3)).dump());
  const Run r = run({"analyze", path});
  REQUIRE(r.code == cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["power_bound"]["value"].get<double>() == 1.0);
  CHECK(doc["rho"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  for (const char* l : {"1", "2", "3"}) CHECK(doc["rho_strong"][l]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(doc["lemma2_samples"].size() == 8);
}

TEST_CASE("analyze the Jordan block") {
  const std::string path = write_temp("j2.json", matrix_to_json(jordan_nilpotent(2)).dump());
  const Run r = run({"analyze", path});
  REQUIRE(r.code == cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["rho_strong"]["1"]["value"].get<double>() == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-9));
}

TEST_CASE("analyze a dumped cot matrix flags divergence") {
  const Run dump = run({"gallery", "--dump", "--family", "cot_matrix", "--n", "8"});
  REQUIRE(dump.code == cli::kOk);
  const Run r = run({"analyze", write_temp("cot8.json", dump.out)});
  REQUIRE(r.code == cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["spectral_radius"].get<double>() == 1.0);
  for (const char* a : {"0.25", "0.5", "0.75"}) CHECK(doc["rho_alpha"][a]["divergent"].get<bool>());
}

TEST_CASE("analyze rejects bad input with the offending field") {
  const Run missing = run({"analyze", write_temp("bad.json", R"({"n": 2, "entries": [[[1,0],[0,0]], [[0,0]]]})")});
  CHECK(missing.code == cli::kBadInput);
  CHECK(missing.err.find("entries") != std::string::npos);
  const Run garbage = run({"analyze", write_temp("garbage.json", "{nope")});
  CHECK(garbage.code == cli::kBadInput);
  CHECK(run({"analyze", "/nonexistent/file.json"}).code == cli::kBadInput);
}

TEST_CASE("verify rows and exit codes") {
  const Run z3 = run({"verify", "--ids", "z3_bound", "--family", "jordan_nilpotent", "--n", "2..6"});
  CHECK(z3.code == cli::kOk);
  CHECK(count_lines(z3.out) == 6);
  CHECK(z3.out.rfind("inequality_id,n,r,alpha,l,p,norm,lhs,rhs,margin,pass\n", 0) == 0);
  CHECK(z3.out.find("false") == std::string::npos);

  const Run spijker = run({"verify", "--ids", "spijker_en", "--family", "random_contraction", "--n", "4", "--trials", "5"});
  CHECK(spijker.code == cli::kOk);
  CHECK(count_lines(spijker.out) == 6);

  const Run thm3 = run({"verify", "--ids", "thm3_upper", "--family", "random_spectrum", "--r", "0.9", "--alpha", "0.5", "--trials", "3"});
  CHECK(thm3.code == cli::kOk);
  CHECK(count_lines(thm3.out) == 4);

  const Run hyp = run({"verify", "--ids", "spijker_en", "--family", "random_contraction", "--norm", "l1"});
  CHECK(hyp.code == cli::kHypothesis);
  const Run skip = run({"verify", "--ids", "spijker_en", "--family", "random_contraction", "--norm", "l1", "--skip-unmet"});
  CHECK(skip.code == cli::kOk);
  CHECK(count_lines(skip.out) == 1);

  CHECK(run({"verify", "--ids", "bogus", "--family", "jordan_nilpotent"}).code == cli::kBadInput);
  CHECK(run({"verify", "--ids", "hardy_w", "--family", "jordan_nilpotent"}).code == cli::kBadInput);
  CHECK(run({"verify", "--ids", "z3_bound", "--family", "jordan_nilpotent", "--n", "0"}).code == cli::kBadInput);
  CHECK(run({"verify", "--ids", "z3_bound", "--family", "nope"}).code == cli::kBadInput);
}

TEST_CASE("verify function inequalities and JSON output") {
  const Run r = run({"verify", "--ids", "bernstein_thmA,hardy_w", "--family", "random_rational", "--n", "1..3",
                     "--r", "0.5", "--p", "1,inf", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.size() == 3 * 2 * 2);
}

TEST_CASE("verify --ids all selects the applicable inequalities") {
  const Run matrix = run({"verify", "--ids", "all", "--family", "jordan_nilpotent", "--n", "3"});
  CHECK(matrix.code == cli::kOk);
  CHECK(count_lines(matrix.out) == 1 + 9);
  const Run mobius = run({"verify", "--ids", "all", "--family", "mobius_of_nilpotent", "--n", "3", "--r", "0.5"});
  CHECK(mobius.out.find("thm3_sharpness,3,") != std::string::npos);
  const Run rational = run({"verify", "--ids", "all", "--family", "random_rational", "--n", "2"});
  CHECK(rational.code == cli::kOk);
  CHECK(count_lines(rational.out) == 1 + 2);
}

TEST_CASE("verify accepts a JSON family spec") {
  InstanceSpec spec;
  spec.kind = FamilyKind::mobius_of_nilpotent;
  spec.n = 3;
  spec.r = 0.8;
  const Run r = run({"verify", "--ids", "rho_le_P", "--family", spec_to_json(spec).dump()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("rho_le_P,3,") != std::string::npos);
}

TEST_CASE("verify is deterministic") {
  const std::vector<std::string> args{"verify", "--ids", "rho_le_P,z3_bound", "--family", "random_contraction",
                                      "--n", "3,5", "--trials", "3", "--seed", "11"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("sweep row count, probe column and heatmap") {
  const std::string svg = temp_file("heat.svg").string();
  const Run r = run({"sweep", "--family", "mobius_of_nilpotent", "--n", "2,4,8", "--r", "0.5,0.9", "--alpha", "0.5",
                     "--plot", svg});
  REQUIRE(r.code == cli::kOk);
  CHECK(count_lines(r.out) == 7);
  CHECK(r.out.rfind("family,n,r,alpha,l,trial,spectral_radius,P,P_certified,rho,rho_alpha,rho_alpha_l,", 0) == 0);
  std::ifstream in(svg);
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(count(content, "<rect ") == 64 * 32);

  const Run probe = run({"sweep", "--family", "mobius_of_nilpotent", "--n", "8", "--alpha", "0.5", "--r",
                         "0.99,0.999,0.9999,0.99999,0.999999", "--format", "json"});
  REQUIRE(probe.code == cli::kOk);
  const auto doc = nlohmann::json::parse(probe.out);
  REQUIRE(doc.size() == 5);
  for (std::size_t i = 1; i < doc.size(); ++i) CHECK(doc[i]["probe"].get<double>() > doc[i - 1]["probe"].get<double>());
  CHECK(doc[4]["probe"].get<double>() < 10.153170387608860);

  CHECK(run({"sweep", "--family", "jordan_nilpotent", "--r", "1.5"}).code == cli::kBadInput);
  CHECK(run({"sweep", "--family", "jordan_nilpotent", "--alpha", "0"}).code == cli::kBadInput);
}

TEST_CASE("gallery listing") {
  const Run r = run({"gallery"});
  REQUIRE(r.code == cli::kOk);
  CHECK(nlohmann::json::parse(r.out).size() == standard_gallery().size());
}

TEST_CASE("bernstein search output") {
  const Run r = run({"bernstein", "--n", "1,2", "--r", "0.5", "--p", "inf", "--budget", "200"});
  REQUIRE(r.code == cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.size() == 2);
  for (const auto& item : doc) CHECK(item["best_ratio"].get<double>() <= item["upper_bound"].get<double>());
  CHECK(run({"bernstein", "--mode", "h3"}).code == cli::kBadInput);
}

TEST_CASE("help documents the CSV column order") {
  const Run r = run({"sweep", "--help"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("family,n,r,alpha,l,trial") != std::string::npos);
  CHECK(run({}).code == cli::kBadInput);
}
