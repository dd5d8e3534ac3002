#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "tlc/cli.hpp"

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = tlc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Rows whose first field equals `kind`.
std::vector<std::vector<std::string>> rows_of(const std::string& text, const std::string& kind) {
  std::vector<std::vector<std::string>> out;
  for (const auto& l : lines(text)) {
    auto f = fields(l);
    if (!f.empty() && f[0] == kind) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

TEST_CASE("schedule m=1") {
  const auto r = run({"schedule", "--m", "1"});
  CHECK(r.code == tlc::cli::kOk);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "j,theta,alpha");
  const auto row = fields(l[1]);
  REQUIRE(row.size() == 3);
  CHECK(row[0] == "1");
  CHECK(row[1] == "2.0943951023931953");
  CHECK(std::abs(std::stod(row[2]) - 2.0 / 3.0) <= 2e-16);
  CHECK(fields(l[2])[0] == "product_alpha");
  CHECK(l[3] == "clustered_eigenvalue,,0.8888888888888888");
}

TEST_CASE("schedule m=2 product") {
  const auto r = run({"schedule", "--m", "2"});
  CHECK(r.code == tlc::cli::kOk);
  const auto rows = rows_of(r.out, "product_alpha");
  REQUIRE(rows.size() == 1);
  CHECK(std::abs(std::stod(rows[0][2]) - 0.8) < 1e-15);
}

TEST_CASE("schedule m=0 is a usage error") {
  const auto r = run({"schedule", "--m", "0"});
  CHECK(r.code == tlc::cli::kUsage);
  CHECK(r.err.find("m >= 1") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == tlc::cli::kUsage);
  CHECK(run({"nonsense"}).code == tlc::cli::kUsage);
  CHECK(run({"schedule", "--m", "1", "--bogus"}).code == tlc::cli::kUsage);
  CHECK(run({"schedule", "--m", "1", "--format", "xml"}).code == tlc::cli::kUsage);
  CHECK(run({"respond", "--m", "1", "--lambda", "abc"}).code == tlc::cli::kUsage);
  CHECK(run({"cluster", "--problem", "fd2d", "--N", "40"}).code == tlc::cli::kUsage);
  CHECK(run({"cluster", "--problem", "sipg", "--delta", "0.5"}).code == tlc::cli::kUsage);
}

TEST_CASE("respond examples") {
  const auto one = run({"respond", "--schedule", "constant", "--alpha", "1", "--m", "1", "--lambda", "0.25"});
  CHECK(one.code == tlc::cli::kOk);
  const auto l = lines(one.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "re_lambda,im_lambda,re_r,im_r");
  CHECK(std::abs(std::stod(fields(l[1])[2]) - 0.25) < 1e-15);

  const auto third = run({"respond", "--schedule", "constant", "--alpha", "0.6666666666666666", "--m", "1"});
  CHECK(third.code == tlc::cli::kOk);
  const auto body = lines(third.out);
  CHECK(body.size() == 65);
  for (std::size_t i = 1; i < body.size(); ++i) CHECK(std::abs(std::stod(fields(body[i])[2]) - 1.0 / 9.0) < 1e-12);

  const auto t3 = run({"respond", "--m", "3"});
  CHECK(t3.code == tlc::cli::kOk);
  const auto dev = rows_of(t3.out, "max_deviation");
  REQUIRE(dev.size() == 1);
  CHECK(std::stod(dev[0][1]) <= 1e-12);
}

TEST_CASE("respond accepts complex sample points") {
  const auto r = run({"respond", "--m", "1", "--lambda", "0.37,0.2", "--format", "json"});
  REQUIRE(r.code == tlc::cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["samples"].size() == 1);
  CHECK(std::abs(doc["samples"][0]["value"][0].get<double>() - 1.0 / 9.0) < 1e-12);
}

TEST_CASE("cluster on a random block system") {
  const auto r = run({"cluster", "--problem", "random-block", "--n1", "24", "--n2", "16", "--m", "1"});
  CHECK(r.code == tlc::cli::kOk);
  CHECK(lines(r.out)[0] == "kind,re,im,multiplicity");
  const auto centers = rows_of(r.out, "center");
  REQUIRE(centers.size() == 2);
  CHECK(centers[0][1] == "1");
  CHECK(centers[0][3] == "16");
  CHECK(centers[1][1] == "0.8888888888888888");
  CHECK(centers[1][3] == "24");
  CHECK(rows_of(r.out, "eigenvalue").size() == 40);
  CHECK(std::stod(rows_of(r.out, "max_deviation")[0][1]) <= 1e-8);
}

TEST_CASE("cluster falls back to long double when double loses the collapse") {
  const auto r = run({"cluster", "--problem", "random-block", "--seed", "9", "--m", "3"});
  CHECK(r.code == tlc::cli::kOk);
  const auto ext = rows_of(r.out, "max_deviation_extended");
  REQUIRE(ext.size() == 1);
  CHECK(std::stod(ext[0][1]) <= 1e-10);
  CHECK(std::stod(rows_of(r.out, "max_deviation")[0][1]) > 1e-7);
  CHECK(r.err.find("long double") != std::string::npos);
}

TEST_CASE("cluster on SIPG with exact components") {
  const auto r = run({"cluster", "--problem", "sipg", "--elements", "8", "--delta", "2", "--m", "2",
                      "--components", "exact", "--format", "json"});
  CHECK(r.code == tlc::cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["clustering_claimed"].get<bool>());
  CHECK(doc["dimension"].get<int>() == 16);
  CHECK(doc["cluster_centers"].size() == 2);
  CHECK(doc["max_deviation"].get<double>() <= 1e-8);
  CHECK(doc["max_deviation_extended"].is_null());
}

TEST_CASE("cluster with inexact components does not claim clustering") {
  const auto r = run({"cluster", "--problem", "fd2d", "--N", "16", "--m", "1", "--smoother", "jacobi-diag",
                      "--transfers", "tensor", "--format", "json"});
  CHECK(r.code == tlc::cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK_FALSE(doc["clustering_claimed"].get<bool>());
  CHECK(doc["eigenvalues"].size() == 256);
}

TEST_CASE("cluster on the DG stencil problem") {
  const auto r = run({"cluster", "--problem", "dg-stencil", "--elements", "8", "--m", "1"});
  CHECK(r.code == tlc::cli::kOk);
  CHECK(rows_of(r.out, "eigenvalue").size() == 16);
}

TEST_CASE("sweep-rho") {
  const auto r = run({"sweep-rho", "--problem", "fd2d", "--N", "6", "--m", "3"});
  REQUIRE(r.code == tlc::cli::kOk);
  const auto l = lines(r.out);
  CHECK(l[0] == "family,alpha,m,rho");
  // 10 constants + 2/3 + theorem, three m each.
  CHECK(l.size() == 1 + 12 * 3);
  const auto theorem = rows_of(r.out, "theorem");
  const auto classical = rows_of(r.out, "classical");
  REQUIRE(theorem.size() == 3);
  REQUIRE(classical.size() == 3);
  CHECK(std::abs(std::stod(theorem[0][3]) - std::stod(classical[0][3])) <= 1e-12);
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::stod(theorem[k][3]) <= std::stod(classical[k][3]) + 1e-12);
  CHECK(run({"sweep-rho", "--m", "9"}).code == tlc::cli::kUsage);
}

TEST_CASE("fov on a small nonnormal matrix") {
  const auto r = run({"fov", "--n", "16", "--fov-angles", "32", "--m", "1", "--m", "2"});
  REQUIRE(r.code == tlc::cli::kOk);
  CHECK(lines(r.out)[0] == "operator,kind,angle,re,im");
  CHECK(rows_of(r.out, "B").size() == 32 + 16 + 1);
  CHECK(rows_of(r.out, "MinvB_m1").size() == 32 + 16 + 2);
  CHECK(rows_of(r.out, "E_m2").size() == 32 + 16 + 1);
  for (const auto& row : rows_of(r.out, "MinvB_m2")) {
    if (row[1] == "max_deviation") CHECK(std::stod(row[3]) <= 1e-7);
  }
}

TEST_CASE("fov of the Hermitian case lies on the real axis") {
  const auto r = run({"fov", "--n", "16", "--gamma", "0", "--fov-angles", "32", "--m", "1"});
  REQUIRE(r.code == tlc::cli::kOk);
  for (const auto& row : rows_of(r.out, "B")) {
    if (row[1] == "boundary") CHECK(std::abs(std::stod(row[4])) <= 1e-8);
  }
}

TEST_CASE("identical flags give byte-identical output") {
  const std::vector<std::vector<std::string>> cases{
      {"schedule", "--m", "4", "--format", "json"},
      {"respond", "--m", "2"},
      {"cluster", "--problem", "nonnormal", "--n", "24", "--m", "2"},
      {"fov", "--n", "12", "--fov-angles", "16", "--m", "1"},
  };
  for (const auto& args : cases) {
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("--out writes the result to a file") {
  const auto path = std::filesystem::temp_directory_path() / "tlc_cli_out_test.csv";
  std::filesystem::remove(path);
  const auto r = run({"schedule", "--m", "2", "--out", path.string()});
  CHECK(r.code == tlc::cli::kOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == run({"schedule", "--m", "2"}).out);
  std::filesystem::remove(path);
}
