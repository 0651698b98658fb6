#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pansharp/error.hpp"
#include "pansharp/report.hpp"

using namespace pansharp;
using namespace pansharp::bench;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<BenchmarkReport> table1() {
  std::ifstream in(fs::path(PANSHARP_FIXTURE_DIR) / "table1.json");
  const json doc = json::parse(in);
  std::vector<BenchmarkReport> out;
  for (const auto& d : doc) out.push_back(report_from_json(d));
  return out;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

}  // namespace

TEST_CASE("csv rows") {
  const auto reports = table1();
  REQUIRE(reports.size() == 3);
  const auto csv = lines(render_csv(reports[2]));
  CHECK(csv[0] == "method,cc,ergas,quality,rase,rmse,scc");
  CHECK(csv[5] == "dwt_atrous,0.9522,2.3865,0.9512,9.4678,5.8212,0.6996");
  CHECK(csv[1] == "brovey,0.7335,5.0523,0.7237,22.6808,13.9451,0.9435");

  BenchmarkReport empty;
  empty.dataset = "none";
  CHECK(render_csv(empty) == "method,cc,ergas,quality,rase,rmse,scc\n");
}

TEST_CASE("text table layout and best marks") {
  const auto reports = table1();
  const auto t = lines(render_text_table(reports[0]));
  CHECK(t[0] == "Image-1:Worldview urban area image");
  CHECK(t[1] == "\tBrovey\tIHS\tAdaptive-IHS\tPCA\tDWT");
  CHECK(t[2] == "CC\t0.8909\t0.8922\t0.8941\t0.8917\t0.9306*");
  CHECK(t[3] == "ERGAS\t4.1140*\t7.1312\t7.0991\t8.3854\t6.0464");
  CHECK(t[7] == "SCC\t0.9907\t0.9986*\t0.9815\t0.9862\t0.9095");
  CHECK(reports[1].best_per_metric.at("scc") == "ihs");
  CHECK(reports[2].best_per_metric.at("rmse") == "dwt_atrous");
}

TEST_CASE("json round trip") {
  const auto reports = table1();
  for (const auto& r : reports) {
    const json j = report_to_json(r);
    CHECK(j.contains("runtimes"));
    CHECK(report_from_json(j) == r);
  }
  CHECK_THROWS_AS(report_from_json(json{{"rows", 1}}), InvalidArgument);
}

TEST_CASE("runtimes live only under the runtimes key") {
  auto r = table1()[0];
  r.rows[0].runtime_seconds = 1.5;
  json j = report_to_json(r);
  CHECK(j["runtimes"]["brovey"] == 1.5);
  auto other = r;
  other.rows[0].runtime_seconds = 9.0;
  json k = report_to_json(other);
  j.erase("runtimes");
  k.erase("runtimes");
  CHECK(j == k);
}

TEST_CASE("emit_report writes every format") {
  const fs::path dir = fs::temp_directory_path() / "pansharp_test_report";
  fs::create_directories(dir);
  const auto r = table1()[1];
  for (auto f : {ReportFormat::Csv, ReportFormat::Json, ReportFormat::TextTable}) {
    const fs::path p = dir / report_file_name(f);
    emit_report(r, f, p);
    CHECK(fs::file_size(p) > 0);
  }
  CHECK(slurp(dir / "report.csv") == render_csv(r));
  CHECK(report_from_json(json::parse(slurp(dir / "report.json"))) == r);
  CHECK_THROWS_AS(emit_report(r, ReportFormat::Csv, "/nonexistent/dir/report.csv"), IoError);
  CHECK(parse_report_format("text-table") == ReportFormat::TextTable);
  CHECK_THROWS_AS(parse_report_format("xml"), InvalidArgument);
}
