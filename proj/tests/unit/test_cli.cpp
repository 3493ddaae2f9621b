#include <doctest.h>

#include <sstream>
#include <vector>

#include "ptord/cli.hpp"

using namespace ptord;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ptord");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("compute, human output") {
  const auto r = invoke({"compute", "--a-invariants", "0,0,0,-432,-864", "--ell", "7", "--p", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "d = 4  (branch T1.1)\n");
}

TEST_CASE("compute, JSON output") {
  const auto r = invoke({"compute", "--a-invariants", "0,0,0,-432,-864", "--ell", "2", "--p", "11", "--json"});
  REQUIRE(r.code == 0);
  const auto doc = cli::Json::parse(r.out);
  CHECK(doc["d"] == 240);
  CHECK(doc["branch"] == "T12.2");
  CHECK(doc["reduction"]["e"] == 24);
  CHECK(doc["verify"].is_null());
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"label", "ell", "p", "d", "branch", "reduction", "intermediates", "verify"});
}

TEST_CASE("compute with c-invariants and verify") {
  const auto r = invoke({"compute", "--c-invariants", "20736,746496", "--ell", "7", "--p", "11", "--json", "--verify"});
  REQUIRE(r.code == 0);
  const auto doc = cli::Json::parse(r.out);
  CHECK(doc["d"] == 10);
  CHECK(doc["verify"]["violations"].empty());
}

TEST_CASE("compute errors map to exit codes") {
  const auto same = invoke({"compute", "--a-invariants", "0,0,0,-432,-864", "--ell", "7", "--p", "7"});
  CHECK(same.code == 2);
  CHECK(same.err.find("p must differ from ell") != std::string::npos);
  CHECK(invoke({"compute", "--a-invariants", "0,0,0,0", "--ell", "7", "--p", "5"}).code == 2);
  CHECK(invoke({"compute", "--a-invariants", "0,0,0,0,0", "--ell", "7", "--p", "5"}).code == 2);
  CHECK(invoke({"compute", "--ell", "7", "--p", "5"}).code == 2);
  CHECK(invoke({"compute", "--a-invariants", "0,0,0,-432,-864", "--ell", "7"}).code == 2);
  CHECK(invoke({"nonsense"}).code == 2);
  const auto miss = invoke({"compute", "--a-invariants", "0,0,0,-432,-864", "--ell", "2", "--p", "3",
                            "--defect-table", "/dev/null"});
  CHECK(miss.code == 2);  // missing version line
}

TEST_CASE("discriminant, both forms") {
  auto a = invoke({"discriminant", "--d", "48", "--e", "24", "--different", "50", "--ell", "2"});
  CHECK(a.code == 0);
  CHECK(a.out == "(2)^100\n");
  a = invoke({"discriminant", "--d", "24", "--e", "6", "--different", "9", "--ell", "3"});
  CHECK(a.out == "(3)^36\n");
  a = invoke({"discriminant", "--a-invariants", "0,0,0,-432,-864", "--p", "3", "--different", "50", "--ell", "2"});
  CHECK(a.out == "(2)^100\n");
  a = invoke({"discriminant", "--a-invariants", "0,0,0,-432,-864", "--p", "5", "--different", "9", "--ell", "3"});
  CHECK(a.out == "(3)^36\n");
  a = invoke({"discriminant", "--d", "7", "--e", "7", "--different", "0", "--ell", "5"});
  CHECK(a.out == "(5)^0\n");
  CHECK(invoke({"discriminant", "--d", "8", "--e", "3", "--different", "1", "--ell", "5"}).code == 2);
}

TEST_CASE("batch parsing and ordering") {
  std::istringstream in(
      "label,a1,a2,a3,a4,a6,ell,p\n"
      "a,0,0,0,-432,-864,7,5\n"
      "\n"
      "b,0,0,0,-432,-864,7,7\n"
      "c,0,0,0,-432,-864,2\n"
      "d,0,0,0,-432,-864,2,11\n");
  const auto rows = cli::parse_batch(in);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].query.has_value());
  CHECK(rows[1].query.has_value());
  CHECK_FALSE(rows[2].query.has_value());
  int worst = 0;
  const auto lines = cli::run_batch(rows, 1, 2, nullptr, false, worst);
  REQUIRE(lines.size() == 4);
  CHECK(cli::Json::parse(lines[0])["d"] == 4);
  CHECK(cli::Json::parse(lines[1]).contains("error"));
  CHECK(cli::Json::parse(lines[2])["error"]["kind"] == "invalid-input");
  CHECK(cli::Json::parse(lines[3])["d"] == 240);
  CHECK(worst == 2);
}

TEST_CASE("batch optional columns") {
  std::istringstream in(
      "label,a1,a2,a3,a4,a6,ell,p,defect,assume_minimal\n"
      "x,0,0,0,-432,-864,2,3,24,true\n"
      "y,0,0,0,-432,-864,2,3,,0\n");
  const auto rows = cli::parse_batch(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].query->defect == 24u);
  CHECK(rows[0].query->assume_minimal == true);
  CHECK_FALSE(rows[1].query->defect.has_value());
  std::istringstream bad("label,a1,a2,a3,a4,a6,ell,p,colour\n");
  CHECK_THROWS(cli::parse_batch(bad));
}

TEST_CASE("empty batch") {
  std::istringstream in("");
  CHECK(cli::parse_batch(in).empty());
}

TEST_CASE("row seeds differ per row and are stable") {
  CHECK(cli::row_seed(1, 0) != cli::row_seed(1, 1));
  CHECK(cli::row_seed(1, 5) == cli::row_seed(1, 5));
  CHECK(cli::row_seed(2, 5) != cli::row_seed(1, 5));
}
