#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "setstab/builtins.hpp"
#include "setstab/constructor.hpp"

using json = nlohmann::json;
using namespace setstab;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = std::move(out);
  return r;
}

json golden(const std::string& name) {
  std::ifstream in(std::string(GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

Certificate certificate_from(const json& j) {
  Certificate cert;
  for (int v : j.at("coloring").get<std::vector<int>>())
    cert.coloring.push_back(static_cast<uint8_t>(v));
  for (const auto& images : j.at("stab_gens"))
    cert.stabilizer_generators.push_back(Perm::from_images(images.get<std::vector<int>>()));
  cert.max_orbit_length = j.at("max_orbit_length").get<int>();
  cert.derived_length = j.at("derived_length").get<int>();
  cert.elementary_abelian_2 = j.at("elem_abelian_2").get<bool>();
  for (const auto& line : j.at("trace")) cert.construction_trace.push_back(line.get<std::string>());
  return cert;
}

}  // namespace

TEST_CASE("census command prints the pinned row, identically across jobs") {
  RunResult serial = run_cli("census --group sym:4 --colors 2");
  REQUIRE(serial.code == 0);
  json j = json::parse(serial.out);
  CHECK(j.at("group") == "sym:4");
  CHECK(j.at("degree") == 4);
  CHECK(j.at("k") == 2);
  CHECK(j.at("classes").size() == 5);
  CHECK(j.at("ell").at("1") == 0);
  CHECK(j.at("ell").at("2") == 1);
  CHECK(j.at("ell").at("3") == 3);
  CHECK(j.at("ell").at("6") == 5);

  RunResult parallel = run_cli("--jobs 3 census --group sym:4 --colors 2");
  CHECK(parallel.code == 0);
  CHECK(parallel.out == serial.out);

  RunResult reg = run_cli("census --group sym:4 --colors 2 --regularity 3");
  json jr = json::parse(reg.out);
  CHECK(jr.at("regular_classes") == 3);
}

TEST_CASE("catalog table matches the golden file structurally") {
  RunResult r = run_cli("catalog --table1");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out) == golden("table1.json"));

  RunResult tsv = run_cli("catalog --table1 --tsv");
  REQUIRE(tsv.code == 0);
  CHECK(tsv.out.substr(0, 10) == "2\t1\t3\t3\t3\n");
  CHECK(std::count(tsv.out.begin(), tsv.out.end(), '\n') == 18);

  RunResult full = run_cli("catalog");
  json entries = json::parse(full.out).at("entries");
  CHECK(entries.size() >= 18);
  for (const auto& e : entries) {
    CHECK(e.at("degree").get<int>() >= 2);
    CHECK(!e.at("order").get<std::string>().empty());
  }
}

TEST_CASE("pinned obstruction examples match their golden files") {
  RunResult bad = run_cli("verify --example bad");
  REQUIRE(bad.code == 0);
  CHECK(json::parse(bad.out) == golden("bad.json"));

  RunResult bad2 = run_cli("verify --example bad2");
  REQUIRE(bad2.code == 0);
  CHECK(json::parse(bad2.out) == golden("bad2.json"));
}

TEST_CASE("construct commands emit certificates that re-verify") {
  RunResult r = run_cli("construct good-subset --group 'wr_imp(sym:3,sym:2)' --want 2");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j.at("certificates").size() == 2);
  PermGroup g = parse_group("wr_imp(sym:3,sym:2)");
  for (const auto& cj : j.at("certificates")) {
    Certificate cert = certificate_from(cj);
    CHECK(cert.max_orbit_length <= 6);
    CHECK(cert.derived_length <= 3);
    CHECK(verify_certificate(g, cert));
  }

  RunResult three = run_cli("construct three-coloring --group cyc:6");
  REQUIRE(three.code == 0);
  json cj = json::parse(three.out).at("certificate");
  CHECK(cj.at("coloring") == json::array({0, 0, 0, 0, 1, 2}));
  CHECK(cj.at("elem_abelian_2") == true);
  CHECK(verify_certificate(cyclic_group(6), certificate_from(cj)));

  RunResult asym =
      run_cli("construct asymmetric --group sym:3 --colors 3 --regularity 2 --want 5");
  REQUIRE(asym.code == 0);
  json aj = json::parse(asym.out);
  CHECK(aj.at("colorings") ==
        json::array({json::array({0, 0, 1}), json::array({0, 0, 2}), json::array({0, 1, 1}),
                     json::array({0, 1, 2}), json::array({0, 2, 2})}));
  CHECK(aj.at("pairwise_inequivalent") == true);
}

TEST_CASE("groups load from JSON files as well as expressions") {
  namespace fs = std::filesystem;
  fs::path file = fs::temp_directory_path() / "rotation3.json";
  std::ofstream(file) << R"({"degree": 3, "generators": [[1, 2, 0]]})";
  RunResult r = run_cli("census --group " + file.string() + " --colors 2");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("degree") == 3);
  CHECK(j.at("classes").size() == 4);
  fs::remove(file);
}

TEST_CASE("product demo reports the bounded intersection") {
  RunResult r = run_cli("product-demo --x sym:5 --t alt:5 --d 2 --s sym:2 --trials 5 --seed 9");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("degree") == 25);
  CHECK(j.at("delta") == json::array({1}));
  CHECK(j.at("moved_point") == 1);
  CHECK(j.at("dl_intersection") == 3);
  CHECK(j.at("intersection_order") == "144");
  CHECK(j.at("dl_bound_holds") == true);
  CHECK(j.at("triple_agreement") == true);
  CHECK(j.at("random_trials") == 5);
  CHECK(j.at("small_set_solvable").at("2") == true);
  CHECK(j.at("small_set_solvable").at("3") == true);
  CHECK(j.at("small_set_solvable").at("4") == true);

  RunResult again = run_cli("product-demo --x sym:5 --t alt:5 --d 2 --s sym:2 --trials 5 --seed 9");
  CHECK(again.out == r.out);
}

TEST_CASE("exit codes separate usage, caps, and violated guarantees") {
  CHECK(run_cli("census --group sym:4").code == 1);
  CHECK(run_cli("census --group 'not_a_group:%' --colors 2").code == 1);
  CHECK(run_cli("verify --example nope").code == 1);
  CHECK(run_cli("census --group sym:4 --colors 2 --cap-space 8").code == 2);
  CHECK(run_cli("construct asymmetric --group sym:2 --colors 2 --regularity 1 --want 2").code ==
        3);
}
