#include "halllab/cli.hpp"
#include "halllab/report.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = halllab::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  fs::create_directories(HALLLAB_TEST_TMP);
  return (fs::path(HALLLAB_TEST_TMP) / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

const char* c5 = "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n";

}  // namespace

TEST_CASE("documented examples") {
  auto petersen = run({"gen", "kneser", "5", "2"});
  REQUIRE(petersen.code == 0);
  auto chi = run({"invariants", "--chi-f"}, petersen.out);
  CHECK(chi.code == 0);
  CHECK(chi.out == "chi_f = 5/2\n");

  auto rho = run({"invariants", "--hall-ratio"}, c5);
  CHECK(rho.out == "rho = 5/2, witness = {0,1,2,3,4}\n");

  auto bound = run({"bounds", "chernoff", "--mu", "40", "--delta", "0.5"});
  CHECK(bound.code == 0);
  CHECK(bound.out == "bound = e^-5\n");
}

TEST_CASE("generators on the command line") {
  auto c = run({"gen", "mycielski", "3"});
  CHECK(c.out == "5 5\n0 1\n0 3\n1 2\n2 4\n3 4\n");
  auto j = run({"gen", "join", "2"}, c5);
  CHECK(j.out.rfind("10 35\n", 0) == 0);
  auto s = run({"gen", "subdivide"}, "3 3\n0 1\n1 2\n0 2\n");
  CHECK(s.out.rfind("6 6\n", 0) == 0);
  auto g = run({"gen", "gnp", "30", "1/3", "--seed", "4"});
  CHECK(g.out == run({"gen", "gnp", "30", "1/3", "--seed", "4"}).out);
  auto l = run({"gen", "layered", "256", "1", "--seed", "2"});
  CHECK(l.out.rfind("320 256\n", 0) == 0);
  auto bad = run({"gen", "layered", "100", "2"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("not a 16-th power") != std::string::npos);
}

TEST_CASE("errors map to exit codes with one-line diagnostics") {
  auto unknown = run({"invariants", "--bogus"});
  CHECK(unknown.code == 2);
  CHECK_FALSE(unknown.err.empty());

  auto missing = run({"invariants", "--input", tmp("does_not_exist.txt")});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);
  CHECK(std::count(missing.err.begin(), missing.err.end(), '\n') == 1);

  auto malformed = run({"invariants", "--alpha"}, "2 1\n0 0\n");
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("line 2") != std::string::npos);

  auto none = run({});
  CHECK(none.code == 2);

  auto budget = run({"gen", "gnp", "200", "1/20", "--seed", "1"});
  auto exhausted = run({"invariants", "--alpha", "--node-limit", "5"}, budget.out);
  CHECK(exhausted.code == 3);
  CHECK(exhausted.err.find("budget") != std::string::npos);

  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("bounds subcommands") {
  auto w = run({"bounds", "weight", "--a", "4", "--q", "16", "--n", "8", "--deg", "256"});
  CHECK(w.out == "bound = e^-16, hypothesis = true\n");
  auto e = run({"bounds", "events", "--root", "2", "--M", "2", "--m", "2", "--s", "1", "--t", "4", "--side", "branch"});
  CHECK(e.code == 0);
  CHECK(e.out.rfind("branch: full = ", 0) == 0);
  auto t = run({"bounds", "threshold", "--M", "2", "--from", "2", "--to", "40", "--json", tmp("threshold.json")});
  CHECK(t.code == 0);
  CHECK(t.out.find("minimal passing n = ") != std::string::npos);
  auto j = json::parse(slurp(tmp("threshold.json")));
  CHECK(j["aggregate"]["found"] == true);
  CHECK(j["aggregate"]["monotone"] == true);
  CHECK(run({"bounds", "events", "--root", "2", "--s", "1", "--t", "3"}).code == 2);
}

TEST_CASE("JSON reports round-trip and reproduce") {
  const std::vector<std::string> cmd{"sample-hb", "--b", "6", "--a", "3", "--q", "4", "--trials", "12", "--seed", "9"};
  auto with_json = [&](const std::string& path, std::vector<std::string> extra = {}) {
    auto args = cmd;
    args.insert(args.end(), extra.begin(), extra.end());
    args.push_back("--json");
    args.push_back(path);
    REQUIRE(run(args).code == 0);
    return json::parse(slurp(path));
  };
  auto a = with_json(tmp("hb_a.json"));
  auto b = with_json(tmp("hb_a.json"));
  auto c = with_json(tmp("hb_c.json"), {"--parallel", "3"});
  CHECK(a["trials"].dump() == b["trials"].dump());
  CHECK(a["trials"].dump() == c["trials"].dump());
  CHECK(halllab::reproducible_view(a).dump() == halllab::reproducible_view(b).dump());
  CHECK(a["trials"].size() == 12);
  CHECK(a["seed"] == 9);
  CHECK(a["parameters"]["q"] == 4);
  CHECK(a["parameters"]["node_limit"].is_number());

  auto rep = halllab::report_from_json(a);
  CHECK(halllab::to_json(rep).dump() == a.dump());

  auto other = run({"sample-hb", "--b", "6", "--a", "3", "--q", "4", "--trials", "12", "--seed", "10", "--json",
                    tmp("hb_d.json")});
  REQUIRE(other.code == 0);
  auto d = json::parse(slurp(tmp("hb_d.json")));
  CHECK(d["seed"] == 10);
  CHECK(d["trials"].dump() != a["trials"].dump());
}

TEST_CASE("HALLLAB_SEED sets the default seed") {
  setenv("HALLLAB_SEED", "1234", 1);
  auto r = run({"sample-hb", "--b", "3", "--a", "2", "--q", "2", "--trials", "2", "--json", tmp("env.json")});
  unsetenv("HALLLAB_SEED");
  CHECK(r.code == 0);
  CHECK(json::parse(slurp(tmp("env.json")))["seed"] == 1234);
  setenv("HALLLAB_SEED", "nope", 1);
  CHECK(run({"sample-hb", "--b", "3", "--a", "2", "--q", "2"}).code == 2);
  unsetenv("HALLLAB_SEED");
}

TEST_CASE("thm1 runs are reproducible") {
  const std::vector<std::string> cmd{"thm1", "--c", "1", "--trials", "8", "--gnp-n", "600", "--seed", "3"};
  auto a = cmd, b = cmd;
  a.insert(a.end(), {"--json", tmp("thm1_a.json")});
  b.insert(b.end(), {"--json", tmp("thm1_b.json"), "--parallel", "2"});
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  auto ja = json::parse(slurp(tmp("thm1_a.json"))), jb = json::parse(slurp(tmp("thm1_b.json")));
  CHECK(ja["trials"].dump() == jb["trials"].dump());
  CHECK(ja["aggregate"]["extraction_success"] == true);
}

TEST_CASE("extract reports the pair") {
  auto g = run({"gen", "gnp", "300", "1/2", "--seed", "5"});
  auto e = run({"extract", "--a", "3", "--q", "2", "--seed", "1", "--pair-out", tmp("pair.txt")}, g.out);
  CHECK(e.code == 0);
  CHECK(e.out.find("extraction: success") != std::string::npos);
  CHECK(slurp(tmp("pair.txt")).size() > 0);
}

TEST_CASE("verify certificates and witnesses") {
  write(tmp("c5.txt"), c5);
  REQUIRE(run({"invariants", "--chi-f", "--input", tmp("c5.txt"), "--cert-out", tmp("c5_cert.json")}).code == 0);
  auto ok = run({"verify", tmp("c5_cert.json"), "--graph", tmp("c5.txt")});
  CHECK(ok.code == 0);
  CHECK(ok.out == "certificate: pass\n");

  auto cert = json::parse(slurp(tmp("c5_cert.json")));
  cert["value"] = "2";
  write(tmp("c5_bad.json"), cert.dump());
  auto bad = run({"verify", tmp("c5_bad.json"), "--graph", tmp("c5.txt")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("dual bound mismatch") != std::string::npos);

  write(tmp("k4.txt"), "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  auto sub = run({"gen", "subdivide", "--input", tmp("k4.txt"), "--witness-out", tmp("k4_w.json"), "-o", tmp("k4s.txt")});
  REQUIRE(sub.code == 0);
  auto w = run({"verify", tmp("k4_w.json"), "--graph", tmp("k4s.txt")});
  CHECK(w.code == 0);
  CHECK(w.out == "witness: pass\n");
  auto wrong_host = run({"verify", tmp("k4_w.json"), "--graph", tmp("c5.txt")});
  CHECK(wrong_host.code == 1);

  write(tmp("junk.json"), "{\"type\": 3}");
  CHECK(run({"verify", tmp("junk.json"), "--graph", tmp("c5.txt")}).code == 2);
}

TEST_CASE("batch configs") {
  write(tmp("empty.cfg"), "# nothing here\n\n");
  auto empty = run({"batch", tmp("empty.cfg"), "--json", tmp("empty.json")});
  CHECK(empty.code == 0);
  CHECK(empty.out == "0 experiments: 0 ok, 0 failed, 0 skipped\n");
  CHECK(json::parse(slurp(tmp("empty.json")))["aggregate"]["experiments"] == 0);

  write(tmp("missing.cfg"), "[experiment inv]\ncommand = invariants\ngraph = " + tmp("nope.txt") + "\n");
  auto missing = run({"batch", tmp("missing.cfg")});
  CHECK(missing.code == 2);
  CHECK(missing.out.find("experiment inv: skipped") != std::string::npos);

  write(tmp("c5.txt"), c5);
  write(tmp("main.cfg"),
        "# two experiments\n"
        "[experiment thm1-c1]\n"
        "command = thm1\n"
        "c = 1\n"
        "trials = 10\n"
        "gnp-n = 600\n"
        "seed = 4\n"
        "expect certified_fraction >= 1/2\n"
        "\n"
        "[experiment c5]\n"
        "command = invariants\n"
        "graph = " + tmp("c5.txt") + "\n"
        "chi-f = true\n"
        "expect chi_f == 5/2\n");
  auto main = run({"batch", tmp("main.cfg"), "--json", tmp("main.json")});
  CHECK(main.code == 0);
  CHECK(main.out.find("experiment thm1-c1: ok, certified_fraction = ") != std::string::npos);
  CHECK(main.out.find("experiment c5: ok; chi_f = 5/2") != std::string::npos);
  auto j = json::parse(slurp(tmp("main.json")));
  CHECK(j["trials"].size() == 2);
  CHECK(j["trials"][0]["name"] == "thm1-c1");

  write(tmp("fail.cfg"), "[x]\ncommand = invariants\ngraph = " + tmp("c5.txt") + "\nexpect chi_f > 3\n");
  CHECK(run({"batch", tmp("fail.cfg")}).code == 1);

  write(tmp("broken.cfg"), "[x]\ncommand = thm1\nthis line is wrong\n");
  auto broken = run({"batch", tmp("broken.cfg")});
  CHECK(broken.code == 2);
  CHECK(broken.err.find("line 3") != std::string::npos);
  write(tmp("orphan.cfg"), "c = 1\n");
  CHECK(run({"batch", tmp("orphan.cfg")}).err.find("line 1") != std::string::npos);
}
