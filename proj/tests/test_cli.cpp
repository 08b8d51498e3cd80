#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "coh/json_io.hpp"

namespace {

struct run_result {
  int code = -1;
  std::string out;
};

run_result cli(const std::string& args) {
  std::string cmd = std::string(COH_CLI_PATH) + " " + args + " 2>/dev/null";
  run_result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), k);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const std::string& f) { return std::string(COH_DATA_DIR) + "/" + f; }

bool has(const std::string& s, const std::string& sub) { return s.find(sub) != std::string::npos; }

}  // namespace

TEST(Cli, ProveExitCodes) {
  auto a = cli("prove " + data("pqr.thy") + " \"[x] P(x) & Q(x) |- R(x)\" --depth 8");
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(has(a.out, "proved")) << a.out;
  EXPECT_TRUE(has(a.out, "checked"));
  auto b = cli("prove " + data("pqr.thy") + " \"[x] P(x) |- R(x)\"");
  EXPECT_EQ(b.code, 1);
  EXPECT_TRUE(has(b.out, "countermodel"));
  auto c = cli("refute " + data("pqr.thy") + " \"[x] P(x) & Q(x) |- R(x)\" --model-size 2");
  EXPECT_EQ(c.code, 2);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(cli("prove " + data("pqr.thy") + " \"[x] P(x) |-\"").code, 3);
  EXPECT_EQ(cli("prove /nonexistent.thy \"[x] P(x) |- P(x)\"").code, 3);
  EXPECT_EQ(cli("--no-such-flag").code, 3);
  EXPECT_EQ(cli("").code, 3);
}

TEST(Cli, VersionListsSchemas) {
  auto r = cli("--version");
  EXPECT_EQ(r.code, 0);
  for (auto* k : {"model", "lattice", "presentation", "report", "typespace"}) EXPECT_TRUE(has(r.out, k)) << k;
}

TEST(Cli, JsonReportIsDeterministic) {
  auto args = "--json prove " + data("pqr.thy") + " \"[x] P(x) & Q(x) |- R(x)\"";
  auto a = coh::json::parse(cli(args).out), b = coh::json::parse(cli(args).out);
  EXPECT_EQ(a["command"], "prove");
  EXPECT_EQ(a["exit_code"], 0);
  EXPECT_EQ(a["verdicts"][0]["verdict"], "proved");
  a.erase("wall_time_ms");
  b.erase("wall_time_ms");
  EXPECT_EQ(a, b);
  // the thread cap does not change the answer
  auto c = coh::json::parse(cli("--threads 4 " + args).out);
  EXPECT_EQ(c["verdicts"], a["verdicts"]);
}

TEST(Cli, Duality) {
  EXPECT_EQ(cli("duality --lattice " + data("chain3.json") + " --roundtrip").code, 0);
  auto r = cli("duality --lattice " + data("diamond.json") + " --roundtrip");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "spec: 2 points"));
}

TEST(Cli, BeckChevalley) {
  auto r = cli("check-bc --theory " + data("pqr.thy") + " --pushout \"1<-0->1\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "universal_map_surjective: false")) << r.out;
  EXPECT_TRUE(has(r.out, "witness:"));
  auto s = cli("check-bc --interp " + data("e_interp.int") + " --source " + data("empty.thy") + " --target " +
               data("pequiv.thy") + " --f [1,1] --m 1");
  EXPECT_EQ(s.code, 0);
  EXPECT_TRUE(has(s.out, "weak beck_chevalley: true"));
  EXPECT_TRUE(has(s.out, "strict beck_chevalley: false"));
  auto q = cli("check-bc --square " + data("nonsurjective_square.json"));
  EXPECT_EQ(q.code, 1);
  EXPECT_TRUE(has(q.out, "universal_map_surjective: false"));
}

TEST(Cli, Frobenius) {
  auto r = cli("check-frobenius --map " + data("open_map.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "adjoint with frobenius: yes"));
}

TEST(Cli, EvalAndModels) {
  EXPECT_EQ(cli("eval " + data("pqr_model.json") + " " + data("pqr.thy")).code, 0);
  auto r = cli("models " + data("pequiv.thy") + " --max-size 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "total 14"));
}

TEST(Cli, Interpretations) {
  auto src = " --source " + data("empty.thy") + " --target " + data("pequiv.thy");
  auto a = cli("interpret apply " + data("e_interp.int") + src + " --formula \"x = y\" --vars x,y");
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(has(a.out, "E(x1,x2)"));
  auto c = cli("interpret check " + data("e_interp.int") + src + " --samples 10");
  EXPECT_EQ(c.code, 0) << c.out;
  auto cell = cli("interpret cell " + data("e_interp.int") + " " + data("e_interp.int") + src +
                  " --theta \"E(x,y)\" --vars x,y");
  EXPECT_EQ(cell.code, 0) << cell.out;
}

TEST(Cli, PresentationsAndRoundTrip) {
  EXPECT_EQ(cli("thf validate --theory " + data("pequiv.thy")).code, 0);
  EXPECT_EQ(cli("thf roundtrip --theory " + data("pequiv.thy")).code, 0);
  auto r = cli("roundtrip " + data("pequiv.thy") + " --samples 10");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r.out, "mismatch 0"));
}
