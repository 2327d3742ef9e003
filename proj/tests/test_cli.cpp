#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" RELPOLY_CLI "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("relpoly_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("cycle root certificate") {
  const Run r = run("cycle-root --n 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"-1043\"") != std::string::npos);
  CHECK(r.out.find("\"1128\"") != std::string::npos);
  CHECK(r.out.find("\"-+\"") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 3);
  CHECK(run("cycle-root").code == 2);
  CHECK(run("cycle-root --n 1").code == 2);
  CHECK(run("rational-root --a 3 --b 2").code == 0);
  CHECK(run("rational-root --a 5 --b 2").code == 2);
  CHECK(run("rational-root --a 1 --b 1").code == 1);
  CHECK(run("poly --graph /nonexistent/graph.txt").code == 4);
  CHECK(run("poly --graph " + temp_file("loop.txt", "2 1\n0 0\n")).code == 5);
  CHECK(run("poly --family cycle --n 2").code == 2);
  CHECK(run("target --re -1 --im 0 --eps 0.1").code == 2);
  CHECK(run("poly --family path --n 3", "RELPOLY_PRECISION_BITS=12").code == 2);
}

TEST_CASE("poly and roots") {
  const Run p = run("poly --family path --n 3");
  CHECK(p.code == 0);
  CHECK(p.out.find("\"3\"") != std::string::npos);

  const std::string tri = temp_file("tri.txt", "3 3\n0 1\n1 2\n0 2\n");
  CHECK(run("poly --graph " + tri).code == 0);

  const Run a = run("roots --family path --n-min 1 --n-max 8");
  CHECK(a.code == 0);
  CHECK(a.out.rfind("re,im,residual,source\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : a.out) lines += c == '\n';
  CHECK(lines == 1 + 36);
  CHECK(run("roots --family path --n-min 1 --n-max 8").out == a.out);
}

TEST_CASE("verify, target and experiments") {
  const Run v = run("verify --exhaustive-max 4 --random-count 10 --family-max 5 --trials 20000");
  CHECK(v.code == 0);
  CHECK(run("verify --exhaustive-max 4 --random-count 10 --family-max 5 --trials 20000").out == v.out);

  const Run t = run("target --re -1 --im 2 --eps 0.1");
  CHECK(t.code == 0);
  CHECK(t.out.find("\"label\"") != std::string::npos);
  CHECK(run("target --re -1 --im 2 --eps 0.1").out == t.out);

  CHECK(run("union-experiment --k-max 5").code == 0);
  CHECK(run("union-experiment --family path-complete --n-min 2 --n-max 6").code == 0);
  CHECK(run("limit-curve --skip-convergence --samples 20 --off-curve 20").code == 0);
}

}
