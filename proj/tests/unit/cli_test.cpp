#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#ifndef MIL_CLI_PATH
#error "MIL_CLI_PATH must name the mil executable"
#endif

namespace {

struct Invocation {
  int code;
  std::string out;
};

Invocation run_env(const std::string& env, const std::string& args) {
  const std::string cmd = env + " " + std::string(MIL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Invocation run(const std::string& args) { return run_env("", args); }

}  // namespace

TEST(Cli, Search) {
  const Invocation r = run("search --max-leaves 8");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0 identities found; certificate covers 626 terms\n");
  EXPECT_EQ(run("search --max-leaves 9 --format csv").code, 2);
  EXPECT_EQ(run("search --max-leaves 12 --workers 1 --format json").out,
            run("search --max-leaves 12 --workers 8 --format json").out);
  EXPECT_EQ(run("--max-leaves 8 search --format json").code, 0);
}

TEST(Cli, Enumerate) {
  const Invocation r = run("enumerate --max-leaves 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x\nf(x,x)\nf(f(x,x),x)\nf(x,f(x,x))\n");
  EXPECT_EQ(run("enumerate --max-leaves 3 --num-vars 2 --format json").code, 0);
}

TEST(Cli, Analyze) {
  const Invocation r = run("analyze 'f(x,f(x,x))'");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dege"], 9);
  EXPECT_EQ(j["orde"], 2);
  EXPECT_EQ(j["cores"].size(), 1u);
  EXPECT_EQ(j["developments"], 1);
  EXPECT_EQ(run("analyze 'f(x,'").code, 2);
  EXPECT_EQ(run("analyze").code, 2);
}

TEST(Cli, Lexmin) {
  const Invocation r = run("lexmin 2 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "f(f(f(x,f(x,x)),x),x)\n");
  EXPECT_EQ(run("lexmin 2 0").code, 2);
  EXPECT_EQ(run("lexmin 2").code, 2);
}

TEST(Cli, Isolated) {
  EXPECT_EQ(run("isolated 'f(x,f(x,x))'").out, "isolated\n");
  EXPECT_EQ(run("isolated 'f(f(f(x,f(x,f(x,f(x,f(x,x))))),x),x)'").code, 3);
  const Invocation w = run("isolated 'f(x,f(x,x))' --wrt 'f(f(x,f(x,x)),f(f(x,x),x))' --format json");
  EXPECT_EQ(w.code, 0);
  EXPECT_EQ(nlohmann::json::parse(w.out)["status"], "counterexample");
  EXPECT_EQ(run("isolated 'f(f(x,x),x)' --wrt 'f(x,f(x,f(x,x)))'").code, 2);
}

TEST(Cli, Verify) {
  const Invocation r = run("verify maxt-left-x --bound 6 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "pass");
  EXPECT_EQ(run("verify preserved-gap --bound 99").code, 3);
  EXPECT_EQ(run("verify no-such-claim").code, 2);
}

TEST(Cli, Dioph) {
  const Invocation r = run("dioph eq10 --max-exp 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("a,b,c,d,e,f,g,h,value,trivial\n", 0), 0u);
  EXPECT_EQ(run("dioph eq10 --max-exp 8 --workers 1").out, run("dioph eq10 --max-exp 8 --workers 8").out);
  EXPECT_EQ(run("dioph eq10 --max-exp 40").code, 3);
  EXPECT_EQ(run("dioph eq9 0 2 0 0 --max-k 6").out, "k1,k2,l1,l2,value\n");
  EXPECT_EQ(run("dioph eq9 0 0 5 5").code, 2);
  EXPECT_EQ(run("dioph eq9 0 2").code, 2);
  EXPECT_EQ(run("dioph").code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("search --format yaml").code, 2);
  EXPECT_EQ(run("search --workers 0").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, CacheEnvironmentOverride) {
  const std::string path = ::testing::TempDir() + "mil_cli_env.cache";
  std::remove(path.c_str());
  const Invocation plain = run("search --max-leaves 9");
  const Invocation r = run("search --max-leaves 9 --cache /nonexistent/dir/x.cache");
  EXPECT_NE(r.code, 0);
  const Invocation env = run_env("MIL_CACHE=" + path, "search --max-leaves 9 --cache /nonexistent/dir/x.cache");
  EXPECT_EQ(env.code, 0);
  EXPECT_EQ(env.out, plain.out);
  FILE* f = std::fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  std::fclose(f);
  EXPECT_EQ(run_env("MIL_CACHE=" + path, "search --max-leaves 9").out, plain.out);
  std::remove(path.c_str());
}
