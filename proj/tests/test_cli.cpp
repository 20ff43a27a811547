#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Out {
  int code;
  std::string text;
};

Out run(const std::string& args) {
  std::string cmd = std::string(CLOTT_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string text;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) text.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

std::string ex(const std::string& name) { return std::string(CLOTT_SAMPLES) + "/" + name; }

const char* twoTicks = R"('{"clocks":{"l0":2},"valuation":{"k":"l0"}}')";

}  // namespace

TEST_CASE("check accepts and rejects") {
  for (auto& f : {"zeros.clott", "hd.clott", "tl.clott", "apply.clott", "apply_dep.clott",
                  "tick_context.clott"}) {
    CAPTURE(f);
    Out o = run("check " + ex(f));
    CHECK(o.code == 0);
    CHECK(o.text.rfind("ok: ", 0) == 0);
  }
  Out d = run("check --json " + ex("double_tick.clott"));
  CHECK(d.code == 1);
  CHECK(nlohmann::json::parse(d.text)["error"]["rule"] == "tick-app");
  Out f = run("check --json " + ex("dfix_force.clott"));
  CHECK(f.code == 1);
  CHECK(nlohmann::json::parse(f.text)["error"]["rule"] == "diamond");
}

TEST_CASE("check explains") {
  Out o = run("check --explain --json " + ex("apply.clott"));
  REQUIRE(o.code == 0);
  auto j = nlohmann::json::parse(o.text);
  CHECK(j["status"] == "ok");
  CHECK(j.contains("derivation"));
}

TEST_CASE("eval prints the zeros prefix") {
  Out o = run("eval " + ex("zeros.clott") + " --world " + twoTicks);
  CHECK(o.code == 0);
  CHECK(o.text == "[0,[0,[0,\"*\"]]]\n");
}

TEST_CASE("eval needs an environment choice when there are several") {
  std::string w = R"('{"clocks":{"l0":2},"valuation":{"k":"l0","k2":"l0"}}')";
  CHECK(run("eval " + ex("tick_context.clott") + " --world " + w).code == 2);
  Out o = run("eval " + ex("tick_context.clott") + " --world " + w + " --env 0");
  CHECK(o.code == 0);
  CHECK(o.text == "1\n");
  CHECK(run("eval " + ex("tick_context.clott") + " --world " + w + " --env 99").code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("eval " + ex("zeros.clott") + " --world '{'").code == 2);
  CHECK(run("eval " + ex("zeros.clott")).code == 2);
  CHECK(run("check /no/such/file.clott").code == 2);
  CHECK(run("verify --suite nope").code == 2);
  CHECK(run("worlds --trunc 0,1").code == 2);
}

TEST_CASE("normalize") {
  Out o = run("normalize " + ex("zeros.clott"));
  CHECK(o.code == 0);
  CHECK(o.text.rfind("pair 0 ", 0) == 0);
}

TEST_CASE("inhabit") {
  Out o = run("inhabit " + ex("stream_type.clott"));
  CHECK(o.code == 0);
  auto j = nlohmann::json::parse(o.text);
  CHECK(j["inhabited"] == true);
  CHECK(j["worlds"] == 60);
}

TEST_CASE("worlds honours the truncation") {
  Out o = run("worlds --clocks k --trunc 1,1");
  CHECK(o.text == "{\"clocks\":{\"l0\":0},\"valuation\":{\"k\":\"l0\"}}\n"
                  "{\"clocks\":{\"l0\":1},\"valuation\":{\"k\":\"l0\"}}\n");
  Out e = run("worlds --clocks k,k2");
  size_t lines = 0;
  for (char c : e.text) lines += c == '\n';
  CHECK(lines == 140);
}

TEST_CASE("verify reports per lemma") {
  Out o = run("verify --suite streams");
  CHECK(o.code == 0);
  CHECK(o.text.find("ok   streams / stream-prefix  1/1") != std::string::npos);
  Out j = run("verify --suite fixpoint --json");
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.text)["suite"] == "fixpoint");
}

TEST_CASE("syntax errors exit with one") {
  auto path = std::filesystem::temp_directory_path() / "clott_syntax_error.clott";
  std::ofstream(path) << "clocks k;\n  pair 0 )\n";
  CHECK(run("check " + path.string()).code == 1);
  std::ofstream(path) << "clocks k;\n  pair 0 y\n";
  CHECK(run("check " + path.string()).code == 1);
  std::filesystem::remove(path);
}
