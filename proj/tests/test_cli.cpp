#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>
#include <stag/cli.hpp>

#include "support/dot_check.hpp"

using namespace stag;

namespace {

struct outcome {
  int code;
  std::string out;
  std::string err;
};

outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("translate") {
  auto r = run({"translate", "ku -ka pokose -lul pwunsilhaissta"});
  CHECK(r.code == 0);
  CHECK(r.out == "he lost the report\n");

  auto back = run({"translate", "--dir", "en-ko", "he", "wears", "socks"});
  CHECK(back.code == 0);
  CHECK(back.out == "ku -ka yangmal -ul sinta\n");

  auto pron = run({"translate", "--pronominalize-subjects", "Tom -un pokose -nun pwunsilhaissta -ko malhaissta"});
  CHECK(pron.out == "tom said he lost the report\n");
}

TEST_CASE("translate with trace and formats") {
  auto t = run({"translate", "--trace", "--dir", "en-ko", "he wears socks"});
  CHECK(t.code == 0);
  CHECK(t.out.find("candidates [0]: 4 generated, 3 rejected") != std::string::npos);
  CHECK(t.out.find("en_tnx0Vnx1[wear] -> wear-sinta wear-ipta wear-ssuta wear-chata") != std::string::npos);

  auto j = run({"translate", "--format", "json", "ku -ka pokose -lul pwunsilhaissta"});
  CHECK(j.code == 0);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["translations"][0]["target"].size() == 4);

  auto d = run({"translate", "--format", "dot", "ku -ka pokose -lul pwunsilhaissta"});
  std::string why;
  CHECK_MESSAGE(test::valid_dot(d.out, &why), why);
}

TEST_CASE("parse and recover") {
  auto p = run({"parse", "--lang", "en", "--format", "json", "--all", "he lost the report"});
  CHECK(p.code == 0);
  CHECK(nlohmann::json::parse(p.out)["total"] == 1);

  auto text = run({"parse", "ku -ka pokose -lul pwunsilhaissta"});
  CHECK(text.out.find("yield: ku -ka pokose -lul pwunsilhaissta") != std::string::npos);

  auto dot = run({"parse", "--format", "dot", "--deferred", "ku -ka pokose -lul pwunsilhaissta"});
  CHECK(test::valid_dot(dot.out));

  auto none = run({"parse", "ku -ka ku"});
  CHECK(none.code == 1);

  auto rec = run({"recover", "Tom -un pokose -nun pwunsilhaissta -ko malhaissta"});
  CHECK(rec.code == 0);
  CHECK(rec.out.find("-> PRO, controlled by matrix subject Tom") != std::string::npos);

  auto unresolved = run({"recover", "pwunsilhaissta"});
  CHECK(unresolved.code == 1);
  CHECK(run({"recover", "--placeholder", "pwunsilhaissta"}).code == 0);
}

TEST_CASE("sessions across invocations") {
  const auto path = (std::filesystem::temp_directory_path() / "stag_cli_session.json").string();
  std::filesystem::remove(path);
  CHECK(run({"translate", "--session", path, "Tom -un pokose -nun pwunsilhaissta -ko malhaissta"}).code == 0);
  auto second = run({"translate", "--session", path, "pwunsilhaissta"});
  CHECK(second.code == 0);
  CHECK(second.out == "tom lost the report\n");

  std::filesystem::remove(path);
  auto fresh = run({"translate", "--session", path, "pwunsilhaissta"});
  CHECK(fresh.code == 1);
  CHECK(fresh.err.find("note: [0] unresolved argument NP0") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("validate") {
  auto ok = run({"validate"});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("ok: ", 0) == 0);
  auto bad = run({"validate", "--grammar", "/nonexistent"});
  CHECK(bad.code == 2);
  CHECK(bad.out.find("cannot read grammar file") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"translate", "--dir", "xx", "ku"}).code == 2);
  CHECK(run({"translate", "--format", "xml", "ku"}).code == 2);
  CHECK(run({"translate"}).code == 2);
  auto unknown = run({"translate", "ku -ka xyz"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown token(s): xyz") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("the installed binary") {
  const std::string cmd = std::string(STAGMT_PATH) + " translate \"ku -ka pokose -lul pwunsilhaissta\"";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  int status = pclose(pipe);
  CHECK(status == 0);
  CHECK(out == "he lost the report\n");
}
