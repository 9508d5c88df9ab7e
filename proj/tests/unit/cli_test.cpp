#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "oml/cli.hpp"

namespace fs = std::filesystem;
using oml::testing::dataPath;
using oml::testing::readData;
using oml::testing::readFile;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result omlc(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = oml::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("omlc-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    std::string path = (dir_ / name).string();
    std::ofstream(path, std::ios::binary) << text;
    return path;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ParseEchoesCanonicalForm) {
  Result r = omlc({"parse", dataPath("movie.oml")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("<OML>\n  <Ontology>", 0), 0u);
  Result again = omlc({"parse", write("echo.oml", r.out)});
  EXPECT_EQ(again.out, r.out);
}

TEST_F(Cli, JsonDiagnosticSchema) {
  std::string bad = write("bad.oml", "<OML>\n<Ontology>\n</OML>\n");
  Result r = omlc({"parse", bad, "--format", "json"});
  EXPECT_EQ(r.code, 1);
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["errors"], 1);
  EXPECT_EQ(doc["warnings"], 0);
  ASSERT_EQ(doc["diagnostics"].size(), 1u);
  const auto& d = doc["diagnostics"][0];
  EXPECT_EQ(d["severity"], "error");
  EXPECT_EQ(d["code"], "XML001");
  EXPECT_EQ(d["document"], bad);
  EXPECT_EQ(d["line"], 3);
  EXPECT_TRUE(d["column"].is_number());
  EXPECT_TRUE(d["message"].is_string());

  Result clean = omlc({"parse", dataPath("movie.oml"), "--format", "json"});
  EXPECT_EQ(clean.code, 0);
  EXPECT_EQ(clean.out, "{\"diagnostics\":[],\"errors\":0,\"warnings\":0}\n");
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(omlc({}).code, 2);
  EXPECT_EQ(omlc({"frobnicate"}).code, 2);
  EXPECT_EQ(omlc({"parse"}).code, 2);
  EXPECT_EQ(omlc({"parse", path("missing.oml")}).code, 2);
  EXPECT_EQ(omlc({"check", dataPath("movie.oml"), "--map", "nonsense"}).code, 2);
  EXPECT_EQ(omlc({"check", dataPath("movie.oml"), "--strict", "--lenient"}).code, 2);
  EXPECT_EQ(omlc({"--help"}).code, 0);
}

TEST_F(Cli, CheckHonoursResolutionMode) {
  std::vector<std::string> files = {dataPath("movie.oml"), dataPath("casablanca-generic.oml")};
  auto withFlag = [&](std::string flag) {
    auto args = std::vector<std::string>{"check"};
    args.insert(args.end(), files.begin(), files.end());
    if (!flag.empty()) args.push_back(flag);
    args.insert(args.end(), {"--format", "json"});
    return omlc(args);
  };
  Result lenient = withFlag("--lenient");
  EXPECT_EQ(lenient.code, 0) << lenient.out;
  EXPECT_GT(nlohmann::json::parse(lenient.out)["warnings"].get<int>(), 0);
  EXPECT_EQ(withFlag("--strict").code, 1);

  ::setenv("OML_STRICT", "1", 1);
  EXPECT_EQ(withFlag("").code, 1);
  EXPECT_EQ(withFlag("--lenient").code, 0);
  ::unsetenv("OML_STRICT");
  EXPECT_EQ(withFlag("").code, 0);

  Result full = omlc({"check", dataPath("movie-full.oml"), dataPath("casablanca-full.oml"),
                      "--strict"});
  EXPECT_EQ(full.code, 0) << full.err;
}

TEST_F(Cli, MapResolvesExtends) {
  std::string base = write("base.oml", "<OML><Ontology><Type.Object name='Person'/></Ontology></OML>");
  std::string derived = write("derived.oml",
                              "<OML><Ontology><extends ontology='urn:base' prefix='b'/>"
                              "<Type.Object name='Actor'/><subtype specific='Actor' "
                              "generic='b:Person'/></Ontology></OML>");
  EXPECT_EQ(omlc({"check", derived}).code, 1);
  Result r = omlc({"check", derived, "--map", "urn:base=" + base});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(Cli, CompileDtdToFile) {
  std::string out = path("movie.dtd");
  Result r = omlc({"compile-dtd", dataPath("movie.oml"), "-o", out});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(readFile(out), readData("movie.dtd"));
}

TEST_F(Cli, StyleConversionsAndValidation) {
  Result specific = omlc({"to-specific", dataPath("movie.oml"), dataPath("casablanca-generic.oml")});
  ASSERT_EQ(specific.code, 0) << specific.err;
  std::string xml = write("specific.xml", specific.out);
  EXPECT_EQ(omlc({"validate-dtd", dataPath("movie.dtd"), xml}).code, 0);
  Result invalid = omlc({"validate-dtd", dataPath("movie.dtd"), dataPath("casablanca-specific.xml")});
  EXPECT_EQ(invalid.code, 1);
  EXPECT_NE(invalid.err.find("DTD003"), std::string::npos);

  Result generic = omlc({"to-generic", dataPath("movie.oml"), xml});
  ASSERT_EQ(generic.code, 0) << generic.err;
  EXPECT_NE(generic.out.find("<classification type=\"genre\"/>"), std::string::npos);

  Result unknown = omlc({"to-generic", dataPath("movie.oml"),
                         write("film.xml", "<Collection><Film id='f'/></Collection>"),
                         "--format", "json"});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_NE(unknown.out.find("UnknownTag"), std::string::npos);
}

TEST_F(Cli, RdfAndXolRoundTrips) {
  std::string triples = path("kb.nt");
  EXPECT_EQ(omlc({"export-rdf", dataPath("movie-full.oml"), dataPath("casablanca-full.oml"),
                  "-o", triples})
                .code,
            0);
  Result back = omlc({"import-rdf", triples, "-o", path("ont.oml"), "--collection-out",
                      path("coll.oml")});
  EXPECT_EQ(back.code, 0) << back.err;
  EXPECT_EQ(omlc({"check", path("ont.oml"), path("coll.oml"), "--strict"}).code, 0);

  Result dropped = omlc({"import-rdf", triples});
  EXPECT_EQ(dropped.code, 0);
  EXPECT_NE(dropped.err.find("--collection-out"), std::string::npos);

  Result xol = omlc({"export-xol", dataPath("movie-full.oml"), "-o", path("m.xol")});
  EXPECT_EQ(xol.code, 0) << xol.err;
  Result imported = omlc({"import-xol", path("m.xol"), "--context", dataPath("movie-full.oml")});
  EXPECT_EQ(imported.code, 0) << imported.err;
  EXPECT_NE(imported.out.find("Type.Function name=\"year\""), std::string::npos) << imported.out;

  Result ho = omlc({"export-rdf", dataPath("color-ho.oml"), "--higher-order", "--format", "json"});
  EXPECT_EQ(ho.code, 1);
  EXPECT_NE(ho.out.find("HigherOrderUnsupported"), std::string::npos);
}

TEST_F(Cli, CalcPrintsTheExtension) {
  Result r = omlc({"calc", "compose(movie, genre)", dataPath("movie-full.oml"),
                   dataPath("casablanca-full.oml")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "# compose(movie, genre) : Cast -> Genre\ncast1\tDrama\ncast1\tRomance\n");
  Result bad = omlc({"calc", "compose(genre, movie)", dataPath("movie-full.oml")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("NotComposable"), std::string::npos);
}

TEST_F(Cli, LintSuggestsSubtypes) {
  Result r = omlc({"lint", dataPath("movie-full.oml"), dataPath("casablanca-full.oml")});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(Cli, BinaryRuns) {
  std::string cmd = std::string(OMLC_PATH) + " compile-dtd " + dataPath("movie.oml") + " -o " +
                    path("bin.dtd");
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(readFile(path("bin.dtd")), readData("movie.dtd"));
  std::string usage = std::string(OMLC_PATH) + " nope 2>/dev/null";
  int status = std::system(usage.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}
