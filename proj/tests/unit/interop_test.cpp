#include <gtest/gtest.h>

#include "generators.hpp"
#include "oml/dtd.hpp"
#include "oml/equality.hpp"
#include "oml/interop.hpp"
#include "oml/xmlio.hpp"

using namespace oml;
using oml::testing::readData;

namespace {

KnowledgeBase movieKb() {
  KnowledgeBase kb(parseOml(readData("movie-full.oml"), "urn:movie").ontology());
  kb.collections.push_back(parseOml(readData("casablanca-full.oml")).collection());
  return kb;
}

template <class F>
ErrorCode codeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::SyntaxError;
}

}  // namespace

TEST(Triples, SerializationEscapesLiterals) {
  rdf::TripleDoc doc;
  doc.triples.push_back({rdf::Term::name("a"), rdf::Term::name("oml:character"),
                         rdf::Term::literal("say \"hi\"\\\nnow")});
  std::string text = rdf::serializeTriples(doc);
  EXPECT_EQ(text.find('\n'), text.size() - 1);
  EXPECT_EQ(rdf::parseTriples(text), doc);
  EXPECT_EQ(rdf::parseTriples("# comment\n\na b c\n").triples.size(), 1u);
  EXPECT_EQ(codeOf([] { rdf::parseTriples("a b\n"); }), ErrorCode::SyntaxError);
  EXPECT_EQ(codeOf([] { rdf::parseTriples("a b \"open\n"); }), ErrorCode::SyntaxError);
}

TEST(Rdf, MovieKbRoundTrips) {
  KnowledgeBase kb = movieKb();
  rdf::TripleDoc doc = rdf::exportRdfs(kb);
  auto has = [&](const rdf::Triple& t) {
    return std::find(doc.triples.begin(), doc.triples.end(), t) != doc.triples.end();
  };
  EXPECT_TRUE(has({rdf::Term::name("cast1"), rdf::Term::name("character"),
                   rdf::Term::literal("Rich Blaine")}));
  EXPECT_TRUE(has({rdf::Term::name("cast1"), rdf::Term::name("movie"),
                   rdf::Term::name("Casablanca_1942")}));
  auto back = rdf::importRdfs(rdf::parseTriples(rdf::serializeTriples(doc)));
  EXPECT_TRUE(back.warnings.empty()) << formatDiagnostics(back.warnings);
  std::string why;
  EXPECT_TRUE(semanticallyEqual(back.kb, kb, {}, &why)) << why;
}

TEST(Rdf, UnsupportedInputs) {
  Ontology ho = parseOml(readData("color-ho.oml"), "c", ParseOptions{true}).ontology();
  EXPECT_EQ(codeOf([&] { rdf::exportRdfs(KnowledgeBase(ho)); }),
            ErrorCode::HigherOrderUnsupported);
  Ontology data("urn:d");
  data.declareType({TypeKind::Data, "Money", "", "", {}, {}});
  EXPECT_EQ(codeOf([&] { rdf::exportRdfs(KnowledgeBase(data)); }),
            ErrorCode::DataTypeUnsupported);
}

TEST(Rdf, ForeignVocabularyIsWarnedAndDropped) {
  auto result = rdf::importRdfs(rdf::parseTriples(
                                    "Movie rdf:type rdfs:Class\n"
                                    "Movie owl:equivalentClass Film\n"),
                                "x.nt");
  ASSERT_FALSE(result.warnings.empty());
  EXPECT_EQ(result.warnings[0].code, "RDF001");
  EXPECT_EQ(result.warnings[0].document, "x.nt");
  EXPECT_EQ(result.warnings[0].loc.line, 2);
  EXPECT_NE(result.kb.ontology.findLocal("Movie"), nullptr);
}

TEST(Rdf, RandomKbsRoundTrip) {
  for (unsigned seed = 0; seed < 30; ++seed) {
    oml::testing::Rng rng(seed);
    KnowledgeBase kb = oml::testing::randomFirstOrderKb(rng);
    auto back = rdf::importRdfs(rdf::parseTriples(rdf::serializeTriples(rdf::exportRdfs(kb))));
    std::string why;
    EXPECT_TRUE(semanticallyEqual(back.kb, kb, {}, &why)) << seed << ": " << why;
  }
}

TEST(Xol, ExportValidatesAgainstTheCoreDtd) {
  KnowledgeBase kb = movieKb();
  std::string text = xol::exportXol(kb);
  auto core = dtd::parseDtd(xol::coreDtd());
  auto diags = dtd::validateAgainstDtd(core, text, {.collectionWrapper = false});
  EXPECT_TRUE(diags.empty()) << formatDiagnostics(diags) << text;
  EXPECT_NE(text.find("<name>Movie</name>"), std::string::npos);

  KnowledgeBase back = xol::importXol(text, &kb.ontology);
  std::string why;
  EXPECT_TRUE(semanticallyEqual(back, kb, {.compareSidecar = false, .compareComments = false},
                                &why))
      << why;
  KnowledgeBase blind = xol::importXol(text);
  EXPECT_TRUE(semanticallyEqual(blind, kb,
                                {.functionsAsRelations = true,
                                 .compareSidecar = false,
                                 .compareComments = false},
                                &why))
      << why;
}

TEST(Xol, RedIsAnInstanceOfColor) {
  KnowledgeBase kb = xol::importXol(readData("color.xol"));
  EXPECT_EQ(kb.ontology.uri(), "colors");
  ASSERT_EQ(kb.ontology.higherOrder().size(), 1u);
  auto c = std::get<TypeClassification>(kb.ontology.higherOrder()[0]);
  EXPECT_EQ(c.instance, "Red");
  EXPECT_EQ(c.type, "Color");
  std::string again = xol::exportXol(kb);
  KnowledgeBase twice = xol::importXol(again);
  EXPECT_TRUE(semanticallyEqual(twice, kb));
}

TEST(Xol, RejectsMalformedModules) {
  EXPECT_EQ(codeOf([] { xol::importXol("<module><class>"); }), ErrorCode::XolSyntaxError);
  EXPECT_EQ(codeOf([] { xol::importXol("<module><name>m</name><widget/></module>"); }),
            ErrorCode::XolSyntaxError);
  Ontology ont("urn:t");
  ont.declareType({TypeKind::Object, "A", "", "", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "r", "A", "A", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "s", "A", "A", {}, {}});
  ont.declareSubtype("s", std::string("r"));
  EXPECT_EQ(codeOf([&] { xol::exportXol(KnowledgeBase(ont)); }),
            ErrorCode::UnsupportedConstruct);
}
