#include <gtest/gtest.h>

#include "generators.hpp"
#include "oml/dtd.hpp"
#include "oml/equality.hpp"
#include "oml/styles.hpp"
#include "oml/xmlio.hpp"

using namespace oml;
using oml::testing::readData;

namespace {

Ontology movie() { return parseOml(readData("movie.oml"), "movie.oml").ontology(); }

ErrorCode specificError(const Ontology& ont, std::string_view collection) {
  KnowledgeBase kb(ont);
  kb.collections.push_back(parseOml(collection).collection());
  try {
    toSpecific(kb);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "converted: " << collection;
  return ErrorCode::SyntaxError;
}

ErrorCode genericError(const Ontology& ont, std::string_view text) {
  try {
    toGeneric(text, ont);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "converted: " << text;
  return ErrorCode::SyntaxError;
}

}  // namespace

TEST(ToSpecific, CasablancaMatchesThePublishedForm) {
  KnowledgeBase kb(movie());
  kb.collections.push_back(parseOml(readData("casablanca-generic.oml")).collection());
  std::string text = toSpecific(kb);
  EXPECT_NE(text.find("<Movie id=\"Casablanca_1942\" year=\"1942\">"), std::string::npos) << text;
  EXPECT_NE(text.find("<genre target.Instance=\"Drama\"/>"), std::string::npos) << text;
  EXPECT_TRUE(dtd::validateAgainstDtd(dtd::compileDtd(kb.ontology), text).empty());

  Collection back = toGeneric(text, kb.ontology);
  EXPECT_TRUE(semanticallyEqual(back, kb.collections[0], kb.ontology));
  Collection published = toGeneric(readData("casablanca-specific.xml"), kb.ontology);
  std::string why;
  EXPECT_TRUE(semanticallyEqual(published, kb.collections[0], kb.ontology,
                                {.ignoreUnreferencedIds = true}, &why))
      << why;
}

TEST(ToSpecific, MostSpecificTypeBecomesTheTag) {
  Ontology ont("urn:t");
  for (auto n : {"Work", "Book", "Novel", "Gift"})
    ont.declareType({TypeKind::Object, n, "", "", {}, {}});
  ont.declareSubtype("Book", std::string("Work"));
  ont.declareSubtype("Novel", std::string("Book"));
  TypeUniverse u(ont);
  auto subtype = subtypeClosure(u);
  auto ref = [](const char* n) { return TypeRef{"urn:t", n}; };
  EXPECT_EQ(mostSpecificTypes({ref("Work"), ref("Novel"), ref("Book")}, subtype),
            std::vector<TypeRef>{ref("Novel")});
  EXPECT_EQ(mostSpecificTypes({ref("Work"), ref("Gift")}, subtype).size(), 2u);

  KnowledgeBase kb(ont);
  kb.collections.push_back(parseOml("<OML><Collection><Instance.Object id='x'>"
                                    "<classification type='Work'/><classification type='Novel'/>"
                                    "</Instance.Object></Collection></OML>")
                               .collection());
  EXPECT_NE(toSpecific(kb).find("<Novel id=\"x\"/>"), std::string::npos);
}

TEST(ToSpecific, RejectsWhatTheStyleCannotHold) {
  Ontology ont = movie();
  ont.declareType({TypeKind::Object, "Gift", "", "", {}, {}});
  EXPECT_EQ(specificError(ont, "<OML><Collection><Instance.Object id='x'>"
                               "<classification type='Movie'/><classification type='Gift'/>"
                               "</Instance.Object></Collection></OML>"),
            ErrorCode::AmbiguousClassification);
  EXPECT_EQ(specificError(ont, "<OML><Collection><Instance.Object id='x'/></Collection></OML>"),
            ErrorCode::MissingClassification);
  EXPECT_EQ(specificError(ont,
                          "<OML><Collection>"
                          "<Instance.Object about='urn:m'><classification type='Movie'/>"
                          "</Instance.Object>"
                          "<Instance.Object id='c'><classification type='Cast'/>"
                          "<Instance.Function target.Instance='urn:m'>"
                          "<classification type='movie'/></Instance.Function>"
                          "</Instance.Object></Collection></OML>"),
            ErrorCode::UnnamedInstance);
}

TEST(ToSpecific, AnonymousObjectsGetFreshIds) {
  KnowledgeBase kb(movie());
  kb.collections.push_back(parseOml("<OML><Collection><Instance.Object>"
                                    "<classification type='Movie'/></Instance.Object>"
                                    "<Instance.Object id='_g1'><classification type='Movie'/>"
                                    "</Instance.Object></Collection></OML>")
                               .collection());
  std::string text = toSpecific(kb);
  EXPECT_NE(text.find("<Movie id=\"_g2\"/>"), std::string::npos) << text;
}

TEST(ToGeneric, RejectsUnknownVocabulary) {
  Ontology ont = movie();
  EXPECT_EQ(genericError(ont, "<Collection><Film id='x'/></Collection>"), ErrorCode::UnknownTag);
  EXPECT_EQ(genericError(ont, "<Collection><Movie id='x' rating='5'/></Collection>"),
            ErrorCode::UnknownAttribute);
  EXPECT_EQ(genericError(ont, "<Collection><Movie id='x'><year target.Instance='1'/>"
                              "<bogus target.Instance='2'/></Movie></Collection>"),
            ErrorCode::UnknownTag);
  EXPECT_EQ(genericError(ont, "<Collection><Movie"), ErrorCode::SyntaxError);
}

TEST(ToGeneric, SubtypeTagsAreAccepted) {
  Ontology ont = movie();
  ont.declareType({TypeKind::Object, "Film", "", "", {}, {}});
  ont.declareSubtype("Film", std::string("Movie"));
  Collection c = toGeneric("<Collection><Film id='f' year='2000'>"
                           "<genre target.Instance='Noir'/></Film></Collection>",
                           ont);
  ASSERT_EQ(c.objects().size(), 1u);
  EXPECT_EQ(c.objects()[0].classifications, std::vector<std::string>{"Film"});
  EXPECT_EQ(c.objects()[0].functions[0].target, "2000");
  EXPECT_EQ(c.objects()[0].relations[0].target, "Noir");
}

TEST(Styles, RandomCollectionsRoundTrip) {
  const Ontology ont = movie();
  for (unsigned seed = 0; seed < 40; ++seed) {
    oml::testing::Rng rng(seed);
    KnowledgeBase kb(ont);
    kb.addCollection();
    int movies = oml::testing::uniform(rng, 0, 4);
    for (int m = 0; m < movies; ++m) {
      std::string id = "m" + std::to_string(m);
      auto ref = kb.addObjectInstance(0, ObjectInstance{.id = id});
      kb.classify(ref, "Movie");
      if (oml::testing::chance(rng, 0.7))
        kb.addFunctionInstance(ref, "year", std::to_string(oml::testing::uniform(rng, 1900, 2020)));
      for (int g = oml::testing::uniform(rng, 0, 3); g > 0; --g)
        kb.addRelationInstance(ref, "genre", "g" + std::to_string(oml::testing::uniform(rng, 0, 5)));
      if (oml::testing::chance(rng, 0.5)) {
        auto cast = kb.addObjectInstance(0, ObjectInstance{.id = "c" + std::to_string(m)});
        kb.classify(cast, "Cast");
        kb.addFunctionInstance(cast, "movie", id);
        kb.addFunctionInstance(cast, "character", "a <\"quoted\"> & role");
      }
    }
    std::string text = toSpecific(kb);
    EXPECT_TRUE(dtd::validateAgainstDtd(dtd::compileDtd(ont), text).empty()) << text;
    Collection back = toGeneric(text, ont);
    std::string why;
    EXPECT_TRUE(semanticallyEqual(back, kb.collections[0], ont, {}, &why))
        << seed << ": " << why << "\n" << text;
  }
}
