#include <gtest/gtest.h>

#include "generators.hpp"
#include "oml/checker.hpp"
#include "oml/xmlio.hpp"
#include "oracles.hpp"

using namespace oml;

namespace {

TypeRef local(const std::string& name) { return {"urn:t", name}; }

Ontology people() {
  Ontology ont("urn:t");
  for (auto n : {"Person", "Agent", "Country", "Organization", "Book", "Work"})
    ont.declareType({TypeKind::Object, n, "", "", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "citizenship", "Person", "Country", {}, {}});
  return ont;
}

KnowledgeBase citizenship(bool classifyNation) {
  KnowledgeBase kb(people());
  kb.addCollection();
  auto p = kb.addObjectInstance(0, ObjectInstance{.id = "p"});
  auto n = kb.addObjectInstance(0, ObjectInstance{.id = "n"});
  kb.classify(p, "Person");
  if (classifyNation) kb.classify(n, "Country");
  kb.addRelationInstance(p, "citizenship", "n");
  return kb;
}

}  // namespace

TEST(SubtypeClosure, ThreeNodeChain) {
  Ontology ont("urn:t");
  for (auto n : {"A", "B", "C"}) ont.declareType({TypeKind::Object, n, "", "", {}, {}});
  ont.declareSubtype("A", std::string("B"));
  ont.declareSubtype("B", std::string("C"));
  auto closure = subtypeClosure(ont);
  EXPECT_EQ(closure.size(), 6u);
  EXPECT_TRUE(closure.count({local("A"), local("C")}));
  EXPECT_EQ(closure, oml::testing::naiveSubtypeClosure(TypeUniverse(ont)));
}

TEST(SubtypeClosure, SingleTypeIsReflexiveOnly) {
  Ontology ont("urn:t");
  ont.declareType({TypeKind::Object, "T", "", "", {}, {}});
  EXPECT_EQ(subtypeClosure(ont), (std::set<TypePair>{{local("T"), local("T")}}));
}

TEST(SubtypeClosure, RelationSubtypes) {
  Ontology ont("urn:t");
  ont.declareType({TypeKind::Object, "Person", "", "", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "motherhood", "Person", "Person", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "parenthood", "Person", "Person", {}, {}});
  ont.declareSubtype("motherhood", std::string("parenthood"));
  EXPECT_TRUE(subtypeClosure(ont).count({local("motherhood"), local("parenthood")}));
}

TEST(SubtypeClosure, CyclesAreEquivalenceReportedAsInfo) {
  Ontology ont("urn:t");
  ont.declareType({TypeKind::Object, "A", "", "", {}, {}});
  ont.declareType({TypeKind::Object, "B", "", "", {}, {}});
  ont.declareSubtype("A", std::string("B"));
  ont.declareSubtype("B", std::string("A"));
  auto diags = runChecks(KnowledgeBase(ont));
  ASSERT_EQ(countCode(diags, "SUB001"), 1u);
  EXPECT_FALSE(hasErrors(diags));
}

TEST(ClassificationClosure, DerivesThroughSubtypes) {
  Ontology ont("urn:t");
  for (auto n : {"A", "B", "C"}) ont.declareType({TypeKind::Object, n, "", "", {}, {}});
  ont.declareSubtype("A", std::string("B"));
  ont.declareSubtype("B", std::string("C"));
  KnowledgeBase kb(ont);
  kb.addCollection();
  auto i = kb.addObjectInstance(0, ObjectInstance{.id = "i"});
  kb.addObjectInstance(0, ObjectInstance{.id = "bare"});
  kb.classify(i, "A");
  auto tables = computeClosures(kb);
  EXPECT_TRUE(tables.entityClassifications.count({"i", local("C")}));
  for (const auto& [ind, t] : tables.entityClassifications) EXPECT_NE(ind, "bare");
}

TEST(ClassificationClosure, RelationInstancesInheritSupertypes) {
  Ontology ont("urn:t");
  ont.declareType({TypeKind::Object, "Person", "", "", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "motherhood", "Person", "Person", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "parenthood", "Person", "Person", {}, {}});
  ont.declareSubtype("motherhood", std::string("parenthood"));
  KnowledgeBase kb(ont);
  kb.addCollection();
  auto w = kb.addObjectInstance(0, ObjectInstance{.id = "w"});
  kb.addObjectInstance(0, ObjectInstance{.id = "b"});
  kb.addRelationInstance(w, "motherhood", "b");
  auto tables = computeClosures(kb);
  EXPECT_TRUE(tables.relationClassifications.count({{"w", "b"}, local("parenthood")}));
}

TEST(PreservationOfClassification, CleanWhenPremisesHold) {
  auto diags = checkPreservationOfClassification(citizenship(true));
  EXPECT_TRUE(diags.empty()) << formatDiagnostics(diags);
}

TEST(PreservationOfClassification, StrictReportsTheMissingClassification) {
  auto diags = checkPreservationOfClassification(citizenship(false),
                                                 {.mode = Resolution::Strict});
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].code, "CLS001");
  EXPECT_EQ(diags[0].severity, Severity::Error);
  EXPECT_NE(diags[0].message.find("'n'"), std::string::npos);
  EXPECT_NE(diags[0].message.find("'Country'"), std::string::npos);
}

TEST(PreservationOfClassification, LenientWarns) {
  auto diags = checkPreservationOfClassification(citizenship(false));
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].severity, Severity::Warning);
}

TEST(PreservationOfClassification, CompletionInfersAndRechecksClean) {
  std::vector<Diagnostic> inferred;
  KnowledgeBase done = complete(citizenship(false), &inferred);
  ASSERT_EQ(inferred.size(), 1u);
  EXPECT_EQ(inferred[0].code, "CLS002");
  EXPECT_EQ(inferred[0].severity, Severity::Info);
  EXPECT_TRUE(checkPreservationOfClassification(done, {.mode = Resolution::Strict}).empty());
  auto all = runChecks(citizenship(false), {.completion = true});
  EXPECT_EQ(countCode(all, "CLS002"), 1u);
  EXPECT_EQ(countCode(all, "CLS001"), 0u);
}

TEST(PreservationOfClassification, NatnoLiterals) {
  Ontology ont("urn:t");
  ont.declareType({TypeKind::Object, "Movie", "", "", {}, {}});
  ont.declareType({TypeKind::Function, "year", "Movie", "Natno", {}, {}});
  KnowledgeBase kb(ont);
  kb.addCollection();
  auto m = kb.addObjectInstance(0, ObjectInstance{.id = "m"});
  kb.classify(m, "Movie");
  kb.addFunctionInstance(m, "year", "nineteen");
  EXPECT_EQ(countCode(runChecks(kb), "CLS003"), 1u);
}

TEST(PreservationOfEntailment, AuthorshipExample) {
  Ontology ont = people();
  ont.declareType({TypeKind::BinaryRelation, "authorship", "Person", "Book", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "creatorship", "Agent", "Work", {}, {}});
  ont.declareSubtype("authorship", std::string("creatorship"));
  ont.declareSubtype("Person", std::string("Agent"));
  EXPECT_EQ(countCode(checkPreservationOfEntailment(ont), "ENT001"), 1u);
  ont.declareSubtype("Book", std::string("Work"));
  EXPECT_TRUE(checkPreservationOfEntailment(ont).empty());
  ont.declareSubtype("authorship", std::string("authorship"));
  EXPECT_TRUE(checkPreservationOfEntailment(ont).empty());
}

TEST(Incompatibility, DisjointSignaturesMakeRelationsIncompatible) {
  Ontology ont = people();
  ont.declareType({TypeKind::BinaryRelation, "sibling", "Person", "Person", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "employment", "Person", "Organization", {}, {}});
  TypeUniverse before(ont);
  auto none = deriveIncompatibleAndIncoherent(before, subtypeClosure(before));
  EXPECT_TRUE(none.disjoint.empty());
  EXPECT_TRUE(none.incoherent.empty());

  ont.declareDisjoint("Person", "Organization");
  TypeUniverse u(ont);
  auto inc = deriveIncompatibleAndIncoherent(u, subtypeClosure(u));
  EXPECT_TRUE(inc.disjoint.count(makeTypePair(local("sibling"), local("employment"))));
  auto diags = checkIncompatibility(KnowledgeBase(ont));
  EXPECT_GE(countCode(diags, "INC001"), 1u);
}

TEST(Incompatibility, IncoherenceSpreadsToRelations) {
  Ontology ont = people();
  ont.declareIncoherent("Person");
  TypeUniverse u(ont);
  auto inc = deriveIncompatibleAndIncoherent(u, subtypeClosure(u));
  EXPECT_TRUE(inc.incoherent.count(local("citizenship")));
  auto brute = oml::testing::bruteForceIncompatibility(u, subtypeClosure(u));
  EXPECT_EQ(inc.incoherent, brute.incoherent);
  EXPECT_EQ(inc.disjoint, brute.disjoint);
}

TEST(Incompatibility, CommonSubtypeOfDisjointTypesIsIncoherent) {
  Ontology ont = people();
  ont.declareType({TypeKind::Object, "Cyborg", "", "", {}, {}});
  ont.declareSubtype("Cyborg", std::string("Person"));
  ont.declareSubtype("Cyborg", std::string("Organization"));
  ont.declareDisjoint("Person", "Organization");
  KnowledgeBase kb(ont);
  kb.addCollection();
  auto c = kb.addObjectInstance(0, ObjectInstance{.id = "c"});
  kb.classify(c, "Cyborg");
  auto diags = runChecks(kb, {.mode = Resolution::Strict});
  EXPECT_EQ(countCode(diags, "INC002"), 1u);
  EXPECT_GE(countCode(diags, "INC003"), 1u);
  EXPECT_GE(countCode(diags, "DIS001"), 1u);
  EXPECT_TRUE(hasErrors(diags));
}

TEST(InclusionLint, SuggestsMissingSubtype) {
  Ontology ont("urn:t");
  ont.declareType({TypeKind::Object, "Person", "", "", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "motherhood", "Person", "Person", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "parenthood", "Person", "Person", {}, {}});
  KnowledgeBase kb(ont);
  kb.addCollection();
  auto w = kb.addObjectInstance(0, ObjectInstance{.id = "w"});
  auto b = kb.addObjectInstance(0, ObjectInstance{.id = "b"});
  // empty extensions suggest nothing
  EXPECT_TRUE(lintInclusionImpliesSubtype(kb).empty());
  kb.addRelationInstance(w, "motherhood", "b");
  kb.addRelationInstance(w, "parenthood", "b");
  kb.addRelationInstance(b, "parenthood", "w");
  auto diags = lintInclusionImpliesSubtype(kb);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].code, "SUG001");
  EXPECT_NE(diags[0].message.find("generic=\"parenthood\""), std::string::npos);
  kb.ontology.declareSubtype("motherhood", std::string("parenthood"));
  EXPECT_TRUE(lintInclusionImpliesSubtype(kb).empty());
}

TEST(References, MovieOntologyHasUndeclaredTypes) {
  KnowledgeBase kb(parseOml(oml::testing::readData("movie.oml"), "movie.oml").ontology());
  auto lenient = checkReferences(kb);
  EXPECT_EQ(countCode(lenient, "REF001"), 2u);
  EXPECT_FALSE(hasErrors(lenient));
  auto strict = checkReferences(kb, {.mode = Resolution::Strict});
  EXPECT_TRUE(hasErrors(strict));
  EXPECT_EQ(strict[0].document, "movie.oml");
  EXPECT_GT(strict[0].loc.line, 0);
}

TEST(References, FullMovieKbIsClean) {
  KnowledgeBase kb(parseOml(oml::testing::readData("movie-full.oml")).ontology());
  kb.collections.push_back(parseOml(oml::testing::readData("casablanca-full.oml")).collection());
  auto diags = runChecks(kb, {.mode = Resolution::Strict});
  EXPECT_TRUE(diags.empty()) << formatDiagnostics(diags);
}

TEST(References, FunctionsAreSingleValued) {
  Ontology ont("urn:t");
  ont.declareType({TypeKind::Object, "Movie", "", "", {}, {}});
  ont.declareType({TypeKind::Function, "year", "Movie", "Natno", {}, {}});
  ont.declareType({TypeKind::Function, "released", "Movie", "Natno", {}, {}});
  ont.declareSubtype("released", std::string("year"));
  KnowledgeBase kb(ont);
  kb.addCollection();
  auto m = kb.addObjectInstance(0, ObjectInstance{.id = "m"});
  kb.classify(m, "Movie");
  kb.addFunctionInstance(m, "year", "1942");
  kb.addFunctionInstance(m, "released", "1943");
  EXPECT_EQ(countCode(runChecks(kb), "FUN001"), 1u);
}

TEST(Diagnostics, TextFormatAndOrdering) {
  std::vector<Diagnostic> d = {
      {Severity::Warning, "REF001", "b", "x.oml", {3, 1}},
      {Severity::Error, "CLS001", "a", "x.oml", {3, 1}},
      {Severity::Info, "SUG001", "c", "a.oml", {9, 2}},
  };
  sortDiagnostics(d);
  EXPECT_EQ(d[0].document, "a.oml");
  EXPECT_EQ(d[1].code, "CLS001");
  EXPECT_EQ(formatDiagnostic(d[1]), "error CLS001 x.oml:3:1 a");
  for (const auto& c : diagnosticCodes()) EXPECT_TRUE(isRegisteredCode(c.code));
  EXPECT_FALSE(isRegisteredCode("XYZ999"));
}

TEST(AxiomProperties, SmallRandomSample) {
  for (unsigned seed = 0; seed < 100; ++seed) {
    oml::testing::Rng rng(seed);
    KnowledgeBase kb = oml::testing::randomPopulatedKb(rng);
    TypeUniverse u(kb.ontology);
    auto closure = subtypeClosure(u);
    EXPECT_EQ(closure, oml::testing::naiveSubtypeClosure(u)) << seed;
    auto derived = deriveIncompatibleAndIncoherent(u, closure);
    auto brute = oml::testing::bruteForceIncompatibility(u, closure);
    EXPECT_EQ(derived.disjoint, brute.disjoint) << seed;
    EXPECT_EQ(derived.incoherent, brute.incoherent) << seed;
  }
}
