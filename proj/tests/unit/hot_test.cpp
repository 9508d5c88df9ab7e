#include <gtest/gtest.h>

#include "generators.hpp"
#include "oml/hot.hpp"
#include "oml/styles.hpp"
#include "oml/xmlio.hpp"

using namespace oml;

namespace {

Ontology color() {
  return parseOml(oml::testing::readData("color-ho.oml"), "urn:color", ParseOptions{true})
      .ontology();
}

}  // namespace

TEST(HigherOrder, RedIsAColor) {
  Ontology ont = color();
  TypeUniverse u(ont);
  auto closure = typeClassificationClosure(u);
  TypeRef red{"urn:color", "Red"}, colorRef{"urn:color", "Color"};
  EXPECT_TRUE(closure.count({red, colorRef}));
  EXPECT_TRUE(closure.count({red, TypeRef::builtin("Type.Object")}));
  EXPECT_TRUE(checkHigherOrder(KnowledgeBase(ont)).empty());
}

TEST(HigherOrder, ClassificationLiftsAlongMetatypeSubtypes) {
  Ontology ont = color();
  ont.declareType({TypeKind::Object, "Property", "", "", {}, {}});
  ont.declareSubtype("Color", std::string("Property"));
  auto closure = typeClassificationClosure(TypeUniverse(ont));
  EXPECT_TRUE(closure.count({{"urn:color", "Red"}, {"urn:color", "Property"}}));
}

TEST(HigherOrder, BallCollectionTargetsAType) {
  Ontology ont = color();
  Collection balls =
      toGeneric(oml::testing::readData("ball-specific.xml"), ont, "ball", ParseOptions{true});
  ASSERT_EQ(balls.objects().size(), 1u);
  EXPECT_EQ(balls.objects()[0].relations[0].target, "Red");
  KnowledgeBase kb(ont);
  kb.higherOrder = true;
  kb.collections.push_back(balls);
  TypeUniverse u(kb.ontology);
  auto t = kb.resolveTarget(0, "Red", {"chrc"}, u);
  EXPECT_EQ(t.kind, TargetKind::Type);
  auto diags = runChecks(kb, {.mode = Resolution::Strict, .higherOrder = true});
  EXPECT_FALSE(hasErrors(diags)) << formatDiagnostics(diags);
}

TEST(HigherOrder, RelationTypeClassification) {
  Ontology ont("urn:t");
  for (auto n : {"alpha", "beta", "gamma", "delta"})
    ont.declareType({TypeKind::Object, n, "", "", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "rho", "alpha", "beta", {}, {}});
  ont.declareType({TypeKind::BinaryRelation, "sigma", "gamma", "delta", {}, {}});
  classifyType(ont, "sigma", "rho");
  auto diags = checkHigherOrderClassification(ont);
  EXPECT_EQ(countCode(diags, "HOT001"), 2u);
  classifyType(ont, "gamma", "alpha");
  classifyType(ont, "delta", "beta");
  EXPECT_TRUE(checkHigherOrderClassification(ont).empty());
}

TEST(HigherOrder, KindMismatchAndBadAssertions) {
  Ontology ont = color();
  EXPECT_THROW(classifyType(ont, "chrc", "Color"), Error);
  try {
    assertOwnSlot(ont, "Color", "Red", "Ball");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnresolvedRef);
  }
  EXPECT_THROW(assertOwnSlot(ont, "chrc", "Ball", "Purple"), Error);
  assertOwnSlot(ont, "chrc", "Ball", "Red");
  EXPECT_EQ(ont.higherOrder().size(), 2u);
}

TEST(HigherOrder, ArgumentOwnSlot) {
  Ontology ont =
      parseOml(oml::testing::readData("argument-ho.oml"), "arg", ParseOptions{true}).ontology();
  KnowledgeBase kb(ont);
  kb.higherOrder = true;
  auto diags = checkHigherOrder(kb, {.mode = Resolution::Strict});
  EXPECT_FALSE(hasErrors(diags)) << formatDiagnostics(diags);
}

TEST(HigherOrder, TypeNameReusedAsIndividual) {
  KnowledgeBase kb(color());
  kb.addCollection();
  kb.addObjectInstance(0, ObjectInstance{.id = "Red"});
  EXPECT_EQ(countCode(checkHigherOrder(kb), "HOT002"), 1u);
}
