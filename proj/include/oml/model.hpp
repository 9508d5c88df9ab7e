#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "oml/error.hpp"

// In-memory form of the classification-projection diagram: ontologies hold
// the type level, collections hold the instance level, and a KnowledgeBase
// pairs one ontology with its collections.
//
// Names are stored as written (type namespace names, instance namespace
// names). Resolution to TypeRef / InstanceRef happens on demand against the
// ontology and its imports, so a document parsed before its imports are
// loaded keeps its text intact.

namespace oml {

inline constexpr std::string_view kBuiltinOntology = "oml:builtin";
inline constexpr std::string_view kUnresolvedOntology = "oml:unresolved";

enum class TypeKind { Object, Data, BinaryRelation, Function };

std::string_view toString(TypeKind kind);
inline bool isEntityKind(TypeKind k) {
  return k == TypeKind::Object || k == TypeKind::Data;
}
inline bool isRelationKind(TypeKind k) { return !isEntityKind(k); }
inline bool sameFamily(TypeKind a, TypeKind b) {
  return isEntityKind(a) == isEntityKind(b);
}

/// Identity of a type: the URI of the declaring ontology plus its local name.
struct TypeRef {
  std::string ontology;
  std::string name;

  static TypeRef builtin(std::string_view name);
  static TypeRef unresolved(std::string_view written);

  bool isBuiltin() const { return ontology == kBuiltinOntology; }
  bool isResolved() const { return ontology != kUnresolvedOntology; }

  friend auto operator<=>(const TypeRef&, const TypeRef&) = default;
  friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

std::ostream& operator<<(std::ostream& os, const TypeRef& ref);

/// Root of the entity kind (Entity = Object + Data).
TypeRef entityRoot();
/// Root of the binary relation kind.
TypeRef relationRoot();
TypeRef stringType();
TypeRef natnoType();
TypeRef rootOf(TypeKind kind);

/// Kind of a predeclared name, if `name` is one: String and Natno (data),
/// the two kind roots, and the core metatype names (Type.Object, ...).
std::optional<TypeKind> builtinKind(std::string_view name);

/// Nonempty decimal digit string.
bool isNatnoLexical(std::string_view text);

enum class Resolution { Lenient, Strict };

struct TypeDecl {
  TypeKind kind = TypeKind::Object;
  std::string name;
  /// typeNSname as written; relation and function kinds only.
  std::string source;
  std::string target;
  std::optional<std::string> comment;
  SourceLoc loc;

  friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

struct SubtypeAxiom {
  std::string specific;
  /// Absent: `specific` is a subtype of the root of its kind.
  std::optional<std::string> generic;
  SourceLoc loc;

  friend bool operator==(const SubtypeAxiom&, const SubtypeAxiom&) = default;
};

/// `<classification instance="Red" type="Color"/>` placed in an ontology:
/// a type classified by a higher-order type. When both names are relation
/// types this is relation-type classification.
struct TypeClassification {
  std::string instance;
  std::string type;
  SourceLoc loc;

  friend bool operator==(const TypeClassification&,
                         const TypeClassification&) = default;
};

/// Individual relation instance whose endpoints may be types (own slot).
struct OwnSlot {
  std::string relation;
  std::string source;
  std::string target;
  SourceLoc loc;

  friend bool operator==(const OwnSlot&, const OwnSlot&) = default;
};

using HigherOrderAssertion = std::variant<TypeClassification, OwnSlot>;

class Ontology;

struct Import {
  std::string uri;
  std::string prefix;
  /// Filled by the import loader; null until then.
  std::shared_ptr<const Ontology> ontology;
  SourceLoc loc;

  friend bool operator==(const Import& a, const Import& b) {
    return a.uri == b.uri && a.prefix == b.prefix;
  }
};

/// Unordered pair of written type names, stored with first <= second.
using NamePair = std::pair<std::string, std::string>;
NamePair makeNamePair(std::string a, std::string b);

class Ontology {
 public:
  Ontology() = default;
  explicit Ontology(std::string uri) : uri_(std::move(uri)) {}

  const std::string& uri() const { return uri_; }
  void setUri(std::string uri) { uri_ = std::move(uri); }
  /// Display name (XOL module name); not part of the core serialization.
  const std::string& name() const { return name_.empty() ? uri_ : name_; }
  void setName(std::string name) { name_ = std::move(name); }

  const std::vector<Import>& imports() const { return imports_; }
  const std::vector<TypeDecl>& types() const { return types_; }
  const std::vector<SubtypeAxiom>& axioms() const { return axioms_; }
  const std::vector<HigherOrderAssertion>& higherOrder() const {
    return higherOrder_;
  }
  const std::set<NamePair>& disjointness() const { return disjoint_; }
  const std::set<std::string>& incoherent() const { return incoherent_; }
  /// Registered transposes: (declared name, name of the transposed type).
  const std::vector<NamePair>& inverses() const { return inverses_; }

  void addImport(Import import);
  /// Attach the loaded ontology for the import at `index`.
  void bindImport(std::size_t index, std::shared_ptr<const Ontology> ontology);

  /// Register a type declaration. Throws DuplicateTypeName,
  /// InvalidDeclaration (source/target presence does not match the kind),
  /// and in strict mode UnresolvedTypeRef.
  TypeRef declareType(TypeDecl decl, Resolution mode = Resolution::Lenient);

  /// Record `specific ⊢ generic`. Throws KindMismatch across dimensions and
  /// in strict mode UnresolvedTypeRef.
  void declareSubtype(std::string specific, std::optional<std::string> generic,
                      SourceLoc loc = {},
                      Resolution mode = Resolution::Lenient);

  /// Record that two types are disjoint; disjoint(T, T) marks T incoherent.
  void declareDisjoint(std::string a, std::string b,
                       Resolution mode = Resolution::Lenient);
  void declareIncoherent(std::string type);
  void setComment(std::string_view type, std::string comment);

  void addHigherOrder(HigherOrderAssertion assertion);
  void registerInverse(std::string name, std::string of);

  const TypeDecl* findLocal(std::string_view name) const;
  TypeDecl* findLocal(std::string_view name);

  /// Resolve a typeNSname: prefixed names dispatch through the matching
  /// `extends` prefix; unprefixed names resolve locally, then among the
  /// predeclared names, then among imports. Throws UnknownPrefix,
  /// UnresolvedTypeRef or AmbiguousName.
  TypeRef resolveTypeName(std::string_view nsname) const;
  std::optional<TypeRef> tryResolve(std::string_view nsname) const;

  /// Declaration behind a resolved ref, searching the import graph.
  const TypeDecl* lookup(const TypeRef& ref) const;
  std::optional<TypeKind> kindOf(const TypeRef& ref) const;
  /// The typeNSname under which this ontology refers to `ref`.
  std::string nameFor(const TypeRef& ref) const;
  /// Ontology (this one or an import) with the given URI.
  const Ontology* findOntology(std::string_view uri) const;

  friend bool operator==(const Ontology& a, const Ontology& b);

 private:
  std::optional<TypeRef> find(std::string_view nsname, ErrorCode& why,
                              std::string& detail) const;
  std::string uri_;
  std::string name_;
  std::vector<Import> imports_;
  std::vector<TypeDecl> types_;
  std::unordered_map<std::string, std::size_t> typeIndex_;
  std::vector<SubtypeAxiom> axioms_;
  std::vector<HigherOrderAssertion> higherOrder_;
  std::set<NamePair> disjoint_;
  std::set<std::string> incoherent_;
  std::vector<NamePair> inverses_;
};

struct RelationInstance {
  /// instanceNSname of the target, or a literal's lexical form.
  std::string target;
  std::vector<std::string> classifications;
  /// Explicit source (standalone / source.Instance form); otherwise the
  /// enclosing object.
  std::optional<std::string> source;
  SourceLoc loc;

  friend bool operator==(const RelationInstance&,
                         const RelationInstance&) = default;
};

struct FunctionInstance {
  std::string target;
  std::vector<std::string> classifications;
  SourceLoc loc;

  friend bool operator==(const FunctionInstance&,
                         const FunctionInstance&) = default;
};

struct ObjectInstance {
  std::optional<std::string> id;
  std::optional<std::string> about;
  std::vector<std::string> classifications;
  std::vector<RelationInstance> relations;
  std::vector<FunctionInstance> functions;
  /// Kept in memory only; the core serialization has no instance comments.
  std::optional<std::string> comment;
  SourceLoc loc;

  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

class Collection {
 public:
  std::optional<std::string> id;
  /// Ontology URI from the `ontology` attribute.
  std::optional<std::string> ontology;
  /// Source document name used in diagnostics; not part of equality.
  std::string document;

  const std::vector<ObjectInstance>& objects() const { return objects_; }
  /// Mutable access for builders. Do not change the id through it.
  ObjectInstance& object(std::size_t index) { return objects_.at(index); }

  /// Append an object; throws DuplicateInstanceId.
  std::size_t addObject(ObjectInstance object);
  std::optional<std::size_t> findById(std::string_view id) const;

  friend bool operator==(const Collection& a, const Collection& b) {
    return a.id == b.id && a.ontology == b.ontology && a.objects_ == b.objects_;
  }

 private:
  std::vector<ObjectInstance> objects_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct InstanceRef {
  std::size_t collection = 0;
  std::size_t object = 0;

  friend auto operator<=>(const InstanceRef&, const InstanceRef&) = default;
  friend bool operator==(const InstanceRef&, const InstanceRef&) = default;
};

enum class TargetKind { Instance, Literal, Type, Unresolved };

struct ResolvedTarget {
  TargetKind kind = TargetKind::Unresolved;
  /// Instance key for instances, lexical form for literals and unresolved
  /// references, type name for types.
  std::string key;
  std::optional<InstanceRef> instance;
  std::optional<TypeRef> type;
};

class TypeUniverse;

class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(Ontology ontology) : ontology(std::move(ontology)) {}

  Ontology ontology;
  std::vector<Collection> collections;
  /// Higher-order reading: targets may name types.
  bool higherOrder = false;

  Collection& addCollection(Collection collection = {});

  InstanceRef addObjectInstance(std::size_t collection, ObjectInstance object);
  /// Add `instance ⊨ type`; set semantics.
  void classify(InstanceRef instance, const std::string& type,
                Resolution mode = Resolution::Lenient);
  /// Add a relation instance (source, target) classified by `relationType`.
  /// An existing pair with the same endpoints gains the classification.
  void addRelationInstance(InstanceRef source, const std::string& relationType,
                           const std::string& target,
                           Resolution mode = Resolution::Lenient);
  /// Functions are partial and single-valued: throws DuplicateFunctionValue
  /// when `source` already has a different value for `functionType`.
  void addFunctionInstance(InstanceRef source, const std::string& functionType,
                           const std::string& target,
                           Resolution mode = Resolution::Lenient);

  const ObjectInstance& object(InstanceRef ref) const;
  std::string instanceKey(InstanceRef ref) const;

  /// Resolve an instanceNSname within one collection: bare ids, or
  /// `type#id` restricted to instances classified by that type.
  InstanceRef resolveInstanceName(std::string_view nsname,
                                  std::size_t collection = 0) const;
  std::optional<InstanceRef> findInstance(std::string_view nsname,
                                          std::size_t collection) const;

  /// Decide whether a target string names an instance, a literal, a type
  /// (higher-order only) or nothing known.
  ResolvedTarget resolveTarget(std::size_t collection, const std::string& text,
                               const std::vector<std::string>& classifications,
                               const TypeUniverse& universe) const;

  friend bool operator==(const KnowledgeBase&,
                         const KnowledgeBase&) = default;

 private:
  void checkRelationType(const std::string& type, Resolution mode,
                         bool function) const;
  void checkTarget(InstanceRef source, const std::string& type,
                   const std::string& target, Resolution mode) const;
};

/// One declared type with its signature resolved against its ontology.
struct TypeInfo {
  TypeRef ref;
  TypeKind kind = TypeKind::Object;
  /// Name relative to the root ontology.
  std::string name;
  const TypeDecl* decl = nullptr;
  std::optional<TypeRef> source;
  std::optional<TypeRef> target;
  std::string document;
  SourceLoc loc;
};

struct ResolvedAxiom {
  TypeRef specific;
  TypeRef generic;
  /// True when the axiom had no generic and points at the kind root.
  bool toRoot = false;
  std::string document;
  SourceLoc loc;
};

struct UnresolvedReference {
  std::string name;
  std::string context;
  std::string document;
  SourceLoc loc;
  std::string reason;
};

/// Flattened view of an ontology and everything it imports.
class TypeUniverse {
 public:
  explicit TypeUniverse(const Ontology& ontology);

  const Ontology& ontology() const { return *ontology_; }
  /// Declared types, imports before importers, declaration order within one.
  const std::vector<TypeInfo>& types() const { return types_; }
  /// Declared or predeclared type; null for unresolved refs.
  const TypeInfo* find(const TypeRef& ref) const;
  std::optional<TypeKind> kind(const TypeRef& ref) const;
  /// Lenient resolution: unresolved names map to TypeRef::unresolved.
  TypeRef resolve(std::string_view nsname) const;
  std::string nameFor(const TypeRef& ref) const;

  const std::vector<ResolvedAxiom>& axioms() const { return axioms_; }
  const std::set<std::pair<TypeRef, TypeRef>>& disjoint() const {
    return disjoint_;
  }
  const std::set<TypeRef>& incoherent() const { return incoherent_; }
  const std::vector<UnresolvedReference>& unresolved() const {
    return unresolved_;
  }

  /// Reflexive-transitive reachability over the resolved axioms.
  bool isSubtype(const TypeRef& specific, const TypeRef& generic) const;

 private:
  void collect(const Ontology& ontology, std::set<std::string>& seen);
  const Ontology* ontology_;
  std::vector<TypeInfo> types_;
  std::map<TypeRef, std::size_t> index_;
  std::map<TypeRef, TypeInfo> builtins_;
  std::vector<ResolvedAxiom> axioms_;
  std::multimap<TypeRef, TypeRef> up_;
  std::set<std::pair<TypeRef, TypeRef>> disjoint_;
  std::set<TypeRef> incoherent_;
  std::vector<UnresolvedReference> unresolved_;
};

/// Normalized unordered pair of refs (first <= second).
std::pair<TypeRef, TypeRef> makeTypePair(TypeRef a, TypeRef b);

}  // namespace oml
