#include "oml/model.hpp"

#include <algorithm>
#include <deque>

namespace oml {

std::string_view toString(TypeKind kind) {
  switch (kind) {
    case TypeKind::Object: return "object";
    case TypeKind::Data: return "data";
    case TypeKind::BinaryRelation: return "binary relation";
    case TypeKind::Function: return "function";
  }
  return "object";
}

TypeRef TypeRef::builtin(std::string_view name) {
  return {std::string(kBuiltinOntology), std::string(name)};
}

TypeRef TypeRef::unresolved(std::string_view written) {
  return {std::string(kUnresolvedOntology), std::string(written)};
}

std::ostream& operator<<(std::ostream& os, const TypeRef& ref) {
  if (ref.isBuiltin() || !ref.isResolved() || ref.ontology.empty())
    return os << ref.name;
  return os << ref.ontology << '#' << ref.name;
}

TypeRef entityRoot() { return TypeRef::builtin("Entity"); }
TypeRef relationRoot() { return TypeRef::builtin("BinaryRelation"); }
TypeRef stringType() { return TypeRef::builtin("String"); }
TypeRef natnoType() { return TypeRef::builtin("Natno"); }

TypeRef rootOf(TypeKind kind) {
  return isEntityKind(kind) ? entityRoot() : relationRoot();
}

std::optional<TypeKind> builtinKind(std::string_view name) {
  if (name == "String" || name == "Natno") return TypeKind::Data;
  if (name == "Entity") return TypeKind::Object;
  if (name == "BinaryRelation") return TypeKind::BinaryRelation;
  // Core metatypes; their instances are types.
  if (name == "Type.Object" || name == "Type.Entity" || name == "Type.Data" ||
      name == "Type.BinaryRelation" || name == "Type.Relation" ||
      name == "Type.Function")
    return TypeKind::Object;
  return std::nullopt;
}

bool isNatnoLexical(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

NamePair makeNamePair(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

std::pair<TypeRef, TypeRef> makeTypePair(TypeRef a, TypeRef b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

// ---------------------------------------------------------------------------
// Ontology

void Ontology::addImport(Import import) { imports_.push_back(std::move(import)); }

void Ontology::bindImport(std::size_t index,
                          std::shared_ptr<const Ontology> ontology) {
  imports_.at(index).ontology = std::move(ontology);
}

TypeRef Ontology::declareType(TypeDecl decl, Resolution mode) {
  if (decl.name.empty())
    throw Error(ErrorCode::InvalidDeclaration, "type declaration without a name",
                decl.loc);
  if (typeIndex_.count(decl.name))
    throw Error(ErrorCode::DuplicateTypeName,
                "type '" + decl.name + "' is already declared", decl.loc);
  const bool relation = isRelationKind(decl.kind);
  if (relation && (decl.source.empty() || decl.target.empty()))
    throw Error(ErrorCode::InvalidDeclaration,
                "relation type '" + decl.name + "' needs a source and a target",
                decl.loc);
  if (!relation && (!decl.source.empty() || !decl.target.empty()))
    throw Error(ErrorCode::InvalidDeclaration,
                "entity type '" + decl.name + "' cannot have a source or target",
                decl.loc);
  if (mode == Resolution::Strict && relation) {
    for (const std::string* end : {&decl.source, &decl.target}) {
      TypeRef ref = resolveTypeName(*end);
      auto kind = kindOf(ref);
      if (kind && !isEntityKind(*kind))
        throw Error(ErrorCode::KindMismatch,
                    "source and target of '" + decl.name +
                        "' must be entity types, '" + *end + "' is not",
                    decl.loc);
    }
  }
  TypeRef ref{uri_, decl.name};
  typeIndex_.emplace(decl.name, types_.size());
  types_.push_back(std::move(decl));
  return ref;
}

void Ontology::declareSubtype(std::string specific,
                              std::optional<std::string> generic,
                              SourceLoc loc, Resolution mode) {
  std::optional<TypeRef> s, g;
  if (mode == Resolution::Strict) {
    s = resolveTypeName(specific);
    if (generic) g = resolveTypeName(*generic);
  } else {
    s = tryResolve(specific);
    if (generic) g = tryResolve(*generic);
  }
  if (s && g) {
    auto ks = kindOf(*s), kg = kindOf(*g);
    if (ks && kg && !sameFamily(*ks, *kg))
      throw Error(ErrorCode::KindMismatch,
                  "subtype axiom links " + std::string(toString(*ks)) +
                      " type '" + specific + "' to " +
                      std::string(toString(*kg)) + " type '" + *generic + "'",
                  loc);
  }
  SubtypeAxiom axiom{std::move(specific), std::move(generic), loc};
  if (std::find(axioms_.begin(), axioms_.end(), axiom) == axioms_.end())
    axioms_.push_back(std::move(axiom));
}

void Ontology::declareDisjoint(std::string a, std::string b, Resolution mode) {
  std::optional<TypeRef> ra, rb;
  if (mode == Resolution::Strict) {
    ra = resolveTypeName(a);
    rb = resolveTypeName(b);
  } else {
    ra = tryResolve(a);
    rb = tryResolve(b);
  }
  if (ra && rb) {
    auto ka = kindOf(*ra), kb = kindOf(*rb);
    if (ka && kb && !sameFamily(*ka, *kb))
      throw Error(ErrorCode::KindMismatch,
                  "disjointness links " + std::string(toString(*ka)) +
                      " type '" + a + "' to " + std::string(toString(*kb)) +
                      " type '" + b + "'");
    if (*ra == *rb) {
      incoherent_.insert(std::move(a));
      return;
    }
  }
  if (a == b) {
    incoherent_.insert(std::move(a));
    return;
  }
  disjoint_.insert(makeNamePair(std::move(a), std::move(b)));
}

void Ontology::declareIncoherent(std::string type) {
  incoherent_.insert(std::move(type));
}

void Ontology::setComment(std::string_view type, std::string comment) {
  TypeDecl* decl = findLocal(type);
  if (!decl)
    throw Error(ErrorCode::UnresolvedTypeRef,
                "cannot comment undeclared type '" + std::string(type) + "'");
  decl->comment = std::move(comment);
}

void Ontology::addHigherOrder(HigherOrderAssertion assertion) {
  if (std::find(higherOrder_.begin(), higherOrder_.end(), assertion) ==
      higherOrder_.end())
    higherOrder_.push_back(std::move(assertion));
}

void Ontology::registerInverse(std::string name, std::string of) {
  NamePair entry{std::move(name), std::move(of)};
  if (std::find(inverses_.begin(), inverses_.end(), entry) == inverses_.end())
    inverses_.push_back(std::move(entry));
}

const TypeDecl* Ontology::findLocal(std::string_view name) const {
  auto it = typeIndex_.find(std::string(name));
  return it == typeIndex_.end() ? nullptr : &types_[it->second];
}

TypeDecl* Ontology::findLocal(std::string_view name) {
  auto it = typeIndex_.find(std::string(name));
  return it == typeIndex_.end() ? nullptr : &types_[it->second];
}

std::optional<TypeRef> Ontology::find(std::string_view nsname, ErrorCode& why,
                                      std::string& detail) const {
  const auto colon = nsname.find(':');
  if (colon != std::string_view::npos && colon > 0 &&
      colon + 1 < nsname.size()) {
    const auto prefix = nsname.substr(0, colon);
    const auto rest = nsname.substr(colon + 1);
    for (const auto& imp : imports_) {
      if (imp.prefix != prefix) continue;
      if (!imp.ontology) {
        why = ErrorCode::UnresolvedTypeRef;
        detail = "import '" + imp.uri + "' is not loaded";
        return std::nullopt;
      }
      return imp.ontology->find(rest, why, detail);
    }
    why = ErrorCode::UnknownPrefix;
    detail = "no extends declaration binds prefix '" + std::string(prefix) + "'";
    return std::nullopt;
  }
  if (findLocal(nsname)) return TypeRef{uri_, std::string(nsname)};
  if (builtinKind(nsname)) return TypeRef::builtin(nsname);

  std::set<TypeRef> found;
  for (const auto& imp : imports_) {
    if (!imp.ontology) continue;
    ErrorCode innerWhy = ErrorCode::UnresolvedTypeRef;
    std::string innerDetail;
    if (auto ref = imp.ontology->find(nsname, innerWhy, innerDetail)) {
      found.insert(*ref);
    } else if (innerWhy == ErrorCode::AmbiguousName) {
      why = innerWhy;
      detail = innerDetail;
      return std::nullopt;
    }
  }
  if (found.size() == 1) return *found.begin();
  if (found.size() > 1) {
    why = ErrorCode::AmbiguousName;
    detail = "'" + std::string(nsname) + "' is declared by several imports";
    return std::nullopt;
  }
  why = ErrorCode::UnresolvedTypeRef;
  detail = "type '" + std::string(nsname) + "' is not declared";
  return std::nullopt;
}

TypeRef Ontology::resolveTypeName(std::string_view nsname) const {
  ErrorCode why = ErrorCode::UnresolvedTypeRef;
  std::string detail;
  if (auto ref = find(nsname, why, detail)) return *ref;
  throw Error(why, detail);
}

std::optional<TypeRef> Ontology::tryResolve(std::string_view nsname) const {
  ErrorCode why = ErrorCode::UnresolvedTypeRef;
  std::string detail;
  return find(nsname, why, detail);
}

const Ontology* Ontology::findOntology(std::string_view uri) const {
  if (uri == uri_) return this;
  for (const auto& imp : imports_)
    if (imp.ontology)
      if (const Ontology* o = imp.ontology->findOntology(uri)) return o;
  return nullptr;
}

const TypeDecl* Ontology::lookup(const TypeRef& ref) const {
  if (!ref.isResolved() || ref.isBuiltin()) return nullptr;
  const Ontology* owner = findOntology(ref.ontology);
  return owner ? owner->findLocal(ref.name) : nullptr;
}

std::optional<TypeKind> Ontology::kindOf(const TypeRef& ref) const {
  if (ref.isBuiltin()) return builtinKind(ref.name);
  if (const TypeDecl* decl = lookup(ref)) return decl->kind;
  return std::nullopt;
}

std::string Ontology::nameFor(const TypeRef& ref) const {
  if (ref.isBuiltin() || !ref.isResolved() || ref.ontology == uri_)
    return ref.name;
  for (const auto& imp : imports_) {
    if (!imp.ontology || !imp.ontology->findOntology(ref.ontology)) continue;
    std::string inner = imp.ontology->nameFor(ref);
    return imp.prefix.empty() ? inner : imp.prefix + ":" + inner;
  }
  return ref.name;
}

bool operator==(const Ontology& a, const Ontology& b) {
  return a.imports_ == b.imports_ && a.types_ == b.types_ &&
         a.axioms_ == b.axioms_ && a.higherOrder_ == b.higherOrder_ &&
         a.disjoint_ == b.disjoint_ && a.incoherent_ == b.incoherent_ &&
         a.inverses_ == b.inverses_;
}

// ---------------------------------------------------------------------------
// Collection

std::size_t Collection::addObject(ObjectInstance object) {
  if (object.id) {
    if (index_.count(*object.id))
      throw Error(ErrorCode::DuplicateInstanceId,
                  "instance id '" + *object.id + "' is already used", object.loc);
    index_.emplace(*object.id, objects_.size());
  }
  objects_.push_back(std::move(object));
  return objects_.size() - 1;
}

std::optional<std::size_t> Collection::findById(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// KnowledgeBase

Collection& KnowledgeBase::addCollection(Collection collection) {
  collections.push_back(std::move(collection));
  return collections.back();
}

InstanceRef KnowledgeBase::addObjectInstance(std::size_t collection,
                                             ObjectInstance object) {
  const std::size_t index = collections.at(collection).addObject(std::move(object));
  return {collection, index};
}

const ObjectInstance& KnowledgeBase::object(InstanceRef ref) const {
  return collections.at(ref.collection).objects().at(ref.object);
}

std::string KnowledgeBase::instanceKey(InstanceRef ref) const {
  const ObjectInstance& obj = object(ref);
  if (obj.id) return *obj.id;
  if (obj.about) return *obj.about;
  return "_:c" + std::to_string(ref.collection) + "o" +
         std::to_string(ref.object);
}

void KnowledgeBase::classify(InstanceRef instance, const std::string& type,
                             Resolution mode) {
  if (mode == Resolution::Strict) {
    TypeRef ref = ontology.resolveTypeName(type);
    auto kind = ontology.kindOf(ref);
    if (kind && !isEntityKind(*kind))
      throw Error(ErrorCode::KindMismatch,
                  "object instances are classified by entity types, '" + type +
                      "' is a " + std::string(toString(*kind)) + " type");
  }
  auto& classes = collections.at(instance.collection).object(instance.object)
                      .classifications;
  if (std::find(classes.begin(), classes.end(), type) == classes.end())
    classes.push_back(type);
}

void KnowledgeBase::checkRelationType(const std::string& type, Resolution mode,
                                      bool function) const {
  if (mode != Resolution::Strict) return;
  TypeRef ref = ontology.resolveTypeName(type);
  auto kind = ontology.kindOf(ref);
  if (kind && isEntityKind(*kind))
    throw Error(ErrorCode::KindMismatch,
                "'" + type + "' is an entity type, not a " +
                    (function ? "function" : "binary relation") + " type");
}

void KnowledgeBase::checkTarget(InstanceRef source, const std::string& type,
                                const std::string& target,
                                Resolution mode) const {
  if (mode != Resolution::Strict) return;
  TypeUniverse universe(ontology);
  ResolvedTarget resolved =
      resolveTarget(source.collection, target, {type}, universe);
  if (resolved.kind == TargetKind::Unresolved)
    throw Error(ErrorCode::UnresolvedInstanceRef,
                "target '" + target + "' is neither an instance nor a literal");
}

void KnowledgeBase::addRelationInstance(InstanceRef source,
                                        const std::string& relationType,
                                        const std::string& target,
                                        Resolution mode) {
  checkRelationType(relationType, mode, false);
  checkTarget(source, relationType, target, mode);
  auto& relations =
      collections.at(source.collection).object(source.object).relations;
  for (auto& rel : relations) {
    if (rel.target != target || rel.source) continue;
    if (std::find(rel.classifications.begin(), rel.classifications.end(),
                  relationType) == rel.classifications.end())
      rel.classifications.push_back(relationType);
    return;
  }
  relations.push_back(RelationInstance{target, {relationType}, std::nullopt, {}});
}

void KnowledgeBase::addFunctionInstance(InstanceRef source,
                                        const std::string& functionType,
                                        const std::string& target,
                                        Resolution mode) {
  checkRelationType(functionType, mode, true);
  checkTarget(source, functionType, target, mode);
  auto& functions =
      collections.at(source.collection).object(source.object).functions;
  for (const auto& fn : functions) {
    if (std::find(fn.classifications.begin(), fn.classifications.end(),
                  functionType) == fn.classifications.end())
      continue;
    if (fn.target == target) return;
    throw Error(ErrorCode::DuplicateFunctionValue,
                "'" + instanceKey(source) + "' already has " + functionType +
                    " = '" + fn.target + "'");
  }
  functions.push_back(FunctionInstance{target, {functionType}, {}});
}

std::optional<InstanceRef> KnowledgeBase::findInstance(
    std::string_view nsname, std::size_t collection) const {
  if (collection >= collections.size()) return std::nullopt;
  const Collection& coll = collections[collection];
  const auto hash = nsname.rfind('#');
  if (hash == std::string_view::npos) {
    if (auto idx = coll.findById(nsname)) return InstanceRef{collection, *idx};
    return std::nullopt;
  }
  auto idx = coll.findById(nsname.substr(hash + 1));
  if (!idx) return std::nullopt;
  auto type = ontology.tryResolve(nsname.substr(0, hash));
  if (!type) return std::nullopt;
  TypeUniverse universe(ontology);
  for (const auto& c : coll.objects()[*idx].classifications)
    if (universe.isSubtype(universe.resolve(c), *type))
      return InstanceRef{collection, *idx};
  return std::nullopt;
}

InstanceRef KnowledgeBase::resolveInstanceName(std::string_view nsname,
                                               std::size_t collection) const {
  if (auto ref = findInstance(nsname, collection)) return *ref;
  throw Error(ErrorCode::UnresolvedInstanceRef,
              "no instance '" + std::string(nsname) + "' in collection");
}

ResolvedTarget KnowledgeBase::resolveTarget(
    std::size_t collection, const std::string& text,
    const std::vector<std::string>& classifications,
    const TypeUniverse& universe) const {
  ResolvedTarget out;
  out.key = text;
  if (collection < collections.size()) {
    const Collection& coll = collections[collection];
    if (auto idx = coll.findById(text)) {
      out.kind = TargetKind::Instance;
      out.instance = InstanceRef{collection, *idx};
      return out;
    }
    if (text.find('#') != std::string::npos) {
      if (auto ref = findInstance(text, collection)) {
        out.kind = TargetKind::Instance;
        out.instance = ref;
        out.key = instanceKey(*ref);
        return out;
      }
    }
  }
  if (higherOrder) {
    if (auto type = ontology.tryResolve(text)) {
      out.kind = TargetKind::Type;
      out.type = type;
      return out;
    }
  }
  for (const auto& c : classifications) {
    const TypeInfo* info = universe.find(universe.resolve(c));
    if (!info || !info->target) continue;
    auto kind = universe.kind(*info->target);
    if (kind == TypeKind::Data) {
      out.kind = TargetKind::Literal;
      out.type = info->target;
      return out;
    }
  }
  out.kind = TargetKind::Unresolved;
  return out;
}

// ---------------------------------------------------------------------------
// TypeUniverse

namespace {

const char* const kBuiltinNames[] = {
    "String",      "Natno",         "Entity",
    "BinaryRelation", "Type.Object", "Type.Entity",
    "Type.Data",   "Type.BinaryRelation", "Type.Relation",
    "Type.Function"};

}  // namespace

TypeUniverse::TypeUniverse(const Ontology& ontology) : ontology_(&ontology) {
  for (const char* name : kBuiltinNames) {
    TypeInfo info;
    info.ref = TypeRef::builtin(name);
    info.kind = *builtinKind(name);
    info.name = name;
    builtins_.emplace(info.ref, info);
  }
  std::set<std::string> seen;
  collect(ontology, seen);
}

void TypeUniverse::collect(const Ontology& ont, std::set<std::string>& seen) {
  if (!seen.insert(ont.uri()).second) return;
  for (const auto& imp : ont.imports())
    if (imp.ontology) collect(*imp.ontology, seen);

  auto resolveIn = [&](const std::string& name, const std::string& context,
                       SourceLoc loc) {
    try {
      return ont.resolveTypeName(name);
    } catch (const Error& e) {
      unresolved_.push_back({name, context, ont.uri(), loc, e.detail()});
      return TypeRef::unresolved(name);
    }
  };

  for (const auto& decl : ont.types()) {
    TypeInfo info;
    info.ref = TypeRef{ont.uri(), decl.name};
    info.kind = decl.kind;
    info.name = ontology_->nameFor(info.ref);
    info.decl = &decl;
    info.document = ont.uri();
    info.loc = decl.loc;
    if (isRelationKind(decl.kind)) {
      info.source = resolveIn(decl.source, "source of '" + decl.name + "'", decl.loc);
      info.target = resolveIn(decl.target, "target of '" + decl.name + "'", decl.loc);
    }
    index_.emplace(info.ref, types_.size());
    types_.push_back(std::move(info));
  }

  for (const auto& axiom : ont.axioms()) {
    TypeRef specific = resolveIn(axiom.specific, "subtype axiom", axiom.loc);
    if (!specific.isResolved()) continue;
    ResolvedAxiom resolved;
    resolved.specific = specific;
    resolved.document = ont.uri();
    resolved.loc = axiom.loc;
    if (axiom.generic) {
      resolved.generic = resolveIn(*axiom.generic, "subtype axiom", axiom.loc);
      if (!resolved.generic.isResolved()) continue;
    } else {
      auto kind = ont.kindOf(specific);
      if (!kind) continue;
      resolved.generic = rootOf(*kind);
      resolved.toRoot = true;
    }
    up_.emplace(resolved.specific, resolved.generic);
    axioms_.push_back(std::move(resolved));
  }

  for (const auto& [a, b] : ont.disjointness()) {
    TypeRef ra = resolveIn(a, "disjointness", {});
    TypeRef rb = resolveIn(b, "disjointness", {});
    if (ra.isResolved() && rb.isResolved()) {
      if (ra == rb)
        incoherent_.insert(ra);
      else
        disjoint_.insert(makeTypePair(ra, rb));
    }
  }
  for (const auto& name : ont.incoherent()) {
    TypeRef ref = resolveIn(name, "incoherence", {});
    if (ref.isResolved()) incoherent_.insert(ref);
  }
}

const TypeInfo* TypeUniverse::find(const TypeRef& ref) const {
  if (auto it = index_.find(ref); it != index_.end()) return &types_[it->second];
  if (auto it = builtins_.find(ref); it != builtins_.end()) return &it->second;
  return nullptr;
}

std::optional<TypeKind> TypeUniverse::kind(const TypeRef& ref) const {
  if (const TypeInfo* info = find(ref)) return info->kind;
  return std::nullopt;
}

TypeRef TypeUniverse::resolve(std::string_view nsname) const {
  if (auto ref = ontology_->tryResolve(nsname)) return *ref;
  return TypeRef::unresolved(nsname);
}

std::string TypeUniverse::nameFor(const TypeRef& ref) const {
  return ontology_->nameFor(ref);
}

bool TypeUniverse::isSubtype(const TypeRef& specific,
                             const TypeRef& generic) const {
  if (specific == generic) return true;
  std::set<TypeRef> visited{specific};
  std::deque<TypeRef> queue{specific};
  while (!queue.empty()) {
    TypeRef current = queue.front();
    queue.pop_front();
    auto [lo, hi] = up_.equal_range(current);
    for (auto it = lo; it != hi; ++it) {
      if (it->second == generic) return true;
      if (visited.insert(it->second).second) queue.push_back(it->second);
    }
  }
  return false;
}

}  // namespace oml
