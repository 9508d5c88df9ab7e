#include "oml/checker.hpp"

#include <algorithm>
#include <map>

#include "oml/hot.hpp"
#include "oml/relations.hpp"

namespace oml {

namespace {

Diagnostic make(Severity severity, std::string code, std::string message,
                std::string document, SourceLoc loc) {
  return Diagnostic{severity, std::move(code), std::move(message),
                    std::move(document), loc};
}

Severity violation(const CheckOptions& options) {
  return options.mode == Resolution::Strict ? Severity::Error
                                            : Severity::Warning;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

std::string pairText(const InstancePair& p) {
  return "(" + p.first + ", " + p.second + ")";
}

}  // namespace

Individual individualKey(const KnowledgeBase& kb, InstanceRef ref) {
  std::string key = kb.instanceKey(ref);
  if (kb.collections.size() <= 1) return key;
  const Collection& coll = kb.collections[ref.collection];
  return (coll.id ? *coll.id : "c" + std::to_string(ref.collection)) + "/" +
         key;
}

InstanceFacts extractFacts(const KnowledgeBase& kb,
                           const TypeUniverse& universe) {
  InstanceFacts facts;
  for (std::size_t c = 0; c < kb.collections.size(); ++c) {
    const Collection& coll = kb.collections[c];
    for (std::size_t o = 0; o < coll.objects().size(); ++o) {
      const ObjectInstance& obj = coll.objects()[o];
      const Individual key = individualKey(kb, {c, o});
      facts.objects.push_back(key);
      for (const auto& cls : obj.classifications)
        facts.classifications.push_back(
            {key, cls, universe.resolve(cls), coll.document, obj.loc});

      auto addPairs = [&](const std::string& target,
                          const std::vector<std::string>& classes,
                          const std::optional<std::string>& source,
                          bool function, SourceLoc loc) {
        PairFact base;
        base.source = key;
        base.function = function;
        base.document = coll.document;
        base.loc = loc.known() ? loc : obj.loc;
        if (source) {
          if (auto ref = kb.findInstance(*source, c)) {
            base.source = individualKey(kb, *ref);
          } else {
            base.source = *source;
            base.danglingSource = true;
          }
        }
        ResolvedTarget resolved = kb.resolveTarget(c, target, classes, universe);
        // Type endpoints are own slots; they stay out of first-order tables.
        if (resolved.kind == TargetKind::Type) return;
        base.targetKind = resolved.kind;
        base.target = resolved.kind == TargetKind::Instance
                          ? individualKey(kb, *resolved.instance)
                          : target;
        if (classes.empty()) {
          facts.unclassified.push_back(base);
          return;
        }
        for (const auto& cls : classes) {
          PairFact fact = base;
          fact.written = cls;
          fact.type = universe.resolve(cls);
          if (fact.targetKind == TargetKind::Literal) {
            const TypeInfo* info = universe.find(fact.type);
            if (info && info->target &&
                universe.kind(*info->target) == TypeKind::Data &&
                (*info->target != natnoType() || isNatnoLexical(target)))
              facts.literals.push_back(
                  {target, universe.nameFor(*info->target), *info->target,
                   coll.document, fact.loc});
          }
          facts.pairs.push_back(std::move(fact));
        }
      };
      for (const auto& rel : obj.relations)
        addPairs(rel.target, rel.classifications, rel.source, false, rel.loc);
      for (const auto& fn : obj.functions)
        addPairs(fn.target, fn.classifications, std::nullopt, true, fn.loc);
    }
  }
  return facts;
}

std::set<TypeRef> subtypeNodes(const TypeUniverse& universe) {
  std::set<TypeRef> nodes;
  for (const auto& info : universe.types()) nodes.insert(info.ref);
  for (const auto& axiom : universe.axioms()) {
    nodes.insert(axiom.specific);
    nodes.insert(axiom.generic);
  }
  return nodes;
}

std::set<TypePair> subtypeClosure(const TypeUniverse& universe) {
  rel::Relation<TypeRef, TypeRef> declared;
  for (const auto& axiom : universe.axioms())
    declared.emplace(axiom.specific, axiom.generic);
  return rel::reflexiveTransitiveClosure(subtypeNodes(universe), declared);
}

std::set<TypePair> subtypeClosure(const Ontology& ontology) {
  return subtypeClosure(TypeUniverse(ontology));
}

void classificationClosure(const InstanceFacts& facts,
                           const std::set<TypePair>& subtype,
                           ClosureTables& tables) {
  std::multimap<TypeRef, TypeRef> up;
  for (const auto& [s, g] : subtype) up.emplace(s, g);
  auto lift = [&](const TypeRef& t, auto&& add) {
    add(t);
    auto [lo, hi] = up.equal_range(t);
    for (auto it = lo; it != hi; ++it) add(it->second);
  };
  for (const auto* list : {&facts.classifications, &facts.literals})
    for (const auto& fact : *list)
      lift(fact.type, [&](const TypeRef& t) {
        tables.entityClassifications.emplace(fact.key, t);
      });
  for (const auto& fact : facts.pairs)
    lift(fact.type, [&](const TypeRef& t) {
      tables.relationClassifications.emplace(
          InstancePair{fact.source, fact.target}, t);
    });
}

Incompatibility deriveIncompatibleAndIncoherent(
    const TypeUniverse& universe, const std::set<TypePair>& subtype) {
  Incompatibility out;
  out.disjoint = universe.disjoint();
  out.incoherent = universe.incoherent();

  std::vector<const TypeInfo*> relations;
  for (const auto& info : universe.types())
    if (isRelationKind(info.kind) && info.source && info.target)
      relations.push_back(&info);
  std::map<TypeRef, std::vector<TypeRef>> supers;
  for (const auto& [s, g] : subtype) supers[s].push_back(g);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < relations.size(); ++i) {
      const TypeInfo& rho = *relations[i];
      for (std::size_t j = i + 1; j < relations.size(); ++j) {
        const TypeInfo& sigma = *relations[j];
        if (out.disjoint.count(makeTypePair(*rho.source, *sigma.source)) ||
            out.disjoint.count(makeTypePair(*rho.target, *sigma.target)))
          changed |= out.disjoint.insert(makeTypePair(rho.ref, sigma.ref)).second;
      }
      if (out.incoherent.count(*rho.source) || out.incoherent.count(*rho.target))
        changed |= out.incoherent.insert(rho.ref).second;
    }
    for (const auto& [tau, ups] : supers) {
      if (out.incoherent.count(tau)) continue;
      bool incoherent = false;
      for (std::size_t a = 0; a < ups.size() && !incoherent; ++a) {
        if (ups[a] != tau && out.incoherent.count(ups[a])) incoherent = true;
        for (std::size_t b = a + 1; b < ups.size() && !incoherent; ++b)
          if (out.disjoint.count(makeTypePair(ups[a], ups[b]))) incoherent = true;
      }
      if (incoherent) changed |= out.incoherent.insert(tau).second;
    }
  }
  return out;
}

ClosureTables computeClosures(const KnowledgeBase& kb) {
  TypeUniverse universe(kb.ontology);
  ClosureTables tables;
  tables.subtypePairs = subtypeClosure(universe);
  classificationClosure(extractFacts(kb, universe), tables.subtypePairs, tables);
  Incompatibility inc = deriveIncompatibleAndIncoherent(universe, tables.subtypePairs);
  for (const auto& p : inc.disjoint)
    if (!universe.disjoint().count(p)) tables.derivedDisjoint.insert(p);
  for (const auto& t : inc.incoherent)
    if (!universe.incoherent().count(t)) tables.derivedIncoherent.insert(t);
  return tables;
}

// ---------------------------------------------------------------------------

namespace {

/// Universe, facts and closures shared by the passes of one check run.
struct Analysis {
  explicit Analysis(const KnowledgeBase& kb)
      : universe(kb.ontology), facts(extractFacts(kb, universe)) {
    tables.subtypePairs = subtypeClosure(universe);
    classificationClosure(facts, tables.subtypePairs, tables);
  }
  TypeUniverse universe;
  InstanceFacts facts;
  ClosureTables tables;
};

std::vector<Diagnostic> checkReferences(const KnowledgeBase& kb, const Analysis& a,
                                        const CheckOptions& options) {
  std::vector<Diagnostic> out;
  const TypeUniverse& universe = a.universe;
  const Severity sev = violation(options);

  for (const auto& u : universe.unresolved())
    out.push_back(make(sev, "REF001",
                       "unresolved type " + quote(u.name) + " in " + u.context +
                           ": " + u.reason,
                       u.document, u.loc));

  for (const auto& info : universe.types()) {
    for (const auto* end : {&info.source, &info.target}) {
      if (!*end) continue;
      auto kind = universe.kind(**end);
      if (kind && isRelationKind(*kind))
        out.push_back(make(Severity::Error, "KND001",
                           "source and target of " + quote(info.name) +
                               " must be entity types, " +
                               quote(universe.nameFor(**end)) + " is a " +
                               std::string(toString(*kind)) + " type",
                           info.document, info.loc));
    }
  }
  for (const auto& axiom : universe.axioms()) {
    auto ks = universe.kind(axiom.specific), kg = universe.kind(axiom.generic);
    if (ks && kg && !sameFamily(*ks, *kg))
      out.push_back(make(Severity::Error, "KND002",
                         "subtype axiom links " + quote(axiom.specific.name) +
                             " and " + quote(axiom.generic.name) +
                             " across the entity/relation dimension",
                         axiom.document, axiom.loc));
  }
  for (const auto& [a, b] : universe.disjoint()) {
    auto ka = universe.kind(a), kb2 = universe.kind(b);
    if (ka && kb2 && !sameFamily(*ka, *kb2))
      out.push_back(make(Severity::Error, "KND002",
                         "disjointness links " + quote(a.name) + " and " +
                             quote(b.name) +
                             " across the entity/relation dimension",
                         kb.ontology.uri(), {}));
  }

  const InstanceFacts& facts = a.facts;
  std::set<std::string> reported;
  for (const auto& fact : facts.classifications) {
    if (!fact.type.isResolved()) {
      if (reported.insert("t:" + fact.written).second)
        out.push_back(make(sev, "REF001",
                           "classification of " + quote(fact.key) +
                               " names undeclared type " + quote(fact.written),
                           fact.document, fact.loc));
      continue;
    }
    auto kind = universe.kind(fact.type);
    if (kind && *kind != TypeKind::Object)
      out.push_back(make(Severity::Error, "KND001",
                         "object " + quote(fact.key) + " is classified by " +
                             std::string(toString(*kind)) + " type " +
                             quote(fact.written),
                         fact.document, fact.loc));
  }
  for (const auto& fact : facts.pairs) {
    if (!fact.type.isResolved()) {
      if (reported.insert("t:" + fact.written).second)
        out.push_back(make(sev, "REF001",
                           "relation instance " +
                               pairText({fact.source, fact.target}) +
                               " names undeclared type " + quote(fact.written),
                           fact.document, fact.loc));
    } else if (auto kind = universe.kind(fact.type)) {
      if (isEntityKind(*kind) ||
          (fact.function && *kind != TypeKind::Function))
        out.push_back(make(Severity::Error, "KND001",
                           std::string(fact.function ? "function" : "relation") +
                               " instance " +
                               pairText({fact.source, fact.target}) +
                               " is classified by " +
                               std::string(toString(*kind)) + " type " +
                               quote(fact.written),
                           fact.document, fact.loc));
    }
  }
  for (const auto* list : {&facts.pairs, &facts.unclassified}) {
    for (const auto& fact : *list) {
      if (fact.danglingSource &&
          reported.insert("s:" + fact.document + fact.source).second)
        out.push_back(make(sev, "REF002",
                           "source " + quote(fact.source) +
                               " is not an instance of the collection",
                           fact.document, fact.loc));
      if (fact.targetKind == TargetKind::Unresolved &&
          reported.insert("i:" + fact.document + fact.target).second)
        out.push_back(make(sev, "REF002",
                           "target " + quote(fact.target) + " of " +
                               quote(fact.source) +
                               " is neither an instance nor a literal",
                           fact.document, fact.loc));
    }
  }

  // Functions are single-valued, also through function subtypes.
  const ClosureTables& tables = a.tables;
  std::map<std::pair<TypeRef, Individual>, std::set<Individual>> values;
  for (const auto& [pair, type] : tables.relationClassifications)
    if (universe.kind(type) == TypeKind::Function)
      values[{type, pair.first}].insert(pair.second);
  for (const auto& [key, targets] : values) {
    if (targets.size() < 2) continue;
    std::string list;
    for (const auto& t : targets) list += (list.empty() ? "" : ", ") + quote(t);
    const PairFact* where = nullptr;
    for (const auto& f : facts.pairs)
      if (f.source == key.second) {
        where = &f;
        break;
      }
    out.push_back(make(Severity::Error, "FUN001",
                       "function " + quote(universe.nameFor(key.first)) +
                           " has several values on " + quote(key.second) +
                           ": " + list,
                       where ? where->document : "", where ? where->loc : SourceLoc{}));
  }

  for (const auto& [a, b] : tables.subtypePairs) {
    if (!(a < b) || !tables.subtypePairs.count({b, a})) continue;
    const TypeInfo* info = universe.find(a);
    out.push_back(make(Severity::Info, "SUB001",
                       "subtype cycle: " + quote(universe.nameFor(a)) +
                           " and " + quote(universe.nameFor(b)) +
                           " are equivalent",
                       info ? info->document : kb.ontology.uri(),
                       info ? info->loc : SourceLoc{}));
  }
  return out;
}

}  // namespace

std::vector<Diagnostic> checkReferences(const KnowledgeBase& kb,
                                        const CheckOptions& options) {
  return checkReferences(kb, Analysis(kb), options);
}

namespace {

struct Missing {
  Individual instance;
  TypeRef type;
};

/// Classification premises of every classified pair that do not hold.
std::vector<std::pair<Missing, const PairFact*>> missingPremises(
    const TypeUniverse& universe, const InstanceFacts& facts,
    const ClosureTables& tables, std::vector<Diagnostic>* literalProblems) {
  std::vector<std::pair<Missing, const PairFact*>> out;
  std::map<InstancePair, const PairFact*> origin;
  for (const auto& f : facts.pairs)
    origin.emplace(InstancePair{f.source, f.target}, &f);
  std::set<std::string> seen;

  for (const auto& [pair, type] : tables.relationClassifications) {
    const TypeInfo* info = universe.find(type);
    if (!info || !info->source || !info->target) continue;
    const PairFact* fact = origin.at(pair);
    if (!fact->danglingSource && *info->source != entityRoot() &&
        !tables.entityClassifications.count({pair.first, *info->source}))
      out.push_back({{pair.first, *info->source}, fact});
    if (fact->targetKind == TargetKind::Unresolved) continue;
    const TypeRef& beta = *info->target;
    if (fact->targetKind == TargetKind::Literal) {
      auto kind = universe.kind(beta);
      if (literalProblems && kind == TypeKind::Data && beta == natnoType() &&
          !isNatnoLexical(pair.second) &&
          seen.insert(pair.second + "|" + info->name).second)
        literalProblems->push_back(
            make(Severity::Error, "CLS003",
                 "literal " + quote(pair.second) + " of " + quote(info->name) +
                     " is not a Natno",
                 fact->document, fact->loc));
      if (kind == TypeKind::Data) continue;
    }
    if (beta != entityRoot() &&
        !tables.entityClassifications.count({pair.second, beta}))
      out.push_back({{pair.second, beta}, fact});
  }
  return out;
}

}  // namespace

namespace {

void classificationDiagnostics(const Analysis& a, const CheckOptions& options,
                               std::vector<Diagnostic>& out) {
  const TypeUniverse& universe = a.universe;
  const InstanceFacts& facts = a.facts;
  const ClosureTables& tables = a.tables;
  std::set<std::string> reported;
  for (const auto& [miss, fact] : missingPremises(universe, facts, tables, &out)) {
    const std::string name = universe.nameFor(miss.type);
    if (!reported.insert(miss.instance + "|" + name + "|" + fact->written).second)
      continue;
    out.push_back(make(violation(options), "CLS001",
                       quote(miss.instance) + " is not classified by " +
                           quote(name) + " as required by " +
                           quote(fact->written) + " instance " +
                           pairText({fact->source, fact->target}),
                       fact->document, fact->loc));
  }
}

}  // namespace

std::vector<Diagnostic> checkPreservationOfClassification(
    const KnowledgeBase& kb, const CheckOptions& options) {
  std::vector<Diagnostic> out;
  if (options.completion && options.mode == Resolution::Lenient) {
    KnowledgeBase completed = complete(kb, &out);
    classificationDiagnostics(Analysis(completed), options, out);
  } else {
    classificationDiagnostics(Analysis(kb), options, out);
  }
  return out;
}

KnowledgeBase complete(const KnowledgeBase& kb,
                       std::vector<Diagnostic>* inferred) {
  KnowledgeBase out = kb;
  for (;;) {
    Analysis a(out);
    const TypeUniverse& universe = a.universe;

    std::map<Individual, InstanceRef> objects;
    for (std::size_t c = 0; c < out.collections.size(); ++c)
      for (std::size_t o = 0; o < out.collections[c].objects().size(); ++o)
        objects.emplace(individualKey(out, {c, o}), InstanceRef{c, o});

    bool added = false;
    for (const auto& [miss, fact] :
         missingPremises(universe, a.facts, a.tables, nullptr)) {
      auto it = objects.find(miss.instance);
      if (it == objects.end() || !miss.type.isResolved()) continue;
      if (universe.kind(miss.type) != TypeKind::Object) continue;
      const std::string name = universe.nameFor(miss.type);
      const auto& classes = out.object(it->second).classifications;
      if (std::find(classes.begin(), classes.end(), name) != classes.end())
        continue;
      out.classify(it->second, name);
      added = true;
      if (inferred)
        inferred->push_back(make(Severity::Info, "CLS002",
                                 "inferred " + quote(miss.instance) + " ⊨ " +
                                     quote(name) + " from " +
                                     quote(fact->written) + " instance " +
                                     pairText({fact->source, fact->target}),
                                 fact->document, fact->loc));
    }
    if (!added) return out;
  }
}

namespace {

std::vector<Diagnostic> checkEntailment(const TypeUniverse& universe,
                                        const std::set<TypePair>& closure) {
  std::vector<Diagnostic> out;
  auto entails = [&](const TypeRef& s, const TypeRef& g) {
    return g == entityRoot() || closure.count({s, g}) > 0;
  };
  for (const auto& axiom : universe.axioms()) {
    if (axiom.toRoot || axiom.specific == axiom.generic) continue;
    const TypeInfo* sigma = universe.find(axiom.specific);
    const TypeInfo* rho = universe.find(axiom.generic);
    if (!sigma || !rho || !isRelationKind(sigma->kind) ||
        !isRelationKind(rho->kind))
      continue;
    if (!sigma->source || !sigma->target || !rho->source || !rho->target)
      continue;
    const std::pair<const TypeRef*, const TypeRef*> ends[] = {
        {&*sigma->source, &*rho->source}, {&*sigma->target, &*rho->target}};
    for (const auto& [lower, upper] : ends) {
      if (entails(*lower, *upper)) continue;
      out.push_back(make(Severity::Warning, "ENT001",
                         quote(sigma->name) + " ⊢ " + quote(rho->name) +
                             " but " + quote(universe.nameFor(*lower)) +
                             " is not a subtype of " +
                             quote(universe.nameFor(*upper)),
                         axiom.document, axiom.loc));
    }
  }
  return out;
}

std::vector<Diagnostic> checkIncompatibility(const KnowledgeBase& kb, const Analysis& a,
                                             const CheckOptions& options) {
  std::vector<Diagnostic> out;
  const TypeUniverse& universe = a.universe;
  const ClosureTables& tables = a.tables;
  const InstanceFacts& facts = a.facts;
  Incompatibility inc = deriveIncompatibleAndIncoherent(universe, tables.subtypePairs);


  auto where = [&](const TypeRef& t) {
    const TypeInfo* info = universe.find(t);
    return std::make_pair(info ? info->document : kb.ontology.uri(),
                          info ? info->loc : SourceLoc{});
  };
  for (const auto& [a, b] : inc.disjoint) {
    if (universe.disjoint().count({a, b})) continue;
    auto [doc, loc] = where(a);
    out.push_back(make(Severity::Info, "INC001",
                       quote(universe.nameFor(a)) + " and " +
                           quote(universe.nameFor(b)) + " are incompatible",
                       doc, loc));
  }
  for (const auto& t : inc.incoherent) {
    if (universe.incoherent().count(t)) continue;
    auto [doc, loc] = where(t);
    out.push_back(make(Severity::Info, "INC002",
                       quote(universe.nameFor(t)) + " is incoherent", doc, loc));
  }

  // Instances of incoherent or of two disjoint types.
  std::map<std::string, std::vector<TypeRef>> typesOf;
  std::map<std::string, std::pair<std::string, SourceLoc>> origin;
  for (const auto& f : facts.classifications)
    origin.emplace(f.key, std::make_pair(f.document, f.loc));
  for (const auto& f : facts.pairs)
    origin.emplace(pairText({f.source, f.target}),
                   std::make_pair(f.document, f.loc));
  for (const auto& [ind, t] : tables.entityClassifications)
    if (origin.count(ind)) typesOf[ind].push_back(t);
  for (const auto& [pair, t] : tables.relationClassifications)
    typesOf[pairText(pair)].push_back(t);

  for (const auto& [ind, types] : typesOf) {
    auto [doc, loc] = origin.count(ind) ? origin[ind]
                                        : std::make_pair(std::string(), SourceLoc{});
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (inc.incoherent.count(types[i]))
        out.push_back(make(violation(options), "INC003",
                           quote(ind) + " is classified by incoherent type " +
                               quote(universe.nameFor(types[i])),
                           doc, loc));
      for (std::size_t j = i + 1; j < types.size(); ++j)
        if (inc.disjoint.count(makeTypePair(types[i], types[j])))
          out.push_back(make(violation(options), "DIS001",
                             quote(ind) + " is classified by disjoint types " +
                                 quote(universe.nameFor(types[i])) + " and " +
                                 quote(universe.nameFor(types[j])),
                             doc, loc));
    }
  }
  return out;
}

std::vector<Diagnostic> lintInclusion(const Analysis& a) {
  std::vector<Diagnostic> out;
  const TypeUniverse& universe = a.universe;
  const ClosureTables& tables = a.tables;

  std::map<TypeRef, std::set<InstancePair>> extension;
  for (const auto& [pair, t] : tables.relationClassifications)
    extension[t].insert(pair);
  std::vector<const TypeInfo*> relations;
  for (const auto& info : universe.types())
    if (isRelationKind(info.kind)) relations.push_back(&info);

  for (const TypeInfo* sigma : relations) {
    auto es = extension.find(sigma->ref);
    if (es == extension.end() || es->second.empty()) continue;
    for (const TypeInfo* rho : relations) {
      if (rho == sigma || tables.subtypePairs.count({sigma->ref, rho->ref}))
        continue;
      auto er = extension.find(rho->ref);
      if (er == extension.end()) continue;
      if (!std::includes(er->second.begin(), er->second.end(),
                         es->second.begin(), es->second.end()))
        continue;
      out.push_back(make(Severity::Info, "SUG001",
                         "every " + quote(sigma->name) + " pair is also a " +
                             quote(rho->name) +
                             " pair; consider <subtype specific=\"" +
                             sigma->name + "\" generic=\"" + rho->name + "\"/>",
                         sigma->document, sigma->loc));
    }
  }
  return out;
}

}  // namespace

std::vector<Diagnostic> checkPreservationOfEntailment(const Ontology& ontology) {
  TypeUniverse universe(ontology);
  return checkEntailment(universe, subtypeClosure(universe));
}

std::vector<Diagnostic> checkIncompatibility(const KnowledgeBase& kb,
                                             const CheckOptions& options) {
  return checkIncompatibility(kb, Analysis(kb), options);
}

std::vector<Diagnostic> lintInclusionImpliesSubtype(const KnowledgeBase& kb) {
  return lintInclusion(Analysis(kb));
}

std::vector<Diagnostic> runChecks(const KnowledgeBase& kb,
                                  const CheckOptions& options) {
  std::vector<Diagnostic> out;
  auto append = [&](std::vector<Diagnostic> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()),
               std::make_move_iterator(more.end()));
  };
  const KnowledgeBase* target = &kb;
  KnowledgeBase completed;
  if (options.completion && options.mode == Resolution::Lenient) {
    completed = complete(kb, &out);
    target = &completed;
  }
  CheckOptions plain = options;
  plain.completion = false;
  Analysis a(*target);
  append(checkReferences(*target, a, plain));
  classificationDiagnostics(a, plain, out);
  append(checkEntailment(a.universe, a.tables.subtypePairs));
  append(checkIncompatibility(*target, a, plain));
  append(lintInclusion(a));
  if (options.higherOrder || target->higherOrder)
    append(checkHigherOrder(*target, plain));
  sortDiagnostics(out);
  return out;
}

}  // namespace oml
