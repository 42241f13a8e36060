#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "groupoid_lab/arrow_category.hpp"
#include "groupoid_lab/error.hpp"
#include "groupoid_lab/functor.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/limits.hpp"
#include "groupoid_lab/morphism.hpp"
#include "groupoid_lab/object.hpp"

namespace groupoid_lab {

using Json = nlohmann::json;

/// Malformed or ill-typed serialized data.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline std::string instance_name(Kind kind) {
  switch (kind) {
    case Kind::FinSet: return "FinSet";
    case Kind::FinPtdSet: return "FinPtdSet";
    case Kind::FinAb: return "FinAb";
  }
  return "?";
}

/// Accepts the display names and their lower-case forms.
inline Kind parse_instance(const std::string& name) {
  if (name == "FinSet" || name == "finset") return Kind::FinSet;
  if (name == "FinPtdSet" || name == "finptdset") return Kind::FinPtdSet;
  if (name == "FinAb" || name == "finab") return Kind::FinAb;
  throw ParseError("unknown instance '" + name + "'");
}

// ---------------------------------------------------------------------------
// Objects and morphisms

inline Json to_json(const Object& x) {
  Json carrier = Json::array();
  for (int v = 0; v < x.size(); ++v) {
    if (x.has_labels()) carrier.push_back(x.label(v));
    else carrier.push_back(v);
  }
  Json structure = Json::object();
  if (!x.components().empty()) {
    Json comps = Json::array();
    for (const auto& c : x.components()) comps.push_back(to_json(c));
    Json coords = Json::array();
    for (int v = 0; v < x.size(); ++v) {
      auto t = x.coords_of(v);
      coords.push_back(std::vector<int>(t.begin(), t.end()));
    }
    structure["components"] = std::move(comps);
    structure["coords"] = std::move(coords);
  } else if (x.kind() == Kind::FinAb) {
    std::vector<int> table(static_cast<std::size_t>(x.size()) * x.size());
    for (int a = 0; a < x.size(); ++a) {
      for (int b = 0; b < x.size(); ++b) table[static_cast<std::size_t>(a) * x.size() + b] = x.add(a, b);
    }
    structure["table"] = std::move(table);
  } else if (x.kind() == Kind::FinPtdSet) {
    structure["basepoint"] = x.basepoint();
  }
  return Json{{"instance", instance_name(x.kind())}, {"carrier", std::move(carrier)}, {"structure", std::move(structure)}};
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::vector<int> int_array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(std::string(what) + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace detail

inline Object object_from_json(const Json& j) {
  const Kind kind = parse_instance(detail::field(j, "instance").get<std::string>());
  const Json& carrier = detail::field(j, "carrier");
  if (!carrier.is_array()) throw ParseError("carrier must be an array");
  const int n = static_cast<int>(carrier.size());
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < carrier.size(); ++k) {
    const Json& v = carrier[k];
    if (v.is_string()) {
      labels.push_back(v.get<std::string>());
    } else if (!v.is_number_integer() || v.get<int>() != static_cast<int>(k)) {
      throw ParseError("carrier entries must be labels or their own index");
    }
  }
  if (!labels.empty() && static_cast<int>(labels.size()) != n) throw ParseError("carrier mixes labels and indices");
  const Json structure = j.contains("structure") ? j.at("structure") : Json::object();
  Object out;
  try {
    if (structure.contains("components")) {
      std::vector<Object> comps;
      for (const auto& c : structure.at("components")) comps.push_back(object_from_json(c));
      std::vector<int> coords;
      const Json& rows = detail::field(structure, "coords");
      if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw ParseError("coords must have one row per element");
      for (const auto& row : rows) {
        auto r = detail::int_array(row, "coords row");
        if (r.size() != comps.size()) throw ParseError("coords row has the wrong arity");
        coords.insert(coords.end(), r.begin(), r.end());
      }
      out = Object::subproduct(kind, std::move(comps), std::move(coords));
      if (!labels.empty()) out = out.relabeled(labels);
      return out;
    }
    switch (kind) {
      case Kind::FinSet: return Object::finite_set(n, labels);
      case Kind::FinPtdSet: {
        const int bp = structure.contains("basepoint") ? structure.at("basepoint").get<int>() : 0;
        if (bp < 0 || bp >= n) throw ParseError("basepoint out of range");
        return Object::pointed_set(n, bp, labels);
      }
      case Kind::FinAb: {
        auto table = detail::int_array(detail::field(structure, "table"), "table");
        if (table.size() != static_cast<std::size_t>(n) * n) throw ParseError("addition table has the wrong size");
        return Object::abelian_group(std::move(table), n, labels);
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw StructureError(std::string("invalid object: ") + e.what());
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unreachable instance");
}

inline Json to_json(const Morphism& f) {
  return Json{{"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"map", f.map()}};
}

/// The map is kept as given; range and additivity are left to the validators.
inline Morphism morphism_from_json(const Json& j) {
  Object dom = object_from_json(detail::field(j, "dom"));
  Object cod = object_from_json(detail::field(j, "cod"));
  auto map = detail::int_array(detail::field(j, "map"), "map");
  if (static_cast<int>(map.size()) != dom.size()) throw ParseError("map length differs from the domain size");
  for (int v : map) {
    if (v < 0 || v >= cod.size()) throw ParseError("map value outside the codomain");
  }
  return Morphism::unchecked(std::move(dom), std::move(cod), std::move(map));
}

// ---------------------------------------------------------------------------
// Groupoids, functors, transformations

inline Json to_json(const Groupoid& g) {
  return Json{{"B0", to_json(g.B0)}, {"B1", to_json(g.B1)}, {"d", to_json(g.d)}, {"c", to_json(g.c)},
              {"e", to_json(g.e)},   {"m", to_json(g.m)},   {"i", to_json(g.i)}};
}

/// Builds the groupoid without checking any axiom, so validators can report
/// on broken input. The pair object is computed only when c and d are typed.
inline Groupoid groupoid_from_json(const Json& j) {
  Groupoid g;
  g.B0 = object_from_json(detail::field(j, "B0"));
  g.B1 = object_from_json(detail::field(j, "B1"));
  g.d = morphism_from_json(detail::field(j, "d"));
  g.c = morphism_from_json(detail::field(j, "c"));
  g.e = morphism_from_json(detail::field(j, "e"));
  g.i = morphism_from_json(detail::field(j, "i"));
  g.m = morphism_from_json(detail::field(j, "m"));
  const bool typed = g.c.valid() && g.d.valid() && g.c.cod() == g.d.cod() && g.c.dom() == g.d.dom();
  if (typed) {
    try {
      g.pairs = pullback(g.c, g.d);
    } catch (const Error&) {
      g.pairs = LimitResult{};
    }
  }
  return g;
}

inline Json to_json(const Functor& f) {
  return Json{{"A", to_json(f.A)}, {"B", to_json(f.B)}, {"F0", to_json(f.F0)}, {"F1", to_json(f.F1)}};
}

inline Functor functor_from_json(const Json& j) {
  return {groupoid_from_json(detail::field(j, "A")), groupoid_from_json(detail::field(j, "B")),
          morphism_from_json(detail::field(j, "F0")), morphism_from_json(detail::field(j, "F1"))};
}

inline Json to_json(const NatTransformation& n) {
  return Json{{"source", to_json(n.source)}, {"target", to_json(n.target)}, {"alpha", to_json(n.alpha)}};
}

inline NatTransformation nat_from_json(const Json& j) {
  return {functor_from_json(detail::field(j, "source")), functor_from_json(detail::field(j, "target")),
          morphism_from_json(detail::field(j, "alpha"))};
}

// ---------------------------------------------------------------------------
// Arrow category

inline Json to_json(const ArrowObject& a) { return to_json(a.a); }
inline ArrowObject arrow_object_from_json(const Json& j) { return {morphism_from_json(j)}; }

inline Json to_json(const ArrowMorphism& m) {
  return Json{{"source", to_json(m.source)}, {"target", to_json(m.target)}, {"f", to_json(m.f)}, {"f0", to_json(m.f0)}};
}

inline ArrowMorphism arrow_morphism_from_json(const Json& j) {
  return {arrow_object_from_json(detail::field(j, "source")), arrow_object_from_json(detail::field(j, "target")),
          morphism_from_json(detail::field(j, "f")), morphism_from_json(detail::field(j, "f0"))};
}

inline Json to_json(const Diagonal& d) { return Json{{"square", to_json(d.square)}, {"d", to_json(d.d)}}; }

inline Diagonal diagonal_from_json(const Json& j) {
  return {arrow_morphism_from_json(detail::field(j, "square")), morphism_from_json(detail::field(j, "d"))};
}

// ---------------------------------------------------------------------------
// Tagged documents, as read and written by the command-line tool

enum class DocumentType { object, morphism, groupoid, functor, nat_transformation, arrow_morphism, diagonal };

inline std::string document_type_name(DocumentType t) {
  switch (t) {
    case DocumentType::object: return "object";
    case DocumentType::morphism: return "morphism";
    case DocumentType::groupoid: return "groupoid";
    case DocumentType::functor: return "functor";
    case DocumentType::nat_transformation: return "nat_transformation";
    case DocumentType::arrow_morphism: return "arrow_morphism";
    case DocumentType::diagonal: return "diagonal";
  }
  return "?";
}

/// Type of an untagged or tagged document, read from "type" when present
/// and otherwise from the fields it carries.
inline DocumentType document_type(const Json& j) {
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  if (j.contains("type")) {
    const std::string t = j.at("type").get<std::string>();
    for (auto d : {DocumentType::object, DocumentType::morphism, DocumentType::groupoid, DocumentType::functor,
                   DocumentType::nat_transformation, DocumentType::arrow_morphism, DocumentType::diagonal}) {
      if (document_type_name(d) == t) return d;
    }
    throw ParseError("unknown document type '" + t + "'");
  }
  if (j.contains("B0") && j.contains("m")) return DocumentType::groupoid;
  if (j.contains("F0") && j.contains("F1")) return DocumentType::functor;
  if (j.contains("alpha")) return DocumentType::nat_transformation;
  if (j.contains("square")) return DocumentType::diagonal;
  if (j.contains("f0")) return DocumentType::arrow_morphism;
  if (j.contains("map")) return DocumentType::morphism;
  if (j.contains("carrier")) return DocumentType::object;
  throw ParseError("cannot tell what the document describes");
}

template <class T>
Json tagged(DocumentType type, const T& value) {
  Json j = to_json(value);
  j["type"] = document_type_name(type);
  return j;
}

}  // namespace groupoid_lab
