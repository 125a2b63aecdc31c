#include "fgpd/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace fgpd {

using nlohmann::json;

namespace {

using Entries = std::vector<std::vector<std::string>>;

std::string message_for(ParseError::Kind kind, const std::string& message,
                        const std::string& path, std::size_t line, std::size_t column) {
  switch (kind) {
    case ParseError::Kind::syntax:
      return "syntax error at line " + std::to_string(line) + ", column " +
             std::to_string(column) + ": " + message;
    case ParseError::Kind::schema:
      return "schema error at " + (path.empty() ? std::string("/") : path) + ": " + message;
    case ParseError::Kind::version:
      return "version error: " + message;
  }
  return message;
}

// ---------------------------------------------------------------------------
// Writing

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

json entries_json(Entries e) {
  std::sort(e.begin(), e.end());
  json out = json::array();
  for (auto& row : e) out.push_back(row);
  return out;
}

json groupoid_body(const FiniteGroupoid& g) {
  Entries source, target, unit, inverse, compose;
  auto const n = g.arrow_count();
  for (std::size_t a = 0; a < n; ++a) {
    source.push_back({g.arrows[a], g.objects[g.source[a]]});
    target.push_back({g.arrows[a], g.objects[g.target[a]]});
    inverse.push_back({g.arrows[a], g.arrows[g.inverse[a]]});
    for (std::size_t b = 0; b < n; ++b) {
      auto const v = g.compose[a * n + b];
      if (v != kNone) compose.push_back({g.arrows[a], g.arrows[b], g.arrows[v]});
    }
  }
  for (std::size_t x = 0; x < g.object_count(); ++x) {
    unit.push_back({g.objects[x], g.arrows[g.unit[x]]});
  }
  return {{"objects", sorted(g.objects)},   {"arrows", sorted(g.arrows)},
          {"source", entries_json(source)}, {"target", entries_json(target)},
          {"unit", entries_json(unit)},     {"inverse", entries_json(inverse)},
          {"compose", entries_json(compose)}};
}

json morphism_body(const GroupoidMorphism& m) {
  Entries objects, arrows;
  for (std::size_t x = 0; x < m.object_map.size(); ++x) {
    objects.push_back({m.domain->objects[x], m.codomain->objects[m.object_map[x]]});
  }
  for (std::size_t a = 0; a < m.arrow_map.size(); ++a) {
    arrows.push_back({m.domain->arrows[a], m.codomain->arrows[m.arrow_map[a]]});
  }
  return {{"domain", groupoid_body(*m.domain)},
          {"codomain", groupoid_body(*m.codomain)},
          {"object_map", entries_json(objects)},
          {"arrow_map", entries_json(arrows)}};
}

json action_body(const GroupoidAction& a) {
  auto const& G = *a.groupoid;
  Entries momentum, act;
  auto const m = a.carrier.size();
  for (std::size_t i = 0; i < m; ++i) {
    momentum.push_back({a.carrier[i], G.objects[a.momentum[i]]});
  }
  for (std::size_t g = 0; g < G.arrow_count(); ++g) {
    for (std::size_t i = 0; i < m; ++i) {
      auto const v = a.act[g * m + i];
      if (v != kNone) act.push_back({G.arrows[g], a.carrier[i], a.carrier[v]});
    }
  }
  return {{"side", a.side == Side::left ? "left" : "right"},
          {"groupoid", groupoid_body(G)},
          {"carrier", sorted(a.carrier)},
          {"momentum", entries_json(momentum)},
          {"act", entries_json(act)}};
}

json bundle_body(const PrincipalBundle& b) {
  auto const& G = *b.groupoid;
  Entries projection, momentum, act;
  auto const k = G.arrow_count();
  for (std::size_t p = 0; p < b.size(); ++p) {
    projection.push_back({b.points[p], b.base[b.projection[p]]});
    momentum.push_back({b.points[p], G.objects[b.momentum[p]]});
    for (std::size_t g = 0; g < k; ++g) {
      auto const v = b.act[p * k + g];
      if (v != kNone) act.push_back({b.points[p], G.arrows[g], b.points[v]});
    }
  }
  return {{"groupoid", groupoid_body(G)},
          {"points", sorted(b.points)},
          {"base", sorted(b.base)},
          {"projection", entries_json(projection)},
          {"momentum", entries_json(momentum)},
          {"act", entries_json(act)}};
}

json map_entries(const PrincipalBundle& from, const PrincipalBundle& to,
                 const std::vector<Index>& map) {
  Entries e;
  for (std::size_t p = 0; p < map.size(); ++p) e.push_back({from.points[p], to.points[map[p]]});
  return entries_json(e);
}

json bundle_morphism_body(const BundleMorphism& s) {
  return {{"source", bundle_body(*s.source)},
          {"target", bundle_body(*s.target)},
          {"map", map_entries(*s.source, *s.target, s.map)}};
}

json ggt_body(const Ggt& k) {
  auto const& P1 = *k.source;
  auto const& P2 = *k.target;
  auto const& G = *P1.groupoid;
  Entries values;
  for (Index p1 = 0; p1 < static_cast<Index>(P1.size()); ++p1) {
    for (Index p2 = 0; p2 < static_cast<Index>(P2.size()); ++p2) {
      auto const v = k.at(p1, p2);
      if (v != kNone) values.push_back({P1.points[p1], P2.points[p2], G.arrows[v]});
    }
  }
  return {{"source", bundle_body(P1)}, {"target", bundle_body(P2)},
          {"values", entries_json(values)}};
}

json hs_body(const HSMorphism& h) {
  auto const& G = *h.left;
  auto const& B = *h.bundle;
  Entries act;
  for (std::size_t g = 0; g < G.arrow_count(); ++g) {
    for (std::size_t p = 0; p < B.size(); ++p) {
      auto const v = h.left_act[g * B.size() + p];
      if (v != kNone) act.push_back({G.arrows[g], B.points[p], B.points[v]});
    }
  }
  return {{"left", groupoid_body(G)}, {"bundle", bundle_body(B)},
          {"left_act", entries_json(act)}};
}

json hs_morphism_body(const HSMorphismMap& s) {
  return {{"source", hs_body(*s.source)},
          {"target", hs_body(*s.target)},
          {"map", map_entries(*s.source->bundle, *s.target->bundle, s.map)}};
}

bool flat(const json& j) {
  return std::all_of(j.begin(), j.end(), [](const json& e) { return !e.is_structured(); });
}

// Objects one key per line; arrays of scalars on a single line.
void emit(const json& j, int indent, std::string& out) {
  std::string const pad(static_cast<std::size_t>(indent) + 2, ' ');
  std::string const close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + json(it.key()).dump() + ": ";
      emit(it.value(), indent + 2, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
    } else if (flat(j)) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        out += j[i].dump();
      }
      out += "]";
    } else {
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(j[i], indent + 2, out);
      }
      out += "\n" + close + "]";
    }
  } else {
    out += j.dump();
  }
}

// ---------------------------------------------------------------------------
// Reading

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw ParseError(ParseError::Kind::schema, message, path);
}

void expect_fields(const json& j, const std::string& path,
                   std::initializer_list<std::string_view> fields) {
  if (!j.is_object()) schema_error(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(fields.begin(), fields.end(), it.key()) == fields.end()) {
      schema_error(path + "/" + it.key(), "unknown field '" + it.key() + "'");
    }
  }
  for (auto f : fields) {
    if (!j.contains(f)) schema_error(path, "missing field '" + std::string(f) + "'");
  }
}

// Sorted ids with their positions.
struct IdTable {
  std::vector<std::string> names;
  std::map<std::string, Index, std::less<>> index;

  Index find(const json& j, const std::string& path, std::string_view what) const {
    if (!j.is_string()) schema_error(path, "expected a string id");
    auto const s = j.get<std::string>();
    auto it = index.find(s);
    if (it == index.end()) schema_error(path, "unknown " + std::string(what) + " id '" + s + "'");
    return it->second;
  }
};

IdTable read_ids(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of ids");
  IdTable t;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema_error(path + "/" + std::to_string(i), "expected a string id");
    t.names.push_back(j[i].get<std::string>());
  }
  std::sort(t.names.begin(), t.names.end());
  for (std::size_t i = 0; i < t.names.size(); ++i) {
    if (!t.index.emplace(t.names[i], static_cast<Index>(i)).second) {
      schema_error(path, "duplicate id '" + t.names[i] + "'");
    }
  }
  return t;
}

const json& entries(const json& j, const std::string& path, std::size_t arity) {
  if (!j.is_array()) schema_error(path, "expected an array of entries");
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != arity) {
      schema_error(path + "/" + std::to_string(i),
                   "expected an entry of " + std::to_string(arity) + " ids");
    }
  }
  return j;
}

// Fills a total map from [[key, value]] entries.
std::vector<Index> total_map(const json& j, const std::string& path, const IdTable& keys,
                             std::string_view key_kind, const IdTable& values,
                             std::string_view value_kind) {
  std::vector<Index> out(keys.names.size(), kNone);
  entries(j, path, 2);
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto const p = path + "/" + std::to_string(i);
    auto const k = keys.find(j[i][0], p + "/0", key_kind);
    auto const v = values.find(j[i][1], p + "/1", value_kind);
    if (out[k] != kNone) schema_error(p, "second entry for '" + keys.names[k] + "'");
    out[k] = v;
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (out[k] == kNone) schema_error(path, "no entry for '" + keys.names[k] + "'");
  }
  return out;
}

struct ParsedGroupoid {
  GroupoidPtr groupoid;
  IdTable objects;
  IdTable arrows;
};

ParsedGroupoid read_groupoid(const json& j, const std::string& path) {
  expect_fields(j, path, {"objects", "arrows", "source", "target", "unit", "inverse", "compose"});
  ParsedGroupoid r;
  r.objects = read_ids(j["objects"], path + "/objects");
  r.arrows = read_ids(j["arrows"], path + "/arrows");
  FiniteGroupoid g;
  g.objects = r.objects.names;
  g.arrows = r.arrows.names;
  g.source = total_map(j["source"], path + "/source", r.arrows, "arrow", r.objects, "object");
  g.target = total_map(j["target"], path + "/target", r.arrows, "arrow", r.objects, "object");
  g.unit = total_map(j["unit"], path + "/unit", r.objects, "object", r.arrows, "arrow");
  g.inverse = total_map(j["inverse"], path + "/inverse", r.arrows, "arrow", r.arrows, "arrow");
  auto const n = g.arrows.size();
  g.compose.assign(n * n, kNone);
  auto const cp = path + "/compose";
  auto const& c = entries(j["compose"], cp, 3);
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto const p = cp + "/" + std::to_string(i);
    auto const a = r.arrows.find(c[i][0], p + "/0", "arrow");
    auto const b = r.arrows.find(c[i][1], p + "/1", "arrow");
    auto const v = r.arrows.find(c[i][2], p + "/2", "arrow");
    auto& slot = g.compose[static_cast<std::size_t>(a) * n + b];
    if (slot != kNone) schema_error(p, "second product for this pair");
    slot = v;
  }
  r.groupoid = share(std::move(g));
  return r;
}

struct ParsedBundle {
  BundlePtr bundle;
  ParsedGroupoid groupoid;
  IdTable points;
};

ParsedBundle read_bundle(const json& j, const std::string& path) {
  expect_fields(j, path, {"groupoid", "points", "base", "projection", "momentum", "act"});
  ParsedBundle r;
  r.groupoid = read_groupoid(j["groupoid"], path + "/groupoid");
  r.points = read_ids(j["points"], path + "/points");
  auto const base = read_ids(j["base"], path + "/base");
  PrincipalBundle b;
  b.groupoid = r.groupoid.groupoid;
  b.points = r.points.names;
  b.base = base.names;
  b.projection = total_map(j["projection"], path + "/projection", r.points, "point", base, "base point");
  b.momentum = total_map(j["momentum"], path + "/momentum", r.points, "point",
                         r.groupoid.objects, "object");
  auto const k = b.groupoid->arrow_count();
  b.act.assign(b.size() * k, kNone);
  auto const ap = path + "/act";
  auto const& a = entries(j["act"], ap, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto const p = ap + "/" + std::to_string(i);
    auto const x = r.points.find(a[i][0], p + "/0", "point");
    auto const g = r.groupoid.arrows.find(a[i][1], p + "/1", "arrow");
    auto const y = r.points.find(a[i][2], p + "/2", "point");
    auto& slot = b.act[static_cast<std::size_t>(x) * k + g];
    if (slot != kNone) schema_error(p, "second value for this pair");
    slot = y;
  }
  r.bundle = share(std::move(b));
  return r;
}

struct ParsedHS {
  HSPtr hs;
  ParsedBundle bundle;
};

ParsedHS read_hs(const json& j, const std::string& path) {
  expect_fields(j, path, {"left", "bundle", "left_act"});
  auto const left = read_groupoid(j["left"], path + "/left");
  ParsedHS r;
  r.bundle = read_bundle(j["bundle"], path + "/bundle");
  HSMorphism h;
  h.left = left.groupoid;
  h.bundle = r.bundle.bundle;
  auto const n = h.bundle->size();
  h.left_act.assign(left.groupoid->arrow_count() * n, kNone);
  auto const ap = path + "/left_act";
  auto const& a = entries(j["left_act"], ap, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto const p = ap + "/" + std::to_string(i);
    auto const g = left.arrows.find(a[i][0], p + "/0", "arrow");
    auto const x = r.bundle.points.find(a[i][1], p + "/1", "point");
    auto const y = r.bundle.points.find(a[i][2], p + "/2", "point");
    auto& slot = h.left_act[static_cast<std::size_t>(g) * n + x];
    if (slot != kNone) schema_error(p, "second value for this pair");
    slot = y;
  }
  r.hs = share(std::move(h));
  return r;
}

Document read_body(const std::string& kind, const json& body) {
  std::string const path = "/body";
  if (kind == "groupoid") return *read_groupoid(body, path).groupoid;
  if (kind == "morphism") {
    expect_fields(body, path, {"domain", "codomain", "object_map", "arrow_map"});
    auto const d = read_groupoid(body["domain"], path + "/domain");
    auto const c = read_groupoid(body["codomain"], path + "/codomain");
    GroupoidMorphism m;
    m.domain = d.groupoid;
    m.codomain = c.groupoid;
    m.object_map = total_map(body["object_map"], path + "/object_map", d.objects, "object",
                             c.objects, "object");
    m.arrow_map = total_map(body["arrow_map"], path + "/arrow_map", d.arrows, "arrow",
                            c.arrows, "arrow");
    return m;
  }
  if (kind == "action") {
    expect_fields(body, path, {"side", "groupoid", "carrier", "momentum", "act"});
    auto const& side = body["side"];
    if (side != "left" && side != "right") schema_error(path + "/side", "expected left or right");
    auto const g = read_groupoid(body["groupoid"], path + "/groupoid");
    auto const carrier = read_ids(body["carrier"], path + "/carrier");
    GroupoidAction a;
    a.side = side == "left" ? Side::left : Side::right;
    a.groupoid = g.groupoid;
    a.carrier = carrier.names;
    a.momentum = total_map(body["momentum"], path + "/momentum", carrier, "element", g.objects,
                           "object");
    auto const m = a.carrier.size();
    a.act.assign(g.groupoid->arrow_count() * m, kNone);
    auto const ap = path + "/act";
    auto const& e = entries(body["act"], ap, 3);
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto const p = ap + "/" + std::to_string(i);
      auto const x = g.arrows.find(e[i][0], p + "/0", "arrow");
      auto const u = carrier.find(e[i][1], p + "/1", "element");
      auto const v = carrier.find(e[i][2], p + "/2", "element");
      auto& slot = a.act[static_cast<std::size_t>(x) * m + u];
      if (slot != kNone) schema_error(p, "second value for this pair");
      slot = v;
    }
    return a;
  }
  if (kind == "bundle") return *read_bundle(body, path).bundle;
  if (kind == "bundle_morphism") {
    expect_fields(body, path, {"source", "target", "map"});
    auto const s = read_bundle(body["source"], path + "/source");
    auto const t = read_bundle(body["target"], path + "/target");
    return BundleMorphism{s.bundle, t.bundle,
                          total_map(body["map"], path + "/map", s.points, "point", t.points,
                                    "point")};
  }
  if (kind == "ggt") {
    expect_fields(body, path, {"source", "target", "values"});
    auto const s = read_bundle(body["source"], path + "/source");
    auto const t = read_bundle(body["target"], path + "/target");
    Ggt k{s.bundle, t.bundle, std::vector<Index>(s.bundle->size() * t.bundle->size(), kNone)};
    auto const vp = path + "/values";
    auto const& e = entries(body["values"], vp, 3);
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto const p = vp + "/" + std::to_string(i);
      auto const a = s.points.find(e[i][0], p + "/0", "point");
      auto const b = t.points.find(e[i][1], p + "/1", "point");
      auto const g = s.groupoid.arrows.find(e[i][2], p + "/2", "arrow");
      auto& slot = k.values[static_cast<std::size_t>(a) * t.bundle->size() + b];
      if (slot != kNone) schema_error(p, "second value for this pair");
      slot = g;
    }
    return k;
  }
  if (kind == "hs") return *read_hs(body, path).hs;
  if (kind == "hs_morphism") {
    expect_fields(body, path, {"source", "target", "map"});
    auto const s = read_hs(body["source"], path + "/source");
    auto const t = read_hs(body["target"], path + "/target");
    return HSMorphismMap{s.hs, t.hs,
                         total_map(body["map"], path + "/map", s.bundle.points, "point",
                                   t.bundle.points, "point")};
  }
  schema_error("/kind", "unknown document kind '" + kind + "'");
}

}  // namespace

ParseError::ParseError(Kind kind, std::string message, std::string path, std::size_t line,
                       std::size_t column)
    : Error(message_for(kind, message, path, line, column)),
      kind_(kind),
      path_(std::move(path)),
      line_(line),
      column_(column) {}

std::string_view kind_name(const Document& d) {
  static constexpr std::string_view names[] = {"groupoid", "morphism", "action",
                                               "bundle",   "bundle_morphism", "ggt",
                                               "hs",       "hs_morphism"};
  return names[d.index()];
}

Document parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    auto const upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    auto const colon = what.rfind(": ");
    if (colon != std::string::npos) what = what.substr(colon + 2);
    throw ParseError(ParseError::Kind::syntax, what, {}, line, column);
  }
  if (!j.is_object()) schema_error("", "expected a document object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "kind" && it.key() != "version" && it.key() != "body") {
      schema_error("/" + it.key(), "unknown field '" + it.key() + "'");
    }
  }
  if (!j.contains("version") || !j["version"].is_string()) {
    throw ParseError(ParseError::Kind::version, "missing version string", "/version");
  }
  if (j["version"].get<std::string>() != kFormatVersion) {
    throw ParseError(ParseError::Kind::version,
                     "unsupported version '" + j["version"].get<std::string>() +
                         "', expected '" + std::string(kFormatVersion) + "'",
                     "/version");
  }
  if (!j.contains("kind") || !j["kind"].is_string()) schema_error("/kind", "missing kind string");
  if (!j.contains("body")) schema_error("", "missing field 'body'");
  return read_body(j["kind"].get<std::string>(), j["body"]);
}

std::string serialize(const Document& d) {
  json body = std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteGroupoid>) return groupoid_body(v);
        if constexpr (std::is_same_v<T, GroupoidMorphism>) return morphism_body(v);
        if constexpr (std::is_same_v<T, GroupoidAction>) return action_body(v);
        if constexpr (std::is_same_v<T, PrincipalBundle>) return bundle_body(v);
        if constexpr (std::is_same_v<T, BundleMorphism>) return bundle_morphism_body(v);
        if constexpr (std::is_same_v<T, Ggt>) return ggt_body(v);
        if constexpr (std::is_same_v<T, HSMorphism>) return hs_body(v);
        if constexpr (std::is_same_v<T, HSMorphismMap>) return hs_morphism_body(v);
      },
      d);
  json doc = {{"kind", std::string(kind_name(d))},
              {"version", std::string(kFormatVersion)},
              {"body", std::move(body)}};
  std::string out;
  emit(doc, 0, out);
  out += "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

}  // namespace fgpd
