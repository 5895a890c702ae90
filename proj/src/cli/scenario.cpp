#include "coarse/cli/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace coarse::cli {

using Json = nlohmann::json;

const CoarseSpace& Scenario::space(const std::string& name) const {
  auto it = spaces.find(name);
  if (it == spaces.end()) throw ScenarioError("unknown space '" + name + "'");
  if (!it->second.space)
    throw ScenarioError("space '" + name + "' is not a coarse space: " + it->second.violation->describe(it->second.ground));
  return *it->second.space;
}

const SystemEntry& Scenario::system(const std::string& name) const {
  auto it = systems.find(name);
  if (it == systems.end()) throw ScenarioError("unknown system '" + name + "'");
  return it->second;
}

namespace {

std::string where(const std::string& kind, const std::string& name) { return kind + " '" + name + "': "; }

const Json& need(const Json& obj, const char* key, const std::string& ctx) {
  if (!obj.is_object() || !obj.contains(key)) throw ScenarioError(ctx + "missing key '" + key + "'");
  return obj.at(key);
}

std::vector<std::string> stringList(const Json& j, const std::string& ctx) {
  if (!j.is_array()) throw ScenarioError(ctx + "expected a list of labels");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ScenarioError(ctx + "labels must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

double number(const Json& j, const std::string& ctx) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && j.get<std::string>() == "inf") return kInfiniteDistance;
  throw ScenarioError(ctx + "expected a number or \"inf\"");
}

std::size_t labelIndex(const GroundSet& g, const std::string& label, const std::string& ctx) {
  auto i = g.find(label);
  if (!i) throw ScenarioError(ctx + "unknown label '" + label + "'");
  return *i;
}

std::vector<std::pair<std::string, std::string>> assignList(const Json& j, const std::string& ctx) {
  if (!j.is_array()) throw ScenarioError(ctx + "assignment must be a list of [source, target] pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : j) {
    auto pair = stringList(p, ctx);
    if (pair.size() != 2) throw ScenarioError(ctx + "assignment entries must be pairs");
    out.emplace_back(pair[0], pair[1]);
  }
  return out;
}

template <class F>
void eachNamed(const Json& root, const char* key, F&& f) {
  if (!root.contains(key)) return;
  const Json& arr = root.at(key);
  if (!arr.is_array()) throw ScenarioError(std::string("'") + key + "' must be a list");
  std::set<std::string> seen;
  for (const auto& obj : arr) {
    auto name = need(obj, "name", std::string(key) + ": ");
    if (!name.is_string()) throw ScenarioError(std::string(key) + ": names must be strings");
    auto n = name.get<std::string>();
    if (!seen.insert(n).second) throw ScenarioError(std::string(key) + ": duplicate name '" + n + "'");
    f(n, obj);
  }
}

SpaceEntry parseSpace(const std::string& name, const Json& obj) {
  const auto ctx = where("space", name);
  GroundSet ground(stringList(need(obj, "points", ctx), ctx));
  int kinds = obj.contains("chain") + obj.contains("metric") + obj.contains("discrete") + obj.contains("bounded");
  if (kinds != 1) throw ScenarioError(ctx + "needs exactly one of chain, metric, discrete, bounded");
  SpaceEntry e{ground, std::nullopt, std::nullopt, ""};
  if (obj.contains("discrete") || obj.contains("bounded")) {
    bool isDiscrete = obj.contains("discrete");
    if (obj.at(isDiscrete ? "discrete" : "bounded") != true) throw ScenarioError(ctx + "flag must be true");
    e.kind = isDiscrete ? "discrete" : "bounded";
    e.space = isDiscrete ? discrete(ground) : bounded(ground);
    return e;
  }
  if (obj.contains("metric")) {
    const Json& m = obj.at("metric");
    const Json& rows = need(m, "matrix", ctx);
    DistanceMatrix d;
    for (const auto& row : rows) {
      if (!row.is_array()) throw ScenarioError(ctx + "matrix rows must be lists");
      auto& r = d.emplace_back();
      for (const auto& v : row) r.push_back(number(v, ctx));
    }
    std::vector<double> scales;
    for (const auto& v : need(m, "scales", ctx)) scales.push_back(number(v, ctx));
    e.kind = "metric";
    try {
      e.space = fromMetric(ground, d, scales);
    } catch (const MetricViolation& v) {
      throw ScenarioError(ctx + v.what() + " (points " + ground.label(v.witness[0]) + ", " +
                          ground.label(v.witness[1]) + ", " + ground.label(v.witness[2]) + ")");
    } catch (const Error& err) {
      throw ScenarioError(ctx + err.what());
    }
    return e;
  }
  e.kind = "chain";
  std::vector<Relation> chain;
  for (const auto& element : obj.at("chain")) {
    std::vector<IndexPair> pairs;
    for (const auto& [a, b] : assignList(element, ctx))
      pairs.emplace_back(labelIndex(ground, a, ctx), labelIndex(ground, b, ctx));
    chain.push_back(Relation::fromPairs(ground, pairs));
  }
  e.violation = checkChain(ground, chain);
  if (!e.violation) e.space = CoarseSpace(ground, std::move(chain));
  return e;
}

GroupEntry parseGroup(const std::string& name, const Json& obj) {
  const auto ctx = where("group", name);
  GroundSet elements(stringList(need(obj, "elements", ctx), ctx));
  std::vector<std::vector<std::size_t>> table;
  for (const auto& row : need(obj, "table", ctx)) {
    auto& r = table.emplace_back();
    if (!row.is_array()) throw ScenarioError(ctx + "table rows must be lists");
    for (const auto& v : row) {
      if (!v.is_number_unsigned()) throw ScenarioError(ctx + "table entries must be element indices");
      r.push_back(v.get<std::size_t>());
    }
  }
  try {
    FiniteGroup g(elements, std::move(table));
    if (!obj.contains("ideal")) return GroupEntry{g, finitaryIdeal(g)};
    std::vector<PointSet> raw;
    for (const auto& set : obj.at("ideal")) raw.push_back(elements.setOf(stringList(set, ctx)));
    auto ideal = validateIdealChain(g, raw);
    return GroupEntry{std::move(g), std::move(ideal)};
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& err) {
    throw ScenarioError(ctx + err.what());
  }
}

WindowedLine parseWindow(const std::string& name, const Json& obj, SpaceEntry& space) {
  const auto ctx = where("window", name);
  auto kind = need(obj, "kind", ctx).get<std::string>();
  WindowKind k;
  if (kind == "integer") k = WindowKind::Integer;
  else if (kind == "grid") k = WindowKind::Grid;
  else throw ScenarioError(ctx + "kind must be \"integer\" or \"grid\"");
  double half = number(need(obj, "halfWidth", ctx), ctx);
  double step = obj.contains("step") ? number(obj.at("step"), ctx) : 1.0;
  std::vector<double> scales{1, 2, 4, 8};
  if (obj.contains("scales")) {
    scales.clear();
    for (const auto& v : obj.at("scales")) scales.push_back(number(v, ctx));
  }
  try {
    auto [line, x] = windowedLine(k, half, step, scales);
    space = SpaceEntry{x.ground(), x, std::nullopt, "window"};
    return line;
  } catch (const Error& err) {
    throw ScenarioError(ctx + err.what());
  }
}

// A map name, or an inline [[source, target], ...] list.
PointMap mapRef(const Scenario& s, const Json& ref, const GroundSet& from, const GroundSet& to, const std::string& ctx) {
  if (ref.is_string()) {
    auto it = s.maps.find(ref.get<std::string>());
    if (it == s.maps.end()) throw ScenarioError(ctx + "unknown map '" + ref.get<std::string>() + "'");
    if (!(it->second.map.source() == from) || !(it->second.map.target() == to))
      throw ScenarioError(ctx + "map '" + ref.get<std::string>() + "' has the wrong source or target");
    return it->second.map;
  }
  try {
    return PointMap::fromLabels(from, to, assignList(ref, ctx));
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& err) {
    throw ScenarioError(ctx + err.what());
  }
}

// Maps may join spaces or the element sets of groups.
const GroundSet& groundByName(const Scenario& s, const std::string& name, const std::string& ctx) {
  if (auto it = s.spaces.find(name); it != s.spaces.end()) return it->second.ground;
  if (auto it = s.groups.find(name); it != s.groups.end()) return it->second.group.elements();
  throw ScenarioError(ctx + "unknown space or group '" + name + "'");
}

SystemEntry parseSystem(const Scenario& s, const std::string& name, const Json& obj) {
  const auto ctx = where("system", name);
  auto spaceName = need(obj, "space", ctx).get<std::string>();
  auto groupName = need(obj, "group", ctx).get<std::string>();
  const CoarseSpace& x = s.space(spaceName);
  auto git = s.groups.find(groupName);
  if (git == s.groups.end()) throw ScenarioError(ctx + "unknown group '" + groupName + "'");
  const auto& g = git->second.group;
  const auto& elems = g.elements();

  std::optional<HyperTable> ops;
  if (obj.contains("hyperop")) {
    ops.emplace(g.size(), std::vector<PointSet>(g.size(), PointSet(g.size())));
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = 0; b < g.size(); ++b) (*ops)[a][b].insert(g.op(a, b));
    for (const auto& entry : obj.at("hyperop")) {
      auto pair = stringList(need(entry, "pair", ctx), ctx);
      if (pair.size() != 2) throw ScenarioError(ctx + "hyperop pair must have two elements");
      auto a = labelIndex(elems, pair[0], ctx), b = labelIndex(elems, pair[1], ctx);
      PointSet prod(g.size());
      for (const auto& l : stringList(need(entry, "product", ctx), ctx)) prod.insert(labelIndex(elems, l, ctx));
      (*ops)[a][b] = prod;
    }
  }

  const Json& evo = need(obj, "evolution", ctx);
  if (!evo.is_object()) throw ScenarioError(ctx + "evolution must map element labels to point lists");
  std::vector<std::optional<PointMap>> maps(g.size());
  for (const auto& [label, images] : evo.items()) {
    auto gi = labelIndex(elems, label, ctx);
    auto targets = stringList(images, ctx);
    if (targets.size() != x.ground().size())
      throw ScenarioError(ctx + "evolution of '" + label + "' must list one image per point");
    std::vector<std::size_t> to;
    for (const auto& t : targets) to.push_back(labelIndex(x.ground(), t, ctx));
    maps[gi] = PointMap(x.ground(), x.ground(), std::move(to));
  }
  std::vector<PointMap> evolution;
  for (std::size_t gi = 0; gi < g.size(); ++gi) {
    if (!maps[gi]) throw ScenarioError(ctx + "no evolution given for element '" + elems.label(gi) + "'");
    evolution.push_back(*maps[gi]);
  }
  try {
    TimeGroup time(g, git->second.ideal, ops);
    auto sys = std::make_shared<const CoarseDynamicalSystem>(x, std::move(time), std::move(evolution));
    return SystemEntry{spaceName, groupName, std::move(sys)};
  } catch (const Error& err) {
    throw ScenarioError(ctx + err.what());
  }
}

std::string lineInfo(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Scenario parseScenario(const std::string& text, const std::string& sourceName) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ScenarioError(sourceName + ": parse error at " + lineInfo(text, e.byte) + ": " + e.what());
  }
  if (!root.is_object()) throw ScenarioError(sourceName + ": top level must be an object");

  Scenario s;
  try {
    if (root.contains("seed")) {
      if (!root.at("seed").is_number_unsigned()) throw ScenarioError("seed must be a non-negative integer");
      s.seed = root.at("seed").get<std::uint64_t>();
    }
    eachNamed(root, "spaces", [&](const std::string& n, const Json& o) { s.spaces.emplace(n, parseSpace(n, o)); });
    eachNamed(root, "windows", [&](const std::string& n, const Json& o) {
      if (s.spaces.count(n)) throw ScenarioError("window '" + n + "' collides with a space of the same name");
      SpaceEntry entry{GroundSet(), std::nullopt, std::nullopt, ""};
      s.windows.emplace(n, parseWindow(n, o, entry));
      s.spaces.emplace(n, std::move(entry));
    });
    eachNamed(root, "groups", [&](const std::string& n, const Json& o) { s.groups.emplace(n, parseGroup(n, o)); });
    eachNamed(root, "maps", [&](const std::string& n, const Json& o) {
      const auto ctx = where("map", n);
      auto from = need(o, "from", ctx).get<std::string>();
      auto to = need(o, "to", ctx).get<std::string>();
      const auto& src = groundByName(s, from, ctx);
      const auto& dst = groundByName(s, to, ctx);
      s.maps.emplace(n, MapEntry{from, to, mapRef(s, need(o, "assign", ctx), src, dst, ctx)});
    });
    eachNamed(root, "systems", [&](const std::string& n, const Json& o) { s.systems.emplace(n, parseSystem(s, n, o)); });
    eachNamed(root, "conjugacies", [&](const std::string& n, const Json& o) {
      const auto ctx = where("conjugacy", n);
      auto from = need(o, "fromSystem", ctx).get<std::string>();
      auto to = need(o, "toSystem", ctx).get<std::string>();
      const auto& a = s.system(from).system;
      const auto& b = s.system(to).system;
      auto f = mapRef(s, need(o, "f", ctx), a->ground(), b->ground(), ctx);
      auto h = mapRef(s, need(o, "h", ctx), a->time().elements(), b->time().elements(), ctx);
      s.conjugacies.emplace(n, ConjugacyEntry{from, to, std::move(f), std::move(h)});
    });
  } catch (const ScenarioError& e) {
    throw ScenarioError(sourceName + ": " + e.what());
  } catch (const Json::exception& e) {
    throw ScenarioError(sourceName + ": " + e.what());
  }
  return s;
}

Scenario loadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parseScenario(buf.str(), path);
}

}  // namespace coarse::cli
