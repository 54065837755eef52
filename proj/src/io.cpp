#include "rcc5/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rcc5/errors.hpp"

namespace rcc5 {
namespace {

using json = nlohmann::ordered_json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) throw ParseError("expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> string_array(const json& j, const char* what) {
  if (!j.is_array())
    throw ParseError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(as_string(e, what));
  return out;
}

void require_unique(const std::vector<std::string>& names, const char* what) {
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError(std::string("duplicate ") + what);
  for (const auto& n : sorted)
    if (n.empty()) throw ParseError(std::string("empty ") + what);
}

RelSet parse_orbit_list(const json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("\"orbits\" must be a nonempty array of relation names");
  RelSet s{};
  for (const auto& e : j)
    s = s | rel_bit(parse_rel(as_string(e, "relation name")));
  return s;
}

std::vector<RelTriangle> parse_triangle_list(const json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("\"triangles\" must be a nonempty array of triples");
  std::vector<RelTriangle> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3)
      throw ParseError("each triangle must be a triple of relation names");
    RelTriangle t{parse_rel(as_string(e[0], "relation name")),
                  parse_rel(as_string(e[1], "relation name")),
                  parse_rel(as_string(e[2], "relation name"))};
    if (!triangle_consistent(t))
      throw ParseError("triangle " + to_string(t.o12) + "," +
                       to_string(t.o23) + "," + to_string(t.o13) +
                       " is not consistent");
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

json orbits_to_json(RelSet s) {
  json a = json::array();
  for (int i = 0; i < kNumRel; ++i)
    if (s.contains(Rel(i))) a.push_back(to_string(Rel(i)));
  return a;
}

json triangles_to_json(const std::vector<RelTriangle>& ts) {
  json a = json::array();
  for (const auto& t : ts)
    a.push_back({to_string(t.o12), to_string(t.o23), to_string(t.o13)});
  return a;
}

json behaviour_to_json(const Behaviour& b) {
  json a = json::array();
  for (Orbit o : b.table) a.push_back(to_string(o));
  return a;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
}

Instance parse_instance(const std::string& text) {
  json j = parse_text(text);
  Instance inst;
  inst.variables = string_array(field(j, "variables"), "variable name");
  require_unique(inst.variables, "variable name");
  if (j.contains("constraints")) {
    const json& cs = j["constraints"];
    if (!cs.is_array()) throw ParseError("\"constraints\" must be an array");
    for (const auto& cj : cs) {
      Constraint c;
      if (cj.contains("name")) c.name = as_string(cj["name"], "\"name\"");
      for (const auto& arg :
           string_array(field(cj, "args"), "constraint argument")) {
        int v = inst.var_index(arg);
        if (v < 0) throw ParseError("unknown variable \"" + arg + "\"");
        c.args.push_back(v);
      }
      bool has_orbits = cj.contains("orbits");
      bool has_triangles = cj.contains("triangles");
      if (has_orbits == has_triangles)
        throw ParseError(
            "each constraint needs exactly one of \"orbits\", \"triangles\"");
      if (has_orbits) {
        if (c.args.size() != 2)
          throw ParseError("an \"orbits\" constraint takes 2 arguments");
        c.orbits = parse_orbit_list(cj["orbits"]);
      } else {
        if (c.args.size() != 3)
          throw ParseError("a \"triangles\" constraint takes 3 arguments");
        c.triangles = parse_triangle_list(cj["triangles"]);
      }
      inst.constraints.push_back(std::move(c));
    }
  }
  return inst;
}

std::string to_json(const Instance& inst) {
  json j;
  j["variables"] = inst.variables;
  json cs = json::array();
  for (const auto& c : inst.constraints) {
    json cj;
    if (!c.name.empty()) cj["name"] = c.name;
    if (c.arity() == 2)
      cj["orbits"] = orbits_to_json(c.orbits);
    else
      cj["triangles"] = triangles_to_json(c.triangles);
    json args = json::array();
    for (int v : c.args) args.push_back(inst.variables[size_t(v)]);
    cj["args"] = args;
    cs.push_back(std::move(cj));
  }
  j["constraints"] = std::move(cs);
  return dump(j);
}

SetModel parse_model(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) throw ParseError("a model file must be a JSON object");
  SetModel m;
  for (const auto& [name, val] : j.items()) {
    if (name.empty()) throw ParseError("empty variable name");
    if (!val.is_array() || val.empty())
      throw ParseError("set for \"" + name +
                       "\" must be a nonempty ascending array of tokens");
    TokenSet s;
    for (const auto& e : val) {
      if (!e.is_number_unsigned())
        throw ParseError("tokens must be nonnegative integers");
      uint64_t t = e.get<uint64_t>();
      if (t > UINT32_MAX) throw ParseError("token out of range");
      if (!s.empty() && t <= s.back())
        throw ParseError("set for \"" + name +
                         "\" must be strictly ascending");
      s.push_back(uint32_t(t));
    }
    m.variables.push_back(name);
    m.sets.push_back(std::move(s));
  }
  require_unique(m.variables, "variable name");
  return m;
}

std::string to_json(const SetModel& m) {
  json j = json::object();
  for (size_t i = 0; i < m.variables.size(); ++i) j[m.variables[i]] = m.sets[i];
  return dump(j);
}

OrderedStructure parse_ordered_structure(const std::string& text) {
  json j = parse_text(text);
  auto points = string_array(field(j, "points"), "point name");
  require_unique(points, "point name");
  for (const auto& p : points)
    if (p.find(',') != std::string::npos)
      throw ParseError("point names must not contain ','");
  OrderedStructure s = OrderedStructure::make(points);

  const json& labels = field(j, "labels");
  if (!labels.is_object()) throw ParseError("\"labels\" must be an object");
  int n = s.n();
  std::vector<char> seen(size_t(n) * size_t(n), 0);
  for (const auto& [key, val] : labels.items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos)
      throw ParseError("label key \"" + key + "\" must be \"a,b\"");
    int i = s.point_index(key.substr(0, comma));
    int k = s.point_index(key.substr(comma + 1));
    if (i < 0 || k < 0 || i == k)
      throw ParseError("label key \"" + key +
                       "\" must name two distinct points");
    if (seen[size_t(i) * size_t(n) + size_t(k)])
      throw ParseError("pair \"" + key + "\" labeled twice");
    seen[size_t(i) * size_t(n) + size_t(k)] = 1;
    seen[size_t(k) * size_t(n) + size_t(i)] = 1;
    Rel r = parse_rel(as_string(val, "label"));
    s.set(i, k, r);
    s.set(k, i, converse(r));
  }
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      if (!seen[size_t(i) * size_t(n) + size_t(k)])
        throw ParseError("pair \"" + s.points[size_t(i)] + "," +
                         s.points[size_t(k)] + "\" is unlabeled");

  auto order_names = string_array(field(j, "order"), "order entry");
  if (int(order_names.size()) != n)
    throw ParseError("\"order\" must list every point exactly once");
  std::vector<char> used(size_t(n), 0);
  s.order.clear();
  for (const auto& name : order_names) {
    int i = s.point_index(name);
    if (i < 0 || used[size_t(i)])
      throw ParseError("\"order\" must list every point exactly once");
    used[size_t(i)] = 1;
    s.order.push_back(i);
  }
  return s;
}

std::string to_json(const OrderedStructure& s) {
  json j;
  j["points"] = s.points;
  json labels = json::object();
  for (int i = 0; i < s.n(); ++i)
    for (int k = i + 1; k < s.n(); ++k)
      labels[s.points[size_t(i)] + "," + s.points[size_t(k)]] =
          to_string(s.at(i, k));
  j["labels"] = std::move(labels);
  json order = json::array();
  for (int i : s.order) order.push_back(s.points[size_t(i)]);
  j["order"] = std::move(order);
  return dump(j);
}

ExpansionSpec parse_expansion_spec(const std::string& text) {
  json j = parse_text(text);
  ExpansionSpec spec;
  const json& rels = field(j, "relations");
  if (!rels.is_array()) throw ParseError("\"relations\" must be an array");
  std::vector<std::string> names;
  for (const auto& rj : rels) {
    RelationSpec r;
    r.name = as_string(field(rj, "name"), "relation name");
    const json& aj = field(rj, "arity");
    if (!aj.is_number_integer())
      throw ParseError("\"arity\" must be an integer");
    r.arity = aj.get<int>();
    if (r.arity == 1)
      throw ParseError("unary relations are not accepted");
    if (r.arity != 2 && r.arity != 3)
      throw ParseError("relation arity must be 2 or 3");
    if (r.arity == 2)
      r.orbits = parse_orbit_list(field(rj, "orbits"));
    else
      r.triangles = parse_triangle_list(field(rj, "triangles"));
    names.push_back(r.name);
    spec.relations.push_back(std::move(r));
  }
  require_unique(names, "relation name");
  return spec;
}

std::string to_json(const ExpansionSpec& spec) {
  json j;
  json rels = json::array();
  for (const auto& r : spec.relations) {
    json rj;
    rj["name"] = r.name;
    rj["arity"] = r.arity;
    if (r.arity == 2)
      rj["orbits"] = orbits_to_json(r.orbits);
    else
      rj["triangles"] = triangles_to_json(r.triangles);
    rels.push_back(std::move(rj));
  }
  j["relations"] = std::move(rels);
  return dump(j);
}

std::string to_json(const ClassifyReport& report) {
  json j;
  j["verdict"] = report.tractable ? "P_DATALOG" : "NP_COMPLETE";
  j["wedge"] = report.wedge ? behaviour_to_json(*report.wedge) : json();
  j["cyclic_rho"] =
      report.cyclic_rho ? behaviour_to_json(*report.cyclic_rho) : json();
  j["wnu3"] = report.wnu3 ? behaviour_to_json(*report.wnu3) : json();
  return dump(j);
}

std::string to_json(const BoolEmbedding& e, const OrderedStructure& s) {
  json j;
  json atoms = json::array();
  for (const auto& clique : e.family.members) {
    json a = json::array();
    for (int p : clique) a.push_back(s.points[size_t(p)]);
    atoms.push_back(std::move(a));
  }
  j["atoms"] = std::move(atoms);
  json f = json::object();
  for (int p = 0; p < s.n(); ++p) {
    json idx = json::array();
    for (int a = 0; a < e.family.size(); ++a)
      if (bits_get(e.f[size_t(p)], a)) idx.push_back(a);
    f[s.points[size_t(p)]] = std::move(idx);
  }
  j["f"] = std::move(f);
  return dump(j);
}

}  // namespace rcc5
