#include "coxsg/io.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace coxsg {

namespace {

const char* class_name(VertexClass c)
{
  switch (c) {
  case VertexClass::Primary:
    return "primary";
  case VertexClass::Secondary:
    return "secondary";
  case VertexClass::Critical:
    return "critical";
  }
  return "?";
}

VertexClass class_from(const std::string& s)
{
  if (s == "primary")
    return VertexClass::Primary;
  if (s == "secondary")
    return VertexClass::Secondary;
  if (s == "critical")
    return VertexClass::Critical;
  throw std::runtime_error("unknown vertex class '" + s + "'");
}

const char* stage_name(Stage s)
{
  switch (s) {
  case Stage::Delta0:
    return "delta0";
  case Stage::Delta1:
    return "delta1";
  case Stage::Delta2:
    return "delta2";
  }
  return "?";
}

} // namespace

std::string graph_to_json(const SubgroupGraph& g)
{
  nlohmann::json doc;
  doc["schema"] = "coxsg-graph/1";
  doc["stage"] = stage_name(g.stage());
  doc["basepoint"] = g.basepoint();
  if (g.terminal() != kNoVertex)
    doc["terminal"] = g.terminal();
  auto& verts = doc["vertices"] = nlohmann::json::array();
  for (VertexId v : g.live_vertex_list())
    verts.push_back({{"id", v}, {"class", class_name(g.vertex_class(v))}});
  auto& edges = doc["edges"] = nlohmann::json::array();
  for (EdgeId e : g.live_edge_list()) {
    edges.push_back({{"u", g.endpoint(e, 0)},
                     {"v", g.endpoint(e, 1)},
                     {"label", g.edge(e).label + 1},
                     {"provenance",
                      g.edge(e).prov == Provenance::Primary ? "primary" : "secondary"}});
  }
  return doc.dump(2);
}

SubgroupGraph graph_from_json(const CoxeterPresentation& p, const std::string& text)
{
  nlohmann::json doc = nlohmann::json::parse(text);
  if (doc.value("schema", "") != "coxsg-graph/1")
    throw std::runtime_error("graph document: unknown schema");

  SubgroupGraph g(p, Stage::Delta0);
  std::string stage = doc.value("stage", "delta0");
  if (stage == "delta1")
    g.set_stage(Stage::Delta1);
  else if (stage == "delta2")
    g.set_stage(Stage::Delta2);

  std::map<long, VertexId> ids;
  long base = doc.at("basepoint").get<long>();
  ids[base] = g.basepoint();
  for (auto& v : doc.at("vertices")) {
    long id = v.at("id").get<long>();
    if (!ids.count(id))
      ids[id] = g.add_vertex();
    g.set_vertex_class(ids[id], class_from(v.value("class", "primary")));
  }
  for (auto& e : doc.at("edges")) {
    long u = e.at("u").get<long>(), v = e.at("v").get<long>();
    int label = e.at("label").get<int>();
    if (!ids.count(u) || !ids.count(v))
      throw std::runtime_error("graph document: edge references unknown vertex");
    if (label < 1 || static_cast<std::size_t>(label) > p.rank())
      throw std::runtime_error("graph document: edge label out of range");
    Provenance prov = e.value("provenance", "primary") == std::string("secondary")
                          ? Provenance::Secondary
                          : Provenance::Primary;
    g.add_edge(ids[u], ids[v], static_cast<Gen>(label - 1), prov);
  }
  if (doc.contains("terminal")) {
    long t = doc.at("terminal").get<long>();
    if (!ids.count(t))
      throw std::runtime_error("graph document: unknown terminal vertex");
    g.set_terminal(ids[t]);
  }
  return g;
}

std::string graph_to_dot(const SubgroupGraph& g)
{
  std::ostringstream out;
  out << "graph subgroup {\n";
  out << "  node [shape=circle];\n";
  for (VertexId v : g.live_vertex_list()) {
    out << "  v" << v << " [";
    if (v == g.basepoint())
      out << "shape=doublecircle,";
    if (g.terminal() == v)
      out << "peripheries=3,";
    switch (g.vertex_class(v)) {
    case VertexClass::Primary:
      out << "style=filled,fillcolor=white";
      break;
    case VertexClass::Secondary:
      out << "style=filled,fillcolor=lightgray";
      break;
    case VertexClass::Critical:
      out << "style=filled,fillcolor=orange";
      break;
    }
    out << "];\n";
  }
  for (EdgeId e : g.live_edge_list()) {
    out << "  v" << g.endpoint(e, 0) << " -- v" << g.endpoint(e, 1) << " [label=\"a"
        << (g.edge(e).label + 1) << "\"";
    if (g.edge(e).prov == Provenance::Secondary)
      out << ",style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string quotient_to_text(const FiniteQuotient& q)
{
  std::ostringstream out;
  for (std::size_t i = 0; i < q.images.size(); ++i)
    out << "a_" << (i + 1) << " -> " << cycle_notation(q.images[i]) << "\n";
  out << "degree " << q.degree << "\n";
  out << "O_H " << q.base_index << "\n";
  if (q.terminal_index)
    out << "T_w " << *q.terminal_index << "\n";
  return out.str();
}

} // namespace coxsg
