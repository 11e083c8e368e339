#include "webtrace/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace webtrace {

using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SurfaceKind kind_from_string(const std::string& s) {
  if (s == "disk") return SurfaceKind::Disk;
  if (s == "annulus") return SurfaceKind::Annulus;
  if (s == "pants") return SurfaceKind::Pants;
  throw std::runtime_error("unknown surface kind: " + s);
}

std::string kind_to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::Disk: return "disk";
    case SurfaceKind::Annulus: return "annulus";
    case SurfaceKind::Pants: return "pants";
  }
  return "disk";
}

}  // namespace

GraphDocument parse_graph_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("parse error: ") + e.what());
  }
  try {
    GraphDocument doc;
    doc.n = j.at("n").get<std::size_t>();
    if (doc.n < 1) throw std::runtime_error("rank n must be >= 1");
    for (const auto& v : j.at("vertices")) {
      std::string color = v.at("color").get<std::string>();
      if (color != "black" && color != "white")
        throw std::runtime_error("vertex color must be black or white");
      doc.graph.vertices.push_back(
          {v.at("id").get<int>(),
           color == "black" ? VertexColor::Black : VertexColor::White});
    }
    for (const auto& e : j.at("edges"))
      doc.graph.edges.push_back({e.at("id").get<int>(),
                                 e.at("black").get<int>(),
                                 e.at("white").get<int>()});
    for (const auto& [key, rot] : j.at("rotations").items())
      doc.graph.rotation[std::stoi(key)] = rot.get<std::vector<int>>();
    if (j.contains("cilia")) {
      Cilia c;
      for (const auto& [key, idx] : j.at("cilia").items())
        c[std::stoi(key)] = idx.get<int>();
      doc.cilia = std::move(c);
    }
    if (j.contains("surface")) {
      const auto& s = j.at("surface");
      doc.graph.surface.kind = kind_from_string(s.at("kind").get<std::string>());
      if (s.contains("punctured_faces"))
        doc.graph.surface.punctured_faces =
            s.at("punctured_faces").get<std::vector<int>>();
      if (s.contains("seams"))
        doc.graph.surface.seams =
            s.at("seams").get<std::vector<std::vector<int>>>();
    }
    if (j.contains("connection")) {
      Connection<Rational> conn;
      conn.rank = doc.n;
      for (const auto& [key, rows] : j.at("connection").items()) {
        Matrix<Rational> m(doc.n, doc.n, Rational(0));
        if (rows.size() != doc.n)
          throw std::runtime_error("connection matrix has wrong row count");
        for (std::size_t i = 0; i < doc.n; ++i) {
          if (rows[i].size() != doc.n)
            throw std::runtime_error("connection matrix has wrong column count");
          for (std::size_t k = 0; k < doc.n; ++k)
            m(i, k) = rational_from_string(rows[i][k].get<std::string>());
        }
        conn.edge_matrix.emplace(std::stoi(key), std::move(m));
      }
      doc.connection = std::move(conn);
    }
    if (j.contains("weights"))
      for (const auto& [key, name] : j.at("weights").items())
        doc.weights[std::stoi(key)] = name.get<std::string>();
    doc.graph.validate();
    return doc;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("bad graph document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("bad graph document: ") + e.what());
  }
}

GraphDocument load_graph_document(const std::string& path) {
  try {
    return parse_graph_document(read_file(path));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string serialize_graph_document(const GraphDocument& doc) {
  json j;
  j["n"] = doc.n;
  j["vertices"] = json::array();
  for (const auto& v : doc.graph.vertices)
    j["vertices"].push_back(
        {{"id", v.id},
         {"color", v.color == VertexColor::Black ? "black" : "white"}});
  j["edges"] = json::array();
  for (const auto& e : doc.graph.edges)
    j["edges"].push_back({{"id", e.id}, {"black", e.black}, {"white", e.white}});
  j["rotations"] = json::object();
  for (const auto& [vid, rot] : doc.graph.rotation)
    j["rotations"][std::to_string(vid)] = rot;
  if (doc.cilia) {
    j["cilia"] = json::object();
    for (const auto& [vid, idx] : *doc.cilia)
      j["cilia"][std::to_string(vid)] = idx;
  }
  j["surface"] = {{"kind", kind_to_string(doc.graph.surface.kind)},
                  {"punctured_faces", doc.graph.surface.punctured_faces},
                  {"seams", doc.graph.surface.seams}};
  if (doc.connection) {
    j["connection"] = json::object();
    for (const auto& [eid, m] : doc.connection->edge_matrix) {
      json rows = json::array();
      for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
          row.push_back(to_string(m(i, k)));
        rows.push_back(std::move(row));
      }
      j["connection"][std::to_string(eid)] = std::move(rows);
    }
  }
  if (!doc.weights.empty()) {
    j["weights"] = json::object();
    for (const auto& [eid, name] : doc.weights)
      j["weights"][std::to_string(eid)] = name;
  }
  return j.dump(2) + "\n";
}

void save_graph_document(const GraphDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_graph_document(doc);
}

Multiweb parse_multiweb(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("parse error: ") + e.what());
  }
  try {
    Multiweb m;
    m.rank = j.at("n").get<std::size_t>();
    for (const auto& [key, mult] : j.at("multiplicities").items())
      m.mult[std::stoi(key)] = mult.get<int>();
    return m;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("bad multiweb document: ") + e.what());
  }
}

Multiweb load_multiweb(const std::string& path) {
  try {
    return parse_multiweb(read_file(path));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string serialize_multiweb(const Multiweb& m) {
  json j;
  j["n"] = m.rank;
  j["multiplicities"] = json::object();
  for (const auto& [eid, k] : m.mult)
    j["multiplicities"][std::to_string(eid)] = k;
  return j.dump(2) + "\n";
}

bool documents_equal(const GraphDocument& a, const GraphDocument& b) {
  auto graph_eq = [](const EmbeddedBipartiteGraph& x,
                     const EmbeddedBipartiteGraph& y) {
    if (x.vertices.size() != y.vertices.size() ||
        x.edges.size() != y.edges.size())
      return false;
    for (std::size_t i = 0; i < x.vertices.size(); ++i)
      if (x.vertices[i].id != y.vertices[i].id ||
          x.vertices[i].color != y.vertices[i].color)
        return false;
    for (std::size_t i = 0; i < x.edges.size(); ++i)
      if (x.edges[i].id != y.edges[i].id || x.edges[i].black != y.edges[i].black ||
          x.edges[i].white != y.edges[i].white)
        return false;
    return x.rotation == y.rotation && x.surface.kind == y.surface.kind &&
           x.surface.punctured_faces == y.surface.punctured_faces &&
           x.surface.seams == y.surface.seams;
  };
  if (a.n != b.n || !graph_eq(a.graph, b.graph)) return false;
  if (a.cilia.has_value() != b.cilia.has_value()) return false;
  if (a.cilia && *a.cilia != *b.cilia) return false;
  if (a.connection.has_value() != b.connection.has_value()) return false;
  if (a.connection) {
    if (a.connection->rank != b.connection->rank) return false;
    if (a.connection->edge_matrix.size() != b.connection->edge_matrix.size())
      return false;
    auto it2 = b.connection->edge_matrix.begin();
    for (const auto& [eid, m] : a.connection->edge_matrix) {
      if (eid != it2->first || !(m == it2->second)) return false;
      ++it2;
    }
  }
  return a.weights == b.weights;
}

}  // namespace webtrace
