#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "expdecomp/graph.hpp"

namespace expdecomp {

namespace {

bool next_content_line(std::istream& is, std::string& line, std::size_t& lineno) {
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

[[noreturn]] void fail(std::size_t lineno, const std::string& what) {
  throw ParseError("line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

void write_graph(std::ostream& os, const Graph& g) {
  os << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

Graph read_graph(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(is, line, lineno)) fail(lineno, "missing header");
  std::istringstream header(line);
  std::string tag;
  long long n = -1;
  long long m = -1;
  std::string extra;
  if (!(header >> tag >> n >> m) || tag != "p" || n < 0 || m < 0 || (header >> extra)) {
    fail(lineno, "expected 'p <n> <m>'");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(is, line, lineno)) fail(lineno, "expected " + std::to_string(m) + " edges");
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v) || (row >> extra)) fail(lineno, "expected '<u> <v>'");
    if (u < 0 || v < 0 || u >= n || v >= n) fail(lineno, "endpoint out of range");
    if (u == v) fail(lineno, "self loop");
    edges.push_back(make_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)));
  }
  if (next_content_line(is, line, lineno)) fail(lineno, "trailing content");
  try {
    return Graph(static_cast<std::size_t>(n), edges);
  } catch (const std::invalid_argument& e) {
    fail(lineno, e.what());
  }
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_graph(in);
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_graph(out, g);
}

}  // namespace expdecomp
