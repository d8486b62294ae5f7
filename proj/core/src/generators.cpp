#include "expdecomp/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "expdecomp/rng.hpp"

namespace expdecomp {

namespace {

void add_clique(std::vector<Edge>& edges, std::size_t offset, std::size_t size) {
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      edges.push_back({static_cast<Vertex>(offset + i), static_cast<Vertex>(offset + j)});
}

Graph build(std::size_t n, std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, edges);
}

}  // namespace

Graph make_clique(std::size_t n) {
  std::vector<Edge> e;
  add_clique(e, 0, n);
  return build(n, std::move(e));
}

Graph make_cycle(std::size_t n) {
  if (n < 3) throw Infeasible("a cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(make_edge(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)));
  return build(n, std::move(e));
}

Graph make_path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  return build(n, std::move(e));
}

Graph make_star(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.push_back({0, static_cast<Vertex>(i)});
  return build(n, std::move(e));
}

Graph make_grid(std::size_t rows, std::size_t cols) {
  std::vector<Edge> e;
  auto id = [&](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) e.push_back({id(r, c), id(r + 1, c)});
    }
  return build(rows * cols, std::move(e));
}

Graph make_barbell(std::size_t c, std::size_t bridges) {
  return make_cliques_chain(2, c, bridges);
}

Graph make_cliques_chain(std::size_t count, std::size_t size, std::size_t bridges) {
  if (bridges > size) throw Infeasible("more bridges than clique vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < count; ++i) add_clique(e, i * size, size);
  for (std::size_t i = 0; i + 1 < count; ++i)
    for (std::size_t b = 0; b < bridges; ++b)
      e.push_back({static_cast<Vertex>(i * size + b), static_cast<Vertex>((i + 1) * size + b)});
  return build(count * size, std::move(e));
}

Graph make_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw Infeasible("p must lie in [0, 1]");
  Rng rng = make_rng(seed, {tag(Stream::kGenerator), 1, n});
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (uniform01(rng) < p) e.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
  return build(n, std::move(e));
}

Graph make_random_regular(std::size_t n, std::size_t r, std::uint64_t seed) {
  if ((n * r) % 2 != 0) throw Infeasible("n * r must be even");
  if (r >= n) throw Infeasible("degree must be below n");
  Rng rng = make_rng(seed, {tag(Stream::kGenerator), 2, n, r});
  std::vector<Vertex> stubs;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = 0; i < r; ++i) stubs.push_back(static_cast<Vertex>(v));
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<Edge> seen;
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
      if (stubs[i] == stubs[i + 1]) ok = false;
      else ok = seen.insert(make_edge(stubs[i], stubs[i + 1])).second;
    }
    if (ok) return build(n, std::vector<Edge>(seen.begin(), seen.end()));
  }
  throw Infeasible("configuration model kept producing loops or multi-edges");
}

Graph make_planted_clique(std::size_t n, double p, std::size_t c, std::uint64_t seed) {
  if (c > n) throw Infeasible("clique larger than the graph");
  const Graph bg = make_erdos_renyi(n, p, seed);
  std::vector<Edge> e(bg.edges().begin(), bg.edges().end());
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  Rng rng = make_rng(seed, {tag(Stream::kGenerator), 3, n, c});
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = i + 1; j < c; ++j) e.push_back(make_edge(perm[i], perm[j]));
  return build(n, std::move(e));
}

Graph make_lollipop(std::size_t c, std::size_t tail) {
  std::vector<Edge> e;
  add_clique(e, 0, c);
  for (std::size_t i = 0; i < tail; ++i)
    e.push_back({static_cast<Vertex>(c - 1 + i), static_cast<Vertex>(c + i)});
  return build(c + tail, std::move(e));
}

Graph generate(const GraphSpec& s) {
  using F = GraphSpec::Family;
  switch (s.family) {
    case F::kClique:
      return make_clique(s.n);
    case F::kCycle:
      return make_cycle(s.n);
    case F::kPath:
      return make_path(s.n);
    case F::kStar:
      return make_star(s.n);
    case F::kGrid:
      return make_grid(s.n, s.a);
    case F::kBarbell:
      return make_barbell(s.n, s.a);
    case F::kCliquesChain:
      return make_cliques_chain(s.a, s.n, s.b);
    case F::kErdosRenyi:
      return make_erdos_renyi(s.n, s.p, s.seed);
    case F::kRandomRegular:
      return make_random_regular(s.n, s.a, s.seed);
    case F::kPlantedClique:
      return make_planted_clique(s.n, s.p, s.a, s.seed);
    case F::kLollipop:
      return make_lollipop(s.n, s.a);
  }
  throw ParseError("unknown family");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::size_t to_size(const std::string& s) {
  if (s.empty() || s[0] < '0' || s[0] > '9') throw ParseError("bad integer: " + s);
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw ParseError("bad integer: " + s);
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw ParseError("bad integer: " + s);
  }
}

double to_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ParseError("bad number: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad number: " + s);
  }
}

}  // namespace

GraphSpec parse_spec(const std::string& text, std::uint64_t seed) {
  using F = GraphSpec::Family;
  const auto parts = split(text, ':');
  if (parts.empty()) throw ParseError("empty graph spec");
  GraphSpec s;
  s.seed = seed;
  const std::string& f = parts[0];
  auto need = [&](std::size_t k) {
    if (parts.size() != k + 1) throw ParseError("spec '" + text + "' expects " + std::to_string(k) + " parameters");
  };
  if (f == "clique" || f == "cycle" || f == "path" || f == "star") {
    need(1);
    s.family = f == "clique" ? F::kClique : f == "cycle" ? F::kCycle : f == "path" ? F::kPath : F::kStar;
    s.n = to_size(parts[1]);
  } else if (f == "grid") {
    need(1);
    const auto rc = split(parts[1], 'x');
    if (rc.size() != 2) throw ParseError("grid spec is grid:RxC");
    s.family = F::kGrid;
    s.n = to_size(rc[0]);
    s.a = to_size(rc[1]);
  } else if (f == "barbell") {
    need(2);
    s.family = F::kBarbell;
    s.n = to_size(parts[1]);
    s.a = to_size(parts[2]);
  } else if (f == "chain") {
    need(3);
    s.family = F::kCliquesChain;
    s.a = to_size(parts[1]);
    s.n = to_size(parts[2]);
    s.b = to_size(parts[3]);
  } else if (f == "gnp") {
    need(2);
    s.family = F::kErdosRenyi;
    s.n = to_size(parts[1]);
    s.p = to_double(parts[2]);
  } else if (f == "regular") {
    need(2);
    s.family = F::kRandomRegular;
    s.n = to_size(parts[1]);
    s.a = to_size(parts[2]);
  } else if (f == "planted") {
    need(3);
    s.family = F::kPlantedClique;
    s.n = to_size(parts[1]);
    s.p = to_double(parts[2]);
    s.a = to_size(parts[3]);
  } else if (f == "lollipop") {
    need(2);
    s.family = F::kLollipop;
    s.n = to_size(parts[1]);
    s.a = to_size(parts[2]);
  } else {
    throw ParseError("unknown graph family '" + f + "'");
  }
  return s;
}

std::string spec_string(const GraphSpec& s) {
  using F = GraphSpec::Family;
  std::ostringstream os;
  switch (s.family) {
    case F::kClique:
      os << "clique:" << s.n;
      break;
    case F::kCycle:
      os << "cycle:" << s.n;
      break;
    case F::kPath:
      os << "path:" << s.n;
      break;
    case F::kStar:
      os << "star:" << s.n;
      break;
    case F::kGrid:
      os << "grid:" << s.n << "x" << s.a;
      break;
    case F::kBarbell:
      os << "barbell:" << s.n << ":" << s.a;
      break;
    case F::kCliquesChain:
      os << "chain:" << s.a << ":" << s.n << ":" << s.b;
      break;
    case F::kErdosRenyi:
      os << "gnp:" << s.n << ":" << s.p;
      break;
    case F::kRandomRegular:
      os << "regular:" << s.n << ":" << s.a;
      break;
    case F::kPlantedClique:
      os << "planted:" << s.n << ":" << s.p << ":" << s.a;
      break;
    case F::kLollipop:
      os << "lollipop:" << s.n << ":" << s.a;
      break;
  }
  return os.str();
}

}  // namespace expdecomp
