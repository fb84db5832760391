#include "mmforge/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "mmforge/error.hpp"

namespace mmforge {

Graph::Graph(std::size_t n, const std::vector<Edge>& edges) : Graph(n) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_)
    throw ValidationError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") has an endpoint outside [0, " + std::to_string(n_) + ")");
  if (u == v) throw ValidationError("loop at vertex " + std::to_string(u));
  if (adj_[u * n_ + v] != 0) return;
  adj_[u * n_ + v] = adj_[v * n_ + u] = 1;
  ++edge_count_;
}

std::size_t Graph::degree(Vertex v) const {
  std::size_t d = 0;
  for (Vertex u = 0; u < n_; ++u) d += adj_[v * n_ + u];
  return d;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  for (Vertex u = 0; u < n_; ++u)
    if (adj_[v * n_ + u] != 0) out.push_back(u);
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw ValidationError("a cycle needs at least 3 vertices");
  Graph g = path_graph(n);
  g.add_edge(0, n - 1);
  return g;
}

Graph complete_bipartite_graph(std::size_t m, std::size_t n) {
  Graph g(m + n);
  for (Vertex u = 0; u < m; ++u)
    for (Vertex v = m; v < m + n; ++v) g.add_edge(u, v);
  return g;
}

Graph hypercube_graph(std::size_t s) {
  if (s >= 20) throw ValidationError("hypercube dimension too large");
  const std::size_t n = std::size_t{1} << s;
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (std::size_t bit = 0; bit < s; ++bit) {
      const Vertex v = u ^ (std::size_t{1} << bit);
      if (u < v) g.add_edge(u, v);
    }
  return g;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_index(const std::string& tok, std::size_t& out) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) return false;
  try {
    out = std::stoull(tok);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> declared;
  std::vector<std::pair<Edge, std::size_t>> edges;  // edge, line
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (first_content && toks.size() == 2 && toks[0] == "n") {
      std::size_t n = 0;
      if (!parse_index(toks[1], n)) throw ParseError("bad vertex count '" + toks[1] + "'", lineno);
      declared = n;
      first_content = false;
      continue;
    }
    first_content = false;
    std::size_t u = 0, v = 0;
    if (toks.size() != 2 || !parse_index(toks[0], u) || !parse_index(toks[1], v))
      throw ParseError("expected 'u v' with non-negative integers, got '" + line + "'", lineno);
    if (u == v) throw ValidationError("line " + std::to_string(lineno) + ": loop at vertex " + toks[0]);
    edges.push_back({{u, v}, lineno});
  }
  std::size_t n = 0;
  for (const auto& [e, ln] : edges) n = std::max({n, e.first + 1, e.second + 1});
  if (declared) {
    for (const auto& [e, ln] : edges)
      if (e.first >= *declared || e.second >= *declared)
        throw ValidationError("line " + std::to_string(ln) + ": endpoint exceeds declared n " +
                              std::to_string(*declared));
    n = *declared;
  }
  Graph g(n);
  for (const auto& [e, ln] : edges) g.add_edge(e.first, e.second);
  return g;
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.order() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph parse_graph6(const std::string& raw) {
  std::string text = trim(raw);
  if (text.rfind(">>graph6<<", 0) == 0) text = text.substr(10);
  if (text.empty()) throw ParseError("empty graph6 string");
  for (char c : text)
    if (c < 63 || c > 126) throw ParseError("graph6 byte out of range");
  std::size_t pos = 0;
  std::size_t n = 0;
  if (text[0] != 126) {
    n = std::size_t(text[0] - 63);
    pos = 1;
  } else {
    if (text.size() < 4 || text[1] == 126) throw ParseError("unsupported graph6 size prefix");
    n = (std::size_t(text[1] - 63) << 12) | (std::size_t(text[2] - 63) << 6) | std::size_t(text[3] - 63);
    pos = 4;
  }
  const std::size_t bits = n * (n > 0 ? n - 1 : 0) / 2;
  const std::size_t need = (bits + 5) / 6;
  if (text.size() - pos != need)
    throw ParseError("graph6 body has " + std::to_string(text.size() - pos) + " bytes, expected " +
                     std::to_string(need));
  Graph g(n);
  std::size_t k = 0;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u, ++k) {
      const int byte = text[pos + k / 6] - 63;
      if ((byte >> (5 - int(k % 6))) & 1) g.add_edge(u, v);
    }
  return g;
}

std::string to_graph6(const Graph& g) {
  const std::size_t n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(char(63 + n));
  } else {
    out.push_back(char(126));
    out.push_back(char(63 + ((n >> 12) & 63)));
    out.push_back(char(63 + ((n >> 6) & 63)));
    out.push_back(char(63 + (n & 63)));
  }
  int acc = 0, filled = 0;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) {
      acc = (acc << 1) | (g.adjacent(u, v) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(char(63 + acc));
        acc = filled = 0;
      }
    }
  if (filled > 0) out.push_back(char(63 + (acc << (6 - filled))));
  return out;
}

Graph complement(const Graph& g) {
  Graph out(g.order());
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v)
      if (!g.adjacent(u, v)) out.add_edge(u, v);
  return out;
}

Graph combine(const Graph& g, const Graph& h, CombineKind kind) {
  const std::size_t n = g.order(), m = h.order();
  Graph out(n + m);
  for (const auto& [u, v] : g.edges()) out.add_edge(u, v);
  for (const auto& [u, v] : h.edges()) out.add_edge(n + u, n + v);
  if (kind == CombineKind::Join)
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < m; ++v) out.add_edge(u, n + v);
  return out;
}

Graph product(const Graph& g, const Graph& h, ProductKind kind) {
  const std::size_t n = g.order(), m = h.order();
  Graph out(n * m);
  for (Vertex a = 0; a < n * m; ++a)
    for (Vertex b = a + 1; b < n * m; ++b) {
      const Vertex u1 = a / m, u2 = a % m, v1 = b / m, v2 = b % m;
      const bool cart = (u1 == v1 && h.adjacent(u2, v2)) || (u2 == v2 && g.adjacent(u1, v1));
      const bool tens = u1 != v1 && u2 != v2 && g.adjacent(u1, v1) && h.adjacent(u2, v2);
      bool edge = false;
      switch (kind) {
        case ProductKind::Cartesian: edge = cart; break;
        case ProductKind::Tensor: edge = tens; break;
        case ProductKind::Strong: edge = cart || tens; break;
      }
      if (edge) out.add_edge(a, b);
    }
  return out;
}

bool is_connected(const Graph& g) {
  if (g.order() == 0) return false;
  std::vector<char> seen(g.order(), 0);
  std::queue<Vertex> q;
  q.push(0);
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop();
    for (Vertex u = 0; u < g.order(); ++u)
      if (!seen[u] && g.adjacent(v, u)) {
        seen[u] = 1;
        ++count;
        q.push(u);
      }
  }
  return count == g.order();
}

bool is_tree(const Graph& g) { return g.order() > 0 && g.edge_count() + 1 == g.order() && is_connected(g); }

Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vs) {
  Graph out(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (g.adjacent(vs[i], vs[j])) out.add_edge(i, j);
  return out;
}

Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
  if (perm.size() != g.order()) throw ValidationError("permutation size mismatch");
  return induced_subgraph(g, perm);
}

// ---------------------------------------------------------------------------

std::size_t family::ComplementForm::order() const {
  std::size_t n = p0 + r;
  for (const auto& [p, q] : pairs) n += p + q;
  return n;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void validate(const FamilyDescriptor& desc) {
  std::visit(overloaded{
                 [](const family::Complete& f) {
                   if (f.n < 1) throw ValidationError("Complete(n) needs n >= 1");
                 },
                 [](const family::CompleteBipartite& f) {
                   if (f.m < 1 || f.n < 1) throw ValidationError("CompleteBipartite(m, n) needs m, n >= 1");
                 },
                 [](const family::Hypercube& f) {
                   if (f.s < 1 || f.s > 12) throw ValidationError("Hypercube(s) needs 1 <= s <= 12");
                 },
                 [](const family::Path& f) {
                   if (f.n < 1) throw ValidationError("Path(n) needs n >= 1");
                 },
                 [](const family::ComplementForm& f) {
                   for (const auto& [p, q] : f.pairs)
                     if (p < 1 || q < 1) throw ValidationError("ComplementForm pairs need p_i, q_i >= 1");
                   if (f.order() < 1) throw ValidationError("ComplementForm describes an empty graph");
                 },
                 [](const family::Corona& f) {
                   if (!f.base) throw ValidationError("Corona needs a base");
                   validate(*f.base);
                 },
                 [](const family::ParallelPaths& f) {
                   if (f.n < 1 || f.d.size() != f.n)
                     throw ValidationError("ParallelPaths(n, d) needs n >= 1 and |d| = n");
                   for (std::size_t j = 0; j < f.n; ++j)
                     if (f.d[j] != -f.d[f.n - 1 - j])
                       throw ValidationError("ParallelPaths needs d[j] = -d[n-1-j] (violated at j = " +
                                             std::to_string(j) + ")");
                 },
                 [](const family::Custom&) {},
             },
             desc.kind);
}

Graph family_graph(const FamilyDescriptor& desc) {
  validate(desc);
  return std::visit(
      overloaded{
          [](const family::Complete& f) { return complete_graph(f.n); },
          [](const family::CompleteBipartite& f) { return complete_bipartite_graph(f.m, f.n); },
          [](const family::Hypercube& f) {
            Graph g = complete_graph(2);
            for (std::size_t i = 1; i < f.s; ++i) g = product(g, complete_graph(2), ProductKind::Cartesian);
            return g;
          },
          [](const family::Path& f) { return path_graph(f.n); },
          [](const family::ComplementForm& f) {
            // Built literally: union of K_{p,0} and K_{p_i,q_i}, joined with K_r,
            // then complemented.
            Graph c = empty_graph(f.p0);
            for (const auto& [p, q] : f.pairs) c = combine(c, complete_bipartite_graph(p, q), CombineKind::Union);
            c = combine(c, complete_graph(f.r), CombineKind::Join);
            return complement(c);
          },
          [](const family::Corona& f) {
            const Graph base = family_graph(*f.base);
            const std::size_t n = base.order();
            Graph g = combine(base, empty_graph(n), CombineKind::Union);
            for (Vertex v = 0; v < n; ++v) g.add_edge(v, n + v);
            return g;
          },
          [](const family::ParallelPaths& f) {
            Graph g = combine(path_graph(f.n), path_graph(f.n), CombineKind::Union);
            for (std::size_t j = 0; j < f.n; ++j)
              if (f.d[j] != 0.0) g.add_edge(j, f.n + j);
            return g;
          },
          [](const family::Custom& f) { return f.graph; },
      },
      desc.kind);
}

std::string describe(const FamilyDescriptor& desc) {
  return std::visit(
      overloaded{
          [](const family::Complete& f) { return "K_" + std::to_string(f.n); },
          [](const family::CompleteBipartite& f) {
            return "K_{" + std::to_string(f.m) + "," + std::to_string(f.n) + "}";
          },
          [](const family::Hypercube& f) { return "Q_" + std::to_string(f.s); },
          [](const family::Path& f) { return "P_" + std::to_string(f.n); },
          [](const family::ComplementForm& f) {
            std::string s = "((K_{" + std::to_string(f.p0) + ",0}";
            for (const auto& [p, q] : f.pairs) s += " u K_{" + std::to_string(p) + "," + std::to_string(q) + "}";
            s += ") v K_" + std::to_string(f.r) + ")^c";
            return s;
          },
          [](const family::Corona& f) { return "corona(" + (f.base ? describe(*f.base) : "?") + ")"; },
          [](const family::ParallelPaths& f) { return "parallel_paths(" + std::to_string(f.n) + ")"; },
          [](const family::Custom& f) { return "custom(n=" + std::to_string(f.graph.order()) + ")"; },
      },
      desc.kind);
}

// ---------------------------------------------------------------------------

PatternReport pattern_check(const SymMatrix& a, const Graph& g, double zero_threshold) {
  if (a.size() != g.order())
    throw ValidationError("matrix is " + std::to_string(a.size()) + "x" + std::to_string(a.size()) +
                          " but the graph has " + std::to_string(g.order()) + " vertices");
  if (!(zero_threshold > 0.0)) throw ValidationError("zero threshold must be positive");
  PatternReport report;
  report.zero_threshold = zero_threshold;
  const double cut = zero_threshold * a.scale();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double v = a(i, j);
      const bool nonzero = std::abs(v) >= cut;
      if (nonzero != g.adjacent(i, j))
        report.violations.push_back({i, j, v, g.adjacent(i, j) ? Requirement::Nonzero : Requirement::Zero});
    }
  report.is_member = report.violations.empty();
  return report;
}

Graph pattern_of(const SymMatrix& a, double zero_threshold) {
  Graph g(a.size());
  const double cut = zero_threshold * a.scale();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (std::abs(a(i, j)) >= cut) g.add_edge(i, j);
  return g;
}

double edge_margin(const SymMatrix& a, const Graph& g) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [u, v] : g.edges()) m = std::min(m, std::abs(a(u, v)));
  return m / a.scale();
}

}  // namespace mmforge
