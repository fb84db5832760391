#include "mmforge/serialize.hpp"

#include <iomanip>
#include <sstream>

#include "mmforge/error.hpp"

namespace mmforge {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key \"") + key + "\"");
  return *it;
}

template <class T>
T as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::size_t as_count(const Json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw ParseError(std::string(what) + " must be an integer");
  if (!j.is_number_unsigned() && j.get<long long>() < 0) throw ValidationError(std::string(what) + " must be >= 0");
  return j.get<std::size_t>();
}

double as_double(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

Seed as_seed(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    try {
      std::size_t used = 0;
      const Seed v = std::stoull(s, &used, 0);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("seed string is not an integer: " + s);
  }
  return as_count(j, "seed");
}

std::string requirement_name(Requirement r) { return r == Requirement::Zero ? "zero" : "nonzero"; }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return Json{{"n", g.order()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const Json& j) {
  const std::size_t n = as_count(field(j, "n"), "n");
  const Json& edges = field(j, "edges");
  if (!edges.is_array()) throw ParseError("edges must be an array");
  Graph g(n);
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a pair");
    const std::size_t u = as_count(e[0], "edge endpoint"), v = as_count(e[1], "edge endpoint");
    if (u >= n || v >= n) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("loops are not allowed");
    g.add_edge(u, v);
  }
  return g;
}

Json to_json(const SymMatrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.size(); ++k) row.push_back(a(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

SymMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  const auto n = Eigen::Index(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = j[std::size_t(i)];
    if (!row.is_array() || Eigen::Index(row.size()) != n) throw ParseError("matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = as_double(row[std::size_t(k)], "matrix entry");
  }
  return SymMatrix::from_dense(m);
}

Json to_json(const SpectrumSpec& s) {
  Json items = Json::array();
  for (const auto& it : s.items)
    items.push_back({{"value", it.value ? Json(*it.value) : Json(nullptr)}, {"multiplicity", it.multiplicity}});
  return Json{{"items", std::move(items)}};
}

SpectrumSpec spectrum_from_json(const Json& j) {
  const Json& items = j.is_array() ? j : field(j, "items");
  if (!items.is_array()) throw ParseError("spectrum items must be an array");
  SpectrumSpec s;
  for (const auto& it : items) {
    SpectrumItem item;
    const Json& v = field(it, "value");
    if (!v.is_null()) item.value = as_double(v, "spectrum value");
    item.multiplicity = as_count(field(it, "multiplicity"), "multiplicity");
    s.items.push_back(item);
  }
  s.validate();
  return s;
}

Json to_json(const EigenReport& r) {
  Json clusters = Json::array();
  for (const auto& c : r.clusters)
    clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}, {"spread", c.spread}});
  return Json{{"eigenvalues", r.eigenvalues},
              {"clusters", std::move(clusters)},
              {"min_multiplicity", r.min_multiplicity},
              {"residual", r.residual}};
}

Json to_json(const PatternReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"i", x.i}, {"j", x.j}, {"value", x.value}, {"required", requirement_name(x.required)}});
  return Json{{"is_member", r.is_member}, {"zero_threshold", r.zero_threshold}, {"violations", std::move(v)}};
}

Json to_json(const Certificate& c) {
  return Json{{"graph", to_json(c.graph)},     {"matrix", to_json(c.matrix)}, {"target", to_json(c.target)},
              {"eigen", to_json(c.eigen)},     {"pattern", to_json(c.pattern)}, {"seed", c.seed},
              {"trace", c.trace}};
}

Certificate certificate_from_json(const Json& j) {
  Graph g = graph_from_json(field(j, "graph"));
  SymMatrix a = matrix_from_json(field(j, "matrix"));
  if (a.size() != g.order()) throw ValidationError("matrix size does not match the graph order");
  SpectrumSpec target = spectrum_from_json(field(j, "target"));
  const Seed seed = j.contains("seed") ? as_seed(j["seed"]) : kDefaultSeed;
  std::vector<std::string> trace;
  if (j.contains("trace")) trace = as<std::vector<std::string>>(j["trace"], "trace");
  return make_certificate(std::move(g), std::move(a), std::move(target), seed, std::move(trace));
}

Json to_json(const VerifyResult& v) {
  return Json{{"pass", v.pass}, {"diagnostics", v.diagnostics}, {"eigen", to_json(v.eigen)},
              {"pattern", to_json(v.pattern)}};
}

Json to_json(const BoundResult& b) {
  Json prov = Json::array();
  for (const auto& p : b.provenance) prov.push_back({{"rule", p.rule}, {"anchor", p.anchor}});
  return Json{{"lower", b.lower},
              {"upper", b.upper},
              {"exact", b.exact()},
              {"provenance", std::move(prov)},
              {"witness", b.witness ? to_json(*b.witness) : Json(nullptr)}};
}

Json to_json(const FamilyDescriptor& d) {
  return std::visit(
      overloaded{
          [](const family::Complete& f) { return Json{{"Complete", f.n}}; },
          [](const family::CompleteBipartite& f) { return Json{{"CompleteBipartite", {f.m, f.n}}}; },
          [](const family::Hypercube& f) { return Json{{"Hypercube", f.s}}; },
          [](const family::Path& f) { return Json{{"Path", f.n}}; },
          [](const family::ComplementForm& f) {
            Json pairs = Json::array();
            for (const auto& [p, q] : f.pairs) pairs.push_back({p, q});
            return Json{{"ComplementForm", {{"p0", f.p0}, {"pairs", std::move(pairs)}, {"r", f.r}}}};
          },
          [](const family::Corona& f) { return Json{{"Corona", to_json(*f.base)}}; },
          [](const family::ParallelPaths& f) { return Json{{"ParallelPaths", {{"n", f.n}, {"d", f.d}}}}; },
          [](const family::Custom& f) { return Json{{"Custom", to_json(f.graph)}}; },
      },
      d.kind);
}

FamilyDescriptor family_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) throw ParseError("family descriptor must be an object with one key");
  const std::string tag = j.begin().key();
  const Json& body = j.begin().value();
  // Single integers may be given bare or as a one-element array.
  auto scalar = [&](const char* what) {
    if (body.is_array()) {
      if (body.size() != 1) throw ParseError(tag + " takes one integer");
      return as_count(body[0], what);
    }
    return as_count(body, what);
  };
  FamilyDescriptor d;
  if (tag == "Complete") {
    d.kind = family::Complete{scalar("n")};
  } else if (tag == "CompleteBipartite") {
    if (body.is_array()) {
      if (body.size() != 2) throw ParseError("CompleteBipartite takes [m, n]");
      d.kind = family::CompleteBipartite{as_count(body[0], "m"), as_count(body[1], "n")};
    } else {
      d.kind = family::CompleteBipartite{as_count(field(body, "m"), "m"), as_count(field(body, "n"), "n")};
    }
  } else if (tag == "Hypercube") {
    d.kind = family::Hypercube{scalar("s")};
  } else if (tag == "Path") {
    d.kind = family::Path{scalar("n")};
  } else if (tag == "ComplementForm") {
    family::ComplementForm f;
    f.p0 = body.contains("p0") ? as_count(body["p0"], "p0") : 0;
    f.r = body.contains("r") ? as_count(body["r"], "r") : 0;
    const Json& pairs = field(body, "pairs");
    if (!pairs.is_array()) throw ParseError("pairs must be an array");
    for (const auto& pq : pairs) {
      if (!pq.is_array() || pq.size() != 2) throw ParseError("each pair must be [p, q]");
      f.pairs.emplace_back(as_count(pq[0], "p"), as_count(pq[1], "q"));
    }
    d.kind = std::move(f);
  } else if (tag == "Corona") {
    d.kind = family::Corona{std::make_shared<const FamilyDescriptor>(family_from_json(body))};
  } else if (tag == "ParallelPaths") {
    family::ParallelPaths f{as_count(field(body, "n"), "n"), {}};
    const Json& dv = field(body, "d");
    if (!dv.is_array()) throw ParseError("d must be an array");
    for (const auto& x : dv) f.d.push_back(as_double(x, "d entry"));
    d.kind = std::move(f);
  } else if (tag == "Custom") {
    d.kind = family::Custom{graph_from_json(body)};
  } else {
    throw ParseError("unknown family \"" + tag + "\"");
  }
  validate(d);
  return d;
}

Json to_json(const SearchConfig& c) {
  return Json{{"target_partition", c.target_partition ? Json(*c.target_partition) : Json(nullptr)},
              {"restarts", c.restarts},
              {"max_iterations", c.max_iterations},
              {"initial_step", c.initial_step},
              {"shrink", c.shrink},
              {"min_step", c.min_step},
              {"seed", c.seed},
              {"cluster_tol", c.cluster_tol}};
}

SearchConfig search_config_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("search config must be an object");
  SearchConfig c;
  if (j.contains("target_partition") && !j["target_partition"].is_null()) {
    std::vector<std::size_t> parts;
    const Json& tp = j["target_partition"];
    if (!tp.is_array()) throw ParseError("target_partition must be an array");
    for (const auto& p : tp) parts.push_back(as_count(p, "partition part"));
    c.target_partition = std::move(parts);
  }
  if (j.contains("restarts")) c.restarts = as_count(j["restarts"], "restarts");
  if (j.contains("max_iterations")) c.max_iterations = as_count(j["max_iterations"], "max_iterations");
  if (j.contains("initial_step")) c.initial_step = as_double(j["initial_step"], "initial_step");
  if (j.contains("shrink")) c.shrink = as_double(j["shrink"], "shrink");
  if (j.contains("min_step")) c.min_step = as_double(j["min_step"], "min_step");
  if (j.contains("seed")) c.seed = as_seed(j["seed"]);
  if (j.contains("cluster_tol")) c.cluster_tol = as_double(j["cluster_tol"], "cluster_tol");
  return c;
}

Json to_json(const SearchResult& r) {
  return Json{{"multiplicity", r.multiplicity}, {"objective", r.objective},      {"restart", r.restart},
              {"partition", r.partition},       {"warnings", r.warnings},        {"certificate", to_json(r.certificate)}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string matrix_to_csv(const SymMatrix& a) {
  std::ostringstream s;
  s << std::setprecision(17);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < a.size(); ++k) s << (k ? "," : "") << a(i, k);
    s << "\n";
  }
  return s.str();
}

}  // namespace mmforge
