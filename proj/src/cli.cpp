#include "mmforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mmforge/bounds.hpp"
#include "mmforge/constructors.hpp"
#include "mmforge/error.hpp"
#include "mmforge/searcher.hpp"
#include "mmforge/serialize.hpp"

namespace mmforge {

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + path);
  f << text;
}

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
Json json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json(arg);
  return parse_json(read_text(arg));
}

Seed parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const Seed s = std::stoull(text, &used, 0);
    if (used == text.size()) return s;
  } catch (const std::exception&) {
  }
  throw ParseError("seed is not an integer: " + text);
}

struct Common {
  std::string seed;
  std::string out;
  std::string csv;
  double tol_cluster = kClusterTol;
  double tol_verify = kVerifyValueTol;

  Seed resolve_seed(std::optional<Seed> fallback = std::nullopt) const {
    if (!seed.empty()) return parse_seed(seed);
    if (fallback) return *fallback;
    if (const char* env = std::getenv("MMFORGE_SEED"); env && *env) return parse_seed(env);
    return kDefaultSeed;
  }
};

void add_common(CLI::App* app, Common& c, bool tolerances) {
  app->add_option("--seed", c.seed, "64-bit seed, decimal or 0x-hex (default 0x5EED or $MMFORGE_SEED)");
  app->add_option("--out", c.out, "output path (default stdout)");
  if (tolerances) {
    app->add_option("--tol-cluster", c.tol_cluster, "relative eigenvalue clustering tolerance")
        ->check(CLI::PositiveNumber);
    app->add_option("--tol-verify", c.tol_verify, "tolerance on target values and residuals")
        ->check(CLI::PositiveNumber);
  }
}

Graph read_graph(const std::string& path, const std::string& format) {
  const std::string text = read_text(path);
  if (format == "g6") {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty()) return parse_graph6(line);
    }
    throw ParseError("empty graph6 input");
  }
  if (format == "json") return graph_from_json(parse_json(text));
  return parse_edge_list(text);
}

/// Moves a two-cluster matrix onto the target's two values.
SymMatrix affine_to(const SymMatrix& a, double c0, double c1, double v0, double v1) {
  const double k = (v1 - v0) / (c1 - c0);
  return (a.shifted(-c0) * k).shifted(v0);
}

std::vector<std::size_t> sorted_multiplicities(const SpectrumSpec& t) {
  std::vector<SpectrumItem> items = t.items;
  std::stable_sort(items.begin(), items.end(), [](const SpectrumItem& x, const SpectrumItem& y) {
    return x.value.value_or(0.0) < y.value.value_or(0.0);
  });
  std::vector<std::size_t> out;
  for (const auto& it : items) out.push_back(it.multiplicity);
  return out;
}

bool all_free(const SpectrumSpec& t) {
  return std::none_of(t.items.begin(), t.items.end(), [](const SpectrumItem& i) { return i.value.has_value(); });
}

bool all_valued(const SpectrumSpec& t) {
  return std::all_of(t.items.begin(), t.items.end(), [](const SpectrumItem& i) { return i.value.has_value(); });
}

/// The two target values in increasing order; free targets map to (0, 1).
std::pair<double, double> two_values(const SpectrumSpec& t) {
  if (all_free(t)) return {0.0, 1.0};
  if (!all_valued(t)) throw ValidationError("a two-value target must give both values or neither");
  return std::minmax(*t.items[0].value, *t.items[1].value);
}

/// Multiplicities of the lower and upper target value.
std::pair<std::size_t, std::size_t> two_multiplicities(const SpectrumSpec& t) {
  if (all_free(t)) return {t.items[0].multiplicity, t.items[1].multiplicity};
  const auto m = sorted_multiplicities(t);
  return {m[0], m[1]};
}

Certificate bipartite_for_target(const family::CompleteBipartite& f, const SpectrumSpec& target, Seed seed) {
  const std::size_t a = std::min(f.m, f.n), b = std::max(f.m, f.n);
  if (!all_valued(target)) throw ValidationError("complete bipartite targets need explicit values");
  std::vector<double> lambdas;
  std::size_t zeros = 0;
  for (const auto& it : target.items) {
    if (std::abs(*it.value) <= kVerifyValueTol) {
      zeros += it.multiplicity;
    } else if (*it.value > 0.0) {
      lambdas.insert(lambdas.end(), it.multiplicity, *it.value);
    }
  }
  if (zeros < b - a || (zeros - (b - a)) % 2 != 0)
    throw ValidationError("complete bipartite targets need n - m plus an even number of zeros");
  lambdas.insert(lambdas.end(), (zeros - (b - a)) / 2, 0.0);
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  if (lambdas.size() != a) throw ValidationError("target does not describe a spectrum symmetric under negation");
  Certificate c = bipartite_matrix(a, b, lambdas, seed);
  if (f.m <= f.n) return c;
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < f.m; ++i) perm.push_back(f.n + i);
  for (std::size_t i = 0; i < f.n; ++i) perm.push_back(i);
  auto trace = c.trace;
  trace.push_back("swap_sides");
  return make_certificate(complete_bipartite_graph(f.m, f.n), c.matrix.permuted(perm), c.target, seed, trace);
}

Certificate construct_for_target(const FamilyDescriptor& desc, const SpectrumSpec& target, Seed seed) {
  target.validate();
  const Graph g = family_graph(desc);
  if (target.dimension() != g.order()) throw ValidationError("target dimension differs from the graph order");
  if (std::holds_alternative<family::Complete>(desc.kind)) return complete_graph_matrix(target, std::nullopt, seed);
  if (const auto* f = std::get_if<family::CompleteBipartite>(&desc.kind)) return bipartite_for_target(*f, target, seed);
  if (const auto* f = std::get_if<family::ComplementForm>(&desc.kind);
      f && target.items.size() == 2 && !(f->p0 == 1 && f->pairs.size() == 1) && g.order() >= 4) {
    const auto [m0, m1] = two_multiplicities(target);
    if (m0 < 2 || m1 < 2) throw ValidationError("two-value targets on these graphs need both multiplicities >= 2");
    const Certificate c = mr_plus_two_matrix(*f, m0 - 2, m1 - 2, seed);
    const auto [v0, v1] = two_values(target);
    return make_certificate(c.graph, affine_to(c.matrix, 0.0, 1.0, v0, v1), target, seed, c.trace);
  }
  // Anything else: reuse the catalogued witness when its cluster sizes fit.
  const BoundResult known = known_mm(desc, seed);
  if (!known.witness) throw ValidationError("no construction is available for " + describe(desc));
  const Certificate& w = *known.witness;
  std::vector<std::size_t> have;
  for (const auto& c : w.eigen.clusters) have.push_back(c.multiplicity);
  if (all_free(target)) {
    auto want = target.multiplicities(), got = have;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want == got) return make_certificate(w.graph, w.matrix, target, seed, w.trace);
  } else if (target.items.size() == 2 && have.size() == 2 && sorted_multiplicities(target) == have) {
    const auto [v0, v1] = two_values(target);
    return make_certificate(w.graph, affine_to(w.matrix, w.eigen.clusters[0].value, w.eigen.clusters[1].value, v0, v1),
                            target, seed, w.trace);
  }
  throw ValidationError("no construction for this target on " + describe(desc) + "; try --target auto");
}

FamilyDescriptor read_family(const std::string& arg) { return family_from_json(json_argument(arg)); }

std::vector<FamilyDescriptor> catalog_entries() {
  std::vector<FamilyDescriptor> out;
  for (std::size_t n = 1; n <= 8; ++n) out.push_back({family::Complete{n}});
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::size_t n = m; m + n <= 10; ++n) out.push_back({family::CompleteBipartite{m, n}});
  for (std::size_t s = 1; s <= 4; ++s) out.push_back({family::Hypercube{s}});
  for (std::size_t n = 2; n <= 6; ++n) out.push_back({family::Path{n}});
  out.push_back({family::ComplementForm{2, {{1, 1}}, 0}});
  out.push_back({family::ComplementForm{0, {{1, 1}, {1, 2}}, 1}});
  out.push_back({family::ComplementForm{3, {{2, 2}}, 2}});
  out.push_back({family::ComplementForm{1, {{1, 2}}, 0}});
  out.push_back({family::ComplementForm{1, {{2, 3}}, 2}});
  out.push_back({family::ParallelPaths{3, {1.0, 0.0, -1.0}}});
  out.push_back({family::ParallelPaths{4, {0.5, 2.0, -2.0, -0.5}}});
  return out;
}

std::string anchors(const BoundResult& b) {
  std::string s;
  for (const auto& p : b.provenance) s += (s.empty() ? "" : "; ") + p.rule + ": " + p.anchor;
  return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Witnesses and bounds for the maximal minimal eigenvalue multiplicity of a graph", "mmforge"};
  app.require_subcommand(1);

  Common construct_opts, verify_opts, bound_opts, search_opts, catalog_opts;
  std::string family_arg, target_arg = "auto", graph_path, format = "edges", config_path, cert_path;

  auto* construct = app.add_subcommand("construct", "build a witness certificate for a graph family");
  construct->add_option("--family", family_arg, "family descriptor JSON (inline or file)")->required();
  construct->add_option("--target", target_arg, "target spectrum JSON (inline or file) or 'auto'");
  construct->add_option("--csv", construct_opts.csv, "also write the matrix as CSV");
  add_common(construct, construct_opts, true);

  auto* verify = app.add_subcommand("verify", "re-verify a certificate");
  verify->add_option("certificate", cert_path, "certificate JSON file")->required();
  add_common(verify, verify_opts, true);

  auto* bound = app.add_subcommand("bound", "bounds on Mm for a graph or a family");
  auto* bound_graph = bound->add_option("--graph", graph_path, "graph file");
  auto* bound_family = bound->add_option("--family", family_arg, "family descriptor JSON (inline or file)");
  bound_graph->excludes(bound_family);
  bound->add_option("--format", format, "graph format: edges, g6 or json")->check(CLI::IsMember({"edges", "g6", "json"}));
  add_common(bound, bound_opts, false);

  auto* search = app.add_subcommand("search", "numerical search for a high minimal multiplicity");
  search->add_option("--graph", graph_path, "graph file")->required();
  search->add_option("--format", format, "graph format: edges, g6 or json")->check(CLI::IsMember({"edges", "g6", "json"}));
  search->add_option("--config", config_path, "SearchConfig JSON (inline or file)");
  search->add_option("--csv", search_opts.csv, "also write the matrix as CSV");
  add_common(search, search_opts, true);

  auto* catalog = app.add_subcommand("catalog", "table of known exact values with witnesses");
  add_common(catalog, catalog_opts, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadInput;
  }

  try {
    if (construct->parsed()) {
      const Seed seed = construct_opts.resolve_seed();
      const FamilyDescriptor desc = read_family(family_arg);
      Certificate cert;
      if (target_arg == "auto") {
        const BoundResult known = known_mm(desc, seed);
        if (!known.witness) throw ValidationError("no witness is available for " + describe(desc));
        cert = *known.witness;
      } else {
        cert = construct_for_target(desc, spectrum_from_json(json_argument(target_arg)), seed);
      }
      cert = make_certificate(cert.graph, cert.matrix, cert.target, cert.seed, cert.trace, construct_opts.tol_cluster);
      write_text(construct_opts.out, dump(to_json(cert)), out);
      if (!construct_opts.csv.empty()) write_text(construct_opts.csv, matrix_to_csv(cert.matrix), out);
      const VerifyResult v = verify_certificate(cert, {construct_opts.tol_cluster, construct_opts.tol_verify});
      for (const auto& d : v.diagnostics) err << "verify: " << d << "\n";
      return v.pass ? kExitOk : kExitVerifyFailed;
    }
    if (verify->parsed()) {
      const Certificate cert = certificate_from_json(parse_json(read_text(cert_path)));
      const VerifyResult v = verify_certificate(cert, {verify_opts.tol_cluster, verify_opts.tol_verify});
      write_text(verify_opts.out, dump(to_json(v)), out);
      for (const auto& d : v.diagnostics) err << "verify: " << d << "\n";
      return v.pass ? kExitOk : kExitVerifyFailed;
    }
    if (bound->parsed()) {
      BoundResult b;
      if (!family_arg.empty()) {
        b = known_mm(read_family(family_arg), bound_opts.resolve_seed());
      } else if (!graph_path.empty()) {
        b = graph_bounds(read_graph(graph_path, format));
      } else {
        throw ValidationError("bound needs --graph or --family");
      }
      write_text(bound_opts.out, dump(to_json(b)), out);
      return kExitOk;
    }
    if (search->parsed()) {
      const Graph g = read_graph(graph_path, format);
      std::optional<Seed> config_seed;
      SearchConfig cfg;
      if (!config_path.empty()) {
        const Json j = json_argument(config_path);
        cfg = search_config_from_json(j);
        if (j.contains("seed")) config_seed = cfg.seed;
      }
      cfg.seed = search_opts.resolve_seed(config_seed);
      cfg.cluster_tol = search_opts.tol_cluster;
      const SearchResult r = search_mm(g, cfg);
      for (const auto& w : r.warnings) err << "warning: " << w << "\n";
      write_text(search_opts.out, dump(to_json(r)), out);
      if (!search_opts.csv.empty()) write_text(search_opts.csv, matrix_to_csv(r.certificate.matrix), out);
      const VerifyResult v = verify_certificate(r.certificate, {search_opts.tol_cluster, search_opts.tol_verify});
      for (const auto& d : v.diagnostics) err << "verify: " << d << "\n";
      return v.pass ? kExitOk : kExitVerifyFailed;
    }
    if (catalog->parsed()) {
      const Seed seed = catalog_opts.resolve_seed();
      Json rows = Json::array();
      for (const auto& desc : catalog_entries()) {
        const BoundResult b = known_mm(desc, seed);
        const bool verified = b.witness && verify_certificate(*b.witness).pass;
        rows.push_back({{"family", to_json(desc)},
                        {"graph", describe(desc)},
                        {"order", family_graph(desc).order()},
                        {"mm", b.exact() ? Json(b.lower) : Json(nullptr)},
                        {"lower", b.lower},
                        {"upper", b.upper},
                        {"witness_verified", verified},
                        {"anchor", anchors(b)}});
      }
      write_text(catalog_opts.out, dump(rows), out);
      return kExitOk;
    }
  } catch (const GenericPositionError& e) {
    err << "error: " << e.what() << "\nseed trail:";
    for (Seed s : e.seed_trail()) err << " 0x" << std::hex << s << std::dec;
    err << "\n";
    return kExitGenericPosition;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitBadInput;
}

}  // namespace mmforge
