#include "xorsat/hamiltonian.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "text_util.hpp"
#include "xorsat/errors.hpp"
#include "xorsat/reduction.hpp"
#include "xorsat/solvers.hpp"

namespace xorsat {

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> deg(n_nodes, 0);
  for (const auto& [u, v] : edges) {
    ++deg.at(u);
    ++deg.at(v);
  }
  return deg;
}

std::vector<std::vector<std::size_t>> Graph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(n_nodes);
  for (const auto& [u, v] : edges) {
    adj.at(u).push_back(v);
    adj.at(v).push_back(u);
  }
  return adj;
}

std::size_t Graph::max_degree() const {
  const auto deg = degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

void Graph::validate() const {
  std::set<Edge> seen;
  for (const auto& [u, v] : edges) {
    if (u >= n_nodes || v >= n_nodes) {
      throw std::invalid_argument("graph: endpoint out of range");
    }
    if (u == v) {
      throw std::invalid_argument("graph: self-loop");
    }
    if (!seen.insert(std::minmax(u, v)).second) {
      throw std::invalid_argument("graph: duplicate edge");
    }
  }
}

Graph parse_graph(std::string_view text) {
  using detail::parse_int;
  Graph g;
  bool have_header = false;
  std::size_t declared_edges = 0;
  std::size_t last_line = 0;
  std::set<Graph::Edge> seen;

  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    last_line = line_no;
    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens.front().front() == 'c') {
      return;
    }
    if (tokens.front() == "p") {
      if (have_header || tokens.size() != 4 || tokens[1] != "edge" ||
          !parse_int(tokens[2], g.n_nodes) || !parse_int(tokens[3], declared_edges)) {
        throw ParseError(ParseErrorKind::kMalformedHeader, line_no,
                         "expected a single 'p edge <n_nodes> <n_edges>'");
      }
      have_header = true;
      return;
    }
    if (!have_header) {
      throw ParseError(ParseErrorKind::kMalformedHeader, line_no, "edge before header");
    }
    std::size_t u = 0;
    std::size_t v = 0;
    if (tokens.size() != 3 || tokens[0] != "e" || !parse_int(tokens[1], u) ||
        !parse_int(tokens[2], v)) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected 'e <u> <v>'");
    }
    if (u == 0 || v == 0 || u > g.n_nodes || v > g.n_nodes) {
      throw ParseError(ParseErrorKind::kNodeOutOfRange, line_no,
                       "nodes are 1-based and at most " + std::to_string(g.n_nodes));
    }
    if (u == v) {
      throw ParseError(ParseErrorKind::kInvalidEdge, line_no, "self-loop");
    }
    if (!seen.insert(std::minmax(u - 1, v - 1)).second) {
      throw ParseError(ParseErrorKind::kInvalidEdge, line_no, "duplicate edge");
    }
    g.edges.emplace_back(u - 1, v - 1);
  });

  if (!have_header) {
    throw ParseError(ParseErrorKind::kMalformedHeader, last_line, "missing 'p edge' header");
  }
  if (g.edges.size() != declared_edges) {
    throw ParseError(ParseErrorKind::kCountMismatch, last_line,
                     "header declares " + std::to_string(declared_edges) + " edges, found " +
                         std::to_string(g.edges.size()));
  }
  return g;
}

std::string emit_graph(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.n_nodes << ' ' << g.edges.size() << '\n';
  for (const auto& [u, v] : g.edges) {
    out << "e " << u + 1 << ' ' << v + 1 << '\n';
  }
  return out.str();
}

std::size_t connected_components(const Graph& g) {
  std::vector<std::size_t> parent(g.n_nodes);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t components = g.n_nodes;
  for (const auto& [u, v] : g.edges) {
    const std::size_t ru = find(u);
    const std::size_t rv = find(v);
    if (ru != rv) {
      parent[ru] = rv;
      --components;
    }
  }
  return components;
}

Instance hc_to_occupation(const Graph& g) {
  Instance inst;
  inst.n = g.edges.size();
  inst.clauses.assign(g.n_nodes, Clause{{}, 2});
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    inst.clauses.at(g.edges[e].first).literals.push_back({e, false});
    inst.clauses.at(g.edges[e].second).literals.push_back({e, false});
  }
  return inst;
}

std::size_t hc_rank_check(const Graph& g) {
  BinMatrix incidence(g.n_nodes, g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    incidence.set(g.edges[e].first, e);
    incidence.set(g.edges[e].second, e);
  }
  return rank(incidence);
}

bool is_hamiltonian_cycle(const Graph& g, const EdgeAssignment& e) {
  if (e.size() != g.edges.size()) {
    throw std::invalid_argument("is_hamiltonian_cycle: edge assignment length mismatch");
  }
  if (g.n_nodes < 3) {
    return false;
  }
  std::vector<std::vector<std::size_t>> selected(g.n_nodes);
  for (std::size_t i = e.find_first(); i < e.size(); i = e.find_next(i + 1)) {
    selected[g.edges[i].first].push_back(g.edges[i].second);
    selected[g.edges[i].second].push_back(g.edges[i].first);
  }
  if (std::any_of(selected.begin(), selected.end(),
                  [](const auto& nbrs) { return nbrs.size() != 2; })) {
    return false;
  }
  // Every node has selected degree 2, so walking from node 0 traces its cycle.
  std::size_t prev = 0;
  std::size_t cur = selected[0][0];
  std::size_t length = 1;
  while (cur != 0) {
    const std::size_t next = selected[cur][0] == prev ? selected[cur][1] : selected[cur][0];
    prev = cur;
    cur = next;
    ++length;
  }
  return length == g.n_nodes;
}

std::optional<EdgeAssignment> solve_hc(const Graph& g) {
  const Instance inst = hc_to_occupation(g);
  const ReduceResult rr = reduce(inst);
  const auto* r = std::get_if<Reduction>(&rr);
  if (r == nullptr) {
    return std::nullopt;
  }
  if (r->k() > kEnumerateMaxK) {
    throw GuardExceeded("reduced dimension k", r->k(), kEnumerateMaxK);
  }
  AffineWalker walker(*r);
  do {
    const auto& x = walker.current();
    if (eval_instance(inst, x) && is_hamiltonian_cycle(g, x)) {
      return x;
    }
  } while (walker.next());
  return std::nullopt;
}

double hc_cost_exponent(const Graph& g) {
  const std::size_t k = g.edges.size() - hc_rank_check(g);
  return static_cast<double>(k) / 2.0;
}

namespace {

std::uint64_t count_closing_paths(const std::vector<std::vector<std::size_t>>& adj,
                                  std::vector<bool>& on_path, std::size_t node,
                                  std::size_t length) {
  if (length == adj.size()) {
    return std::find(adj[node].begin(), adj[node].end(), 0) != adj[node].end() ? 1 : 0;
  }
  std::uint64_t total = 0;
  for (std::size_t next : adj[node]) {
    if (!on_path[next]) {
      on_path[next] = true;
      total += count_closing_paths(adj, on_path, next, length + 1);
      on_path[next] = false;
    }
  }
  return total;
}

}  // namespace

std::uint64_t brute_force_hc(const Graph& g) {
  if (g.n_nodes > kBruteForceMaxNodes) {
    throw GuardExceeded("brute-force nodes", g.n_nodes, kBruteForceMaxNodes);
  }
  if (g.n_nodes < 3) {
    return 0;
  }
  const auto adj = g.adjacency();
  std::vector<bool> on_path(g.n_nodes, false);
  on_path[0] = true;
  // Each undirected cycle is traced once in each direction from node 0.
  return count_closing_paths(adj, on_path, 0, 1) / 2;
}

Graph complete_graph(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      g.edges.emplace_back(u, v);
    }
  }
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t u = 0; u < n; ++u) {
    g.edges.emplace_back(u, (u + 1) % n);
  }
  return g;
}

Graph petersen_graph() {
  Graph g{10, {}};
  for (std::size_t i = 0; i < 5; ++i) {
    g.edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    g.edges.emplace_back(i, i + 5);                // spokes
    g.edges.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return g;
}

namespace {

constexpr std::size_t kMaxGraphAttempts = 100000;

bool is_simple(const std::vector<Graph::Edge>& edges) {
  std::set<Graph::Edge> seen;
  for (const auto& [u, v] : edges) {
    if (u == v || !seen.insert(std::minmax(u, v)).second) {
      return false;
    }
  }
  return true;
}

}  // namespace

Graph random_cubic_graph(std::size_t n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("random_cubic_graph: n must be even and at least 4");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> points(3 * n);
  for (std::size_t attempt = 0; attempt < kMaxGraphAttempts; ++attempt) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      points[i] = i / 3;
    }
    std::shuffle(points.begin(), points.end(), rng);
    Graph g{n, {}};
    for (std::size_t i = 0; i < points.size(); i += 2) {
      g.edges.emplace_back(points[i], points[i + 1]);
    }
    if (is_simple(g.edges) && connected_components(g) == 1) {
      return g;
    }
  }
  throw GenerationFailure("random_cubic_graph: no simple connected pairing found");
}

Graph random_bipartite_cubic_graph(std::size_t n, std::uint64_t seed) {
  if (n < 6 || n % 2 != 0) {
    throw std::invalid_argument("random_bipartite_cubic_graph: n must be even and at least 6");
  }
  const std::size_t side = n / 2;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> match(side);
  for (std::size_t attempt = 0; attempt < kMaxGraphAttempts; ++attempt) {
    Graph g{n, {}};
    for (int layer = 0; layer < 3; ++layer) {
      std::iota(match.begin(), match.end(), std::size_t{0});
      std::shuffle(match.begin(), match.end(), rng);
      for (std::size_t i = 0; i < side; ++i) {
        g.edges.emplace_back(i, side + match[i]);
      }
    }
    if (is_simple(g.edges) && connected_components(g) == 1) {
      return g;
    }
  }
  throw GenerationFailure("random_bipartite_cubic_graph: no simple connected union found");
}

Graph random_connected_graph(std::size_t n, double edge_prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(edge_prob);
  for (std::size_t attempt = 0; attempt < kMaxGraphAttempts; ++attempt) {
    Graph g{n, {}};
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (coin(rng)) {
          g.edges.emplace_back(u, v);
        }
      }
    }
    if (connected_components(g) <= 1) {
      return g;
    }
  }
  throw GenerationFailure("random_connected_graph: edge probability too low for connectivity");
}

}  // namespace xorsat
