// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <limits>
#include <unordered_map>

#include <fmt/format.h>

#include "botlens/parallel.hpp"
#include "botlens/rtnet.hpp"

namespace botlens {
namespace {

constexpr std::string_view kModule = "rtnet";
// Sources per accumulation block. Fixed, so the floating-point reduction order
// is the same for every thread count.
constexpr std::size_t kSourcesPerBlock = 32;

struct Csr {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> targets;
};

Csr adjacency(const RetweetGraph& graph, const std::unordered_map<AccountId, std::size_t>& index,
              bool directed) {
  const std::size_t n = graph.node_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [pair, m] : graph.simple_view()) {
    std::size_t u = index.at(pair.first);
    std::size_t v = index.at(pair.second);
    if (u == v) continue;  // self-loops never lie on shortest paths
    adj[u].push_back(v);
    if (!directed) adj[v].push_back(u);
  }
  Csr csr;
  csr.offsets.reserve(n + 1);
  csr.offsets.push_back(0);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    csr.targets.insert(csr.targets.end(), list.begin(), list.end());
    csr.offsets.push_back(csr.targets.size());
  }
  return csr;
}

// Brandes single-source accumulation; adds dependencies of `source` to `acc`.
struct SourceWorkspace {
  explicit SourceWorkspace(std::size_t n)
      : dist(n), sigma(n), delta(n), order(), preds(n) { order.reserve(n); }

  std::vector<std::size_t> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<std::size_t> order;
  std::vector<std::vector<std::size_t>> preds;

  void accumulate(const Csr& g, std::size_t source, std::vector<double>& acc) {
    constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
    std::fill(dist.begin(), dist.end(), kUnseen);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    order.clear();

    dist[source] = 0;
    sigma[source] = 1.0;
    order.push_back(source);
    for (std::size_t head = 0; head < order.size(); ++head) {
      std::size_t v = order[head];
      for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
        std::size_t w = g.targets[e];
        if (dist[w] == kUnseen) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      std::size_t w = order[i];
      for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != source) acc[w] += delta[w];
    }
  }
};

}  // namespace

CentralityTable betweenness(const RetweetGraph& graph, const BetweennessOptions& options) {
  const std::size_t n = graph.node_count();
  if (options.normalized && n < 3) {
    throw Error(ErrorKind::Domain, kModule,
                fmt::format("normalized betweenness needs at least 3 nodes, got {}", n));
  }
  std::vector<AccountId> ids;
  std::unordered_map<AccountId, std::size_t> index;
  ids.reserve(n);
  for (const auto& [id, label] : graph.nodes()) {
    index.emplace(id, ids.size());
    ids.push_back(id);
  }
  const Csr g = adjacency(graph, index, options.directed);

  const std::size_t blocks = (n + kSourcesPerBlock - 1) / kSourcesPerBlock;
  std::vector<std::vector<double>> partial(blocks);
  parallel_for(blocks, options.threads, [&](std::size_t b) {
    std::vector<double> acc(n, 0.0);
    SourceWorkspace ws(n);
    const std::size_t end = std::min(n, (b + 1) * kSourcesPerBlock);
    for (std::size_t s = b * kSourcesPerBlock; s < end; ++s) ws.accumulate(g, s, acc);
    partial[b] = std::move(acc);
  });

  std::vector<double> total(n, 0.0);
  for (const auto& acc : partial) {
    for (std::size_t v = 0; v < n; ++v) total[v] += acc[v];
  }

  // Undirected traversal visits every unordered pair twice, so the raw value is
  // halved; the undirected normalizer 2/((n-1)(n-2)) then cancels that factor.
  double scale = options.directed ? 1.0 : 0.5;
  if (options.normalized) {
    scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
  }

  CentralityTable table;
  table.rows.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    table.rows.push_back({ids[v], total[v] * scale, graph.label(ids[v])});
  }
  table.sort();
  return table;
}

}  // namespace botlens
