#include "wbc/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

namespace wbc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent deterministic stream `id` derived from one user seed, so
// topology and weights are separately reproducible.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t id) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(id)));
}

constexpr std::uint64_t kStreamTopology = 1;
constexpr std::uint64_t kStreamWeights = 2;
constexpr std::uint64_t kStreamSources = 3;

// Pair rank of (u, v) with u < v, ordered by u then v.
std::uint64_t pair_base(std::uint64_t u, std::uint64_t n) {
  return u * n - u * (u + 1) / 2;
}

void unrank_pair(std::uint64_t r, std::uint64_t n, RawId& u, RawId& v) {
  // Largest u with pair_base(u) <= r.
  std::uint64_t lo = 0, hi = n - 1;
  while (lo < hi) {
    const std::uint64_t mid = (lo + hi + 1) / 2;
    if (pair_base(mid, n) <= r)
      lo = mid;
    else
      hi = mid - 1;
  }
  u = lo;
  v = lo + 1 + (r - pair_base(lo, n));
}

}  // namespace

EdgeList gen_er(std::uint64_t n, double avg_degree, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_er: n must be >= 1");
  if (avg_degree < 0) throw std::invalid_argument("gen_er: avg_degree must be >= 0");
  const std::uint64_t max_pairs = n * (n - 1) / 2;
  const std::uint64_t m = static_cast<std::uint64_t>(std::llround(n * avg_degree / 2.0));
  if (m > max_pairs)
    throw std::invalid_argument("gen_er: requested " + std::to_string(m) + " edges but only " +
                                std::to_string(max_pairs) + " pairs exist");
  auto rng = make_stream(seed, kStreamTopology);
  // Floyd's uniform m-subset of the pair-rank space.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  EdgeList out;
  out.entries.reserve(m);
  for (std::uint64_t j = max_pairs - m; j < max_pairs; ++j) {
    std::uniform_int_distribution<std::uint64_t> dist(0, j);
    std::uint64_t pick = dist(rng);
    if (!chosen.insert(pick).second) {
      pick = j;
      chosen.insert(pick);
    }
    RawId u, v;
    unrank_pair(pick, n, u, v);
    out.entries.push_back({u, v, 1.0});
  }
  return out;
}

EdgeList gen_kronecker(int scale, double avg_degree, std::uint64_t seed,
                       const KroneckerInitiator& init) {
  if (scale < 1) throw std::invalid_argument("gen_kronecker: scale must be >= 1");
  for (const double p : {init.a, init.b, init.c, init.d})
    if (!(p >= 0.0) || !(p <= 1.0))
      throw std::invalid_argument("gen_kronecker: initiator entries must lie in [0, 1]");
  const double total = init.a + init.b + init.c + init.d;
  if (!(total > 0.0)) throw std::invalid_argument("gen_kronecker: initiator sums to zero");
  const double ca = init.a / total;
  const double cab = (init.a + init.b) / total;
  const double cabc = (init.a + init.b + init.c) / total;

  const std::uint64_t n = 1ULL << scale;
  const std::uint64_t m = static_cast<std::uint64_t>(std::llround(n * avg_degree / 2.0));
  auto rng = make_stream(seed, kStreamTopology);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  EdgeList out;
  out.entries.reserve(m);
  // Resample collisions until the cap; the achieved count may fall short.
  const std::uint64_t max_attempts = 64 * m + 4096;
  std::uint64_t attempts = 0;
  while (out.entries.size() < m && attempts < max_attempts) {
    ++attempts;
    std::uint64_t u = 0, v = 0;
    for (int level = 0; level < scale; ++level) {
      const double p = unit(rng);
      const int row = p < cab ? 0 : 1;
      const int col = p < ca ? 0 : (p < cab ? 1 : (p < cabc ? 0 : 1));
      u = (u << 1) | static_cast<std::uint64_t>(row);
      v = (v << 1) | static_cast<std::uint64_t>(col);
    }
    if (u == v) continue;
    const auto [a, b] = std::minmax(u, v);
    if (!chosen.insert(a * n + b).second) continue;
    out.entries.push_back({a, b, 1.0});
  }
  return out;
}

EdgeList assign_weights(EdgeList edges, int lo, int hi, std::uint64_t seed) {
  if (lo < 1 || hi < lo)
    throw std::invalid_argument("assign_weights: need 1 <= lo <= hi");
  auto rng = make_stream(seed, kStreamWeights);
  std::uniform_int_distribution<int> dist(lo, hi);
  for (WeightedEdge& e : edges.entries) e.w = static_cast<double>(dist(rng));
  return edges;
}

std::vector<NodeId> sample_sources(NodeId n, NodeId k, std::uint64_t seed) {
  if (k > n) k = n;
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  auto rng = make_stream(seed, kStreamSources);
  for (NodeId i = 0; i < k; ++i) {
    std::uniform_int_distribution<NodeId> dist(i, n - 1);
    std::swap(ids[i], ids[dist(rng)]);
  }
  ids.resize(k);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace wbc
