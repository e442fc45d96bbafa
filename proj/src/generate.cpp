#include "map2ec/generate.hpp"

#include <algorithm>
#include <cmath>

#include "map2ec/rng.hpp"

namespace map2ec {

std::optional<GenModel> gen_model_from_string(const std::string& name) {
  if (name == "random") return GenModel::Random;
  if (name == "small-heavy") return GenModel::SmallHeavy;
  return std::nullopt;
}

const char* gen_model_name(GenModel m) {
  return m == GenModel::Random ? "random" : "small-heavy";
}

namespace {

MapInstance generate_random(int n, double density, Rng& rng) {
  // base: a Hamiltonian ring over a random permutation (2-edge-connected by
  // construction), then extra edges, then a random zero matching
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    rng.shuffle(perm);
    std::vector<std::array<int, 3>> tr;
    std::vector<std::pair<int, int>> present;
    auto add = [&](int u, int v) {
      if (u == v) return false;
      if (u > v) std::swap(u, v);
      if (std::find(present.begin(), present.end(), std::make_pair(u, v)) != present.end())
        return false;
      present.emplace_back(u, v);
      tr.push_back({u, v, 1});
      return true;
    };
    for (int i = 0; i < n; ++i)
      add(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>((i + 1) % n)]);
    long long max_extra = static_cast<long long>(n) * (n - 1) / 2 - n;
    long long extra =
        std::min<long long>(max_extra, std::llround(density * static_cast<double>(n)));
    int guard = 0;
    while (extra > 0 && guard++ < 100 * n) {
      if (add(rng.uniform(1, n), rng.uniform(1, n))) --extra;
    }
    std::vector<std::size_t> idx(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) idx[i] = i;
    rng.shuffle(idx);
    VertexSet matched;
    int want = rng.uniform(0, n / 2);
    for (std::size_t i : idx) {
      if (want == 0) break;
      auto& t = tr[i];
      if (set_contains(matched, t[0]) || set_contains(matched, t[1])) continue;
      t[2] = 0;
      set_add(matched, t[0]);
      set_add(matched, t[1]);
      --want;
    }
    try {
      return validate_map_instance(Graph::from_triples(n, tr));
    } catch (const MapError&) {
      continue;  // rejection sampling
    }
  }
  fail(Err::GenerationFailed, "random model exhausted its retry budget");
}

MapInstance generate_small_heavy(int n, double density, Rng& rng) {
  require(n >= 8, Err::GenerationFailed, "small-heavy needs at least 8 vertices");
  int k = n / 4;
  int rem = n % 4;
  std::vector<std::array<int, 3>> tr;
  std::vector<std::vector<int>> cycles;
  int next = 1;
  for (int c = 0; c < k; ++c) {
    int len = 4 + (c == k - 1 ? rem : 0);
    std::vector<int> cyc;
    for (int i = 0; i < len; ++i) cyc.push_back(next++);
    // alternate zeros and units around the cycle; odd tails stay unit
    for (int i = 0; i < len; ++i) {
      int u = cyc[static_cast<std::size_t>(i)];
      int v = cyc[static_cast<std::size_t>((i + 1) % len)];
      int w = (i % 2 == 0 && i + 1 < len) ? 0 : 1;
      tr.push_back({u, v, w});
    }
    cycles.push_back(std::move(cyc));
  }
  // ring of components: a single unit edge to the next component
  auto pick = [&](const std::vector<int>& cyc) {
    return cyc[static_cast<std::size_t>(rng.below(cyc.size()))];
  };
  for (int c = 0; c < k; ++c) {
    int u = pick(cycles[static_cast<std::size_t>(c)]);
    int v = pick(cycles[static_cast<std::size_t>((c + 1) % k)]);
    tr.push_back({u, v, 1});
  }
  // sparse extra wiring
  long long extra = std::llround(density * static_cast<double>(k));
  std::vector<std::pair<int, int>> present;
  for (const auto& t : tr) present.emplace_back(std::min(t[0], t[1]), std::max(t[0], t[1]));
  int guard = 0;
  while (extra > 0 && guard++ < 100 * n) {
    int a = rng.uniform(0, k - 1), b = rng.uniform(0, k - 1);
    if (a == b) continue;
    int u = pick(cycles[static_cast<std::size_t>(a)]);
    int v = pick(cycles[static_cast<std::size_t>(b)]);
    auto key = std::make_pair(std::min(u, v), std::max(u, v));
    if (std::find(present.begin(), present.end(), key) != present.end()) continue;
    present.push_back(key);
    tr.push_back({u, v, 1});
    --extra;
  }
  return validate_map_instance(Graph::from_triples(n, tr));
}

}  // namespace

MapInstance generate(GenModel model, int n, double density, std::uint64_t seed) {
  require(n >= 3, Err::GenerationFailed, "need at least 3 vertices");
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(n));
  switch (model) {
    case GenModel::Random: return generate_random(n, density, rng);
    case GenModel::SmallHeavy: return generate_small_heavy(n, density, rng);
  }
  fail(Err::GenerationFailed, "unknown model");
}

}  // namespace map2ec
