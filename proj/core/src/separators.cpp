#include "shapesep/separators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "shapesep/errors.hpp"

namespace shapesep {

namespace {

std::vector<int> components_of(const Graph& g, const std::vector<bool>& removed,
                               std::vector<int>* comp_of = nullptr) {
  const int n = g.n();
  std::vector<int> sizes;
  std::vector<int> label(n, -1);
  for (int s = 0; s < n; ++s) {
    if (removed[s] || label[s] != -1) continue;
    const int id = static_cast<int>(sizes.size());
    int size = 0;
    std::deque<int> queue = {s};
    label[s] = id;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      ++size;
      for (int w : g.neighbors(u))
        if (!removed[w] && label[w] == -1) {
          label[w] = id;
          queue.push_back(w);
        }
    }
    sizes.push_back(size);
  }
  if (comp_of) *comp_of = std::move(label);
  return sizes;
}

bool balanced_sizes(const std::vector<int>& sizes, int n) {
  for (int s : sizes)
    if (3L * s > 2L * n) return false; // exact comparison against (2/3) n
  return true;
}

SeparatorResult assemble(const Graph& g, std::vector<int> x, const std::string& method) {
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  std::vector<bool> removed(g.n(), false);
  for (int v : x) {
    if (v < 0 || v >= g.n()) throw InvalidParameterError("separator vertex out of range");
    removed[v] = true;
  }
  SeparatorResult res;
  res.n = g.n();
  res.separator = std::move(x);
  res.component_sizes = components_of(g, removed);
  res.balanced = balanced_sizes(res.component_sizes, g.n());
  res.method = method;
  return res;
}

} // namespace

double SeparatorResult::balance_ratio() const {
  if (n == 0) return 0;
  int mx = 0;
  for (int s : component_sizes) mx = std::max(mx, s);
  return static_cast<double>(mx) / n;
}

SeparatorResult is_balanced_separator(const Graph& g, const std::vector<int>& x) {
  return assemble(g, x, "given");
}

SeparatorResult exact_min_balanced_separator(const Graph& g, int cap) {
  const int n = g.n();
  if (n > cap)
    throw SizeCapError("exact_min_balanced_separator is capped at " + std::to_string(cap) +
                       " vertices (got " + std::to_string(n) + ")");
  for (int size = 0; size <= n; ++size) {
    // lexicographically smallest k-subsets first
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      SeparatorResult res = assemble(g, pick, "exact");
      if (res.balanced) return res;
      // next combination
      int i = size - 1;
      while (i >= 0 && pick[i] == n - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (size == 0 && n == 0) break;
  }
  throw InvariantViolationError("no balanced separator found (impossible: X = V works)");
}

namespace {

struct LayerCut {
  std::vector<int> cut;
  bool found = false;
};

// BFS layers of `comp` (vertices of one component) from `start`
std::vector<std::vector<int>> bfs_layers(const Graph& g, const std::vector<bool>& removed,
                                         int start) {
  std::vector<std::vector<int>> layers;
  std::vector<int> dist(g.n(), -1);
  std::deque<int> queue = {start};
  dist[start] = 0;
  layers.push_back({start});
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(u)) {
      if (removed[w] || dist[w] != -1) continue;
      dist[w] = dist[u] + 1;
      if (static_cast<int>(layers.size()) <= dist[w]) layers.emplace_back();
      layers[dist[w]].push_back(w);
      queue.push_back(w);
    }
  }
  return layers;
}

// best single-layer or layer-pair cut of one component, nullopt-like when a
// non-degenerate cut does not exist
LayerCut best_layer_cut(const Graph& g, const std::vector<bool>& removed, int start,
                        int comp_size) {
  const auto layers = bfs_layers(g, removed, start);
  const int L = static_cast<int>(layers.size());
  std::vector<long> prefix(L + 1, 0);
  for (int i = 0; i < L; ++i) prefix[i + 1] = prefix[i] + static_cast<long>(layers[i].size());

  LayerCut best;
  long best_size = comp_size; // only accept cuts smaller than half the piece
  auto consider = [&](const std::vector<int>& cut, long inside, long outside) {
    const long c = static_cast<long>(cut.size());
    if (c == 0 || 2 * c > comp_size) return; // degenerate layering
    if (3 * inside > 2L * comp_size || 3 * outside > 2L * comp_size) return;
    if (c < best_size) {
      best_size = c;
      best.cut = cut;
      best.found = true;
    }
  };

  for (int i = 1; i < L; ++i)
    consider(layers[i], prefix[i], comp_size - prefix[i + 1]);
  for (int i = 1; i < L; ++i)
    for (int j = i + 2; j < L; ++j) {
      const long middle = prefix[j] - prefix[i + 1];
      if (3 * middle < static_cast<long>(comp_size)) continue; // must sandwich >= n/3
      std::vector<int> cut = layers[i];
      cut.insert(cut.end(), layers[j].begin(), layers[j].end());
      const long outside = prefix[i] + (comp_size - prefix[j + 1]);
      consider(cut, middle, outside); // middle is one side, the rest the other
    }
  return best;
}

struct CompPick {
  std::vector<int> members;
  int size = 0;
};

CompPick largest_component(const Graph& g, const std::vector<bool>& removed) {
  std::vector<int> comp_of;
  const auto sizes = components_of(g, removed, &comp_of);
  int best = -1;
  for (size_t c = 0; c < sizes.size(); ++c)
    if (best == -1 || sizes[c] > sizes[best]) best = static_cast<int>(c);
  CompPick pick;
  if (best == -1) return pick;
  pick.size = sizes[best];
  for (int v = 0; v < g.n(); ++v)
    if (!removed[v] && comp_of[v] == best) pick.members.push_back(v);
  return pick;
}

} // namespace

SeparatorResult bfs_layer_separator(const Graph& g, const std::vector<int>& starts) {
  const int n = g.n();
  std::vector<bool> removed(n, false);
  std::vector<int> x;
  while (true) {
    const auto sizes = components_of(g, removed);
    if (balanced_sizes(sizes, n)) break;
    const CompPick comp = largest_component(g, removed);

    std::vector<int> comp_starts;
    for (int s : starts)
      if (s >= 0 && s < n && !removed[s] &&
          std::binary_search(comp.members.begin(), comp.members.end(), s))
        comp_starts.push_back(s);
    if (comp_starts.empty()) comp_starts.push_back(comp.members.front());

    LayerCut best;
    for (int s : comp_starts) {
      LayerCut cut = best_layer_cut(g, removed, s, comp.size);
      if (cut.found && (!best.found || cut.cut.size() < best.cut.size())) best = std::move(cut);
    }
    if (best.found) {
      for (int v : best.cut) {
        removed[v] = true;
        x.push_back(v);
      }
    } else {
      // degenerate layering (e.g. cliques): greedy max-degree removal
      int pick = -1, pick_deg = -1;
      for (int v : comp.members) {
        int deg = 0;
        for (int w : g.neighbors(v))
          if (!removed[w]) ++deg;
        if (deg > pick_deg) {
          pick_deg = deg;
          pick = v;
        }
      }
      removed[pick] = true;
      x.push_back(pick);
    }
  }
  return assemble(g, std::move(x), "bfs-layer");
}

SeparatorResult ordering_separator(const Graph& g, const Ordering& ord, int r) {
  if (r < 1) throw InvalidParameterError("ordering_separator: r >= 1 required");
  if (ord.n() != g.n()) throw InvariantViolationError("ordering size != graph size");
  const int n = g.n();
  std::vector<bool> removed(n, false);
  std::vector<int> x;
  while (true) {
    const auto sizes = components_of(g, removed);
    if (balanced_sizes(sizes, n)) break;
    const CompPick comp = largest_component(g, removed);

    int v = comp.members.front();
    for (int u : comp.members)
      if (ord.rank[u] < ord.rank[v]) v = u;

    const auto layers = bfs_layers(g, removed, v);
    const int L = static_cast<int>(layers.size());
    std::vector<long> ball(L);
    long acc = 0;
    for (int i = 0; i < L; ++i) {
      acc += static_cast<long>(layers[i].size());
      ball[i] = acc;
    }
    // window of balanced cut positions: ball(i) >= |C|/3 and ball(i-1) <= 2|C|/3
    int chosen = -1, fallback = -1;
    for (int i = 1; i < L; ++i) {
      if (3 * ball[i] < comp.size) continue;
      if (3 * (ball[i] - static_cast<long>(layers[i].size())) > 2L * comp.size) break;
      if (fallback == -1 || layers[i].size() < layers[fallback].size()) fallback = i;
      if (static_cast<long>(layers[i].size()) * r <= ball[i]) { // layer small vs ball
        chosen = i;
        break;
      }
    }
    if (chosen == -1) chosen = fallback;
    if (chosen == -1 || 2 * static_cast<long>(layers[chosen].size()) > comp.size) {
      removed[v] = true; // degenerate layering; shrink the piece directly
      x.push_back(v);
      continue;
    }
    for (int u : layers[chosen]) {
      removed[u] = true;
      x.push_back(u);
    }
  }
  return assemble(g, std::move(x), "ordering-r" + std::to_string(r));
}

double separator_exponent_target(int d) { return 1.0 - 1.0 / (2.0 * d + 4.0); }

ScalingFit fit_scaling(const std::string& family, const std::string& method, int dimension,
                       const std::vector<long>& sizes, const std::vector<long>& separator_sizes) {
  if (sizes.size() != separator_sizes.size() || sizes.empty())
    throw InvalidParameterError("fit_scaling: mismatched or empty series");
  ScalingFit fit;
  fit.family = family;
  fit.method = method;
  fit.dimension = dimension;
  fit.sizes = sizes;
  fit.separator_sizes = separator_sizes;
  fit.exponent_target = separator_exponent_target(dimension);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = static_cast<int>(sizes.size());
  for (int i = 0; i < m; ++i) {
    const double lx = std::log(static_cast<double>(sizes[i]));
    const double ly = std::log(static_cast<double>(std::max(separator_sizes[i], 1L)));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = m * sxx - sx * sx;
  fit.exponent_fit = denom != 0 ? (m * sxy - sx * sy) / denom : 0.0;
  fit.coeff_fit = std::exp((sy - fit.exponent_fit * sx) / m);
  long mn = sizes[0], mx = sizes[0];
  for (long s : sizes) {
    mn = std::min(mn, s);
    mx = std::max(mx, s);
  }
  fit.conclusive = m >= 4 && mx >= 10 * mn;
  return fit;
}

} // namespace shapesep
