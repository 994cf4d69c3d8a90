#include "netlint/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace netlint {

namespace {

constexpr double kSpacing = 10.0;  // node grid pitch, far above any quantum

struct Builder {
  const RuleConfig& cfg;
  std::mt19937_64& rng;
  std::vector<LineFeature> features;

  // Generator-side bookkeeping. Nodes carry the weights hosted there;
  // pools[w-1] lists candidate attachment nodes for weight w. Dangling and
  // gadget nodes stay unregistered so later picks can never repair an
  // injected defect.
  std::vector<Vertex> coords;
  std::vector<std::vector<int>> hosts;
  std::vector<int> min_host;
  std::vector<std::vector<std::uint32_t>> pools;

  Builder(const RuleConfig& c, std::mt19937_64& r)
      : cfg(c), rng(r), pools(c.k) {}

  std::uint32_t fresh_node() {
    std::uint32_t id = static_cast<std::uint32_t>(coords.size());
    coords.push_back(Vertex{(id % 512) * kSpacing, (id / 512) * kSpacing});
    hosts.emplace_back();
    min_host.push_back(std::numeric_limits<int>::max());
    return id;
  }

  bool prohibited_at(std::uint32_t node, int w) const {
    auto [lo, hi] = cfg.prohibited_pair;
    if (lo == hi) return false;
    int other = w == lo ? hi : (w == hi ? lo : 0);
    if (other == 0) return false;
    return std::find(hosts[node].begin(), hosts[node].end(), other) !=
           hosts[node].end();
  }

  void register_weight(std::uint32_t node, int w) {
    hosts[node].push_back(w);
    if (w < min_host[node]) {
      int upper = min_host[node] == std::numeric_limits<int>::max()
                      ? cfg.k
                      : min_host[node] - 1;
      for (int cat = w; cat <= upper; ++cat) {
        pools[cat - 1].push_back(node);
      }
      min_host[node] = w;
    }
  }

  // Random qualified node for weight w; stale entries (prohibition arrived
  // later) are dropped lazily.
  std::optional<std::uint32_t> pick(int w) {
    auto& pool = pools[w - 1];
    while (!pool.empty()) {
      std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
      std::size_t i = d(rng);
      std::uint32_t node = pool[i];
      if (!prohibited_at(node, w)) return node;
      pool[i] = pool.back();
      pool.pop_back();
    }
    return std::nullopt;
  }

  std::optional<std::pair<std::uint32_t, std::uint32_t>> pick_two(int w) {
    auto first = pick(w);
    if (!first) return std::nullopt;
    for (int attempt = 0; attempt < 64; ++attempt) {
      auto second = pick(w);
      if (!second) return std::nullopt;
      if (*second != *first) return std::make_pair(*first, *second);
    }
    // Pool may hold one distinct node only; scan for any other.
    for (std::uint32_t node : pools[w - 1]) {
      if (node != *first && !prohibited_at(node, w)) {
        return std::make_pair(*first, node);
      }
    }
    return std::nullopt;
  }

  std::uint32_t add_feature(std::uint32_t from, std::uint32_t to, int w,
                            bool force_jog, bool register_from,
                            bool register_to) {
    LineFeature f;
    f.id = "f" + std::to_string(features.size());
    f.weight = w;
    const Vertex& a = coords[from];
    const Vertex& b = coords[to];
    f.vertices.push_back(a);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    if (force_jog || u01(rng) < 0.25) {
      // A short perpendicular jog keeps parallel features distinct and
      // exercises multi-vertex parsing.
      double mx = (a.x + b.x) / 2, my = (a.y + b.y) / 2;
      double dx = b.x - a.x, dy = b.y - a.y;
      double len = std::hypot(dx, dy);
      double off = kSpacing * (0.15 + 0.2 * u01(rng));
      f.vertices.push_back(
          Vertex{mx - dy / len * off, my + dx / len * off});
    }
    f.vertices.push_back(b);
    if (register_from) register_weight(from, w);
    if (register_to) register_weight(to, w);
    features.push_back(std::move(f));
    return static_cast<std::uint32_t>(features.size() - 1);
  }
};

[[noreturn]] void infeasible(const std::string& why) {
  throw ConfigError("infeasible generator spec: " + why);
}

}  // namespace

GeneratedNetwork generate_network(const GenSpec& spec) {
  if (spec.n < 1) infeasible("n must be >= 1");
  if (spec.k < 1) infeasible("k must be >= 1");
  for (double r : {spec.inject_rule1, spec.inject_rule2, spec.inject_rule3}) {
    if (r < 0.0 || r > 1.0) infeasible("injection rates must be in [0, 1]");
  }
  int a = spec.a != 0 ? spec.a : std::min(spec.k, spec.k / 2 + 1);
  RuleConfig cfg = RuleConfig::with_threshold(spec.k, a);

  long c1 = std::lround(spec.inject_rule1 * spec.n);
  long c2 = std::lround(spec.inject_rule2 * spec.n);
  long c3 = std::lround(spec.inject_rule3 * spec.n);
  if (c1 > 0 && a < 2) infeasible("rule-1 defects need a rule-1 category (a >= 2)");
  if (c2 > 0 && spec.k < 2) infeasible("rule-2 defects need k >= 2");

  long base = spec.n - c1 - 3 * c2 - c3;
  long min_base = spec.k == 1 ? 2 : spec.k + 2;
  if (base < min_base) {
    infeasible("needs at least " + std::to_string(min_base + c1 + 3 * c2 + c3) +
               " features for k=" + std::to_string(spec.k) +
               " with the requested defects");
  }

  // Per-category counts: category 1 and (to bootstrap clear of the
  // prohibition) category k start at 2 features, the rest at 1; leftovers
  // round-robin.
  std::vector<long> per_cat(spec.k, 1);
  per_cat[0] = 2;
  if (spec.k >= 2) per_cat[spec.k - 1] = 2;
  long used = 0;
  for (long c : per_cat) used += c;
  for (long i = 0; i < base - used; ++i) per_cat[i % spec.k] += 1;

  std::mt19937_64 rng(spec.seed);
  Builder b(cfg, rng);
  GeneratedNetwork out;

  for (int w = 1; w <= spec.k; ++w) {
    long remaining = per_cat[w - 1];
    bool both_ends = rule_of(w, cfg) == Rule::rule1;
    while (remaining > 0) {
      if (both_ends) {
        if (auto two = b.pick_two(w)) {
          b.add_feature(two->first, two->second, w, false, true, true);
          remaining -= 1;
          continue;
        }
        if (auto one = b.pick(w); one && remaining >= 2) {
          // Parallel pair from an existing node to a fresh one; the two
          // features qualify each other at the fresh end.
          std::uint32_t x = b.fresh_node();
          b.add_feature(*one, x, w, false, true, true);
          b.add_feature(*one, x, w, true, true, true);
          remaining -= 2;
          continue;
        }
        if (remaining >= 2) {
          std::uint32_t u = b.fresh_node();
          std::uint32_t v = b.fresh_node();
          b.add_feature(u, v, w, false, true, true);
          b.add_feature(u, v, w, true, true, true);
          remaining -= 2;
          continue;
        }
        infeasible("category " + std::to_string(w) +
                   " cannot seed a closed cluster with one feature");
      } else {
        if (auto one = b.pick(w)) {
          std::uint32_t x = b.fresh_node();
          b.add_feature(*one, x, w, false, true, true);
          remaining -= 1;
          continue;
        }
        if (remaining >= 2) {
          std::uint32_t u = b.fresh_node();
          std::uint32_t v = b.fresh_node();
          std::uint32_t x = b.fresh_node();
          b.add_feature(u, v, w, false, true, true);
          b.add_feature(v, x, w, false, true, true);
          remaining -= 2;
          continue;
        }
        infeasible("category " + std::to_string(w) +
                   " cannot seed a chain with one feature");
      }
    }
  }

  auto ground = [&out](ErrorKind kind, std::vector<std::string> ids,
                       const std::string& detail) {
    ValidationError e;
    e.kind = kind;
    e.feature_ids = std::move(ids);
    e.detail = detail;
    out.injected.push_back(std::move(e));
  };

  // Rule-1 defects: one valid end, one end on a node nothing else touches.
  // The dangling node stays unregistered so nothing can attach there later.
  for (long i = 0; i < c1; ++i) {
    std::uniform_int_distribution<int> dw(1, a - 1);
    int w = dw(rng);
    auto u = b.pick(w);
    if (!u) infeasible("no attachment node for a rule-1 defect of weight " +
                       std::to_string(w));
    std::uint32_t dangling = b.fresh_node();
    std::uint32_t idx = b.add_feature(*u, dangling, w, false, true, false);
    ground(ErrorKind::rule1, {b.features[idx].id}, "injected dangling end");
  }

  // Rule-3 defects: a fully isolated feature.
  for (long i = 0; i < c3; ++i) {
    std::uniform_int_distribution<int> dw(a, spec.k);
    int w = dw(rng);
    std::uint32_t u = b.fresh_node();
    std::uint32_t v = b.fresh_node();
    std::uint32_t idx = b.add_feature(u, v, w, false, false, false);
    ground(ErrorKind::rule3, {b.features[idx].id}, "injected isolated feature");
  }

  // Rule-2 defects: two lowest-category features and one highest-category
  // feature meeting at a private node. The pair of low features keeps both
  // of them rule-1 clean; the high feature is satisfied by either of them,
  // so the only findings are the prohibited contacts.
  auto [lo, hi] = cfg.prohibited_pair;
  for (long i = 0; i < c2; ++i) {
    auto u1 = b.pick(lo);
    auto u2 = b.pick(lo);
    auto v = b.pick(hi);
    if (!u1 || !u2 || !v) infeasible("no attachment nodes for a rule-2 defect");
    std::uint32_t shared = b.fresh_node();
    std::uint32_t ia = b.add_feature(*u1, shared, lo, false, true, false);
    std::uint32_t ib = b.add_feature(*u2, shared, lo, false, true, false);
    std::uint32_t ic = b.add_feature(*v, shared, hi, false, true, false);
    const std::string& id_a = b.features[ia].id;
    const std::string& id_b = b.features[ib].id;
    const std::string& id_c = b.features[ic].id;
    ground(ErrorKind::rule2, {id_a, id_c}, "injected prohibited contact");
    ground(ErrorKind::rule2, {id_b, id_c}, "injected prohibited contact");
    ground(ErrorKind::rule2, {id_c, std::min(id_a, id_b)},
           "injected prohibited contact");
  }

  out.features = std::move(b.features);
  out.cfg = cfg;
  return out;
}

}  // namespace netlint
