#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "netlint/detectors.hpp"
#include "netlint/generator.hpp"

using namespace netlint;

namespace {

LineFeature seg(std::string id, Vertex a, Vertex b, int weight = 1) {
  LineFeature f;
  f.id = std::move(id);
  f.vertices = {a, b};
  f.weight = weight;
  return f;
}

std::multiset<std::string> keys(const std::vector<ValidationError>& errors) {
  std::multiset<std::string> out;
  for (const auto& e : errors) out.insert(identity_key(e));
  return out;
}

std::vector<LineFeature> random_net(std::mt19937& rng, int n, int k,
                                    int span) {
  std::uniform_int_distribution<int> coord(0, span);
  std::uniform_int_distribution<int> weight(1, k);
  std::vector<LineFeature> fs;
  int i = 0;
  while (int(fs.size()) < n) {
    Vertex a{double(coord(rng)), double(coord(rng))};
    Vertex b{double(coord(rng)), double(coord(rng))};
    if (a == b) continue;
    fs.push_back(seg("f" + std::to_string(i++), a, b, weight(rng)));
  }
  return fs;
}

}  // namespace

TEST_CASE("exhaustive detector on the anchor fixtures") {
  SUBCASE("two-feature chain with k=2, a=2") {
    RuleConfig cfg = RuleConfig::with_threshold(2, 2);
    Network net = build_network(
        {seg("A", {0, 0}, {1, 0}, 1), seg("B", {1, 0}, {2, 0}, 2)}, cfg);
    auto errors = detect_exhaustive(AttributeTable::from_network(net), cfg);

    std::multiset<std::string> got = keys(errors);
    std::multiset<std::string> want = {"rule1|A", "rule2|A|B", "rule2|A|B"};
    CHECK(got == want);
  }

  SUBCASE("triangle of equals is clean") {
    RuleConfig cfg = RuleConfig::with_threshold(1, 1);
    Network net = build_network({seg("A", {0, 0}, {1, 0}),
                                 seg("B", {1, 0}, {0, 1}),
                                 seg("C", {0, 1}, {0, 0})},
                                cfg);
    CHECK(detect_exhaustive(AttributeTable::from_network(net), cfg).empty());
  }

  SUBCASE("single isolated feature violates rule 3") {
    RuleConfig cfg = RuleConfig::with_threshold(1, 1);
    Network net = build_network({seg("A", {0, 0}, {1, 0})}, cfg);
    auto errors = detect_exhaustive(AttributeTable::from_network(net), cfg);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].kind == ErrorKind::rule3);
    CHECK(errors[0].feature_ids == std::vector<std::string>{"A"});
  }

  SUBCASE("a ring is satisfied by one neighbor at its node") {
    RuleConfig cfg = RuleConfig::with_threshold(2, 2);
    LineFeature ring;
    ring.id = "R";
    ring.weight = 1;
    ring.vertices = {Vertex{0, 0}, Vertex{1, 0}, Vertex{0, 1}, Vertex{0, 0}};
    // Without a neighbor the ring cannot satisfy itself.
    Network alone = build_network({ring}, cfg);
    auto errors = detect_exhaustive(AttributeTable::from_network(alone), cfg);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].kind == ErrorKind::rule1);
    // One same-category neighbor at the closure node satisfies both ends.
    Network paired = build_network({ring, seg("N", {0, 0}, {5, 0}, 1)}, cfg);
    auto errors2 =
        detect_exhaustive(AttributeTable::from_network(paired), cfg);
    for (const auto& e : errors2) {
      CHECK(e.feature_ids.front() != "R");
    }
  }
}

TEST_CASE("reduction produces two records per feature, split by rule") {
  RuleConfig cfg = RuleConfig::with_threshold(3, 2);
  std::mt19937 rng(31);
  auto fs = random_net(rng, 60, 3, 8);
  Network net = build_network(fs, cfg);
  auto cats = reduce_features(net, cfg);
  REQUIRE(cats.size() == 3);

  std::size_t total = 0;
  std::map<int, std::size_t> per_weight;
  for (const auto& cat : cats) {
    if (cat.rule == Rule::rule1) {
      CHECK(cat.starts.size() == cat.ends.size());
      CHECK(cat.combined.empty());
      total += cat.starts.size() + cat.ends.size();
      per_weight[cat.weight] += cat.starts.size() + cat.ends.size();
    } else {
      CHECK(cat.starts.empty());
      total += cat.combined.size();
      per_weight[cat.weight] += cat.combined.size();
    }
  }
  CHECK(total == fs.size() * 2);
  std::map<int, std::size_t> expect;
  for (const auto& f : fs) expect[f.weight] += 2;
  CHECK(per_weight == expect);
  CHECK(cats[0].rule == Rule::rule1);
  CHECK(cats[1].rule == Rule::rule3);
}

TEST_CASE("spatial join detector equals the exhaustive oracle") {
  SUBCASE("anchor fixtures") {
    RuleConfig cfg = RuleConfig::with_threshold(2, 2);
    Network net = build_network(
        {seg("A", {0, 0}, {1, 0}, 1), seg("B", {1, 0}, {2, 0}, 2)}, cfg);
    CHECK(keys(detect_spatialjoin(net, cfg)) ==
          keys(detect_exhaustive(AttributeTable::from_network(net), cfg)));

    RuleConfig cfg1 = RuleConfig::with_threshold(1, 1);
    Network empty_net = build_network({}, cfg1);
    CHECK(detect_spatialjoin(empty_net, cfg1).empty());
  }

  SUBCASE("randomized networks, swept configurations") {
    std::mt19937 rng(32);
    for (int trial = 0; trial < 60; ++trial) {
      int k = 1 + trial % 8;
      int n = 20 + (trial * 7) % 120;
      auto fs = random_net(rng, n, k, 10);
      for (int a = 1; a <= k; ++a) {
        RuleConfig cfg = RuleConfig::with_threshold(k, a);
        Network net = build_network(fs, cfg);
        auto ex = detect_exhaustive(AttributeTable::from_network(net), cfg);
        auto sj = detect_spatialjoin(net, cfg);
        REQUIRE(keys(ex) == keys(sj));
      }
    }
  }

  SUBCASE("non-contiguous rule-3 sets") {
    std::mt19937 rng(33);
    for (int trial = 0; trial < 30; ++trial) {
      int k = 4 + trial % 5;
      auto fs = random_net(rng, 80, k, 9);
      std::set<int> r3;
      for (int w = 1; w <= k; ++w) {
        if (rng() % 2) r3.insert(w);
      }
      RuleConfig cfg = RuleConfig::with_rule3_set(k, r3);
      Network net = build_network(fs, cfg);
      CHECK(keys(detect_exhaustive(AttributeTable::from_network(net), cfg)) ==
            keys(detect_spatialjoin(net, cfg)));
    }
  }

  SUBCASE("generated networks with injected defects") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      GenSpec spec;
      spec.n = 120;
      spec.k = 5;
      spec.seed = 1000 + s;
      spec.inject_rule1 = 0.05;
      spec.inject_rule2 = 0.02;
      spec.inject_rule3 = 0.05;
      GeneratedNetwork gen = generate_network(spec);
      Network net = build_network(gen.features, gen.cfg);
      CHECK(keys(detect_exhaustive(AttributeTable::from_network(net),
                                   gen.cfg)) ==
            keys(detect_spatialjoin(net, gen.cfg)));
    }
  }
}

TEST_CASE("rule-3 relaxation never adds errors for the relaxed category") {
  std::mt19937 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    int k = 3 + trial % 5;
    auto fs = random_net(rng, 70, k, 8);
    int a = 2 + int(rng() % (k - 1));
    RuleConfig strict = RuleConfig::with_threshold(k, a);
    int target = 1 + int(rng() % (a - 1));  // a rule-1 category
    std::set<int> relaxed_set = strict.rule3_weights;
    relaxed_set.insert(target);
    RuleConfig relaxed = RuleConfig::with_rule3_set(k, relaxed_set);

    Network net = build_network(fs, strict);
    std::map<std::string, int> weight_of;
    for (const auto& f : fs) weight_of[f.id] = f.weight;

    auto flagged = [&](const RuleConfig& cfg) {
      std::set<std::string> ids;
      for (const auto& e : detect_spatialjoin(net, cfg)) {
        if (e.kind == ErrorKind::rule1 || e.kind == ErrorKind::rule3) {
          if (weight_of[e.feature_ids.front()] == target) {
            ids.insert(e.feature_ids.front());
          }
        }
      }
      return ids;
    };
    std::set<std::string> strict_ids = flagged(strict);
    std::set<std::string> relaxed_ids = flagged(relaxed);
    CHECK(std::includes(strict_ids.begin(), strict_ids.end(),
                        relaxed_ids.begin(), relaxed_ids.end()));
  }
}

TEST_CASE("point-no-flow flags exactly the one-sided nodes") {
  RuleConfig cfg = RuleConfig::with_threshold(1, 1);

  SUBCASE("two-arc chain") {
    Network net = build_network(
        {seg("A", {0, 0}, {1, 0}), seg("B", {1, 0}, {2, 0})}, cfg);
    auto errors = detect_point_no_flow(net);
    REQUIRE(errors.size() == 2);
    for (const auto& e : errors) {
      CHECK(e.kind == ErrorKind::no_flow);
      REQUIRE(e.location.has_value());
      CHECK(e.location->y == 0.0);
      CHECK((std::abs(e.location->x) < 1e-6 ||
             std::abs(e.location->x - 2.0) < 1e-6));
    }
  }

  SUBCASE("directed cycle is clean") {
    Network net = build_network({seg("A", {0, 0}, {1, 0}),
                                 seg("B", {1, 0}, {0, 1}),
                                 seg("C", {0, 1}, {0, 0})},
                                cfg);
    CHECK(detect_point_no_flow(net).empty());
  }

  SUBCASE("a sink with two inflows flags the sink and both tails") {
    Network net = build_network(
        {seg("A", {0, 0}, {1, 0}), seg("B", {2, 0}, {1, 0})}, cfg);
    auto errors = detect_point_no_flow(net);
    CHECK(errors.size() == 3);
    int sinks = 0;
    for (const auto& e : errors) {
      if (e.detail.find("never leaves") != std::string::npos) {
        ++sinks;
        CHECK(e.feature_ids == std::vector<std::string>{"A", "B"});
      }
    }
    CHECK(sinks == 1);
  }

  SUBCASE("terminal exemption skips degree-1 nodes") {
    Network net = build_network(
        {seg("A", {0, 0}, {1, 0}), seg("B", {1, 0}, {2, 0})}, cfg);
    CHECK(detect_point_no_flow(net, true).empty());
  }

  SUBCASE("degree oracle on random directed networks") {
    std::mt19937 rng(35);
    for (int trial = 0; trial < 100; ++trial) {
      auto fs = random_net(rng, 40, 1, 6);
      // Mix in direction codes and normalize as the pipeline does.
      std::uniform_int_distribution<int> dir(-1, 1);
      for (auto& f : fs) f.direction_code = dir(rng);
      fs = apply_direction_weights(std::move(fs));
      Network net = build_network(fs, cfg);

      std::vector<int> in(net.node_count(), 0), out(net.node_count(), 0);
      for (std::uint32_t i = 0; i < net.features.size(); ++i) {
        out[net.node_of(i, EndRole::start)] += 1;
        in[net.node_of(i, EndRole::end)] += 1;
      }
      std::set<std::uint32_t> expect;
      for (std::uint32_t v = 0; v < net.node_count(); ++v) {
        if (in[v] == 0 || out[v] == 0) expect.insert(v);
      }
      std::set<std::uint32_t> got;
      for (const auto& e : detect_point_no_flow(net)) {
        got.insert(*e.node);
      }
      REQUIRE(got == expect);
    }
  }
}

TEST_CASE("self-intersection detector modes") {
  RuleConfig cfg = RuleConfig::with_threshold(1, 1);
  LineFeature ring;
  ring.id = "ring";
  ring.vertices = {Vertex{0, 0}, Vertex{1, 0}, Vertex{0, 1}, Vertex{0, 0}};
  LineFeature eight;
  eight.id = "eight";
  eight.vertices = {Vertex{5, 5}, Vertex{7, 7}, Vertex{7, 5}, Vertex{5, 7}};
  LineFeature plain = seg("plain", {20, 0}, {21, 0});

  Network net = build_network({ring, eight, plain}, cfg);

  auto flagged = [&](SelfIntersectMode mode) {
    std::set<std::string> ids;
    for (const auto& e : detect_self_intersection(net, mode)) {
      CHECK(e.kind == ErrorKind::self_intersection);
      ids.insert(e.feature_ids.front());
    }
    return ids;
  };
  CHECK(flagged(SelfIntersectMode::paper) == std::set<std::string>{"ring"});
  CHECK(flagged(SelfIntersectMode::full) ==
        std::set<std::string>{"ring", "eight"});

  // Paper mode is exactly quantized endpoint identity.
  LineFeature near_ring;
  near_ring.id = "near";
  near_ring.vertices = {Vertex{30, 0}, Vertex{31, 0}, Vertex{30, 1},
                        Vertex{30.0 + 1e-12, 0}};
  Network net2 = build_network({near_ring}, cfg);
  auto errors = detect_self_intersection(net2, SelfIntersectMode::paper);
  REQUIRE(errors.size() == 1);
  CHECK(errors[0].feature_ids.front() == "near");
}

TEST_CASE("near-node detection against the all-pairs oracle") {
  RuleConfig cfg = RuleConfig::with_threshold(1, 1);

  SUBCASE("anchor distances") {
    Network net = build_network(
        {seg("A", {0, 0}, {10, 10}), seg("B", {0, 0.5}, {20, 20})}, cfg);
    auto errors = detect_near_nodes(net, 1.0);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].kind == ErrorKind::near_node);
    REQUIRE(errors[0].location.has_value());
    REQUIRE(errors[0].location2.has_value());

    Network far = build_network(
        {seg("A", {0, 0}, {10, 10}), seg("B", {3, 4}, {20, 20})}, cfg);
    CHECK(detect_near_nodes(far, 1.0).empty());

    CHECK_THROWS_AS(detect_near_nodes(net, 1e-10), ConfigError);
  }

  SUBCASE("random cloud") {
    std::mt19937 rng(36);
    std::uniform_real_distribution<double> coord(0.0, 30.0);
    std::vector<LineFeature> fs;
    for (int i = 0; i < 120; ++i) {
      Vertex a{coord(rng), coord(rng)};
      Vertex b{coord(rng), coord(rng)};
      if (vertices_equal(a, b, 1e-9)) continue;
      fs.push_back(seg("f" + std::to_string(i), a, b));
    }
    Network net = build_network(fs, cfg);
    const double eps = 2.5;

    std::set<std::pair<std::uint32_t, std::uint32_t>> expect;
    for (std::uint32_t u = 0; u < net.node_count(); ++u) {
      for (std::uint32_t v = u + 1; v < net.node_count(); ++v) {
        double d = std::hypot(net.node_coords[u].x - net.node_coords[v].x,
                              net.node_coords[u].y - net.node_coords[v].y);
        if (d > 0 && d <= eps) expect.insert({u, v});
      }
    }
    std::set<std::pair<std::uint32_t, std::uint32_t>> got;
    for (const auto& e : detect_near_nodes(net, eps)) {
      got.insert({*e.node, *e.node2});
    }
    REQUIRE(got == expect);
    CHECK_FALSE(expect.empty());
  }
}

TEST_CASE("detectors are deterministic across repeated runs") {
  std::mt19937 rng(37);
  auto fs = random_net(rng, 100, 4, 9);
  RuleConfig cfg = RuleConfig::with_threshold(4, 3);
  Network net = build_network(fs, cfg);

  auto pass1 = detect_spatialjoin(net, cfg);
  auto pass2 = detect_spatialjoin(net, cfg);
  REQUIRE(pass1.size() == pass2.size());
  for (std::size_t i = 0; i < pass1.size(); ++i) {
    CHECK(identity_key(pass1[i]) == identity_key(pass2[i]));
    CHECK(pass1[i].detail == pass2[i].detail);
  }
}

TEST_CASE("component labels follow shared-node reachability") {
  RuleConfig cfg = RuleConfig::with_threshold(1, 1);
  Network net = build_network(
      {seg("A", {0, 0}, {1, 0}), seg("B", {1, 0}, {2, 0}),
       seg("C", {50, 50}, {51, 50})},
      cfg);
  auto errors = detect_point_no_flow(net);
  label_components(errors, net);
  std::map<std::string, std::uint32_t> comp;
  for (const auto& e : errors) comp[e.feature_ids.front()] = e.component;
  CHECK(comp.at("A") == 0);
  CHECK(comp.at("C") == 1);

  AttributeTable table = AttributeTable::from_network(net);
  auto labels = component_labels(table);
  CHECK(labels == std::vector<std::uint32_t>{0, 0, 1});
}
