#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "credal/demo.hpp"
#include "credal/io.hpp"

using namespace credal;

#ifndef DATA_DIR
#define DATA_DIR "."
#endif

namespace {

std::string minimal_net(const std::string& node_patch = "") {
  std::string nodes = R"([
    {"name": "A", "states": ["a1", "a2"], "parents": [],
     "cpt": [[0.4, 0.6]]},
    {"name": "B", "states": ["b1", "b2"], "parents": ["A"],
     "cpt": [[0.7, 0.3], [0.2, 0.8]]}
  ])";
  if (!node_patch.empty()) nodes = node_patch;
  return std::string("{\"version\": 1, \"nodes\": ") + nodes + "}";
}

}  // namespace

TEST_CASE("the bundled chest clinic file matches the built-in network") {
  ParsedNetwork loaded = load_network_file(std::string(DATA_DIR) +
                                           "/asia.json");
  CHECK_FALSE(loaded.is_credal());
  CHECK(loaded.name == "asia");
  REQUIRE(loaded.default_class.has_value());
  CHECK(*loaded.default_class == "C");
  CHECK(loaded.bayes().size() == 7);

  ParsedNetwork built{1, "asia", std::string("C"), build_asia()};
  CHECK(network_equal(loaded, built));

  // Round trip: parse(serialize(x)) is field-exact and byte-stable.
  std::string once = serialize_network(loaded);
  ParsedNetwork again = parse_network_text(once);
  CHECK(network_equal(loaded, again));
  CHECK(serialize_network(again) == once);
  CHECK(once.back() == '\n');
}

TEST_CASE("network parsing errors are classified") {
  CHECK_THROWS_AS(parse_network_text("{nope"), parse_error);
  CHECK_THROWS_AS(parse_network_text("[1,2]"), parse_error);
  CHECK_THROWS_AS(parse_network_text(R"({"nodes": []})"), parse_error);
  CHECK_THROWS_AS(parse_network_text(R"({"version": 2, "nodes": []})"),
                  parse_error);
  CHECK_THROWS_AS(load_network_file("/no/such/file.json"), parse_error);

  // Structurally fine, semantically wrong: validation errors.
  CHECK_THROWS_AS(parse_network_text(minimal_net(R"([
    {"name": "A", "states": ["a1", "a2"], "parents": [],
     "cpt": [[0.4, 0.599]]}
  ])")),
                  validation_error);
  CHECK_THROWS_AS(parse_network_text(minimal_net(R"([
    {"name": "A", "states": ["a1", "a2"], "parents": [],
     "cpt": [[0.0, 1.0]]}
  ])")),
                  validation_error);
  CHECK_THROWS_AS(parse_network_text(minimal_net(R"([
    {"name": "B", "states": ["b1", "b2"], "parents": ["Q"],
     "cpt": [[0.5, 0.5]]}
  ])")),
                  validation_error);
  CHECK_THROWS_AS(parse_network_text(minimal_net(R"([
    {"name": "A", "states": ["a1", "a2"], "parents": ["B"],
     "cpt": [[0.5, 0.5], [0.5, 0.5]]},
    {"name": "B", "states": ["b1", "b2"], "parents": ["A"],
     "cpt": [[0.5, 0.5], [0.5, 0.5]]}
  ])")),
                  validation_error);
  CHECK_THROWS_AS(parse_network_text(minimal_net(R"([
    {"name": "A", "states": ["a1", "a2"], "parents": [],
     "credal": [{"type": "intervals",
                 "lower": [0.5, 0.6], "upper": [0.7, 0.8]}]}
  ])")),
                  validation_error);

  // Shape problems inside a node: parse errors.
  CHECK_THROWS_AS(parse_network_text(minimal_net(R"([
    {"name": "A", "states": ["a1", "a2"], "parents": [],
     "cpt": [[0.4, 0.6]],
     "credal": [{"type": "point", "mass": [0.4, 0.6]}]}
  ])")),
                  parse_error);
  CHECK_THROWS_AS(parse_network_text(minimal_net(R"([
    {"name": "A", "states": ["a1", "a2"], "parents": []}
  ])")),
                  parse_error);
  CHECK_THROWS_AS(parse_network_text(minimal_net(R"([
    {"name": "A", "states": ["a1", "a2"], "parents": [],
     "credal": [{"type": "blob", "mass": [0.4, 0.6]}]}
  ])")),
                  parse_error);
}

TEST_CASE("a single credal node promotes the whole network") {
  std::string text = R"({
    "version": 1,
    "class": "A",
    "nodes": [
      {"name": "A", "states": ["a1", "a2"], "parents": [],
       "cpt": [[0.4, 0.6]]},
      {"name": "B", "states": ["b1", "b2"], "parents": ["A"],
       "credal": [
         {"type": "intervals", "lower": [0.2, 0.3], "upper": [0.7, 0.8]},
         {"type": "vertices", "masses": [[0.4, 0.6], [0.6, 0.4]]}
       ]}
    ]
  })";
  ParsedNetwork pn = parse_network_text(text);
  REQUIRE(pn.is_credal());
  const CredalNet& net = pn.credal();
  CHECK(net.size() == 2);
  CHECK(net.node(0).rows[0].is_linear());
  CHECK_FALSE(net.node(1).rows[0].is_linear());
  auto [lo, hi] = local_bounds(net.node(1).rows[0], 0);
  CHECK(lo == doctest::Approx(0.2));
  CHECK(hi == doctest::Approx(0.7));

  // Polytope rows parse their constraint relations.
  std::string poly = R"({
    "version": 1,
    "nodes": [
      {"name": "A", "states": ["a1", "a2", "a3"], "parents": [],
       "credal": [{"type": "polytope", "constraints": [
         {"coeffs": [1, 0, 0], "rel": ">=", "rhs": 0.2},
         {"coeffs": [0, 1, 0], "rel": ">=", "rhs": 0.2},
         {"coeffs": [0, 0, 1], "rel": ">=", "rhs": 0.2}
       ]}]}
    ]
  })";
  ParsedNetwork pp = parse_network_text(poly);
  REQUIRE(pp.is_credal());
  auto [l0, h0] = local_bounds(pp.credal().node(0).rows[0], 0);
  CHECK(l0 == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(h0 == doctest::Approx(0.6).epsilon(1e-9));

  // Credal round trip stays field-exact and byte-stable.
  std::string once = serialize_network(pn);
  ParsedNetwork again = parse_network_text(once);
  CHECK(network_equal(pn, again));
  CHECK(serialize_network(again) == once);
}

TEST_CASE("query files") {
  Query q = parse_query_text(R"({
    "version": 1,
    "class": "C",
    "evidence": {"L": "l'", "S": "s'"},
    "options": {"bounds": true, "naive": true, "cap": 4096,
                "pair": ["c'", "c''"]}
  })");
  REQUIRE(q.class_node.has_value());
  CHECK(*q.class_node == "C");
  REQUIRE(q.evidence.size() == 2);
  // Evidence pairs arrive sorted by key (JSON object order).
  CHECK(q.evidence[0] == std::pair<std::string, std::string>{"L", "l'"});
  CHECK(q.evidence[1] == std::pair<std::string, std::string>{"S", "s'"});
  CHECK(q.bounds);
  CHECK(q.naive);
  REQUIRE(q.cap.has_value());
  CHECK(*q.cap == 4096);
  REQUIRE(q.pair.has_value());
  CHECK(q.pair->first == "c'");
  CHECK(q.pair->second == "c''");

  Query d = parse_query_text(R"({"version": 1})");
  CHECK_FALSE(d.class_node.has_value());
  CHECK(d.evidence.empty());
  CHECK_FALSE(d.bounds);
  CHECK_FALSE(d.naive);
  CHECK_FALSE(d.cap.has_value());
  CHECK_FALSE(d.pair.has_value());

  CHECK_THROWS_AS(parse_query_text("{"), parse_error);
  CHECK_THROWS_AS(parse_query_text(R"({"version": 3})"), parse_error);
  CHECK_THROWS_AS(parse_query_text(R"({"version": 1, "evidence": [1]})"),
                  parse_error);
  CHECK_THROWS_AS(
      parse_query_text(R"({"version": 1, "options": {"pair": ["x"]}})"),
      parse_error);
}

TEST_CASE("evidence command line arguments") {
  auto ev = parse_evidence_arg("L=l',S=s'");
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].first == "L");
  CHECK(ev[0].second == "l'");
  CHECK(ev[1].first == "S");
  CHECK(ev[1].second == "s'");
  CHECK(parse_evidence_arg("").empty());
  CHECK(parse_evidence_arg("A=x").size() == 1);
  CHECK_THROWS_AS(parse_evidence_arg("A"), parse_error);
  CHECK_THROWS_AS(parse_evidence_arg("A=,B=y"), parse_error);
  CHECK_THROWS_AS(parse_evidence_arg("=x"), parse_error);
}

TEST_CASE("report rendering is stable and parseable") {
  BayesNet net = build_asia();
  ClassifyOptions opts;
  opts.with_posterior = true;
  opts.with_naive = true;
  DominanceReport rep = classify(net, 3, Evidence{{1, 0}, {5, 0}}, opts);

  std::string a = render_report(rep, true);
  std::string b = render_report(rep, true);
  CHECK(a == b);
  CHECK(a.find("\"class\"") != std::string::npos);
  CHECK(a.find("\"undominated\"") != std::string::npos);
  CHECK(a.find("\"posterior_bounds\"") != std::string::npos);
  CHECK(a.find("\"naive_posterior\"") != std::string::npos);
  CHECK(a.find("\"cutset\"") != std::string::npos);
  CHECK(a.back() == '\n');

  std::string table = render_report(rep, false);
  CHECK(table.find("C") != std::string::npos);
  CHECK(table.find("c'") != std::string::npos);
  CHECK_FALSE(table.empty());

  PairDominance pd = credal_dominance(net, 3, 0, 1, Evidence{{1, 0}, {5, 0}});
  std::string pj = render_pair(pd, {"c'", "c''"}, {"T"}, {{"t'", "t''"}},
                               true);
  CHECK(pj.find("\"value\"") != std::string::npos);
  CHECK(pj.find("\"per_assignment\"") != std::string::npos);
  std::string pt = render_pair(pd, {"c'", "c''"}, {"T"}, {{"t'", "t''"}},
                               false);
  CHECK(pt.find("t''") != std::string::npos);

  std::vector<std::pair<double, double>> bounds{{0.1, 0.938440492},
                                                {0.061559508, 0.9}};
  std::string post = render_posterior(
      "C", {"c'", "c''"}, bounds, std::vector<double>{0.645991425,
                                                      0.354008575},
      true);
  CHECK(post.find("0.938440492") != std::string::npos);
  std::string post_t = render_posterior("C", {"c'", "c''"}, bounds,
                                        std::nullopt, false);
  CHECK(post_t.find("c''") != std::string::npos);
}
