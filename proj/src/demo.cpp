#include "credal/demo.hpp"

#include <sstream>

#include "credal/io.hpp"

namespace credal {

BayesNet build_asia() {
  std::vector<BayesNet::NodeSpec> specs;
  auto add = [&](const std::string& name, std::vector<std::string> parents,
                 std::vector<std::vector<double>> rows) {
    std::string low(1, static_cast<char>(name[0] - 'A' + 'a'));
    BayesNet::NodeSpec s;
    s.name = name;
    s.states = FiniteSpace::make(name, {low + "'", low + "''"});
    s.parents = std::move(parents);
    s.rows = std::move(rows);
    specs.push_back(std::move(s));
  };
  add("V", {}, {{0.01, 0.99}});
  add("S", {}, {{0.5, 0.5}});
  add("T", {"V"}, {{0.05, 0.95}, {0.01, 0.99}});
  add("C", {"S"}, {{0.1, 0.9}, {0.01, 0.99}});
  add("H", {"S"}, {{0.6, 0.4}, {0.3, 0.7}});
  add("L", {"T", "C"},
      {{0.98, 0.02}, {0.98, 0.02}, {0.98, 0.02}, {0.05, 0.95}});
  add("D", {"T", "C", "H"},
      {{0.9, 0.1},
       {0.7, 0.3},
       {0.9, 0.1},
       {0.7, 0.3},
       {0.9, 0.1},
       {0.7, 0.3},
       {0.8, 0.2},
       {0.1, 0.9}});
  return BayesNet(specs);
}

MontySetup make_monty() {
  SpacePtr states = FiniteSpace::make("car", {"1", "2", "3"});
  SpacePtr obs = FiniteSpace::make("opened", {"2", "3"});
  MultiValuedMap map(states, obs, {{0, 1}, {1}, {0}});
  return MontySetup{states, obs, std::move(map),
                    CredalSet::linear(MassFunction::uniform(states))};
}

MontySetup make_monty_extended() {
  SpacePtr states = FiniteSpace::make("car", {"1", "2", "3"});
  SpacePtr obs = FiniteSpace::make("opened", {"0", "2", "3"});
  MultiValuedMap map(states, obs, {{0, 1, 2}, {0, 2}, {0, 1}});
  return MontySetup{states, obs, std::move(map),
                    CredalSet::linear(MassFunction::uniform(states))};
}

std::string demo_asia_text() {
  BayesNet net = build_asia();
  int c = net.node_index("C");
  std::ostringstream os;
  os << "Chest-clinic network, classifying C (lung cancer).\n\n";
  {
    Evidence e = evidence_from_labels(net, {{"L", "l'"}, {"S", "s'"}});
    os << "Evidence L=l', S=s' (positive X-ray, smoker; other nodes "
          "missing):\n";
    ClassifyOptions opts;
    opts.with_posterior = true;
    opts.with_naive = true;
    os << render_report(classify(net, c, e, opts), false);
  }
  os << "\n";
  {
    Evidence e =
        evidence_from_labels(net, {{"L", "l'"}, {"S", "s'"}, {"T", "t'"}});
    os << "Evidence L=l', S=s', T=t' (tuberculosis also observed):\n";
    ClassifyOptions opts;
    os << render_report(classify(net, c, e, opts), false);
  }
  os << "\nThe posterior bounds range over every completion of the missing\n"
        "nodes; the naive value marginalizes them instead, which is only\n"
        "justified when the missingness process is known to be unselective.\n";
  return os.str();
}

std::string demo_monty_text() {
  std::ostringstream os;
  os << "Three doors, one car, uniform prior.  The player holds door 1;\n"
        "the host (who knows where the car is) opens door 2.  Nothing is\n"
        "assumed about how the host chooses when both doors are free.\n\n";
  MontySetup m = make_monty();
  int o = m.observations->index("2");
  Gamble stay = Gamble::indicator(m.states, {0});    // win by staying
  Gamble sw = Gamble::indicator(m.states, {2});      // win by switching
  auto show = [&](const char* label, const Gamble& f) {
    ObsUpdate r = regular_extension_obs(m.prior, m.map, o, f);
    os << "  lower value of " << label << ": " << r.value << "\n";
  };
  show("switch - stay", sw - stay);
  show("stay - switch", stay - sw);
  os << "Switching is not strictly preferred (value 0, not > 0), and\n"
        "neither is staying: the two actions are incomparable because the\n"
        "host protocol is unknown.  A host who only opens door 2 when\n"
        "forced makes staying worthless; one who opens it whenever allowed\n"
        "still leaves switching even odds:\n";
  {
    ObsUpdate s1 = regular_extension_obs(m.prior, m.map, o, stay);
    ObsUpdate s2 = regular_extension_obs(m.prior, m.map, o, sw);
    os << "  staying wins with lower probability " << s1.value
       << ", switching " << s2.value << "\n";
  }
  os << "\nVariant where the host may also open no door at all:\n";
  MontySetup x = make_monty_extended();
  int o2 = x.observations->index("2");
  Gamble stay2 = Gamble::indicator(x.states, {0});
  Gamble sw2 = Gamble::indicator(x.states, {2});
  ObsUpdate a = regular_extension_obs(x.prior, x.map, o2, sw2 - stay2);
  ObsUpdate b = regular_extension_obs(x.prior, x.map, o2, stay2 - sw2);
  os << "  lower value of switch - stay: " << a.value << "\n";
  os << "  lower value of stay - switch: " << b.value << "\n";
  os << "Both are negative: with this richer protocol space even the weak\n"
        "edge of switching disappears.\n";
  return os.str();
}

}  // namespace credal
