#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "credal/demo.hpp"
#include "credal/observation.hpp"
#include "credal/oracle.hpp"
#include "helpers.hpp"

using namespace credal;
using testutil::random_gamble;
using testutil::random_row;
using testutil::small_space;

namespace {

MultiValuedMap identity_map(const SpacePtr& sp) {
  std::vector<std::vector<int>> images;
  for (int i = 0; i < sp->size(); ++i) images.push_back({i});
  return MultiValuedMap(sp, FiniteSpace::make("seen", sp->labels()), images);
}

}  // namespace

TEST_CASE("multi-valued map images, compatibility, forcing") {
  MontySetup m = make_monty();
  CHECK(m.map.image(0) == std::vector<int>{0, 1});
  CHECK(m.map.image(1) == std::vector<int>{1});
  CHECK(m.map.image(2) == std::vector<int>{0});
  CHECK(m.map.compatible(0) == std::vector<int>{0, 2});
  CHECK(m.map.compatible(1) == std::vector<int>{0, 1});
  CHECK(m.map.forcing(0) == std::vector<int>{2});
  CHECK(m.map.forcing(1) == std::vector<int>{1});
  CHECK_THROWS_AS(m.map.compatible(2), validation_error);
  CHECK_THROWS_AS(m.map.image(-1), validation_error);

  auto st = small_space("st", 3);
  auto ob = small_space("ob", 2);
  CHECK_THROWS_AS(MultiValuedMap(st, ob, {{0}, {}, {1}}), validation_error);
  CHECK_THROWS_AS(MultiValuedMap(st, ob, {{0}, {2}, {1}}), validation_error);
  CHECK_THROWS_AS(MultiValuedMap(st, ob, {{0}, {0}, {0}}), validation_error);
  CHECK_THROWS_AS(MultiValuedMap(st, ob, {{0}, {1}}), validation_error);
}

TEST_CASE("the extended game has no forcing observations") {
  MontySetup m = make_monty_extended();
  CHECK(m.map.compatible(0) == std::vector<int>{0, 1, 2});
  CHECK(m.map.compatible(1) == std::vector<int>{0, 2});
  CHECK(m.map.compatible(2) == std::vector<int>{0, 1});
  for (int o = 0; o < 3; ++o) {
    CHECK(m.map.forcing(o).empty());
    CHECK_FALSE(naive_ok(m.map, o));
  }

  MontySetup std_game = make_monty();
  CHECK_FALSE(naive_ok(std_game.map, 0));
  CHECK_FALSE(naive_ok(std_game.map, 1));

  auto sp = small_space("q", 4);
  MultiValuedMap id = identity_map(sp);
  for (int o = 0; o < 4; ++o) CHECK(naive_ok(id, o));
}

TEST_CASE("naive updating conditions on the compatible set") {
  MontySetup m = make_monty();
  MassFunction uniform = MassFunction::uniform(m.states);
  Gamble door3 = Gamble::indicator(m.states, {2});
  Gamble door1 = Gamble::indicator(m.states, {0});
  Gamble door2 = Gamble::indicator(m.states, {1});
  CHECK(naive_update(uniform, m.map, 0, door3) == doctest::Approx(0.5));
  CHECK(naive_update(uniform, m.map, 0, door1) == doctest::Approx(0.5));
  CHECK(naive_update(uniform, m.map, 0, door2) == doctest::Approx(0.0));
  Gamble konst = Gamble::constant(m.states, 4.25);
  CHECK(naive_update(uniform, m.map, 0, konst) == doctest::Approx(4.25));

  MassFunction door2_only(m.states, {0.0, 1.0, 0.0});
  CHECK_THROWS_AS(naive_update(door2_only, m.map, 0, door3),
                  precondition_error);
}

TEST_CASE("regular and natural extensions agree on the standard game") {
  MontySetup m = make_monty();
  CredalSet prior = CredalSet::linear(MassFunction::uniform(m.states));
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    Gamble f = random_gamble(rng, m.states);
    ObsUpdate reg = regular_extension_obs(prior, m.map, 0, f);
    CHECK_FALSE(reg.vacuous);
    double expect = 0.5 * f[2] + 0.5 * std::min(f[2], f[0]);
    CHECK(reg.value == doctest::Approx(expect).epsilon(1e-9));
    ObsUpdate nat = natural_extension_obs(prior, m.map, 0, f);
    CHECK_FALSE(nat.vacuous);
    CHECK(nat.value == doctest::Approx(reg.value).epsilon(1e-12));
  }
}

TEST_CASE("zero-probability observations go vacuous instead of failing") {
  auto sp = small_space("w", 3);
  MultiValuedMap id = identity_map(sp);
  CredalSet vac = CredalSet::vacuous(sp);
  std::mt19937 rng(11);
  Gamble f = random_gamble(rng, sp);

  // Under a vacuous prior the forcing set has lower probability zero, so
  // the natural extension learns nothing.
  ObsUpdate nat = natural_extension_obs(vac, id, 1, f);
  CHECK(nat.vacuous);
  CHECK(nat.value == doctest::Approx(f.min_value()));
  // The regular extension still conditions: upper probability is positive.
  ObsUpdate reg = regular_extension_obs(vac, id, 1, f);
  CHECK_FALSE(reg.vacuous);
  CHECK(reg.value == doctest::Approx(f[1]));

  // A prior that rules the compatible set out entirely: both go vacuous.
  MontySetup m = make_monty();
  CredalSet door2_only =
      CredalSet::linear(MassFunction(m.states, {0.0, 1.0, 0.0}));
  Gamble g = random_gamble(rng, m.states);
  ObsUpdate reg2 = regular_extension_obs(door2_only, m.map, 0, g);
  CHECK(reg2.vacuous);
  CHECK(reg2.value == doctest::Approx(g.min_value()));
  ObsUpdate nat2 = natural_extension_obs(door2_only, m.map, 0, g);
  CHECK(nat2.vacuous);
  CHECK(nat2.value == doctest::Approx(g.min_value()));
}

TEST_CASE("switching beats staying, until the host gets more options") {
  MontySetup m = make_monty();
  CredalSet prior = CredalSet::linear(MassFunction::uniform(m.states));
  Gamble switch_minus_stay(m.states, {-1.0, 0.0, 1.0});
  Gamble stay_minus_switch(m.states, {1.0, 0.0, -1.0});
  CHECK(regular_extension_obs(prior, m.map, 0, switch_minus_stay).value ==
        doctest::Approx(0.0));
  CHECK(regular_extension_obs(prior, m.map, 0, stay_minus_switch).value ==
        doctest::Approx(-1.0));

  MontySetup ext = make_monty_extended();
  CredalSet prior3 = CredalSet::linear(MassFunction::uniform(ext.states));
  Gamble sw(ext.states, {-1.0, 0.0, 1.0});
  Gamble st(ext.states, {1.0, 0.0, -1.0});
  // Observation index 1 is the opened door 2.
  CHECK(regular_extension_obs(prior3, ext.map, 1, sw).value ==
        doctest::Approx(-1.0));
  CHECK(regular_extension_obs(prior3, ext.map, 1, st).value ==
        doctest::Approx(-1.0));
}

TEST_CASE("coarsening at random updating") {
  MontySetup m = make_monty();
  std::mt19937 rng(17);

  // Precise prior: coincides with naive updating.
  for (int t = 0; t < 10; ++t) {
    MassFunction p(m.states, random_row(rng, 3));
    Gamble f = random_gamble(rng, m.states);
    CHECK(car_posterior(CredalSet::linear(p), m.map, 0, f) ==
          doctest::Approx(naive_update(p, m.map, 0, f)).epsilon(1e-9));
  }

  // Two vertices: lower envelope of the two conditioned expectations.
  MassFunction q1(m.states, {0.5, 0.3, 0.2});
  MassFunction q2(m.states, {0.2, 0.2, 0.6});
  CredalSet two = CredalSet::vertices({q1, q2});
  for (int t = 0; t < 10; ++t) {
    Gamble f = random_gamble(rng, m.states);
    auto quotient = [&](const MassFunction& q) {
      double num = q[0] * f[0] + q[2] * f[2];
      return num / (q[0] + q[2]);
    };
    CHECK(car_posterior(two, m.map, 0, f) ==
          doctest::Approx(std::min(quotient(q1), quotient(q2)))
              .epsilon(1e-9));
  }

  // Vacuous over a subset of the compatible states: worst case inside it.
  CredalSet vac_sub = CredalSet::vacuous(m.states, {0, 2});
  for (int t = 0; t < 5; ++t) {
    Gamble f = random_gamble(rng, m.states);
    CHECK(car_posterior(vac_sub, m.map, 0, f) ==
          doctest::Approx(std::min(f[0], f[2])).epsilon(1e-9));
  }

  // Interval prior against explicit extreme-point enumeration.
  std::vector<double> ilo{0.2, 0.1, 0.2}, ihi{0.6, 0.5, 0.5};
  CredalSet iv = CredalSet::intervals(m.states, ilo, ihi);
  std::vector<LinearConstraint> cons;
  for (int i = 0; i < 3; ++i) {
    LinearConstraint lo, hi;
    lo.coeffs = std::vector<double>(3, 0.0);
    lo.coeffs[i] = 1.0;
    lo.rel = Rel::GE;
    lo.rhs = ilo[i];
    hi.coeffs = lo.coeffs;
    hi.rel = Rel::LE;
    hi.rhs = ihi[i];
    cons.push_back(lo);
    cons.push_back(hi);
  }
  CredalSet poly = CredalSet::polytope(m.states, cons);
  for (int t = 0; t < 10; ++t) {
    Gamble f = random_gamble(rng, m.states);
    double best = std::numeric_limits<double>::infinity();
    for (const MassFunction& q : interval_extreme_points(iv)) {
      double den = q[0] + q[2];
      best = std::min(best, (q[0] * f[0] + q[2] * f[2]) / den);
    }
    double got = car_posterior(iv, m.map, 0, f);
    CHECK(got == doctest::Approx(best).epsilon(1e-9));
    // A polytope cut out by the same inequalities must agree.
    CHECK(car_posterior(poly, m.map, 0, f) ==
          doctest::Approx(got).epsilon(1e-7));
  }

  // Fully vacuous prior: the compatible set has lower probability zero.
  Gamble f = random_gamble(rng, m.states);
  CHECK_THROWS_AS(car_posterior(CredalSet::vacuous(m.states), m.map, 0, f),
                  precondition_error);
}

TEST_CASE("when nothing is forcing the posterior collapses to vacuity") {
  MontySetup ext = make_monty_extended();
  CredalSet prior = CredalSet::linear(MassFunction::uniform(ext.states));
  std::mt19937 rng(23);
  for (int t = 0; t < 20; ++t) {
    Gamble f = random_gamble(rng, ext.states);
    double vp = vacuous_posterior(prior, ext.map, 1, f);
    CHECK(vp == doctest::Approx(std::min(f[0], f[2])).epsilon(1e-12));
    ObsUpdate reg = regular_extension_obs(prior, ext.map, 1, f);
    CHECK_FALSE(reg.vacuous);
    CHECK(reg.value == doctest::Approx(vp).epsilon(1e-9));
  }

  // Singleton compatible set without forcing: the updated value is just f
  // at that state.
  auto st = small_space("s", 2);
  auto ob = small_space("o", 3);
  MultiValuedMap mvm(st, ob, {{0, 1}, {2}});
  CredalSet prior2 = CredalSet::linear(MassFunction(st, {0.3, 0.7}));
  Gamble g = random_gamble(rng, st);
  CHECK(vacuous_posterior(prior2, mvm, 0, g) == doctest::Approx(g[0]));

  // Forcing states present: theorem does not apply.
  MontySetup m = make_monty();
  CHECK_THROWS_AS(vacuous_posterior(prior2, mvm, 2, g), precondition_error);
  Gamble h = random_gamble(rng, m.states);
  CHECK_THROWS_AS(
      vacuous_posterior(CredalSet::linear(MassFunction::uniform(m.states)),
                        m.map, 0, h),
      precondition_error);

  // A compatible state with zero upper probability also disqualifies it.
  CredalSet degenerate =
      CredalSet::linear(MassFunction(ext.states, {0.5, 0.5, 0.0}));
  CHECK_THROWS_AS(vacuous_posterior(degenerate, ext.map, 1, h),
                  precondition_error);
}

TEST_CASE("vacuity theorem matches the regular extension on random instances") {
  std::mt19937 rng(29);
  int tested = 0;
  while (tested < 40) {
    auto st = small_space("x", 2 + static_cast<int>(rng() % 3));
    auto ob = small_space("y", 2 + static_cast<int>(rng() % 2));
    MultiValuedMap mvm = testutil::random_mvm(rng, st, ob);
    int nv = 1 + static_cast<int>(rng() % 3);
    std::vector<MassFunction> vs;
    for (int v = 0; v < nv; ++v)
      vs.emplace_back(st, random_row(rng, st->size()));
    CredalSet prior = CredalSet::vertices(vs);
    for (int o = 0; o < ob->size(); ++o) {
      if (!mvm.forcing(o).empty()) continue;
      Gamble f = random_gamble(rng, st);
      double vp = vacuous_posterior(prior, mvm, o, f);
      ObsUpdate reg = regular_extension_obs(prior, mvm, o, f);
      CHECK_FALSE(reg.vacuous);
      CHECK(vp == doctest::Approx(reg.value).epsilon(1e-9));
      CHECK(vp ==
            doctest::Approx(brute_regular_extension(prior, mvm, o, f))
                .epsilon(1e-9));
      ++tested;
    }
  }
}

TEST_CASE("missingness pattern bookkeeping") {
  auto a = small_space("A", 2);
  auto b = small_space("B", 3);
  auto c = small_space("C", 2);
  MissingnessPattern pat({a, b, c}, {std::nullopt, 1, std::nullopt});
  CHECK(pat.num_attributes() == 3);
  CHECK(pat.completion_count() == 4);
  CHECK(pat.missing_indices() == std::vector<int>{0, 2});
  CHECK(pat.is_missing(0));
  CHECK_FALSE(pat.is_missing(1));
  CHECK(pat.attribute_space()->size() == 12);

  std::vector<std::vector<int>> seen;
  pat.for_each_completion(
      [&](const std::vector<int>& full) { seen.push_back(full); });
  std::vector<std::vector<int>> expect{
      {0, 1, 0}, {0, 1, 1}, {1, 1, 0}, {1, 1, 1}};
  CHECK(seen == expect);

  MissingnessPattern lab = MissingnessPattern::from_labels(
      {a, b, c}, {std::nullopt, std::string("B1"), std::nullopt});
  CHECK(lab.observed() == pat.observed());
  CHECK_THROWS_AS(MissingnessPattern::from_labels(
                      {a, b, c}, {std::nullopt, std::string("nope"),
                                  std::nullopt}),
                  validation_error);
  CHECK_THROWS_AS(MissingnessPattern({a}, {std::optional<int>(5)}),
                  validation_error);
  CHECK_THROWS_AS(MissingnessPattern({}, {}), validation_error);

  MissingnessPattern full({a, b}, {1, 2});
  CHECK(full.completion_count() == 1);
  CHECK(full.missing_indices().empty());
}

TEST_CASE("conservative updating on a toy table") {
  auto attr = small_space("A", 2);
  auto cls = small_space("K", 2);
  std::vector<CredalSet> members{
      CredalSet::linear(MassFunction(cls, {0.8, 0.2})),
      CredalSet::linear(MassFunction(cls, {0.3, 0.7}))};
  Gamble f = Gamble::indicator(cls, {0});

  MissingnessPattern missing({attr}, {std::nullopt});
  ConditionalFamily fam(missing.attribute_space(), members);
  CHECK(cur_posterior(fam, missing, f) == doctest::Approx(0.3));

  MissingnessPattern observed({attr}, {std::optional<int>(0)});
  CHECK(cur_posterior(fam, observed, f) == doctest::Approx(0.8));

  // The cap guards the completion enumeration.
  auto b = small_space("B", 2);
  std::vector<SpacePtr> four{b, b, b, b};
  MissingnessPattern wide(
      four, {std::nullopt, std::nullopt, std::nullopt, std::nullopt});
  ConditionalFamily wide_fam = ConditionalFamily::constant(
      wide.attribute_space(), CredalSet::linear(MassFunction(cls, {0.5, 0.5})));
  CHECK_THROWS_AS(cur_posterior(wide_fam, wide, f, 8), cap_error);
  CHECK(cur_posterior(wide_fam, wide, f, 16) == doctest::Approx(0.5));
}

TEST_CASE("conservative updating reproduces the chest clinic numbers") {
  BayesNet net = build_asia();
  const int class_node = 3;
  const std::vector<int> attr_nodes{0, 1, 2, 4, 5, 6};  // V S T H L D
  std::vector<SpacePtr> attrs;
  std::vector<int> radix;
  for (int n : attr_nodes) {
    attrs.push_back(net.node(n).states);
    radix.push_back(net.node(n).states->size());
  }
  // Smoker yes, abnormal X-ray; everything else missing.
  MissingnessPattern pattern(
      attrs, {std::nullopt, 0, std::nullopt, std::nullopt, 0, std::nullopt});
  CHECK(pattern.completion_count() == 16);

  auto cls = net.node(class_node).states;
  std::vector<CredalSet> members;
  for (int flat = 0; flat < pattern.attribute_space()->size(); ++flat) {
    std::vector<int> digits = unflatten(flat, radix);
    std::vector<int> full(net.size(), 0);
    for (size_t k = 0; k < attr_nodes.size(); ++k)
      full[attr_nodes[k]] = digits[k];
    full[class_node] = 0;
    double w0 = net.joint_mass(full);
    full[class_node] = 1;
    double w1 = net.joint_mass(full);
    members.push_back(CredalSet::linear(
        MassFunction(cls, {w0 / (w0 + w1), w1 / (w0 + w1)}, 1e-9)));
  }
  ConditionalFamily fam(pattern.attribute_space(), std::move(members));

  double lower_c1 = cur_posterior(fam, pattern, Gamble::indicator(cls, {0}));
  double lower_c2 = cur_posterior(fam, pattern, Gamble::indicator(cls, {1}));
  CHECK(lower_c1 == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(lower_c2 == doctest::Approx(45.0 / 731.0).epsilon(1e-9));

  Evidence ev{{1, 0}, {5, 0}};
  auto pb = posterior_bounds(net, class_node, 0, ev);
  CHECK(pb.first == doctest::Approx(lower_c1).epsilon(1e-12));
  CHECK(1.0 - pb.second == doctest::Approx(lower_c2).epsilon(1e-9));

  double naive = naive_posterior(net, class_node, 0, ev);
  CHECK(naive == doctest::Approx(0.645991425).epsilon(1e-6));
  CHECK(lower_c1 <= naive + 1e-12);
}

TEST_CASE("conservative updating is a coherent lower prevision") {
  std::mt19937 rng(31);
  auto a = small_space("A", 2);
  auto b = small_space("B", 2);
  auto cls = small_space("K", 3);
  MissingnessPattern pattern({a, b}, {std::optional<int>(1), std::nullopt});
  std::vector<CredalSet> members;
  members.push_back(CredalSet::linear(MassFunction(cls, random_row(rng, 3))));
  members.push_back(CredalSet::vacuous(cls));
  members.push_back(CredalSet::intervals(cls, {0.1, 0.2, 0.1},
                                         {0.5, 0.6, 0.6}));
  members.push_back(
      CredalSet::vertices({MassFunction(cls, random_row(rng, 3)),
                           MassFunction(cls, random_row(rng, 3))}));
  ConditionalFamily fam(pattern.attribute_space(), members);
  auto cur = [&](const Gamble& f) { return cur_posterior(fam, pattern, f); };

  for (int t = 0; t < 25; ++t) {
    Gamble f = random_gamble(rng, cls);
    Gamble g = random_gamble(rng, cls);
    CHECK(cur(f) >= f.min_value() - 1e-12);
    CHECK(cur(f + g) >= cur(f) + cur(g) - 1e-9);
    double lam = 0.25 + 2.0 * (rng() % 100) / 100.0;
    CHECK(cur(lam * f) == doctest::Approx(lam * cur(f)).epsilon(1e-9));
  }
  CHECK(cur(Gamble::constant(cls, -1.5)) == doctest::Approx(-1.5));
}

TEST_CASE("materialized missing-data maps never force") {
  auto a = small_space("A", 2);
  auto b = small_space("B", 2);
  MissingnessPattern pattern({a, b}, {std::nullopt, 1});
  MultiValuedMap mmap = materialize_missing_data_map(pattern);
  CHECK(mmap.states()->size() == 4);
  CHECK(mmap.observations()->size() == 9);
  for (int o = 0; o < mmap.observations()->size(); ++o) {
    CHECK(mmap.forcing(o).empty());
    CHECK_FALSE(naive_ok(mmap, o));
  }
  // Each state can show either its value or a blank per coordinate.
  for (int x = 0; x < 4; ++x)
    CHECK(mmap.image(x).size() == 4);

  int idx = pattern_observation_index(pattern);
  CHECK(mmap.compatible(idx) == std::vector<int>{1, 3});

  // Naive updating through the materialized map is conditioning on the
  // states consistent with the observed coordinates.
  std::mt19937 rng(37);
  MassFunction p(mmap.states(), random_row(rng, 4));
  Gamble f = random_gamble(rng, mmap.states());
  double expect = (p[1] * f[1] + p[3] * f[3]) / (p[1] + p[3]);
  CHECK(naive_update(p, mmap, idx, f) == doctest::Approx(expect).epsilon(1e-12));
}
