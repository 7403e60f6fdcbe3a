#include "doctest.h"
#include "harness.hpp"
#include "ltlsmc/monitor.hpp"

using namespace ltlsmc;

namespace {

constexpr ResultMessage W = ResultMessage::waiting();
constexpr ResultMessage T = ResultMessage::of(true);
constexpr ResultMessage F = ResultMessage::of(false);

Formula basis(std::string_view text) { return rewrite_to_basis(parse_property(text)); }

APSnapshot snap(std::size_t state, std::map<std::string, bool> aps) { return APSnapshot{state, std::move(aps)}; }

}  // namespace

TEST_CASE("build_network: hierarchy shape") {
  const MonitorNetwork mutex(basis("G (!(crit1 && crit2))"), TemporalClass::TL_G);
  NetworkShape want;
  want.until_workers = 1;
  want.and_workers = 1;
  want.not_workers = 1;
  want.true_leaves = 1;
  want.condition_checkers = 2;
  CHECK(mutex.shape() == want);
  CHECK(mutex.shape().operator_workers() == 3);
  CHECK(mutex.atoms() == std::vector<std::string>{"crit1", "crit2"});

  const MonitorNetwork leaf(Formula::atom("p"), TemporalClass::TL_G);
  CHECK(leaf.shape().operator_workers() == 0);
  CHECK(leaf.shape().condition_checkers == 1);
  CHECK(leaf.shape().property_checkers == 1);

  const MonitorNetwork until(basis("p U q"), TemporalClass::TL_F);
  CHECK(until.shape().until_workers == 1);
  CHECK(until.shape().operator_workers() == 1);
  CHECK(until.shape().condition_checkers == 2);

  // Atoms are shared across the network.
  const MonitorNetwork shared(basis("p && X p"), TemporalClass::TL_G);
  CHECK(shared.shape().condition_checkers == 1);
}

TEST_CASE("build_network: rejects unsupported input") {
  CHECK_THROWS_AS(MonitorNetwork(basis("p"), TemporalClass::TL_GF), UnsupportedClassError);
  CHECK_THROWS_AS(MonitorNetwork(parse_property("G p"), TemporalClass::TL_G), std::invalid_argument);
  CHECK_THROWS_AS(PropertyMonitor("G F p"), UnsupportedClassError);
  CHECK_THROWS_AS(PropertyMonitor("G (p"), ParseError);
}

TEST_CASE("step: table trace root messages") {
  MonitorNetwork net(basis("G (!(crit1 && crit2))"), TemporalClass::TL_G);
  const bool crit1[] = {false, false, false, false, false, false, true, true, true, true};
  const bool crit2[] = {false, false, false, false, false, false, false, false, false, true};
  for (std::size_t i = 0; i < 10; ++i) {
    const ResultMessage root = net.step(snap(i, {{"crit1", crit1[i]}, {"crit2", crit2[i]}}));
    const auto frontier = net.frontier_messages();
    CHECK(frontier[3] == ResultMessage::of(crit1[i] && crit2[i]));  // And
    if (i < 9) {
      CHECK(root == W);
      CHECK(frontier[1] == W);  // Until
    } else {
      CHECK(root == F);
      CHECK(frontier[1] == T);
    }
  }
  CHECK(net.finish() == Verdict::False0);
  CHECK(net.resolved_at() == 10);
}

TEST_CASE("step: leaf property resolves at once") {
  MonitorNetwork net(Formula::atom("p"), TemporalClass::TL_G);
  CHECK(net.step(snap(0, {{"p", true}})) == T);
  CHECK(net.latched());
  CHECK(net.resolved_at() == 1);
  CHECK(net.finish() == Verdict::True1);
}

TEST_CASE("step: snapshot validation") {
  MonitorNetwork net(basis("p U q"), TemporalClass::TL_F);
  CHECK_THROWS_AS(net.step(snap(0, {{"p", true}})), SnapshotError);
  CHECK_THROWS_AS(net.step(snap(1, {{"p", true}, {"q", false}})), SnapshotError);
  CHECK(net.step(snap(0, {{"p", true}, {"q", false}, {"extra", true}})) == W);
  CHECK_THROWS_AS(net.step(snap(0, {{"p", true}, {"q", false}})), SnapshotError);
  CHECK(net.state_count() == 1);
}

TEST_CASE("finish: truncation at the root") {
  MonitorNetwork g(basis("G !p"), TemporalClass::TL_G);
  CHECK(g.finish() == Verdict::PresumablyTrue);
  for (std::size_t i = 0; i < 3; ++i) g.step(snap(i, {{"p", false}}));
  CHECK(g.finish() == Verdict::PresumablyTrue);

  MonitorNetwork f(basis("F p"), TemporalClass::TL_F);
  CHECK(f.finish() == Verdict::PresumablyFalse);
  f.step(snap(0, {{"p", false}}));
  CHECK(f.finish() == Verdict::PresumablyFalse);
  f.step(snap(1, {{"p", true}}));
  CHECK(f.finish() == Verdict::True1);
}

TEST_CASE("next: waits for the following state") {
  MonitorNetwork net(basis("X X p"), TemporalClass::TL_G);
  CHECK(net.step(snap(0, {{"p", true}})) == W);
  CHECK(net.step(snap(1, {{"p", true}})) == W);
  CHECK(net.step(snap(2, {{"p", false}})) == F);
}

TEST_CASE("reset: behaves like a fresh network") {
  const Formula f = basis("(p U q) && X !q");
  MonitorNetwork used(f, TemporalClass::TL_G);
  used.step(snap(0, {{"p", true}, {"q", false}}));
  used.step(snap(1, {{"p", false}, {"q", true}}));
  used.reset();
  MonitorNetwork fresh(f, TemporalClass::TL_G);
  CHECK(used.state_count() == 0);
  CHECK_FALSE(used.latched());
  CHECK(used.evaluator_count() == fresh.evaluator_count());
  CHECK(used.frontier_messages() == fresh.frontier_messages());
  const APSnapshot s0 = snap(0, {{"p", false}, {"q", true}});
  CHECK(used.step(s0) == fresh.step(s0));

  // Consecutive iterations on one network match two fresh networks.
  testgen::Rng rng(31);
  const std::vector<std::string> aps{"p", "q"};
  MonitorNetwork reused(f, TemporalClass::TL_G);
  for (int i = 0; i < 200; ++i) {
    const FiniteWord u = testgen::random_word(rng, aps, 6);
    MonitorNetwork once(f, TemporalClass::TL_G);
    CHECK(testgen::run_word(reused, u) == testgen::run_word(once, u));
  }
}

TEST_CASE("latch monotonicity") {
  testgen::Rng rng(32);
  const auto atoms = testgen::atoms_ab();
  for (int i = 0; i < 1500; ++i) {
    const Formula f = testgen::random_basis(rng, 4, atoms);
    MonitorNetwork net(f, TemporalClass::TL_G);
    const FiniteWord u = testgen::random_word(rng, atoms, 6);
    std::optional<ResultMessage> first;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const ResultMessage m = net.step(testgen::letter_snapshot(u, k));
      if (first) CHECK(m == *first);
      if (m.resolved && !first) {
        first = m;
        CHECK(net.resolved_at() == k + 1);
      }
    }
    if (!first) CHECK_FALSE(net.resolved_at().has_value());
  }
}

TEST_CASE("oracle equivalence: exhaustive depth 2, words up to 4") {
  const auto atoms = testgen::atoms_ab();
  const auto words = enumerate_words(atoms, 4);
  testgen::EquivalenceStats stats;
  for (const Formula& f : testgen::enumerate_basis(2, atoms)) testgen::compare_with_oracle(f, words, stats);
  INFO(stats.first_mismatch);
  CHECK(stats.mismatches == 0);
}

TEST_CASE("oracle equivalence: random depth 4 with three atoms") {
  testgen::Rng rng(33);
  const std::vector<std::string> atoms{"a", "b", "c"};
  testgen::EquivalenceStats stats;
  for (int i = 0; i < 1500; ++i) {
    const Formula f = testgen::random_basis(rng, 4, atoms);
    testgen::compare_with_oracle(f, {testgen::random_word(rng, atoms, 6)}, stats);
  }
  INFO(stats.first_mismatch);
  CHECK(stats.mismatches == 0);
}

TEST_CASE("message-order independence") {
  testgen::Rng rng(34);
  const auto atoms = testgen::atoms_ab();
  for (int i = 0; i < 400; ++i) {
    const Formula f = testgen::random_basis(rng, 4, atoms);
    const FiniteWord u = testgen::random_word(rng, atoms, 6);
    MonitorNetwork fifo(f, TemporalClass::TL_G);
    NetworkOptions shuffled;
    shuffled.shuffle_seed = rng();
    MonitorNetwork other(f, TemporalClass::TL_G, shuffled);
    for (std::size_t k = 0; k < u.size(); ++k) {
      const APSnapshot s = testgen::letter_snapshot(u, k);
      CHECK(fifo.step(s) == other.step(s));
    }
    CHECK(fifo.finish() == other.finish());
  }
}

TEST_CASE("registry sharing soundness and concurrent executor") {
  testgen::Rng rng(35);
  const auto atoms = testgen::atoms_ab();
  NetworkOptions isolated;
  isolated.sharing = Sharing::Isolated;
  NetworkOptions concurrent;
  concurrent.executor = ExecutorKind::Concurrent;
  concurrent.threads = 3;
  for (int i = 0; i < 300; ++i) {
    const Formula f = testgen::random_basis(rng, 4, atoms);
    const FiniteWord u = testgen::random_word(rng, atoms, 6);
    MonitorNetwork memo(f, TemporalClass::TL_F);
    MonitorNetwork iso(f, TemporalClass::TL_F, isolated);
    MonitorNetwork conc(f, TemporalClass::TL_F, concurrent);
    for (std::size_t k = 0; k < u.size(); ++k) {
      const APSnapshot s = testgen::letter_snapshot(u, k);
      const ResultMessage m = memo.step(s);
      CHECK(iso.step(s) == m);
      CHECK(conc.step(s) == m);
    }
    CHECK(memo.evaluator_count() <= iso.evaluator_count());
    CHECK(memo.finish() == iso.finish());
    CHECK(memo.finish() == conc.finish());
    CHECK(memo.resolved_at() == conc.resolved_at());
  }
}

TEST_CASE("master fans snapshots out to every property") {
  Master m;
  m.add(PropertyMonitor("G (!(crit1 && crit2))"));
  m.add(PropertyMonitor("F crit2"));
  m.add(PropertyMonitor("G (x > 0 || crit1)"));
  CHECK(m.size() == 3);
  CHECK(m.atoms() == std::vector<std::string>{"crit1", "crit2", "x > 0"});
  auto roots = m.step(snap(0, {{"crit1", true}, {"crit2", false}, {"x > 0", false}}));
  CHECK(roots == std::vector<ResultMessage>{W, W, W});
  roots = m.step(snap(1, {{"crit1", true}, {"crit2", true}, {"x > 0", false}}));
  CHECK(roots == std::vector<ResultMessage>{F, T, W});
  CHECK(m.finish() == std::vector<Verdict>{Verdict::False0, Verdict::True1, Verdict::PresumablyTrue});

  const VerdictRecord r = verdict_record(m[0]);
  CHECK(r.property == "G (!(crit1 && crit2))");
  CHECK(r.cls == TemporalClass::TL_G);
  CHECK(r.verdict == Verdict::False0);
  CHECK(r.resolved_at_state == 2);
  CHECK_FALSE(verdict_record(m[2]).resolved_at_state.has_value());

  m.reset();
  CHECK(m.finish() == std::vector<Verdict>{Verdict::PresumablyTrue, Verdict::PresumablyFalse, Verdict::PresumablyTrue});
}
