#include "doctest.h"
#include "harness.hpp"

using namespace ltlsmc;

namespace {
constexpr ResultMessage W = ResultMessage::waiting();
constexpr ResultMessage T = ResultMessage::of(true);
constexpr ResultMessage F = ResultMessage::of(false);
}  // namespace

TEST_CASE("until_transition: resolution cases") {
  CHECK(until_transition(T, F) == W);
  for (ResultMessage left : {W, T, F}) CHECK(until_transition(left, T) == T);
  CHECK(until_transition(F, F) == F);
  CHECK(until_transition(F, W) == W);
  CHECK(until_transition(T, W) == W);
  CHECK(until_transition(W, F) == W);
  CHECK(until_transition(W, W) == W);
}

TEST_CASE("until_step: unrolling with a continuation") {
  CHECK(until_step(T, F, T) == T);
  CHECK(until_step(T, F, F) == F);
  CHECK(until_step(T, F, W) == W);
  CHECK(until_step(F, F, W) == F);
  CHECK(until_step(W, T, W) == T);
  CHECK(until_step(W, F, F) == F);
  CHECK(until_step(W, F, T) == W);
  // Without a continuation it coincides with until_transition.
  for (ResultMessage l : {W, T, F}) {
    for (ResultMessage r : {W, T, F}) CHECK(until_step(l, r, W) == until_transition(l, r));
  }
}

TEST_CASE("and_transition: examples") {
  CHECK(and_transition(T, T) == T);
  CHECK(and_transition(F, W) == F);
  CHECK(and_transition(W, F) == F);
  CHECK(and_transition(T, W) == W);
  CHECK(and_transition(T, F) == F);
  CHECK(and_transition(W, W) == W);
}

TEST_CASE("not_transition: examples") {
  CHECK(not_transition(T) == F);
  CHECK(not_transition(W) == W);
  CHECK(not_transition(F) == T);
}

TEST_CASE("transitions agree with the three-valued lattice") {
  for (ResultMessage l : {W, T, F}) {
    CHECK(to_three_value(not_transition(l)) == complement(to_three_value(l)));
    for (ResultMessage r : {W, T, F}) {
      CHECK(to_three_value(and_transition(l, r)) == meet(to_three_value(l), to_three_value(r)));
      CHECK(and_transition(l, r) == and_transition(r, l));
      for (ResultMessage c : {W, T, F}) {
        const ThreeValue unrolled =
            join(to_three_value(r), meet(to_three_value(l), to_three_value(c)));
        CHECK(to_three_value(until_step(l, r, c)) == unrolled);
      }
    }
  }
  CHECK(to_message(ThreeValue::VQ) == W);
  CHECK(to_string(F) == "(false, true)");
  CHECK(to_string(W) == "(false, false)");
}

TEST_CASE("worker property (a): conjunction") {
  const auto r = testgen::check_and_property(4);
  CHECK(r.cases > 0);
  CHECK(r.violations == 0);
}

TEST_CASE("worker property (b): negation") {
  const auto r = testgen::check_not_property(6);
  CHECK(r.cases > 0);
  CHECK(r.violations == 0);
}

TEST_CASE("worker property (c): until over resolved streams") {
  const auto r = testgen::check_until_property(5);
  CHECK(r.cases > 0);
  CHECK(r.violations == 0);
}
