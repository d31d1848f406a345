#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jetcheck/builtins.hpp"
#include "jetcheck/errors.hpp"
#include "jetcheck/system.hpp"
#include "jetcheck/zerotest.hpp"

using namespace jetcheck;

namespace {

SystemPtr chain4() {
  // x1' = u1, x2' = x1, x3' = u2, x4' = u3
  std::vector<Variable> states = {state_var("x1"), state_var("x2"),
                                  state_var("x3"), state_var("x4")};
  std::vector<Variable> controls = {jet_var("u1"), jet_var("u2"),
                                    jet_var("u3")};
  std::vector<Expr> dynamics = {
      Expr::variable(jet_var("u1")), Expr::variable(state_var("x1")),
      Expr::variable(jet_var("u2")), Expr::variable(jet_var("u3"))};
  return std::make_shared<const ControlSystem>(
      ControlSystem::make("M", states, controls, dynamics));
}

SystemPtr single_chain() {
  return std::make_shared<const ControlSystem>(ControlSystem::make(
      "S", {state_var("x1")}, {jet_var("u1")},
      {Expr::variable(jet_var("u1"))}));
}

}  // namespace

TEST_CASE("system construction validates the control-rank condition") {
  SystemPtr m = chain4();
  CHECK(m->n() == 4);
  CHECK(m->m() == 3);

  // two states driven by the same single control still has full rank 1
  ControlSystem ok = ControlSystem::make(
      "twin", {state_var("x1"), state_var("x2")}, {jet_var("u1")},
      {Expr::variable(jet_var("u1")), Expr::variable(jet_var("u1"))});
  CHECK(ok.m() == 1);

  // two controls entering through a single column is rank deficient
  CHECK_THROWS_AS(
      ControlSystem::make(
          "bad", {state_var("x1"), state_var("x2")},
          {jet_var("u1"), jet_var("u2")},
          {Expr::variable(jet_var("u1")), Expr::variable(jet_var("u1"))}),
      NotAControlSystemError);

  CHECK_THROWS_AS(
      ControlSystem::make("empty", {}, {jet_var("u1")}, {}),
      NotAControlSystemError);

  CHECK_THROWS_AS(
      ControlSystem::make("unknown", {state_var("x1")}, {jet_var("u1")},
                          {Expr::variable(state_var("zz"))}),
      Error);
}

TEST_CASE("total prolongation of the single chain") {
  SystemPtr s = single_chain();
  ControlSystem p = s->total_prolong(1);
  REQUIRE(p.n() == 2);
  REQUIRE(p.m() == 1);
  CHECK(p.states()[0] == state_var("x1"));
  CHECK(p.states()[1] == jet_var("u1", 0));
  CHECK(p.controls()[0] == jet_var("u1", 1));
  CHECK(expr_equal(p.dynamics()[0], Expr::variable(jet_var("u1"))));
  CHECK(expr_equal(p.dynamics()[1], Expr::variable(jet_var("u1", 1))));
}

TEST_CASE("total prolongation adds k*m states; zero is the identity") {
  SystemPtr m = chain4();
  ControlSystem p2 = m->total_prolong(2);
  CHECK(p2.n() == 10);  // 4 + 2*3
  CHECK(p2.m() == 3);

  ControlSystem same = m->total_prolong(0);
  CHECK(same.n() == m->n());
  CHECK(same.name() == m->name());
}

TEST_CASE("prolongations compose: (a then b) equals (a + b)") {
  SystemPtr m = chain4();
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      ControlSystem lhs = m->total_prolong(a).total_prolong(b);
      ControlSystem rhs = m->total_prolong(a + b);
      REQUIRE(lhs.n() == rhs.n());
      REQUIRE(lhs.m() == rhs.m());
      for (int i = 0; i < lhs.n(); ++i) {
        CHECK(lhs.states()[i] == rhs.states()[i]);
        CHECK(expr_equal(lhs.dynamics()[i], rhs.dynamics()[i]));
      }
      for (int a2 = 0; a2 < lhs.m(); ++a2)
        CHECK(lhs.controls()[a2] == rhs.controls()[a2]);
    }
  }
}

TEST_CASE("partial prolongation reclassifies jets per control") {
  SystemPtr m = chain4();
  ControlSystem n1 = m->partial_prolong({{"u1", 1}, {"u2", 2}});
  CHECK(n1.n() == 7);
  CHECK(n1.m() == 3);
  CHECK(n1.controls()[0] == jet_var("u1", 1));
  CHECK(n1.controls()[1] == jet_var("u2", 2));
  CHECK(n1.controls()[2] == jet_var("u3", 0));

  ControlSystem n2 = m->partial_prolong({{"u3", 3}});
  CHECK(n2.n() == 7);
  CHECK(n2.m() == 3);

  ControlSystem same = m->partial_prolong({});
  CHECK(same.n() == 4);
  CHECK(same.name() == m->name());

  CHECK_THROWS_AS(m->partial_prolong({{"nope", 1}}), Error);
}

TEST_CASE("partial prolongation preserves the number of controls") {
  SystemPtr m = chain4();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::map<std::string, int> orders;
    int total = 0;
    for (const char* c : {"u1", "u2", "u3"}) {
      int k = static_cast<int>(rng() % 4);
      orders[c] = k;
      total += k;
    }
    ControlSystem p = m->partial_prolong(orders);
    CHECK(p.m() == m->m());
    CHECK(p.n() == m->n() + total);
  }
}

TEST_CASE("contact coframe levels and counting") {
  SystemPtr s = single_chain();
  Coframe cf = s->contact_coframe(1);
  REQUIRE(cf.levels.size() == 2);
  REQUIRE(cf.levels[0].size() == 1);
  // level 0: dx1 - u1 dt
  CHECK(cf.levels[0][0].jet_coefficients[0].first == state_var("x1"));
  CHECK(expr_equal(cf.levels[0][0].dt_coefficient,
                   Expr::neg(Expr::variable(jet_var("u1")))));
  // level 1: du1 - u1@1 dt
  CHECK(cf.levels[1][0].jet_coefficients[0].first == jet_var("u1", 0));
  CHECK(expr_equal(cf.levels[1][0].dt_coefficient,
                   Expr::neg(Expr::variable(jet_var("u1", 1)))));

  SystemPtr m = chain4();
  CHECK(m->contact_coframe(0).levels[0].size() == 4);

  for (int d = 0; d <= 3; ++d) {
    Coframe c = m->contact_coframe(d);
    CHECK(static_cast<int>(c.levels.size()) == 1 + d);
    int forms = 0;
    for (const auto& level : c.levels) forms += static_cast<int>(level.size());
    CHECK(forms == m->n() + d * m->m());
  }
}

TEST_CASE("structure equation: each level differentiates into the next") {
  // For a level k >= 1 generator d c@(k-1) - c@k dt, the coordinate paired
  // with the dt coefficient must be the coordinate of level k+1 in the
  // same control slot. Checked for levels 1..3 of every builtin system.
  for (const auto& b : builtin_examples()) {
    ProblemFile file = parse_problem_file(b.text);
    for (const auto& [name, sys] : file.systems) {
      Coframe cf = sys->contact_coframe(4);
      for (int k = 1; k <= 3; ++k) {
        REQUIRE(cf.levels[k].size() == cf.levels[k + 1].size());
        for (std::size_t a = 0; a < cf.levels[k].size(); ++a) {
          const OneForm& form = cf.levels[k][a];
          const OneForm& next = cf.levels[k + 1][a];
          REQUIRE(form.jet_coefficients.size() == 1);
          CHECK(expr_equal(form.jet_coefficients[0].second,
                           Expr::constant(Rational(1))));
          // -dt coefficient of level k is the level-(k+1) coordinate
          CHECK(expr_equal(
              Expr::neg(form.dt_coefficient),
              Expr::variable(next.jet_coefficients[0].first)));
        }
      }
    }
  }
}

TEST_CASE("total derivative follows dynamics and jet shifts") {
  SystemPtr m = chain4();
  CHECK(expr_equal(m->total_derivative(Expr::variable(state_var("x2"))),
                   Expr::variable(state_var("x1"))));
  CHECK(expr_equal(m->total_derivative(Expr::variable(jet_var("u2", 1))),
                   Expr::variable(jet_var("u2", 2))));
}

TEST_CASE("total derivative of the chained difference") {
  // On the double-chain system, D_t(u2@(p-1) - x1) = u2@p - u1.
  ProblemFile file = load_builtin("double-chain");
  const SystemPtr& m = file.system("M");
  for (int p : {2, 3}) {
    Expr e = Expr::variable(jet_var("u2", p - 1)) -
             Expr::variable(state_var("x1"));
    Expr expected =
        Expr::variable(jet_var("u2", p)) - Expr::variable(jet_var("u1"));
    CHECK(is_identically_zero(m->total_derivative(e) - expected, Sampler{}));
  }
}

TEST_CASE("total derivative is a derivation") {
  ProblemFile file = load_builtin("double-chain");
  const SystemPtr& m = file.system("M");
  Scope sc = m->scope(1);
  Sampler s;
  std::vector<Expr> samples = {
      parse_expr("x1*x2 + sin(x3)", sc),
      parse_expr("u1*cos(x2)", sc),
      parse_expr("x3^2 - u2@1", sc),
      parse_expr("x1 + x2*u2", sc),
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const Expr& a = samples[i];
      const Expr& b = samples[j];
      Expr lhs = m->total_derivative(a * b);
      Expr rhs = a * m->total_derivative(b) + b * m->total_derivative(a);
      CHECK(is_identically_zero(lhs - rhs, s));
    }
  }
}

TEST_CASE("the vertical takeoff relation differentiates to the tilt form") {
  // D_t^2 (x - e sin th) reduces to -(u1 - e*thd^2) * sin th
  ProblemFile file = load_builtin("pvtol");
  const SystemPtr& m = file.system("M");
  Scope sc = m->scope(0);
  Expr y1 = parse_expr("x - e*sin(th)", sc);
  Expr lifted = m->total_derivative(m->total_derivative(y1));
  Expr expected = parse_expr("-(u1 - e*thd^2)*sin(th)", sc);
  CHECK(is_identically_zero(lifted - expected, file.sampler));
}

TEST_CASE("coordinates and level coordinates expose the jet grid") {
  SystemPtr m = chain4();
  auto coords = m->coordinates(1);
  CHECK(coords.size() == 4 + 2 * 3);
  auto level2 = m->level_coordinates(2);
  REQUIRE(level2.size() == 3);
  CHECK(level2[0] == jet_var("u1", 1));

  ControlSystem n1 = m->partial_prolong({{"u1", 1}, {"u2", 2}});
  auto lvl1 = n1.level_coordinates(1);
  // controls are u1@1, u2@2, u3: level-1 forms sit on the controls themselves
  CHECK(lvl1[0] == jet_var("u1", 1));
  CHECK(lvl1[1] == jet_var("u2", 2));
  CHECK(lvl1[2] == jet_var("u3", 0));
}
