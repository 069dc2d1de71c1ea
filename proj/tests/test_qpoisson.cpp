#include <doctest.h>

#include "liemoment/qpoisson.hpp"
#include "support.hpp"

using namespace liemoment;

TEST_SUITE_BEGIN("qpoisson");

TEST_CASE("expectation brackets recover the classical structure constants") {
  EnvelopingAlgebra alg(su2_algebra(Rational(1)));
  BracketTable table(alg);
  CHECK(table.entry(BracketAtom::x(0), BracketAtom::x(1)) == MomentPoly::x(3, 2));
  CHECK(table.entry(BracketAtom::x(1), BracketAtom::x(2)) == MomentPoly::x(3, 0));
  CHECK(table.entry(BracketAtom::x(2), BracketAtom::x(0)) == MomentPoly::x(3, 1));
  CHECK(table.entry(BracketAtom::x(0), BracketAtom::x(0)).is_zero());
}

TEST_CASE("bracket of a variable with a pure moment") {
  EnvelopingAlgebra alg(su2_algebra(Rational(1)));
  BracketTable table(alg);
  // {x1, eps(0,0,2)} = -2 eps(0,1,1), exactly: the reordering pieces cancel
  MomentPoly entry = table.entry(BracketAtom::x(0), BracketAtom::eps(MultiIndex{0, 0, 2}));
  CHECK(entry == GaussianRational(-2) * MomentPoly::eps(3, MultiIndex{0, 1, 1}));
}

TEST_CASE("bracket of two second moments") {
  EnvelopingAlgebra alg(su2_algebra(Rational(1)));
  BracketTable table(alg);
  MomentPoly entry =
      table.entry(BracketAtom::eps(MultiIndex{2, 0, 0}), BracketAtom::eps(MultiIndex{0, 2, 0}));
  MomentPoly expect = GaussianRational(4) *
                      (MomentPoly::x(3, 2) * MomentPoly::eps(3, MultiIndex{1, 1, 0}));
  expect += GaussianRational(4) * MomentPoly::eps(3, MultiIndex{1, 1, 1});
  CHECK(entry.hbar_free_part() == expect);
}

TEST_CASE("table entries are antisymmetric and cached") {
  EnvelopingAlgebra alg(su2_algebra(Rational(1)));
  BracketTable table(alg);
  std::vector<BracketAtom> atoms = {BracketAtom::x(0), BracketAtom::x(2),
                                    BracketAtom::eps(MultiIndex{1, 1, 0}),
                                    BracketAtom::eps(MultiIndex{0, 0, 2}),
                                    BracketAtom::eps(MultiIndex{2, 1, 0})};
  for (const auto& a : atoms)
    for (const auto& b : atoms)
      CHECK(table.entry(a, b) == -table.entry(b, a));
  CHECK(table.cached_entries() > 0);
  const std::size_t filled = table.cached_entries();
  (void)table.entry(atoms[0], atoms[1]);
  CHECK(table.cached_entries() == filled);
}

TEST_CASE("the Leibniz expansion agrees with the direct four-term bracket") {
  EnvelopingAlgebra alg(su2_algebra(Rational(1)));
  BracketTable table(alg);
  testsupport::Rng rng(9101);
  std::uniform_int_distribution<int> letter(0, 2);
  for (int trial = 0; trial < 8; ++trial) {
    auto random_word = [&](int len) {
      Word w;
      for (int i = 0; i < len; ++i) w.push_back(static_cast<std::uint8_t>(letter(rng)));
      NCPoly p = alg.zero(GenKind::DX);
      p.add_term(w, CoeffPoly::constant(3, GaussianRational(1)));
      return alg.normal_form(p);
    };
    NCPoly f = random_word(2 + trial % 2);
    NCPoly g = random_word(2 + (trial / 2) % 2);
    MomentPoly direct = bracket_ext(alg, f, g);
    MomentPoly leibniz = table.bracket(alg.expectation(f), alg.expectation(g));
    CHECK(direct == leibniz);
  }
}

TEST_CASE("general brackets are antisymmetric and vanish on equal arguments") {
  EnvelopingAlgebra alg(su2_algebra(Rational(1)));
  BracketTable table(alg);
  testsupport::Rng rng(9102);
  for (int trial = 0; trial < 10; ++trial) {
    MomentPoly f = testsupport::random_moment_poly(rng, 3, 5);
    MomentPoly g = testsupport::random_moment_poly(rng, 3, 5);
    CHECK(table.bracket(f, g) == -table.bracket(g, f));
    CHECK(table.bracket(f, f).is_zero());
  }
}

TEST_CASE("truncating before or after the bracket gives the same result") {
  EnvelopingAlgebra alg(su2_algebra(Rational(1)));
  BracketTable table(alg);
  testsupport::Rng rng(9103);
  for (int trial = 0; trial < 12; ++trial) {
    MomentPoly f = testsupport::random_moment_poly(rng, 3, 5);
    MomentPoly g = testsupport::random_moment_poly(rng, 3, 5);
    for (int n : {2, 3}) {
      MomentPoly before = table.truncated_bracket(f.truncate(n), g.truncate(n), n);
      CHECK(before == table.truncated_bracket(f, g, n));
    }
  }
}

TEST_CASE("brackets with a variable never lower the semiclassical order") {
  EnvelopingAlgebra alg(su2_algebra(Rational(1)));
  BracketTable table(alg);
  testsupport::Rng rng(9104);
  for (int trial = 0; trial < 12; ++trial) {
    MomentPoly f = testsupport::random_moment_poly(rng, 3, 5);
    for (std::size_t i = 0; i < 3; ++i) {
      MomentPoly b = table.bracket(f, MomentPoly::x(3, i));
      CHECK(b.order() >= f.order());
    }
  }
}

TEST_CASE("order-bounded polynomials are not closed under multiplication") {
  // both factors have order 2, the product has order 4: the order <= 3 space
  // is a Poisson submodule but not a subalgebra
  MomentPoly f = MomentPoly::hbar(3);
  MomentPoly g = MomentPoly::eps(3, MultiIndex{0, 0, 2});
  CHECK(f.order() == 2);
  CHECK(g.order() == 2);
  CHECK((f * g).order() == 4);
}

TEST_SUITE_END();
