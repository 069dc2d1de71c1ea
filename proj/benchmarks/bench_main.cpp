#include <benchmark/benchmark.h>

#include "liemoment/constraints.hpp"
#include "liemoment/dynamics.hpp"
#include "liemoment/qpoisson.hpp"

namespace lm = liemoment;

namespace {

lm::EnvelopingAlgebra& su2() {
  static lm::EnvelopingAlgebra alg(lm::su2_algebra(lm::Rational(1)));
  return alg;
}

// reversal of x1 x2 x1 x2 ... of the given length, the worst case for the
// bubble-style rewriting
void bm_normal_form(benchmark::State& state) {
  lm::EnvelopingAlgebra& alg = su2();
  lm::Word w;
  for (int i = 0; i < state.range(0); ++i) w.push_back(i % 2 == 0 ? 1 : 0);
  lm::NCPoly p = alg.zero(lm::GenKind::X);
  p.add_term(w, lm::CoeffPoly::constant(3, lm::GaussianRational(1)));
  for (auto _ : state) {
    // fresh context each round so the word cache cannot short-circuit
    lm::EnvelopingAlgebra fresh(lm::su2_algebra(lm::Rational(1)));
    benchmark::DoNotOptimize(fresh.normal_form(p));
  }
}
BENCHMARK(bm_normal_form)->Arg(4)->Arg(8)->Arg(12);

void bm_tower(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    lm::EnvelopingAlgebra fresh(lm::su2_algebra(lm::Rational(1)));
    benchmark::DoNotOptimize(lm::generate_tower(fresh, order));
  }
}
BENCHMARK(bm_tower)->Arg(2)->Arg(3)->Arg(4);

void bm_bracket_fill(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  std::vector<lm::BracketAtom> atoms;
  for (std::size_t i = 0; i < 3; ++i) atoms.push_back(lm::BracketAtom::x(i));
  for (const lm::MultiIndex& idx :
       lm::indices_up_to_degree(3, static_cast<unsigned>(order)))
    if (idx.degree() >= 2) atoms.push_back(lm::BracketAtom::eps(idx));
  for (auto _ : state) {
    lm::EnvelopingAlgebra fresh(lm::su2_algebra(lm::Rational(1)));
    lm::BracketTable table(fresh);
    for (std::size_t a = 0; a < atoms.size(); ++a)
      for (std::size_t b = a + 1; b < atoms.size(); ++b)
        benchmark::DoNotOptimize(table.entry(atoms[a], atoms[b]));
  }
}
BENCHMARK(bm_bracket_fill)->Arg(2)->Arg(3);

void bm_rhs_eval(benchmark::State& state) {
  lm::EnvelopingAlgebra& alg = su2();
  lm::BracketTable table(alg);
  lm::NCPoly x3 = alg.generator(lm::GenKind::X, 2);
  lm::NCPoly h = alg.multiply(x3, x3);
  lm::EffectiveSystem sys = lm::build_system(table, h, 3);
  lm::PhasePoint init;
  init.x = {0.6, 0.0, 0.8};
  init.hbar = 0.05;
  for (const lm::SystemVariable& v : sys.vars)
    if (v.is_eps) init.eps[v.eps_index] = 0.01;
  for (auto _ : state)
    benchmark::DoNotOptimize(lm::integrate(sys, init, 1e-2, 1.0));
}
BENCHMARK(bm_rhs_eval);

}  // namespace

BENCHMARK_MAIN();
