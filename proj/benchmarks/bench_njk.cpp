#include <benchmark/benchmark.h>

#include "njk/algebroid.hpp"
#include "njk/cochain.hpp"
#include "njk/forms.hpp"
#include "njk/linfty.hpp"
#include "njk/random.hpp"

using namespace njk;

namespace {

LieAlgebra sl2() {
  LieAlgebra L(3);
  L.set_bracket(0, 1, Vec{0, 2, 0});
  L.set_bracket(0, 2, Vec{0, 0, -2});
  L.set_bracket(1, 2, Vec{1, 0, 0});
  return L;
}

Matrix diag(std::initializer_list<int> d) {
  Matrix m = zero_matrix(d.size(), d.size());
  std::size_t i = 0;
  for (int x : d) m[i][i] = x, ++i;
  return m;
}

void BM_BettiNjl(benchmark::State& state) {
  Rng rng(static_cast<std::uint64_t>(state.range(0)));
  const NijenhuisSample s = random_nijenhuis_sample(rng, 4, 3);
  const NjContext ctx(s.nl, s.rep, s.rep_op);
  for (auto _ : state) benchmark::DoNotOptimize(betti(ComplexKind::NjL, ctx, ctx.dim() + 1));
}
BENCHMARK(BM_BettiNjl)->Arg(1)->Arg(2)->Arg(3);

void BM_LesVerify(benchmark::State& state) {
  const NjContext ctx({sl2(), diag({1, 1, 3})});
  for (auto _ : state) benchmark::DoNotOptimize(les_verify(ctx, 3));
}
BENCHMARK(BM_LesVerify);

void BM_McResidual(benchmark::State& state) {
  const auto cand = MaurerCartanCandidate::from_nijenhuis(sl2(), diag({1, 1, 3}));
  for (auto _ : state) benchmark::DoNotOptimize(mc_residual(cand, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_McResidual)->Arg(2)->Arg(3);

void BM_TwistedComplex(benchmark::State& state) {
  const NjlBasis B(3, false);
  NjlElement a = NjlElement::of(nu_from_lie(sl2()));
  a.add(tau_from_operator(diag({1, 1, 3})));
  for (auto _ : state) {
    const LinearComplex cx = njl_l1_complex(njl_linfty(B).twist(B.coords(a)), B);
    benchmark::DoNotOptimize(betti(cx, 3));
  }
}
BENCHMARK(BM_TwistedComplex);

void BM_FnBracket(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(7);
  const VectorForm K = random_vector_form(rng, n, 1, 2), L = random_vector_form(rng, n, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fn_bracket(K, L));
}
BENCHMARK(BM_FnBracket)->Arg(2)->Arg(3)->Arg(4);

void BM_FnBetti(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fn_betti(3, static_cast<int>(state.range(0)), 3));
}
BENCHMARK(BM_FnBetti)->Arg(1)->Arg(2);

void BM_PhiChainMap(benchmark::State& state) {
  const PolyAlgebroid T = PolyAlgebroid::tangent(2);
  const VectorForm P = VectorForm::diagonal_coordinates(2);
  for (auto _ : state) benchmark::DoNotOptimize(validate_phi_chain_map(T, P, 10, 1));
}
BENCHMARK(BM_PhiChainMap);

void BM_ValidateAlgebroid(benchmark::State& state) {
  const PolyAlgebroid T = PolyAlgebroid::tangent(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_algebroid(T));
}
BENCHMARK(BM_ValidateAlgebroid)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
