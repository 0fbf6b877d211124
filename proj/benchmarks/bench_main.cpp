#include <benchmark/benchmark.h>

#include "qesboson/fock_oracle.hpp"
#include "qesboson/model_catalog.hpp"
#include "qesboson/op_algebra.hpp"
#include "qesboson/qes_reduction.hpp"
#include "qesboson/sextic_map.hpp"

namespace {

using namespace qesb;

const OperatorPolynomial& shg() {
  static const OperatorPolynomial h = build_shg(1, 2, Rational(1, 2), Rational(1, 2));
  return h;
}

void BM_NormalOrderedProduct(benchmark::State& state) {
  const auto e = static_cast<unsigned>(state.range(0));
  const auto a = OperatorPolynomial::term(1, e, e, e, e);
  const auto b = OperatorPolynomial::term(Rational(1, 3), e, e, e, e);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_NormalOrderedProduct)->DenseRange(1, 4);

void BM_CommutatorShg(benchmark::State& state) {
  const auto k = ConservedCharge(1, 2).as_operator();
  for (auto _ : state) benchmark::DoNotOptimize(commutator(k, shg()));
}
BENCHMARK(BM_CommutatorShg);

void BM_OracleSpectrum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(block_spectrum(shg(), ConservedCharge(1, 2), state.range(0)));
}
BENCHMARK(BM_OracleSpectrum)->Arg(10)->Arg(40)->Arg(80);

void BM_ReducedSpectrum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qes_spectrum(shg(), ConservedCharge(1, 2), state.range(0)));
}
BENCHMARK(BM_ReducedSpectrum)->Arg(10)->Arg(40)->Arg(80);

void BM_EnergyPolynomials(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(energy_polynomial_table(shg(), ConservedCharge(1, 2), state.range(0)));
}
BENCHMARK(BM_EnergyPolynomials)->Arg(8)->Arg(16);

void BM_FdSextic(benchmark::State& state) {
  const auto v = sextic_potential({1, 2, Rational(1, 2), Rational(1, 2), 2});
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fd_spectrum(v, 6.0, n, 1.0));
}
BENCHMARK(BM_FdSextic)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
