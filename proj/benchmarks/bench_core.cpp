// Copyright 2026 The cdmpo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "cdmpo/bridge.hpp"
#include "cdmpo/lcu.hpp"
#include "cdmpo/mpo.hpp"
#include "cdmpo/mps.hpp"
#include "cdmpo/sampler.hpp"
#include "cdmpo/varopt.hpp"

namespace cdmpo {
namespace {

PauliString random_string(std::mt19937_64& rng, std::size_t n) {
  PauliString p(n);
  for (std::size_t i = 0; i < n; ++i) p.set(i, kAllPaulis[rng() % 4]);
  return p;
}

PauliSum random_sum(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<PauliTerm> terms;
  terms.reserve(k);
  for (std::size_t i = 0; i < k; ++i) terms.push_back({cplx{g(rng), 0.0}, random_string(rng, n)});
  return PauliSum(n, std::move(terms));
}

// Random right-canonical MPS with bond dimension chi.
Mps random_mps(std::size_t n, std::size_t chi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Mps m;
  std::size_t left = 1;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t right = j + 1 == n ? 1 : chi;
    MpsTensor a(left, right);
    for (auto& x : a.data()) x = cplx{g(rng), g(rng)};
    m.tensors.push_back(std::move(a));
    m.gauge.push_back(Gauge::none);
    left = right;
  }
  m = canonicalize_mps(m, Direction::right);
  const double norm = std::sqrt(mps_norm_squared(m));
  for (auto& x : m.tensors.front().data()) x /= norm;
  m.normalized = true;
  return m;
}

void BM_Compile(benchmark::State& state) {
  const PauliSum op = random_sum(16, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(compile(op));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Compile)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_BuildMpo(benchmark::State& state) {
  const PauliSum op = random_sum(static_cast<std::size_t>(state.range(0)), 200, 2);
  for (auto _ : state) benchmark::DoNotOptimize(build_mpo_qr(op, 1e-12));
}
BENCHMARK(BM_BuildMpo)->DenseRange(8, 24, 8)->Unit(benchmark::kMillisecond);

void BM_CompressMpo(benchmark::State& state) {
  const Mpo m = build_mpo_qr(random_sum(12, 120, 3), 1e-12);
  for (auto _ : state) benchmark::DoNotOptimize(compress(m, 1e-8, 16));
}
BENCHMARK(BM_CompressMpo)->Unit(benchmark::kMillisecond);

void BM_SamplePerString(benchmark::State& state) {
  const Mps m = random_mps(20, static_cast<std::size_t>(state.range(0)), 4);
  std::uint64_t index = 0;
  for (auto _ : state) benchmark::DoNotOptimize(draw_samples(m, 1, 9, index++));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SamplePerString)->RangeMultiplier(2)->Range(2, 64)->Complexity(benchmark::oNCubed);

void BM_AssemblePencil(benchmark::State& state) {
  const std::size_t n = 12;
  const PauliSum h = random_sum(n, 200, 5);
  std::mt19937_64 rng(6);
  std::vector<PauliString> pool;
  while (pool.size() < static_cast<std::size_t>(state.range(0))) {
    const PauliString p = random_string(rng, n);
    if (std::find(pool.begin(), pool.end(), p) == pool.end()) pool.push_back(p);
  }
  const BasisState ref = BasisState::parse("111111000000");
  for (auto _ : state) benchmark::DoNotOptimize(assemble_pencil(h, pool, ref));
}
BENCHMARK(BM_AssemblePencil)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_Lobpcg(benchmark::State& state) {
  const auto d = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx{g(rng), g(rng)};
  a = (0.5 * (a + a.adjoint())).eval();
  const double a_norm = a.norm();
  const BlockOperator apply_a = [&](const Matrix& x) -> Matrix { return a * x; };
  const BlockOperator apply_b = [](const Matrix& x) -> Matrix { return x; };
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lobpcg_smallest(apply_a, apply_b, static_cast<std::size_t>(d), a_norm, 1.0, {}));
  }
}
BENCHMARK(BM_Lobpcg)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_DenseRitz(benchmark::State& state) {
  const auto d = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  Matrix x(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = cplx{g(rng), g(rng)};
  EffectivePencil p;
  p.h_eff = 0.5 * (x + x.adjoint());
  p.n_eff = Matrix::Identity(d, d);
  p.basis.assign(static_cast<std::size_t>(d), PauliString(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_ritz_dense(p));
}
BENCHMARK(BM_DenseRitz)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_CompileLcu(benchmark::State& state) {
  const BridgeDecomposition d = compile(random_sum(16, static_cast<std::size_t>(state.range(0)), 9));
  for (auto _ : state) benchmark::DoNotOptimize(compile_lcu(d));
}
BENCHMARK(BM_CompileLcu)->RangeMultiplier(4)->Range(64, 4096);

}  // namespace
}  // namespace cdmpo

BENCHMARK_MAIN();
