// SPDX-License-Identifier: Apache-2.0
// Serial and OpenMP versions of the enumeration kernels, side by side.

#include <benchmark/benchmark.h>

#include "bilmult/bounds.hpp"
#include "bilmult/constructor.hpp"
#include "bilmult/decomposition.hpp"
#include "bilmult/rank_search.hpp"

using namespace bilmult;

namespace {

const BilinearDecomposition& f64_witness() {
  static const BilinearDecomposition d = compose_decompositions(
      toom_construct(field_extend(field_make_prime(2), 2), 3), toom_construct(field_make_prime(2), 2));
  return d;
}

void BM_ExhaustiveCheck(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_check(f64_witness()));
}
void BM_ExhaustiveCheckSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_check_serial(f64_witness()));
}

void BM_RankSearch(benchmark::State& state) {
  const FieldDescriptor F = field_make_prime(2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_rank(F, 3, 4));
}
void BM_RankSearchSerial(benchmark::State& state) {
  const FieldDescriptor F = field_make_prime(2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_rank_serial(F, 3, 4));
}

Poly f8_modulus_in_f4096(const FieldDescriptor& F) {
  const FieldDescriptor f8 = field_extend(field_make_prime(2), 3);
  Poly f;
  for (const auto& c : f8.chain().back().modulus)
    f.push_back(embed(F, field_make_prime(2), c));
  f.push_back(gf_one(F));
  return f;
}

void BM_RootScan(benchmark::State& state) {
  const FieldDescriptor F = field_extend(field_make_prime(2), 12);
  const Poly f = f8_modulus_in_f4096(F);
  for (auto _ : state) benchmark::DoNotOptimize(find_smallest_root(F, f));
}
void BM_RootScanSerial(benchmark::State& state) {
  const FieldDescriptor F = field_extend(field_make_prime(2), 12);
  const Poly f = f8_modulus_in_f4096(F);
  for (auto _ : state) benchmark::DoNotOptimize(find_smallest_root_serial(F, f));
}

void BM_BoundTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bound_table(16, 400, {4, false}));
}
void BM_BoundTableSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bound_table_serial(16, 400, {4, false}));
}

}  // namespace

BENCHMARK(BM_ExhaustiveCheck)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExhaustiveCheckSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankSearch)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankSearchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RootScan)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RootScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundTable)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundTableSerial)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
