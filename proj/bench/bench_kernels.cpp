// Serial reference kernels against their OpenMP counterparts. Thread count
// follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "abelcanon/kernels.hpp"

using namespace abelcanon;
using namespace abelcanon::kernels;

namespace {

// Shapes indexed by benchmark argument.
const oracle::TorsionShape& shape(std::int64_t i) {
  static const std::vector<oracle::TorsionShape> shapes{
      oracle::TorsionShape::of(2, {1, 2, 2}),
      oracle::TorsionShape::of(3, {1, 2}),
      oracle::TorsionShape::of(2, {2, 2, 3}),
  };
  return shapes.at(static_cast<std::size_t>(i));
}

const char* const kGroups[] = {"Z2 x Z8 x Z9 x Z5", "Z4^2 x Z8 x Z27", "Z2^3 x Z16 x Z25"};

template <auto Kernel>
void automorphisms(benchmark::State& state) {
  const auto& s = shape(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(s));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * EndomorphismSpace(s).size()));
}

template <auto Kernel>
void modp(benchmark::State& state) {
  const auto& s = shape(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(s));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * EndomorphismSpace(s).size()));
}

template <auto Kernel>
void orbit_roots(benchmark::State& state) {
  const auto& s = shape(state.range(0));
  const auto maps = automorphisms_serial(s);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(s, maps));
  state.counters["maps"] = static_cast<double>(maps.size());
}

template <auto Kernel>
void canonicalize_all(benchmark::State& state) {
  const auto schema = to_primary(parse_group_spec(kGroups[state.range(0)]));
  const auto partition = oracle::all_orbits(schema);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(partition, schema));
  state.SetItemsProcessed(state.iterations() * partition.group_order());
}

}  // namespace

BENCHMARK(automorphisms<automorphisms_serial>)->Name("automorphisms/serial")->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(automorphisms<automorphisms_parallel>)->Name("automorphisms/parallel")->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(modp<modp_sweep_serial>)->Name("modp_sweep/serial")->DenseRange(0, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(modp<modp_sweep_parallel>)->Name("modp_sweep/parallel")->DenseRange(0, 1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(orbit_roots<orbit_roots_serial>)->Name("orbit_roots/serial")->DenseRange(0, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(orbit_roots<orbit_roots_parallel>)->Name("orbit_roots/parallel")->DenseRange(0, 1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(canonicalize_all<canonicalize_all_serial>)->Name("canonicalize_all/serial")->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(canonicalize_all<canonicalize_all_parallel>)->Name("canonicalize_all/parallel")->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
