#include "mixedfem/assembly.hpp"
#include "mixedfem/parallel.hpp"
#include "mixedfem/study.hpp"

#include <benchmark/benchmark.h>

using namespace mixedfem;

namespace {

struct Spaces {
  std::shared_ptr<const FeSpace> sigma;
  std::shared_ptr<const FeSpace> v;
};

Spaces spaces(int n, int r) {
  auto mesh = std::make_shared<const Mesh>(build_uniform_square(n));
  return {build_space(mesh, Family::Lagrange, r), build_space(mesh, Family::RaviartThomas, r)};
}

ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(1) ? ExecPolicy::Parallel : ExecPolicy::Serial;
}

void BM_RtMass(benchmark::State& state) {
  const Spaces s = spaces(static_cast<int>(state.range(0)), 2);
  AssemblyOptions opts;
  opts.policy = policy_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_mass(*s.v, opts));
  state.counters["threads"] = opts.policy == ExecPolicy::Parallel ? available_threads() : 1;
}

void BM_CurlCoupling(benchmark::State& state) {
  const Spaces s = spaces(static_cast<int>(state.range(0)), 2);
  AssemblyOptions opts;
  opts.policy = policy_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_curl_coupling(*s.sigma, *s.v, opts));
}

void BM_Load(benchmark::State& state) {
  const Spaces s = spaces(static_cast<int>(state.range(0)), 2);
  const VectorFn f = derive_load(find_case("electric-trig")).f.fn();
  AssemblyOptions opts;
  opts.policy = policy_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_load(*s.v, f, opts));
}

void BM_ErrorNorm(benchmark::State& state) {
  const Spaces s = spaces(static_cast<int>(state.range(0)), 2);
  const ManufacturedCase& c = find_case("electric-trig");
  const FeFunction u = interpolate(s.v, c.u.fn());
  const VectorFn exact = c.u.fn();
  for (auto _ : state) benchmark::DoNotOptimize(l2_error(u, exact, 10, policy_of(state)));
}

// second argument: 0 serial, 1 parallel
void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {32, 64, 128}) {
    b->Args({n, 0});
    b->Args({n, 1});
  }
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_RtMass)->Apply(sizes);
BENCHMARK(BM_CurlCoupling)->Apply(sizes);
BENCHMARK(BM_Load)->Apply(sizes);
BENCHMARK(BM_ErrorNorm)->Apply(sizes);

BENCHMARK_MAIN();
