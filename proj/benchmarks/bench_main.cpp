#include <benchmark/benchmark.h>

#include "vpc/bounds.hpp"
#include "vpc/bredon.hpp"
#include "vpc/classify.hpp"
#include "vpc/serialize.hpp"

using namespace vpc;

namespace {

GroupPtr load(const std::string &name) {
  return group_from_json(read_json_file(std::string(VPC_DATA_DIR) + "/groups/" + name + ".json"));
}

ClassQuery rank_query(std::size_t r, std::size_t bound) {
  ClassQuery q;
  q.r = r;
  q.bound = bound;
  return q;
}

} // namespace

static void BM_Classes(benchmark::State &state) {
  GroupPtr g = load("p4");
  auto bound = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classes(g, rank_query(1, bound)));
}
BENCHMARK(BM_Classes)->Arg(1)->Arg(2)->Arg(3);

static void BM_VerifyPlane(benchmark::State &state) {
  GroupPtr g = load("z2");
  ModelRecipe m = model_rn_zn(g);
  std::vector<SubgroupHandle> samples{trivial_subgroup(g), lattice_subgroup(g, {{1, 0}}), whole_group(g)};
  auto radius = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_model(m, samples, radius));
}
BENCHMARK(BM_VerifyPlane)->Arg(2)->Arg(3)->Arg(4);

static void BM_FarrellSlice(benchmark::State &state) {
  GroupPtr g = load("z2");
  ClassCatalog c = classes(g, rank_query(1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(farrell_evc_z2(g, c));
}
BENCHMARK(BM_FarrellSlice);

static void BM_Evaluate(benchmark::State &state) {
  GroupPtr g = load(state.range(0) == 0 ? "z2" : "heis");
  DimQuery q{g, hirsch_family(g, 1), DimKind::Gd, std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(q));
}
BENCHMARK(BM_Evaluate)->Arg(0)->Arg(1);

static void BM_MayerVietoris(benchmark::State &state) {
  GroupPtr g = load("z2");
  ModelRecipe m = lw_vc(g, classes(g, rank_query(1, 1)));
  const EqPushout &p = *m.pushout;
  OrbitWindow w = window_of({&p.complex, &p.x, &p.y, &p.a});
  BredonModule mod = constant_module(w);
  for (auto _ : state) benchmark::DoNotOptimize(mayer_vietoris_verify(p, mod, 3));
}
BENCHMARK(BM_MayerVietoris)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
