// Serial reference vs OpenMP path for the trial campaigns.
#include <benchmark/benchmark.h>

#include "qot/attacks.hpp"
#include "qot/ot12.hpp"
#include "qot/rot.hpp"

namespace {

qot::Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? qot::Execution::serial : qot::Execution::parallel;
}

void BM_RateCampaign(benchmark::State& state) {
  const qot::rot::RotConfig config{256, std::numbers::pi / 4};
  for (auto _ : state) {
    auto t = qot::rot::rate_campaign(config, qot::rot::ReceiverStrategy::honest, 200, 7, mode(state));
    benchmark::DoNotOptimize(t.conclusive);
  }
  state.SetLabel(std::string(qot::to_string(mode(state))));
  state.SetItemsProcessed(state.iterations() * 200 * 256);
}

void BM_OtCampaign(benchmark::State& state) {
  for (auto _ : state) {
    auto t = qot::ot12::ot_campaign(256, qot::rot::ReceiverStrategy::honest, 100, 7, mode(state));
    benchmark::DoNotOptimize(t.correct);
  }
  state.SetLabel(std::string(qot::to_string(mode(state))));
  state.SetItemsProcessed(state.iterations() * 100);
}

void BM_ProbeP3(benchmark::State& state) {
  for (auto _ : state) {
    auto r = qot::attacks::probe_attack_p3(8, 5000, 7, mode(state));
    benchmark::DoNotOptimize(r.detections);
  }
  state.SetLabel(std::string(qot::to_string(mode(state))));
  state.SetItemsProcessed(state.iterations() * 5000);
}

}  // namespace

BENCHMARK(BM_RateCampaign)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OtCampaign)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProbeP3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
