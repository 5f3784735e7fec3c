// Normalization throughput on generated terms, the two STLC monads against
// each other, and the finite-model oracle for scale.

#include <benchmark/benchmark.h>

#include "nbe/cbpv/nbe.hpp"
#include "nbe/oracle/finite.hpp"
#include "nbe/oracle/generate.hpp"
#include "nbe/polarized/nbe.hpp"
#include "nbe/stlc/nbe.hpp"
#include "nbe/surface/elaborate.hpp"
#include "nbe/surface/parse.hpp"
#include "nbe/surface/pretty.hpp"

using namespace nbe;

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr int kPool = 64;

oracle::GenConfig sized(std::int64_t size) {
  oracle::GenConfig c;
  c.size = static_cast<std::size_t>(size);
  c.type_depth = 3;
  return c;
}

template <class Sample, class Gen>
std::vector<Sample> pool(Gen gen, std::int64_t size) {
  std::vector<Sample> out;
  for (int k = 0; k < kPool; ++k) out.push_back(gen(oracle::sub_seed(kSeed, k), sized(size)));
  return out;
}

void BM_StlcNorm(benchmark::State& st, stlc::Monad m) {
  auto terms = pool<oracle::StlcSample>(oracle::gen_stlc, st.range(0));
  std::size_t i = 0;
  for (auto _ : st) {
    const auto& g = terms[i++ % terms.size()];
    benchmark::DoNotOptimize(stlc::norm(g.ctx, g.term, m));
  }
}
BENCHMARK_CAPTURE(BM_StlcNorm, free, stlc::Monad::Free)->Arg(15)->Arg(30)->Arg(60);
BENCHMARK_CAPTURE(BM_StlcNorm, cont, stlc::Monad::Cont)->Arg(15)->Arg(30)->Arg(60);

void BM_CbpvNorm(benchmark::State& st) {
  auto terms = pool<oracle::CbpvSample>(oracle::gen_cbpv, st.range(0));
  std::size_t i = 0;
  for (auto _ : st) {
    const auto& g = terms[i++ % terms.size()];
    benchmark::DoNotOptimize(cbpv::norm(g.ctx, g.term));
  }
}
BENCHMARK(BM_CbpvNorm)->Arg(15)->Arg(30)->Arg(60);

void BM_PolarizedNorm(benchmark::State& st) {
  auto terms = pool<oracle::PolarizedSample>(oracle::gen_polarized, st.range(0));
  std::size_t i = 0;
  for (auto _ : st) {
    const auto& g = terms[i++ % terms.size()];
    benchmark::DoNotOptimize(polarized::norm(g.ctx, g.term));
  }
}
BENCHMARK(BM_PolarizedNorm)->Arg(15)->Arg(30)->Arg(60);

void BM_OracleSoundness(benchmark::State& st) {
  auto terms = pool<oracle::StlcSample>(oracle::gen_stlc, 30);
  std::vector<stlc::Term> nfs;
  for (const auto& g : terms) nfs.push_back(stlc::erase(g.ctx, g.ty, stlc::norm(g.ctx, g.term)));
  std::size_t i = 0;
  for (auto _ : st) {
    std::size_t k = i++ % terms.size();
    try {
      benchmark::DoNotOptimize(oracle::oracle_equiv(terms[k].ctx, terms[k].term, nfs[k]));
    } catch (const Error&) {
    }
  }
}
BENCHMARK(BM_OracleSoundness);

void BM_ParseElaborate(benchmark::State& st) {
  std::vector<std::string> texts;
  for (const auto& g : pool<oracle::StlcSample>(oracle::gen_stlc, 60)) {
    texts.push_back(surface::pretty_file(g.ctx, surface::default_names(g.ctx.size()), g.term));
  }
  std::size_t i = 0, bytes = 0;
  for (auto _ : st) {
    const auto& t = texts[i++ % texts.size()];
    bytes += t.size();
    benchmark::DoNotOptimize(surface::elaborate_stlc(surface::parse(t, Calculus::Stlc)));
  }
  st.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_ParseElaborate);

}  // namespace

BENCHMARK_MAIN();
