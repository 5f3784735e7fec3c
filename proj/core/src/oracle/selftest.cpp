#include "nbe/oracle/selftest.hpp"

#include <chrono>
#include <cstdio>

#include "nbe/cbpv/nbe.hpp"
#include "nbe/polarized/nbe.hpp"

namespace nbe::oracle {

namespace {

constexpr std::size_t kKeepFailures = 5;

struct StlcOps {
  static StlcSample gen(std::uint64_t seed, const GenConfig& cfg) { return gen_stlc(seed, cfg); }
  static stlc::Nf norm(const stlc::Context& g, const stlc::Term& t, stlc::Monad m) { return stlc::norm(g, t, m); }
  static void validate(const stlc::Context& g, const stlc::Ty& a, const stlc::Nf& n) { stlc::validate(g, a, n); }
  static stlc::Term erase(const stlc::Context& g, const stlc::Ty& a, const stlc::Nf& n) { return stlc::erase(g, a, n); }
};

struct CbpvOps {
  static CbpvSample gen(std::uint64_t seed, const GenConfig& cfg) { return gen_cbpv(seed, cfg); }
  static cbpv::Nf norm(const cbpv::Context& g, const cbpv::Tm& t, stlc::Monad) { return cbpv::norm(g, t); }
  static void validate(const cbpv::Context& g, const cbpv::Ty& a, const cbpv::Nf& n) { cbpv::validate(g, a, n); }
  static cbpv::Tm erase(const cbpv::Context& g, const cbpv::Ty& a, const cbpv::Nf& n) { return cbpv::erase(g, a, n); }
};

struct PolarizedOps {
  static PolarizedSample gen(std::uint64_t seed, const GenConfig& cfg) { return gen_polarized(seed, cfg); }
  static polarized::Nf norm(const polarized::Context& g, const polarized::Tm& t, stlc::Monad) {
    return polarized::norm(g, t);
  }
  static void validate(const polarized::Context& g, const polarized::Ty& a, const polarized::Nf& n) {
    polarized::validate(g, a, n);
  }
  static polarized::Tm erase(const polarized::Context& g, const polarized::Ty& a, const polarized::Nf& n) {
    return polarized::erase(g, a, n);
  }
};

class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) {}

  void fail(std::uint64_t seed, const std::string& what) {
    if (r_.failures.size() < kKeepFailures) r_.failures.push_back("seed " + std::to_string(seed) + ": " + what);
  }

  // Runs f, folding its wall time into the result.
  template <class F>
  auto timed(F&& f) {
    auto start = std::chrono::steady_clock::now();
    auto out = f();
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r_.total_ms += ms;
    if (ms > r_.max_ms) r_.max_ms = ms;
    return out;
  }

  template <class Ops, class Ctx, class Ty, class Nf>
  bool valid(std::uint64_t seed, const Ctx& g, const Ty& a, const Nf& n) {
    try {
      Ops::validate(g, a, n);
      ++r_.validated;
      return true;
    } catch (const Error& e) {
      ++r_.invalid;
      fail(seed, e.what());
      return false;
    }
  }

 private:
  SuiteResult& r_;
};

template <class Ops>
SuiteResult idempotence_with(Calculus c, std::uint64_t seed, std::size_t cases, const GenConfig& cfg,
                             stlc::Monad monad) {
  SuiteResult r;
  r.name = "idempotence[" + std::string(to_string(c)) + "]";
  Recorder rec(r);
  for (std::size_t k = 0; k < cases; ++k) {
    std::uint64_t s = sub_seed(seed, k);
    ++r.cases;
    try {
      auto g = Ops::gen(s, cfg);
      auto n1 = rec.timed([&] { return Ops::norm(g.ctx, g.term, monad); });
      bool ok = rec.template valid<Ops>(s, g.ctx, g.ty, n1);
      auto n2 = rec.timed([&] { return Ops::norm(g.ctx, Ops::erase(g.ctx, g.ty, n1), monad); });
      if (!(n1 == n2)) {
        rec.fail(s, "renormalizing changed the normal form");
      } else if (ok) {
        ++r.passed;
      }
    } catch (const Error& e) {
      rec.fail(s, e.what());
    }
  }
  return r;
}

template <class Ops>
SuiteResult soundness_with(Calculus c, std::uint64_t seed, std::size_t cases, const Model& m, const GenConfig& cfg,
                           stlc::Monad monad) {
  SuiteResult r;
  r.name = "soundness[" + std::string(to_string(c)) + "]";
  Recorder rec(r);
  for (std::size_t k = 0; k < cases; ++k) {
    std::uint64_t s = sub_seed(seed, k);
    ++r.cases;
    try {
      auto g = Ops::gen(s, cfg);
      auto n = rec.timed([&] { return Ops::norm(g.ctx, g.term, monad); });
      bool ok = rec.template valid<Ops>(s, g.ctx, g.ty, n);
      Verdict v = oracle_equiv(g.ctx, g.term, Ops::erase(g.ctx, g.ty, n), m);
      if (!v.equal) {
        rec.fail(s, "term and normal form differ at " + v.counterexample);
      } else if (ok) {
        ++r.passed;
      }
    } catch (const Error& e) {
      if (e.code() == Errc::DomainTooLarge) {
        ++r.skipped;
      } else {
        rec.fail(s, e.what());
      }
    }
  }
  return r;
}

}  // namespace

SuiteResult idempotence(Calculus c, std::uint64_t seed, std::size_t cases, const GenConfig& cfg, stlc::Monad monad) {
  switch (c) {
    case Calculus::Stlc: return idempotence_with<StlcOps>(c, seed, cases, cfg, monad);
    case Calculus::Cbpv: return idempotence_with<CbpvOps>(c, seed, cases, cfg, monad);
    case Calculus::Polarized: return idempotence_with<PolarizedOps>(c, seed, cases, cfg, monad);
  }
  return {};
}

SuiteResult soundness(Calculus c, std::uint64_t seed, std::size_t cases, const Model& m, const GenConfig& cfg,
                      stlc::Monad monad) {
  switch (c) {
    case Calculus::Stlc: return soundness_with<StlcOps>(c, seed, cases, m, cfg, monad);
    case Calculus::Cbpv: return soundness_with<CbpvOps>(c, seed, cases, m, cfg, monad);
    case Calculus::Polarized: return soundness_with<PolarizedOps>(c, seed, cases, m, cfg, monad);
  }
  return {};
}

SuiteResult monads(std::uint64_t seed, std::size_t cases, const Model& m, const GenConfig& cfg) {
  SuiteResult r;
  r.name = "monads[stlc]";
  Recorder rec(r);
  for (std::size_t k = 0; k < cases; ++k) {
    std::uint64_t s = sub_seed(seed, k);
    ++r.cases;
    try {
      auto g = gen_stlc(s, cfg);
      auto free = rec.timed([&] { return stlc::norm(g.ctx, g.term, stlc::Monad::Free); });
      auto cont = rec.timed([&] { return stlc::norm(g.ctx, g.term, stlc::Monad::Cont); });
      bool ok = rec.valid<StlcOps>(s, g.ctx, g.ty, free);
      ok = rec.valid<StlcOps>(s, g.ctx, g.ty, cont) && ok;
      if (free == cont) ++r.structural;
      Verdict v = oracle_equiv(g.ctx, stlc::erase(g.ctx, g.ty, free), stlc::erase(g.ctx, g.ty, cont), m);
      if (!v.equal) {
        rec.fail(s, "free and continuation normal forms differ at " + v.counterexample);
      } else if (ok) {
        ++r.passed;
      }
    } catch (const Error& e) {
      if (e.code() == Errc::DomainTooLarge) {
        ++r.skipped;
      } else {
        rec.fail(s, e.what());
      }
    }
  }
  return r;
}

SuiteResult axioms(std::uint64_t seed, std::size_t per_schema, const AxiomConfig& cfg) {
  SuiteResult r;
  r.name = "axioms[stlc]";
  Recorder rec(r);
  std::uint64_t k = 0;
  for (Axiom a : kAxioms) {
    for (std::size_t i = 0; i < per_schema; ++i, ++k) {
      std::uint64_t s = sub_seed(seed, k);
      ++r.cases;
      try {
        auto inst = gen_axiom_instance(a, s, cfg);
        bool ok = true;
        for (auto monad : {stlc::Monad::Free, stlc::Monad::Cont}) {
          auto l = rec.timed([&] { return stlc::norm(inst.ctx, inst.lhs, monad); });
          auto rr = rec.timed([&] { return stlc::norm(inst.ctx, inst.rhs, monad); });
          ok = rec.valid<StlcOps>(s, inst.ctx, inst.ty, l) && ok;
          ok = rec.valid<StlcOps>(s, inst.ctx, inst.ty, rr) && ok;
          if (!(l == rr)) {
            rec.fail(s, std::string(name(a)) + " sides normalize differently under " + to_string(monad));
            ok = false;
          }
        }
        if (ok) ++r.passed;
      } catch (const Error& e) {
        rec.fail(s, std::string(name(a)) + ": " + e.what());
      }
    }
  }
  return r;
}

std::string summary(const SuiteResult& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "max %.1f ms, total %.0f ms", r.max_ms, r.total_ms);
  std::string out = r.name + ": " + std::to_string(r.passed) + "/" + std::to_string(r.cases) + " passed";
  if (r.skipped > 0) out += ", " + std::to_string(r.skipped) + " too large for the model";
  out += ", " + std::to_string(r.validated) + " normal forms valid";
  if (r.invalid > 0) out += ", " + std::to_string(r.invalid) + " INVALID";
  if (r.name.starts_with("monads")) out += ", " + std::to_string(r.structural) + " structurally equal";
  return out + ", " + timing;
}

}  // namespace nbe::oracle
