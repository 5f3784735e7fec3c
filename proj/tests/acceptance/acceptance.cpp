// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.  `acceptance 2 5` runs only criteria 2 and 5.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "laws.hpp"
#include "nbe/cbpv/nbe.hpp"
#include "nbe/oracle/selftest.hpp"
#include "nbe/polarized/nbe.hpp"
#include "nbe/stlc/nbe.hpp"
#include "nbe/surface/elaborate.hpp"
#include "nbe/surface/parse.hpp"
#include "nbe/surface/pretty.hpp"

using namespace nbe;

namespace {

constexpr std::array<Calculus, 3> kCalculi = {Calculus::Stlc, Calculus::Cbpv, Calculus::Polarized};

struct Verdict {
  bool ok = true;
  std::vector<std::string> lines;  // details, printed under the headline

  void note(std::string s) { lines.push_back(std::move(s)); }
  void require(bool cond, std::string s) {
    if (!cond) ok = false;
    lines.push_back((cond ? "" : "FAILED: ") + std::move(s));
  }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fixed(double x, int digits = 1) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << x;
  return os.str();
}

void suite_lines(Verdict& v, const oracle::SuiteResult& r) {
  v.require(r.ok(), oracle::summary(r));
  for (const auto& f : r.failures) v.note("  " + f);
}

// Suites from criteria 1–3 are kept for the validator count in 4.
struct Shared {
  std::vector<oracle::SuiteResult> suites;
  std::vector<std::size_t> expected_validations;
};

Verdict axioms(std::uint64_t seed, Shared& shared) {
  Verdict v;
  auto start = std::chrono::steady_clock::now();
  auto r = oracle::axioms(seed, 100);
  double secs = seconds_since(start);
  suite_lines(v, r);
  v.require(r.cases == 16 * 100, std::to_string(r.cases) + " instances over 16 schemas");
  v.require(secs < 60, "wall time " + fixed(secs) + " s (limit 60 s)");
  shared.suites.push_back(r);
  // lhs and rhs, under both monads
  shared.expected_validations.push_back(4 * r.cases);
  return v;
}

Verdict idempotence(std::uint64_t seed, Shared& shared) {
  Verdict v;
  for (Calculus c : kCalculi) {
    auto r = oracle::idempotence(c, seed, 500);
    suite_lines(v, r);
    v.require(r.max_ms < 1000, "slowest normalization " + fixed(r.max_ms) + " ms (limit 1000 ms)");
    shared.suites.push_back(r);
    shared.expected_validations.push_back(r.cases);
  }
  return v;
}

Verdict soundness(std::uint64_t seed, Shared& shared) {
  Verdict v;
  for (Calculus c : kCalculi) {
    auto r = oracle::soundness(c, seed, 300, oracle::Model{.base = 2});
    suite_lines(v, r);
    double rate = 100.0 * static_cast<double>(r.skipped) / static_cast<double>(r.cases);
    v.require(rate < 10, "DomainTooLarge rate " + fixed(rate) + "% (" + std::to_string(r.skipped) + "/" +
                             std::to_string(r.cases) + ", limit 10%)");
    shared.suites.push_back(r);
    shared.expected_validations.push_back(r.cases);
  }
  return v;
}

Verdict validation(const Shared& shared) {
  Verdict v;
  if (shared.suites.empty()) {
    v.require(false, "needs criteria 1-3 in the same run");
    return v;
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < shared.suites.size(); ++i) {
    const auto& r = shared.suites[i];
    v.require(r.invalid == 0 && r.validated == shared.expected_validations[i],
              r.name + ": " + std::to_string(r.validated) + "/" + std::to_string(shared.expected_validations[i]) +
                  " normal forms validated");
    total += r.validated;
  }
  v.note(std::to_string(total) + " normal forms checked against the grammar validators");
  return v;
}

Verdict monads(std::uint64_t seed) {
  Verdict v;
  auto r = oracle::monads(seed, 500, oracle::Model{.base = 2});
  suite_lines(v, r);
  v.require(r.skipped == 0, std::to_string(r.skipped) + " cases too large for the model");
  v.note("structural agreement " + std::to_string(r.structural) + "/" + std::to_string(r.cases) + " (" +
         fixed(100.0 * static_cast<double>(r.structural) / static_cast<double>(r.cases)) + "%)");
  return v;
}

Verdict kernel_laws(std::uint64_t seed) {
  Verdict v;
  using Fn = laws::Report (*)(std::uint64_t, std::size_t);
  const std::pair<const char*, Fn> all[] = {
      {"ope", laws::ope_laws},     {"rename", laws::rename_laws}, {"cover", laws::cover_laws},
      {"covz", laws::covz_laws},   {"add", laws::add_laws},
  };
  for (const auto& [name, fn] : all) {
    auto start = std::chrono::steady_clock::now();
    laws::Report r = fn(seed, 1000);
    v.require(r.ok() && r.random >= 1000, laws::summary(r) + " in " + fixed(seconds_since(start)) + " s");
    for (const auto& f : r.failures) v.note("  " + f);
  }
  return v;
}

Verdict coherence() {
  Verdict v;
  laws::Report r = laws::coherence(3);
  v.require(r.ok(), laws::summary(r));
  for (const auto& f : r.failures) v.note("  " + f);
  return v;
}

// --- criterion 8 -----------------------------------------------------------

struct Stlc {
  static constexpr Calculus calculus = Calculus::Stlc;
  static auto gen(std::uint64_t s) { return oracle::gen_stlc(s); }
  static auto elaborate(const surface::SourceFile& f) { return surface::elaborate_stlc(f); }
  template <class G>
  static auto nf_term(const G& g) {
    return stlc::erase(g.ctx, g.ty, stlc::norm(g.ctx, g.term));
  }
  template <class P>
  static void normalize(const P& p) {
    stlc::validate(p.ctx, p.ty, stlc::norm(p.ctx, p.term));
  }
};

struct Cbpv {
  static constexpr Calculus calculus = Calculus::Cbpv;
  static auto gen(std::uint64_t s) { return oracle::gen_cbpv(s); }
  static auto elaborate(const surface::SourceFile& f) { return surface::elaborate_cbpv(f); }
  template <class G>
  static auto nf_term(const G& g) {
    return cbpv::erase(g.ctx, g.ty, cbpv::norm(g.ctx, g.term));
  }
  template <class P>
  static void normalize(const P& p) {
    cbpv::validate(p.ctx, p.ty, cbpv::norm(p.ctx, p.term));
  }
};

struct Polarized {
  static constexpr Calculus calculus = Calculus::Polarized;
  static auto gen(std::uint64_t s) { return oracle::gen_polarized(s); }
  static auto elaborate(const surface::SourceFile& f) { return surface::elaborate_polarized(f); }
  template <class G>
  static auto nf_term(const G& g) {
    return polarized::erase(g.ctx, g.ty, polarized::norm(g.ctx, g.term));
  }
  template <class P>
  static void normalize(const P& p) {
    polarized::validate(p.ctx, p.ty, polarized::norm(p.ctx, p.term));
  }
};

// Pretty-prints the generated term and its normal form, and re-elaborates both.
template <class C>
void round_trip(Verdict& v, std::uint64_t seed, std::vector<std::string>& corpus) {
  std::size_t ok = 0, total = 0;
  std::vector<std::string> bad;
  for (std::uint64_t k = 0; k < 500; ++k) {
    auto g = C::gen(oracle::sub_seed(seed, k));
    auto names = surface::default_names(g.ctx.size());
    for (const auto& t : {g.term, C::nf_term(g)}) {
      ++total;
      std::string text = surface::pretty_file(g.ctx, names, t);
      corpus.push_back(text);
      try {
        auto p = C::elaborate(surface::parse(text, C::calculus));
        if (p.term == t && p.ctx == g.ctx && p.names == names) {
          ++ok;
        } else if (bad.size() < 3) {
          bad.push_back("changed by the round trip:\n" + text);
        }
      } catch (const Error& e) {
        if (bad.size() < 3) bad.push_back(std::string(e.what()) + " on\n" + text);
      }
    }
  }
  v.require(ok == total, std::string(to_string(C::calculus)) + " round trip: " + std::to_string(ok) + "/" +
                             std::to_string(total) + " (500 generated terms and their normal forms)");
  for (const auto& b : bad) v.note("  " + b);
}

struct FuzzStats {
  std::size_t inputs = 0, parse_errors = 0, elab_errors = 0, accepted = 0, crashes = 0;
  std::vector<std::string> crash_samples;
};

template <class C>
void feed(FuzzStats& st, const std::string& text) {
  ++st.inputs;
  auto crash = [&](const std::string& what) {
    ++st.crashes;
    if (st.crash_samples.size() < 3) st.crash_samples.push_back(what + " on " + std::to_string(text.size()) + " bytes");
  };
  try {
    auto p = C::elaborate(surface::parse(text, C::calculus));
    C::normalize(p);
    ++st.accepted;
  } catch (const ParseError& e) {
    if (e.location().line < 1 || e.location().column < 1) crash("parse error without a location");
    ++st.parse_errors;
  } catch (const Error& e) {
    if (is_internal(e.code())) {
      crash(e.what());
    } else {
      ++st.elab_errors;
    }
  } catch (const std::exception& e) {
    crash(std::string("unexpected exception: ") + e.what());
  }
}

std::string mutate(std::mt19937_64& rng, std::string s) {
  static const std::string tokens[] = {"(", ")", "\\", ".", ":", "->", "+", "*", "{", "}", "|", ";", "inl", "inr",
                                       "case", "of", "abort", "()", "<>", "let", "in", "force", "thunk", "ret",
                                       "bind", "split", "x0", "U", "F", "Top", "a+ X", "a- Y", "0", "1", "o"};
  int edits = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < edits; ++i) {
    std::size_t at = s.empty() ? 0 : rng() % (s.size() + 1);
    switch (rng() % 5) {
      case 0:
        if (at < s.size()) s.erase(at, 1 + rng() % 4);
        break;
      case 1: s.insert(at, tokens[rng() % std::size(tokens)]); break;
      case 2:
        if (at < s.size()) s[at] = static_cast<char>(rng() % 256);
        break;
      case 3: s.resize(at); break;
      default: {
        std::size_t b = s.empty() ? 0 : rng() % s.size();
        if (at < s.size()) std::swap(s[at], s[b]);
      }
    }
  }
  return s;
}

Verdict surface_round_trip(std::uint64_t seed) {
  Verdict v;
  std::vector<std::string> corpus[3];
  round_trip<Stlc>(v, seed, corpus[0]);
  round_trip<Cbpv>(v, seed, corpus[1]);
  round_trip<Polarized>(v, seed, corpus[2]);

  FuzzStats bytes, mutants;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 10000; ++i) {
    std::string s(rng() % 257, '\0');
    for (char& ch : s) ch = static_cast<char>(rng() % 256);
    feed<Stlc>(bytes, s);
    feed<Cbpv>(bytes, s);
    feed<Polarized>(bytes, s);
  }
  for (int i = 0; i < 3000; ++i) {
    int c = i % 3;
    std::string s = mutate(rng, corpus[c][rng() % corpus[c].size()]);
    if (c == 0) feed<Stlc>(mutants, s);
    if (c == 1) feed<Cbpv>(mutants, s);
    if (c == 2) feed<Polarized>(mutants, s);
  }
  auto line = [](const char* what, const FuzzStats& st) {
    return std::string(what) + ": " + std::to_string(st.inputs) + " inputs, " + std::to_string(st.parse_errors) +
           " parse errors, " + std::to_string(st.elab_errors) + " elaboration errors, " +
           std::to_string(st.accepted) + " accepted and normalized, " + std::to_string(st.crashes) + " crashes";
  };
  v.require(bytes.crashes == 0, line("fuzz, 10^4 random byte strings x 3 calculi", bytes));
  for (const auto& s : bytes.crash_samples) v.note("  " + s);
  v.require(mutants.crashes == 0, line("fuzz, mutated programs", mutants));
  for (const auto& s : mutants.crash_samples) v.note("  " + s);
  return v;
}

// --- criterion 9 -----------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

// Runs the CLI and returns stdout and the exit status.
std::pair<std::string, int> run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + NBE_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {"", -1};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

Verdict goldens() {
  Verdict v;
  const std::string dir = NBE_GOLDEN_DIR;
  for (const char* name : {"pair", "codiag", "eta"}) {
    std::string src = dir + "/" + name + ".nbe";
    for (const char* monad : {"free", "cont"}) {
      for (bool ast : {false, true}) {
        std::string want = slurp(dir + "/" + name + (ast ? ".ast" : ".out"));
        auto [out, code] = run_cli(std::string("norm -c stlc -m ") + monad + (ast ? " --ast " : " ") + "\"" + src + "\"");
        bool same = code == 0 && !want.empty() && out == want;
        v.require(same, std::string(name) + (ast ? ".ast" : ".out") + " via --monad " + monad +
                            (same ? " matches" : " differs (exit " + std::to_string(code) + "): " + out));
      }
    }
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-9"};
  std::vector<int> only;
  std::uint64_t seed = 20261016;
  app.add_option("criteria", only, "criteria to run (default: all)")->check(CLI::Range(1, 9));
  app.add_option("--seed", seed, "base seed");
  CLI11_PARSE(app, argc, argv);
  std::set<int> want(only.begin(), only.end());
  if (want.empty()) want = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  Shared shared;
  const std::pair<int, std::pair<const char*, std::function<Verdict()>>> criteria[] = {
      {1, {"axiom soundness (STLC)", [&] { return axioms(seed, shared); }}},
      {2, {"idempotence", [&] { return idempotence(seed, shared); }}},
      {3, {"finite-model soundness", [&] { return soundness(seed, shared); }}},
      {4, {"grammar validation", [&] { return validation(shared); }}},
      {5, {"free cover vs continuations (STLC)", [&] { return monads(seed); }}},
      {6, {"kernel laws", [&] { return kernel_laws(seed); }}},
      {7, {"match/reflect coherence", [] { return coherence(); }}},
      {8, {"surface round trip and fuzzing", [&] { return surface_round_trip(seed); }}},
      {9, {"golden files via the CLI", [] { return goldens(); }}},
  };

  std::cout << "seed " << seed << "\n";
  bool all = true;
  for (const auto& [num, entry] : criteria) {
    if (!want.count(num)) continue;
    const auto& [title, run] = entry;
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (v.ok ? "PASS " : "FAIL ") << num << ". " << title << " (" << fixed(seconds_since(start)) << " s)\n";
    for (const auto& l : v.lines) std::cout << "       " << l << "\n";
    std::cout.flush();
    all = all && v.ok;
  }
  return all ? 0 : 1;
}
