#include "cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nbe/cbpv/nbe.hpp"
#include "nbe/oracle/finite.hpp"
#include "nbe/oracle/selftest.hpp"
#include "nbe/polarized/nbe.hpp"
#include "nbe/stlc/nbe.hpp"
#include "nbe/surface/elaborate.hpp"
#include "nbe/surface/parse.hpp"
#include "nbe/surface/pretty.hpp"

namespace nbe::cli {

namespace {

struct Options {
  std::string calculus;
  std::string monad;
  std::vector<std::string> files;
  bool ast = false;
  std::uint64_t seed = 1;
  std::size_t cases = 100;
  unsigned base_size = 2;
};

// Thrown for problems with the invocation rather than the input.
struct Usage {
  std::string message;
};

struct StlcOps {
  static surface::StlcProgram elaborate(const surface::SourceFile& f) { return surface::elaborate_stlc(f); }
  static stlc::Nf norm(const stlc::Context& g, const stlc::Term& t, stlc::Monad m) { return stlc::norm(g, t, m); }
  static void validate(const stlc::Context& g, const stlc::Ty& a, const stlc::Nf& n) { stlc::validate(g, a, n); }
  static stlc::Term erase(const stlc::Context& g, const stlc::Ty& a, const stlc::Nf& n) { return stlc::erase(g, a, n); }
  static std::string dump(const stlc::Nf& n) { return stlc::dump(n); }
};

struct CbpvOps {
  static surface::CbpvProgram elaborate(const surface::SourceFile& f) { return surface::elaborate_cbpv(f); }
  static cbpv::Nf norm(const cbpv::Context& g, const cbpv::Tm& t, stlc::Monad) { return cbpv::norm(g, t); }
  static void validate(const cbpv::Context& g, const cbpv::Ty& a, const cbpv::Nf& n) { cbpv::validate(g, a, n); }
  static cbpv::Tm erase(const cbpv::Context& g, const cbpv::Ty& a, const cbpv::Nf& n) { return cbpv::erase(g, a, n); }
  static std::string dump(const cbpv::Nf& n) { return cbpv::dump(n); }
};

struct PolarizedOps {
  static surface::PolarizedProgram elaborate(const surface::SourceFile& f) { return surface::elaborate_polarized(f); }
  static polarized::Nf norm(const polarized::Context& g, const polarized::Tm& t, stlc::Monad) {
    return polarized::norm(g, t);
  }
  static void validate(const polarized::Context& g, const polarized::Ty& a, const polarized::Nf& n) {
    polarized::validate(g, a, n);
  }
  static polarized::Tm erase(const polarized::Context& g, const polarized::Ty& a, const polarized::Nf& n) {
    return polarized::erase(g, a, n);
  }
  static std::string dump(const polarized::Nf& n) { return polarized::dump(n); }
};

class Driver {
 public:
  Driver(const Options& opts, Io io) : opts_(opts), io_(io) {}

  Calculus calculus() const {
    auto c = parse_calculus(opts_.calculus);
    if (!c) throw Usage{"unknown calculus '" + opts_.calculus + "' (expected stlc, cbpv or polarized)"};
    return *c;
  }

  stlc::Monad monad() const {
    if (opts_.monad.empty() || opts_.monad == "free") return stlc::Monad::Free;
    if (opts_.monad == "cont") return stlc::Monad::Cont;
    throw Usage{"unknown monad '" + opts_.monad + "' (expected free or cont)"};
  }

  void check_monad_flag(std::optional<Calculus> c) const {
    if (!opts_.monad.empty() && c != Calculus::Stlc) throw Usage{"--monad is only accepted with --calculus stlc"};
    monad();
  }

  template <class F>
  int dispatch(F&& f) {
    switch (calculus()) {
      case Calculus::Stlc: return f(StlcOps{});
      case Calculus::Cbpv: return f(CbpvOps{});
      case Calculus::Polarized: return f(PolarizedOps{});
    }
    return kInternal;
  }

  template <class Ops>
  auto load(const std::string& path) {
    where_ = path == "-" ? "<stdin>" : path;
    auto prog = Ops::elaborate(surface::parse(read(path), calculus()));
    where_.clear();
    return prog;
  }

  template <class Ops>
  int check(Ops) {
    auto p = load<Ops>(opts_.files.at(0));
    io_.out << surface::pretty(p.ty) << "\n";
    return kOk;
  }

  template <class Ops>
  int norm(Ops) {
    auto p = load<Ops>(opts_.files.at(0));
    auto n = normalize<Ops>(p);
    if (opts_.ast) {
      io_.out << Ops::dump(n) << "\n";
    } else {
      io_.out << surface::pretty_file(p.ctx, p.names, Ops::erase(p.ctx, p.ty, n)) << "\n";
    }
    return kOk;
  }

  template <class Ops>
  int eq(Ops) {
    auto [a, b] = load_pair<Ops>();
    bool same = normalize<Ops>(a) == normalize<Ops>(b);
    io_.out << (same ? "equal" : "not equal") << "\n";
    return same ? kOk : kNotEqual;
  }

  template <class Ops>
  int oracle(Ops) {
    auto [a, b] = load_pair<Ops>();
    oracle::Model m{.base = opts_.base_size};
    oracle::Verdict v = oracle::oracle_equiv(a.ctx, a.term, b.term, m);
    if (v.equal) {
      io_.out << "equal in the set model (" << v.envs << (v.envs == 1 ? " environment" : " environments")
              << ", atoms of size " << m.base << ")\n";
      return kOk;
    }
    io_.out << "not equal in the set model\n" << v.counterexample << "\n";
    return kNotEqual;
  }

  int selftest() {
    std::vector<Calculus> which;
    if (opts_.calculus.empty()) {
      which = {Calculus::Stlc, Calculus::Cbpv, Calculus::Polarized};
    } else {
      which = {calculus()};
    }
    oracle::Model m{.base = opts_.base_size};
    std::vector<oracle::SuiteResult> results;
    for (Calculus c : which) {
      results.push_back(oracle::idempotence(c, opts_.seed, opts_.cases, {}, monad()));
      results.push_back(oracle::soundness(c, opts_.seed, opts_.cases, m, {}, monad()));
      if (c == Calculus::Stlc) {
        results.push_back(oracle::monads(opts_.seed, opts_.cases, m));
        results.push_back(oracle::axioms(opts_.seed, opts_.cases));
      }
    }
    bool ok = true;
    for (const auto& r : results) {
      io_.out << (r.ok() ? "ok   " : "FAIL ") << oracle::summary(r) << "\n";
      for (const auto& f : r.failures) io_.out << "       " << f << "\n";
      ok = ok && r.ok();
    }
    return ok ? kOk : kInternal;
  }

  const std::string& where() const { return where_; }

 private:
  std::string read(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
      buf << io_.in.rdbuf();
      return buf.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Usage{"cannot read " + path};
    buf << f.rdbuf();
    return buf.str();
  }

  template <class Ops, class P>
  auto normalize(const P& p) {
    auto n = Ops::norm(p.ctx, p.term, monad());
    Ops::validate(p.ctx, p.ty, n);
    return n;
  }

  template <class Ops>
  auto load_pair() {
    auto a = load<Ops>(opts_.files.at(0));
    auto b = load<Ops>(opts_.files.at(1));
    if (!(a.ctx == b.ctx)) fail(Errc::TypeMismatch, "the two files declare different contexts");
    if (!(a.ty == b.ty)) {
      fail(Errc::TypeMismatch, "the terms have different types, " + surface::pretty(a.ty) + " and " +
                                   surface::pretty(b.ty));
    }
    return std::pair{std::move(a), std::move(b)};
  }

  const Options& opts_;
  Io io_;
  std::string where_;
};

void add_calculus(CLI::App* sub, Options& o, bool required) {
  auto* opt = sub->add_option("-c,--calculus", o.calculus, "stlc, cbpv or polarized");
  if (required) opt->required();
  sub->add_option("-m,--monad", o.monad, "cover monad for stlc: free (default) or cont");
}

void report(const Io& io, const std::string& where, const std::string& msg) {
  io.err << (io.color ? "\x1b[1;31merror:\x1b[0m " : "error: ");
  if (!where.empty()) io.err << where << ": ";
  io.err << msg << "\n";
}

}  // namespace

bool color_from_env() {
  const char* v = std::getenv("NBE_COLOR");
  std::string mode = v ? v : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return isatty(STDERR_FILENO) != 0;
}

int run(const std::vector<std::string>& args, Io io) {
  Options o;
  CLI::App app{"Normalization by evaluation for STLC with sums, CBPV and the polarized calculus", "nbe"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "print the type of a term");
  add_calculus(check, o, true);
  check->add_option("file", o.files, "source file, or - for stdin")->required()->expected(1);

  auto* norm = app.add_subcommand("norm", "print the normal form of a term");
  add_calculus(norm, o, true);
  norm->add_flag("--ast", o.ast, "print the constructor tree instead of concrete syntax");
  norm->add_option("file", o.files, "source file, or - for stdin")->required()->expected(1);

  auto* eq = app.add_subcommand("eq", "compare two terms by their normal forms");
  add_calculus(eq, o, true);
  eq->add_option("files", o.files, "two source files")->required()->expected(2);

  auto* orc = app.add_subcommand("oracle", "compare two terms in the finite set model");
  add_calculus(orc, o, true);
  orc->add_option("--base-size", o.base_size, "size of each atomic type")->check(CLI::Range(1, 4));
  orc->add_option("files", o.files, "two source files")->required()->expected(2);

  auto* self = app.add_subcommand("selftest", "run the generator-driven property suites");
  add_calculus(self, o, false);
  self->add_option("--seed", o.seed, "base seed");
  self->add_option("--cases", o.cases, "cases per suite (instances per schema for axioms)");
  self->add_option("--base-size", o.base_size, "size of each atomic type")->check(CLI::Range(1, 4));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Prints help for --help, or the problem with a hint otherwise.
    return app.exit(e, io.out, io.err) == 0 ? kOk : kTypeError;
  }

  Driver d(o, io);
  try {
    if (*self) {
      std::optional<Calculus> c;
      if (!o.calculus.empty()) c = d.calculus();
      d.check_monad_flag(c);
      return d.selftest();
    }
    d.check_monad_flag(d.calculus());
    if (*check) return d.dispatch([&](auto ops) { return d.check(ops); });
    if (*norm) return d.dispatch([&](auto ops) { return d.norm(ops); });
    if (*eq) return d.dispatch([&](auto ops) { return d.eq(ops); });
    if (*orc) return d.dispatch([&](auto ops) { return d.oracle(ops); });
  } catch (const Usage& u) {
    report(io, "", u.message);
    return kTypeError;
  } catch (const ParseError& e) {
    report(io, d.where(), e.what());
    return kParseError;
  } catch (const Error& e) {
    report(io, d.where(), e.what());
    return is_internal(e.code()) ? kInternal : kTypeError;
  } catch (const std::exception& e) {
    report(io, d.where(), std::string("internal error: ") + e.what());
    return kInternal;
  }
  return kInternal;
}

}  // namespace nbe::cli
