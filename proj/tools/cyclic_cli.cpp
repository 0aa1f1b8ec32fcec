#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "cyclic/bicomplex.hpp"
#include "cyclic/builtin_fixtures.hpp"
#include "cyclic/compare.hpp"
#include "cyclic/golden.hpp"
#include "cyclic/io.hpp"
#include "cyclic/lambda.hpp"
#include "cyclic/transfer.hpp"

using namespace cyclic;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kParse = 2, kTruncation = 3 };

struct Options {
  std::vector<std::string> paths;
  std::string algebra, morphism, inverse, retract, out, out_dir, fixtures;
  std::vector<std::string> homotopies;
  int max_degree = 6;
  int cutoff = -1;
  int truncation = 0;
  bool reps = false;
  int jobs = std::max(1u, std::thread::hardware_concurrency());
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(Errc::parse, "cannot write '" + o.out + "'");
  f << text;
}

bool report(const ValidationReport& r, const std::string& where) {
  std::cout << where << ": " << r.summary() << "\n";
  return r.ok();
}

template <class K>
int validate(const Options& o) {
  io::Loader<K> L;
  bool ok = true;
  for (auto& p : o.paths) {
    auto type = io::read_document(p).type;
    if (type == "algebra") {
      ok &= report(validate_ainf(*L.algebra(p), o.cutoff), p);
    } else if (type == "morphism") {
      auto f = L.morphism(p);
      ok &= report(validate_ainf(*f->source, o.cutoff), p + " (source)");
      ok &= report(validate_ainf(*f->target, o.cutoff), p + " (target)");
      ok &= report(validate_ainf_morphism(*f, o.cutoff), p);
    } else if (type == "homotopy") {
      auto h = L.homotopy(p);
      ok &= report(validate_ainf_morphism(*h->from, o.cutoff), p + " (from)");
      ok &= report(validate_ainf_morphism(*h->to, o.cutoff), p + " (to)");
      ok &= report(validate_ainf_homotopy(*h, o.cutoff), p);
    } else if (type == "retract") {
      auto [A, R] = L.retract(p);
      try {
        check_retract(*A, R);
        std::cout << p << ": retract: OK\n";
      } catch (const Error& e) {
        if (e.code() != Errc::retract_invalid) throw;
        std::cout << p << ": retract: FAILED\n  " << e.what() << "\n";
        ok = false;
      }
    } else if (type == "cf-module") {
      auto X = L.cf_module(p);
      ok &= report(validate_cf_module(*X), p);
      ok &= report(check_cyclic_relations(*X), p);
    } else if (type == "cf-morphism") {
      auto f = L.cf_morphism(p);
      ok &= report(validate_cf_morphism(*f), p);
      ok &= report(check_morphism_relations(*f), p);
    } else {
      throw Error(Errc::parse, p + ":1: unknown file type '" + type + "'");
    }
  }
  return ok ? kOk : kInvalid;
}

template <class K>
bool require_valid(const AInfAlgebra<K>& A, const std::string& what) {
  auto r = validate_ainf(A);
  if (!r.ok()) std::cerr << what << ": " << r.summary() << "\n";
  return r.ok();
}

template <class K>
bool require_valid(const AInfMorphism<K>& f, const std::string& what) {
  bool ok = require_valid(*f.source, what + " (source)") & require_valid(*f.target, what + " (target)");
  auto r = validate_ainf_morphism(f);
  if (!r.ok()) std::cerr << what << ": " << r.summary() << "\n";
  return ok && r.ok();
}

template <class K>
int hc(const Options& o) {
  auto A = io::Loader<K>().algebra(o.algebra);
  if (!require_valid(*A, o.algebra)) return kInvalid;
  auto R = hc_of_ainf(*A, o.max_degree, o.reps, o.jobs);
  std::string s = R.tsv();
  if (o.reps) {
    for (size_t k = 0; k < R.data.size(); ++k)
      for (size_t j = 0; j < R.data[k].reps.size(); ++j) {
        s += "rep\t" + std::to_string(k) + "\t" + std::to_string(j) + "\t";
        for (auto& [i, c] : R.data[k].reps[j]) s += " " + c.to_string() + "*e" + std::to_string(i);
        s += "\n";
      }
  }
  emit(o, s);
  return kOk;
}

template <class K>
int hc_map(const Options& o) {
  auto f = io::Loader<K>().morphism(o.morphism);
  if (!require_valid(*f, o.morphism)) return kInvalid;
  auto Lf = induce_cf_morphism(*f, o.max_degree);
  emit(o, hc_map_report(Lf, o.max_degree, o.jobs).text());
  return kOk;
}

template <class K>
int compare(const Options& o) {
  io::Loader<K> L;
  auto f = L.morphism(o.morphism);
  if (!require_valid(*f, o.morphism)) return kInvalid;
  std::shared_ptr<const AInfMorphism<K>> g;
  if (!o.inverse.empty()) {
    g = L.morphism(o.inverse);
    if (g->source != f->target || g->target != f->source)
      throw Error(Errc::parse, o.inverse + ": source and target must be those of " + o.morphism + " swapped");
    if (!require_valid(*g, o.inverse)) return kInvalid;
  }
  for (auto& hp : o.homotopies) {
    auto h = L.homotopy(hp);
    auto r = validate_ainf_homotopy(*h);
    if (!r.ok()) {
      std::cerr << hp << ": " << r.summary() << "\n";
      return kInvalid;
    }
  }
  int T = o.max_degree;
  auto LA = std::make_shared<const CFModule<K>>(build_lambda(*f->source, T));
  auto LB = f->source == f->target ? LA : std::make_shared<const CFModule<K>>(build_lambda(*f->target, T));
  auto Lf = induce_cf_morphism(*f, LA, LB);
  std::optional<CFMorphism<K>> Lg;
  if (g) Lg = induce_cf_morphism(*g, LB, LA);
  emit(o, compare_homology(Lf, T, Lg ? &*Lg : nullptr, o.jobs).tsv());
  return kOk;
}

template <class K>
int transfer(const Options& o) {
  io::Loader<K> L;
  std::shared_ptr<const AInfAlgebra<K>> A;
  RetractData<K> R;
  if (!o.retract.empty()) std::tie(A, R) = L.retract(o.retract);
  if (!A) {
    if (o.algebra.empty()) throw Error(Errc::parse, "transfer needs --algebra or --retract");
    A = L.algebra(o.algebra);
    R = auto_retract(*A);
  }
  if (!require_valid(*A, "source algebra")) return kInvalid;
  auto T = transfer_oracle(A, R);
  fs::create_directories(o.out_dir);
  fs::path d(o.out_dir);
  auto save = [&](const std::string& name, auto&& fn) {
    std::ofstream os(d / name);
    if (!os) throw Error(Errc::parse, "cannot write '" + (d / name).string() + "'");
    fn(os);
  };
  save("source.alg", [&](auto& os) { io::write_algebra(os, *A); });
  save("homology.alg", [&](auto& os) { io::write_algebra(os, *T.homology); });
  save("retract.ret", [&](auto& os) { io::write_retract(os, R, A->space, "source.alg"); });
  save("incl.mor", [&](auto& os) { io::write_morphism(os, *T.incl, "homology.alg", "source.alg"); });
  save("proj.mor", [&](auto& os) { io::write_morphism(os, *T.proj, "source.alg", "homology.alg"); });
  save("identity.mor", [&](auto& os) { io::write_morphism(os, *T.identity, "source.alg", "source.alg"); });
  save("roundtrip.mor", [&](auto& os) { io::write_morphism(os, *T.roundtrip, "source.alg", "source.alg"); });
  save("homotopy.htp", [&](auto& os) { io::write_homotopy(os, *T.htp, "identity.mor", "roundtrip.mor"); });
  bool ok = report(validate_ainf(*T.homology), "homology.alg");
  ok &= report(validate_ainf_morphism(*T.incl), "incl.mor");
  ok &= report(validate_ainf_morphism(*T.proj), "proj.mor");
  ok &= report(validate_ainf_homotopy(*T.htp), "homotopy.htp");
  return ok ? kOk : kInvalid;
}

template <class K>
int lambda(const Options& o) {
  auto A = io::Loader<K>().algebra(o.algebra);
  if (!require_valid(*A, o.algebra)) return kInvalid;
  std::ostringstream os;
  io::write_cf_module(os, build_lambda(*A, o.truncation));
  emit(o, os.str());
  return kOk;
}

int golden(const Options& o) {
  std::string text = builtin_golden_fixtures();
  if (!o.fixtures.empty()) {
    std::ifstream f(o.fixtures);
    if (!f) throw Error(Errc::parse, o.fixtures + ": cannot open");
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  int match = 0, expected = 0, bad = 0;
  std::string diffs;
  for (auto& fx : parse_golden_fixtures(text)) {
    auto r = check_golden(fx);
    std::cout << golden_status_name(r.status) << "\t" << fx.family << "\t" << fx.arity << "\n";
    for (auto& t : generate_terms(fx.family, fx.arity)) std::cout << "  " << t << "\n";
    switch (r.status) {
      case GoldenStatus::match: ++match; break;
      case GoldenStatus::expected_deviation: ++expected; diffs += r.diff; break;
      case GoldenStatus::mismatch: ++bad; diffs += r.diff; break;
    }
  }
  std::cout << diffs << "golden: " << match << " match, " << expected << " expected deviations, " << bad
            << " mismatches\n";
  return bad ? kInvalid : kOk;
}

template <class K>
int dispatch(const std::string& cmd, const Options& o) {
  if (cmd == "validate") return validate<K>(o);
  if (cmd == "hc") return hc<K>(o);
  if (cmd == "hc-map") return hc_map<K>(o);
  if (cmd == "compare") return compare<K>(o);
  if (cmd == "transfer") return transfer<K>(o);
  if (cmd == "lambda") return lambda<K>(o);
  return golden(o);
}

std::string primary_path(const std::string& cmd, const Options& o) {
  if (cmd == "validate") return o.paths.empty() ? "" : o.paths.front();
  if (cmd == "hc-map" || cmd == "compare") return o.morphism;
  if (cmd == "transfer" && !o.retract.empty()) return o.retract;
  return o.algebra;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cyclic homology of A-infinity algebras"};
  app.require_subcommand(1);
  Options o;

  auto* v = app.add_subcommand("validate", "check the relations of algebra, morphism, homotopy, retract and cf files");
  v->add_option("files", o.paths, "input files")->required()->check(CLI::ExistingFile);
  v->add_option("--cutoff", o.cutoff, "check relation levels below this (default: all nontrivial)");

  auto* h = app.add_subcommand("hc", "cyclic homology dimensions in degrees 0..N-1");
  h->add_option("--algebra", o.algebra)->required()->check(CLI::ExistingFile);
  h->add_option("--max-degree", o.max_degree, "N")->required()->check(CLI::Range(1, 64));
  h->add_option("--out", o.out, "write the TSV here instead of stdout");
  h->add_flag("--reps", o.reps, "also list cycle representatives in Tot coordinates");

  auto* m = app.add_subcommand("hc-map", "matrices and ranks of HC(f) in degrees 0..N-1");
  m->add_option("--morphism", o.morphism)->required()->check(CLI::ExistingFile);
  m->add_option("--max-degree", o.max_degree, "N")->required()->check(CLI::Range(1, 64));
  m->add_option("--out", o.out);

  auto* c = app.add_subcommand("compare", "ISOMORPHIC / NOT-SHOWN per degree for HC(f) between source and target");
  c->add_option("--morphism", o.morphism)->required()->check(CLI::ExistingFile);
  c->add_option("--inverse", o.inverse, "morphism back; HC(g)HC(f) and HC(f)HC(g) must be identities")
      ->check(CLI::ExistingFile);
  c->add_option("--homotopy", o.homotopies, "homotopy files to validate alongside")->check(CLI::ExistingFile);
  c->add_option("--max-degree", o.max_degree, "N")->required()->check(CLI::Range(1, 64));
  c->add_option("--out", o.out);

  auto* t = app.add_subcommand("transfer", "transferred structure on homology with the maps of the retract");
  auto* ta = t->add_option("--algebra", o.algebra, "use a computed retract")->check(CLI::ExistingFile);
  auto* tr = t->add_option("--retract", o.retract, "retract file")->check(CLI::ExistingFile);
  ta->excludes(tr);
  t->add_option("--out-dir", o.out_dir)->required();

  auto* l = app.add_subcommand("lambda", "write the tensor cf-module of an algebra");
  l->add_option("--algebra", o.algebra)->required()->check(CLI::ExistingFile);
  l->add_option("--truncation", o.truncation)->required()->check(CLI::Range(0, 64));
  l->add_option("--out", o.out);

  auto* g = app.add_subcommand("golden", "regenerate the low-arity expansions and diff them against the fixtures");
  g->add_option("--fixtures", o.fixtures, "fixture file (default: built in)")->check(CLI::ExistingFile);

  for (auto* s : {h, m, c}) s->add_option("--jobs", o.jobs, "parallel degrees")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kParse : kOk;
  }
  std::string cmd = app.get_subcommands().front()->get_name();

  try {
    if (cmd == "golden") return golden(o);
    auto path = primary_path(cmd, o);
    auto field = path.empty() ? io::default_field() : io::field_of(path);
    if (!field.prime) return dispatch<Rational>(cmd, o);
    Zp::set_modulus(field.p);
    return dispatch<Zp>(cmd, o);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case Errc::parse: return kParse;
      case Errc::truncation: return kTruncation;
      default: return kInvalid;
    }
  }
}
