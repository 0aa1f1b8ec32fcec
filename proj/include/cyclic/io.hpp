#ifndef CYCLIC_IO_HPP
#define CYCLIC_IO_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ainf.hpp"
#include "cf_module.hpp"
#include "field.hpp"
#include "transfer.hpp"

/*
 * Line-oriented text files. '#' starts a comment. The first statement is `type <kind>`,
 * kinds: algebra, morphism, homotopy, retract, cf-module, cf-morphism. Paths in `source`,
 * `target`, `from`, `to` and `algebra` statements are relative to the referencing file.
 * Terms are written `: c1 name1 c2 name2 ...` with explicit scalars.
 */
namespace cyclic::io {

namespace fs = std::filesystem;

struct Statement {
  int line = 0;
  std::vector<std::string> tok;
};

struct Document {
  std::string path;
  std::string type;
  std::optional<FieldSpec> field;
  std::vector<Statement> body;

  [[noreturn]] void fail(int line, const std::string& what) const {
    throw Error(Errc::parse, path + ":" + std::to_string(line) + ": " + what);
  }
  fs::path resolve(const std::string& ref) const {
    fs::path p(ref);
    return p.is_absolute() ? p : fs::path(path).parent_path() / p;
  }
};

inline Document parse_document(const std::string& text, const std::string& path) {
  Document doc;
  doc.path = path;
  std::istringstream in(text);
  std::string raw;
  int ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    Statement st{ln, {}};
    for (std::string t; ls >> t;) st.tok.push_back(t);
    if (st.tok.empty()) continue;
    if (doc.type.empty()) {
      if (st.tok[0] != "type" || st.tok.size() != 2) doc.fail(ln, "expected 'type <kind>' first");
      doc.type = st.tok[1];
      continue;
    }
    if (st.tok[0] == "field") {
      if (st.tok.size() != 2) doc.fail(ln, "expected 'field Q' or 'field Fp:<p>'");
      try {
        doc.field = FieldSpec::parse(st.tok[1]);
      } catch (const Error& e) {
        doc.fail(ln, e.message());
      }
      continue;
    }
    doc.body.push_back(std::move(st));
  }
  if (doc.type.empty()) doc.fail(ln, "empty file");
  return doc;
}

inline Document read_document(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::parse, path.string() + ": cannot open");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_document(ss.str(), path.string());
}

/// Field used when a file has no `field` line: $CYCLIC_FIELD, else Q.
inline FieldSpec default_field() {
  const char* e = std::getenv("CYCLIC_FIELD");
  if (!e || !*e) return {};
  return FieldSpec::parse(e);
}

/// Field of a file, following references until one states it.
inline FieldSpec field_of(const fs::path& path, int depth = 0) {
  auto doc = read_document(path);
  if (doc.field) return *doc.field;
  if (depth < 4)
    for (auto& st : doc.body)
      if (st.tok.size() == 2 && (st.tok[0] == "source" || st.tok[0] == "from" || st.tok[0] == "algebra"))
        return field_of(doc.resolve(st.tok[1]), depth + 1);
  return default_field();
}

inline IndexTuple parse_tuple(const Document& doc, int line, const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') doc.fail(line, "bad index tuple '" + s + "'");
  IndexTuple t;
  std::string body = s.substr(1, s.size() - 2);
  std::istringstream in(body);
  for (std::string x; std::getline(in, x, ',');) {
    try {
      size_t used = 0;
      t.push_back(std::stoi(x, &used));
      if (used != x.size()) throw std::invalid_argument(x);
    } catch (...) {
      doc.fail(line, "bad index tuple '" + s + "'");
    }
  }
  if (!is_index_tuple(t)) doc.fail(line, "index tuple must be strictly increasing and nonnegative");
  return t;
}

inline int parse_int(const Document& doc, int line, const std::string& s) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (...) {
  }
  doc.fail(line, "expected an integer, got '" + s + "'");
}

template <class K>
K parse_scalar(const Document& doc, int line, const std::string& s) {
  try {
    return K::parse(s);
  } catch (const Error& e) {
    doc.fail(line, e.message());
  }
}

template <class K>
std::string field_string() {
  if constexpr (std::is_same_v<K, Zp>) return "Fp:" + std::to_string(Zp::modulus());
  else return "Q";
}

inline int basis_index(const Document& doc, int line, const GradedSpace& S, const std::string& name) {
  auto i = S.index_of(name);
  if (!i) doc.fail(line, "unknown basis element '" + name + "'");
  return *i;
}

/// Reads `: c1 n1 c2 n2 ...` starting at tok[pos].
template <class K>
SparseVec<K> parse_terms(const Document& doc, const Statement& st, size_t pos, const GradedSpace& S) {
  if (pos >= st.tok.size() || st.tok[pos] != ":") doc.fail(st.line, "expected ':' before the terms");
  SparseVec<K> v;
  if ((st.tok.size() - pos - 1) % 2) doc.fail(st.line, "terms come in 'scalar name' pairs");
  for (size_t i = pos + 1; i < st.tok.size(); i += 2) {
    K c = parse_scalar<K>(doc, st.line, st.tok[i]);
    v = axpy(v, c, SparseVec<K>{{basis_index(doc, st.line, S, st.tok[i + 1]), K(1)}});
  }
  return v;
}

template <class K>
std::string terms_string(const SparseVec<K>& v, const GradedSpace& S) {
  std::string s = ":";
  for (auto& [j, c] : v) s += " " + c.to_string() + " " + S.labels[j];
  return s;
}

inline std::vector<std::pair<std::string, int>> read_basis(const Document& doc, const std::string& key) {
  std::vector<std::pair<std::string, int>> basis;
  std::map<std::string, int> seen;
  for (auto& st : doc.body) {
    if (st.tok[0] != key) continue;
    if (st.tok.size() != 3) doc.fail(st.line, "expected '" + key + " <name> <degree>'");
    if (seen.count(st.tok[1])) doc.fail(st.line, "duplicate basis element '" + st.tok[1] + "'");
    int deg = parse_int(doc, st.line, st.tok[2]);
    if (deg < 0) doc.fail(st.line, "negative degrees are not supported");
    seen[st.tok[1]] = deg;
    basis.push_back({st.tok[1], deg});
  }
  return basis;
}

/// Adds the entry `key n in_1 .. in_r : terms` to m, checking arity and degree.
template <class K>
void read_multi_entry(const Document& doc, const Statement& st, MultiMap<K>& m, int arity, int degree,
                      const GradedSpace& src, const GradedSpace& tgt, size_t first_input) {
  if (st.tok.size() < first_input + arity + 1) doc.fail(st.line, "expected " + std::to_string(arity) + " inputs");
  std::vector<int> in;
  int deg = degree;
  for (int a = 0; a < arity; ++a) {
    int x = basis_index(doc, st.line, src, st.tok[first_input + a]);
    in.push_back(x);
    deg += src.degree(x);
  }
  auto v = parse_terms<K>(doc, st, first_input + arity, tgt);
  for (auto& [j, c] : v)
    if (tgt.degree(j) != deg)
      doc.fail(st.line, "term '" + tgt.labels[j] + "' has degree " + std::to_string(tgt.degree(j)) + ", expected " +
                            std::to_string(deg));
  if (m.at(in)) doc.fail(st.line, "repeated entry");
  m.add(in, v);
}

template <class K>
void write_multi(std::ostream& os, const std::string& key, int n, const MultiMap<K>& m, const GradedSpace& src,
                 const GradedSpace& tgt) {
  for (auto& [in, v] : m.table) {
    os << key;
    if (n >= 0) os << " " << n;
    for (int x : in) os << " " << src.labels[x];
    os << " " << terms_string(v, tgt) << "\n";
  }
}

/** \brief Reads files of one field, sharing objects loaded from the same path. */
template <class K>
class Loader {
 public:
  std::shared_ptr<const AInfAlgebra<K>> algebra(const fs::path& path) {
    auto key = canonical(path);
    if (auto it = algebras_.find(key); it != algebras_.end()) return it->second;
    auto doc = open(path, "algebra");
    auto A = std::make_shared<AInfAlgebra<K>>();
    A->space = GradedSpace(read_basis(doc, "basis"));
    const auto& S = A->space;
    for (auto& st : doc.body) {
      const auto& k = st.tok[0];
      if (k == "basis") continue;
      if (k == "d") {
        read_multi_entry(doc, st, A->d, 1, -1, S, S, 1);
      } else if (k == "pi") {
        if (st.tok.size() < 2) doc.fail(st.line, "expected 'pi <n> ...'");
        int n = parse_int(doc, st.line, st.tok[1]);
        if (n < 0) doc.fail(st.line, "pi index must be >= 0");
        read_multi_entry(doc, st, A->pi_mut(n), n + 2, n, S, S, 2);
      } else if (k == "cutoff") {
        if (st.tok.size() != 2) doc.fail(st.line, "expected 'cutoff <n>'");
        A->cutoff = parse_int(doc, st.line, st.tok[1]);
        if (A->cutoff < 1) doc.fail(st.line, "cutoff must be >= 1");
      } else {
        doc.fail(st.line, "unknown statement '" + k + "' in an algebra file");
      }
    }
    if (A->cutoff != kComplete && static_cast<int>(A->pi.size()) > A->cutoff)
      doc.fail(0, "pi entries beyond the stated cutoff");
    algebras_[key] = A;
    return A;
  }

  std::shared_ptr<const AInfMorphism<K>> morphism(const fs::path& path) {
    auto key = canonical(path);
    if (auto it = morphisms_.find(key); it != morphisms_.end()) return it->second;
    auto doc = open(path, "morphism");
    auto f = std::make_shared<AInfMorphism<K>>();
    f->source = algebra(doc.resolve(reference(doc, "source")));
    f->target = algebra(doc.resolve(reference(doc, "target")));
    for (auto& st : doc.body) {
      const auto& k = st.tok[0];
      if (k == "source" || k == "target") continue;
      if (k != "f") doc.fail(st.line, "unknown statement '" + k + "' in a morphism file");
      if (st.tok.size() < 2) doc.fail(st.line, "expected 'f <n> ...'");
      int n = parse_int(doc, st.line, st.tok[1]);
      if (n < 0) doc.fail(st.line, "component index must be >= 0");
      auto& m = f->mut(n);
      m.degree = n;
      read_multi_entry(doc, st, m, n + 1, n, f->source->space, f->target->space, 2);
    }
    morphisms_[key] = f;
    return f;
  }

  std::shared_ptr<const AInfHomotopy<K>> homotopy(const fs::path& path) {
    auto doc = open(path, "homotopy");
    auto h = std::make_shared<AInfHomotopy<K>>();
    h->from = morphism(doc.resolve(reference(doc, "from")));
    h->to = morphism(doc.resolve(reference(doc, "to")));
    if (h->from->source != h->to->source || h->from->target != h->to->target)
      doc.fail(0, "'from' and 'to' morphisms have different source or target files");
    for (auto& st : doc.body) {
      const auto& k = st.tok[0];
      if (k == "from" || k == "to") continue;
      if (k != "h") doc.fail(st.line, "unknown statement '" + k + "' in a homotopy file");
      if (st.tok.size() < 2) doc.fail(st.line, "expected 'h <n> ...'");
      int n = parse_int(doc, st.line, st.tok[1]);
      if (n < 0) doc.fail(st.line, "component index must be >= 0");
      read_multi_entry(doc, st, h->mut(n), n + 1, n + 1, h->from->source->space, h->from->target->space, 2);
    }
    return h;
  }

  /// The algebra a retract file refers to, and the retract.
  std::pair<std::shared_ptr<const AInfAlgebra<K>>, RetractData<K>> retract(const fs::path& path) {
    auto doc = open(path, "retract");
    auto A = algebra(doc.resolve(reference(doc, "algebra")));
    RetractData<K> R;
    R.homology = GradedSpace(read_basis(doc, "basis"));
    for (auto& st : doc.body) {
      const auto& k = st.tok[0];
      if (k == "algebra" || k == "basis") continue;
      if (k == "i") read_multi_entry(doc, st, R.incl, 1, 0, R.homology, A->space, 1);
      else if (k == "p") read_multi_entry(doc, st, R.proj, 1, 0, A->space, R.homology, 1);
      else if (k == "h") read_multi_entry(doc, st, R.htp, 1, 1, A->space, A->space, 1);
      else doc.fail(st.line, "unknown statement '" + k + "' in a retract file");
    }
    return {A, R};
  }

  std::shared_ptr<const CFModule<K>> cf_module(const fs::path& path) {
    auto key = canonical(path);
    if (auto it = modules_.find(key); it != modules_.end()) return it->second;
    auto doc = open(path, "cf-module");
    auto X = std::make_shared<CFModule<K>>();
    bool have_trunc = false;
    std::map<std::pair<IndexTuple, Bideg>, std::map<std::pair<int, int>, K>> faces;
    std::map<Bideg, std::map<std::pair<int, int>, K>> d, t;
    auto entry = [&](const Statement& st, size_t at, const Bideg& src, const Bideg& tgt, auto& into) {
      if (st.tok.size() != at + 3) doc.fail(st.line, "expected '<row> <col> <scalar>' after the bidegree");
      int r = parse_int(doc, st.line, st.tok[at]), c = parse_int(doc, st.line, st.tok[at + 1]);
      if (r < 0 || c < 0 || r >= X->carrier.dim(tgt) || c >= X->carrier.dim(src))
        doc.fail(st.line, "entry outside the block " + to_string(tgt) + " <- " + to_string(src));
      into[{r, c}] = parse_scalar<K>(doc, st.line, st.tok[at + 2]);
    };
    for (auto& st : doc.body) {
      const auto& k = st.tok[0];
      if (k == "truncation") {
        if (st.tok.size() != 2) doc.fail(st.line, "expected 'truncation <T>'");
        X->carrier.truncation = parse_int(doc, st.line, st.tok[1]);
        have_trunc = true;
      } else if (k == "dim") {
        if (st.tok.size() != 4) doc.fail(st.line, "expected 'dim <n> <m> <dim>'");
        Bideg b{parse_int(doc, st.line, st.tok[1]), parse_int(doc, st.line, st.tok[2])};
        if (b.first < 0 || b.second < 0) doc.fail(st.line, "negative bidegree");
        X->carrier.dims[b] = parse_int(doc, st.line, st.tok[3]);
      }
    }
    if (!have_trunc) doc.fail(0, "missing 'truncation'");
    for (auto& st : doc.body) {
      const auto& k = st.tok[0];
      if (k == "truncation" || k == "dim") continue;
      if (k == "d" || k == "t") {
        if (st.tok.size() < 3) doc.fail(st.line, "expected '" + k + " <n> <m> ...'");
        Bideg b{parse_int(doc, st.line, st.tok[1]), parse_int(doc, st.line, st.tok[2])};
        Bideg tb = k == "d" ? Bideg{b.first, b.second - 1} : b;
        entry(st, 3, b, tb, k == "d" ? d[b] : t[b]);
      } else if (k == "face") {
        if (st.tok.size() < 4) doc.fail(st.line, "expected 'face <tuple> <n> <m> ...'");
        auto tp = parse_tuple(doc, st.line, st.tok[1]);
        Bideg b{parse_int(doc, st.line, st.tok[2]), parse_int(doc, st.line, st.tok[3])};
        int kk = static_cast<int>(tp.size());
        if (kk == 0 || tp.back() > b.first) doc.fail(st.line, "face tuple does not fit row " + std::to_string(b.first));
        entry(st, 4, b, {b.first - kk, b.second + kk - 1}, faces[{tp, b}]);
      } else {
        doc.fail(st.line, "unknown statement '" + k + "' in a cf-module file");
      }
    }
    auto block = [&](const std::map<std::pair<int, int>, K>& es, int rows, int cols) {
      Matrix<K> m(rows, cols);
      for (auto& [rc, v] : es) m.add_entry(rc.first, rc.second, v);
      return m;
    };
    const auto& S = X->carrier;
    for (auto& [b, es] : d) X->d.set(b, block(es, S.dim({b.first, b.second - 1}), S.dim(b)));
    for (auto& [b, es] : t) X->t.set(b, block(es, S.dim(b), S.dim(b)));
    for (auto& [key2, es] : faces) {
      auto& [tp, b] = key2;
      int kk = static_cast<int>(tp.size());
      auto& fm = X->faces[tp];
      fm.shift = {-kk, kk - 1};
      fm.set(b, block(es, S.dim({b.first - kk, b.second + kk - 1}), S.dim(b)));
    }
    modules_[key] = X;
    return X;
  }

  std::shared_ptr<const CFMorphism<K>> cf_morphism(const fs::path& path) {
    auto doc = open(path, "cf-morphism");
    auto f = std::make_shared<CFMorphism<K>>();
    f->source = cf_module(doc.resolve(reference(doc, "source")));
    f->target = cf_module(doc.resolve(reference(doc, "target")));
    std::map<std::pair<IndexTuple, Bideg>, std::map<std::pair<int, int>, K>> comps;
    for (auto& st : doc.body) {
      const auto& k = st.tok[0];
      if (k == "source" || k == "target") continue;
      if (k != "comp" || st.tok.size() != 7) doc.fail(st.line, "expected 'comp <tuple> <n> <m> <row> <col> <scalar>'");
      auto tp = parse_tuple(doc, st.line, st.tok[1]);
      Bideg b{parse_int(doc, st.line, st.tok[2]), parse_int(doc, st.line, st.tok[3])};
      int kk = static_cast<int>(tp.size());
      if (kk > b.first || (kk && tp.back() > b.first)) doc.fail(st.line, "tuple does not fit row " + std::to_string(b.first));
      Bideg tb{b.first - kk, b.second + kk};
      int r = parse_int(doc, st.line, st.tok[4]), c = parse_int(doc, st.line, st.tok[5]);
      if (r < 0 || c < 0 || r >= f->target->carrier.dim(tb) || c >= f->source->carrier.dim(b))
        doc.fail(st.line, "entry outside the block " + to_string(tb) + " <- " + to_string(b));
      comps[{tp, b}][{r, c}] = parse_scalar<K>(doc, st.line, st.tok[6]);
    }
    for (auto& [key2, es] : comps) {
      auto& [tp, b] = key2;
      int kk = static_cast<int>(tp.size());
      Matrix<K> m(f->target->carrier.dim({b.first - kk, b.second + kk}), f->source->carrier.dim(b));
      for (auto& [rc, v] : es) m.add_entry(rc.first, rc.second, v);
      auto& cm = f->components[tp];
      cm.shift = {-kk, kk};
      cm.set(b, m);
    }
    return f;
  }

 private:
  static std::string canonical(const fs::path& p) {
    std::error_code ec;
    auto c = fs::weakly_canonical(p, ec);
    return ec ? p.string() : c.string();
  }

  Document open(const fs::path& path, const std::string& type) {
    auto doc = read_document(path);
    if (doc.type != type) doc.fail(1, "expected a " + type + " file, found '" + doc.type + "'");
    auto want = field_of(path);
    if (!(want == FieldSpec::parse(field_string<K>())))
      doc.fail(1, "field " + want.to_string() + " does not match " + field_string<K>());
    return doc;
  }

  static std::string reference(const Document& doc, const std::string& key) {
    std::optional<std::string> out;
    for (auto& st : doc.body)
      if (st.tok[0] == key) {
        if (st.tok.size() != 2) doc.fail(st.line, "expected '" + key + " <path>'");
        if (out) doc.fail(st.line, "repeated '" + key + "'");
        out = st.tok[1];
      }
    if (!out) doc.fail(0, "missing '" + key + "'");
    return *out;
  }

  std::map<std::string, std::shared_ptr<const AInfAlgebra<K>>> algebras_;
  std::map<std::string, std::shared_ptr<const AInfMorphism<K>>> morphisms_;
  std::map<std::string, std::shared_ptr<const CFModule<K>>> modules_;
};

// ---- writers ----

template <class K>
void write_algebra(std::ostream& os, const AInfAlgebra<K>& A) {
  const auto& S = A.space;
  os << "type algebra\nfield " << field_string<K>() << "\n";
  for (int i = 0; i < S.size(); ++i) os << "basis " << S.labels[i] << " " << S.degree(i) << "\n";
  if (A.cutoff != kComplete) os << "cutoff " << A.cutoff << "\n";
  write_multi(os, "d", -1, A.d, S, S);
  for (size_t n = 0; n < A.pi.size(); ++n) write_multi(os, "pi", static_cast<int>(n), A.pi[n], S, S);
}

template <class K>
void write_morphism(std::ostream& os, const AInfMorphism<K>& f, const std::string& source, const std::string& target) {
  os << "type morphism\nfield " << field_string<K>() << "\nsource " << source << "\ntarget " << target << "\n";
  for (size_t n = 0; n < f.comps.size(); ++n)
    write_multi(os, "f", static_cast<int>(n), f.comps[n], f.source->space, f.target->space);
}

template <class K>
void write_homotopy(std::ostream& os, const AInfHomotopy<K>& h, const std::string& from, const std::string& to) {
  os << "type homotopy\nfield " << field_string<K>() << "\nfrom " << from << "\nto " << to << "\n";
  for (size_t n = 0; n < h.comps.size(); ++n)
    write_multi(os, "h", static_cast<int>(n), h.comps[n], h.from->source->space, h.from->target->space);
}

template <class K>
void write_retract(std::ostream& os, const RetractData<K>& R, const GradedSpace& A, const std::string& algebra) {
  os << "type retract\nfield " << field_string<K>() << "\nalgebra " << algebra << "\n";
  for (int i = 0; i < R.homology.size(); ++i) os << "basis " << R.homology.labels[i] << " " << R.homology.degree(i) << "\n";
  write_multi(os, "i", -1, R.incl, R.homology, A);
  write_multi(os, "p", -1, R.proj, A, R.homology);
  write_multi(os, "h", -1, R.htp, A, A);
}

template <class K>
void write_block_entries(std::ostream& os, const std::string& prefix, const Matrix<K>& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (auto& [c, v] : m.row(r)) os << prefix << " " << r << " " << c << " " << v.to_string() << "\n";
}

template <class K>
void write_cf_module(std::ostream& os, const CFModule<K>& X) {
  os << "type cf-module\nfield " << field_string<K>() << "\ntruncation " << X.carrier.truncation << "\n";
  for (auto& [b, dim] : X.carrier.dims)
    if (dim) os << "dim " << b.first << " " << b.second << " " << dim << "\n";
  for (auto& [b, m] : X.d.blocks) write_block_entries(os, "d " + std::to_string(b.first) + " " + std::to_string(b.second), m);
  for (auto& [b, m] : X.t.blocks) write_block_entries(os, "t " + std::to_string(b.first) + " " + std::to_string(b.second), m);
  for (auto& [tp, fm] : X.faces) {
    std::string ts = tuple_string(tp);
    for (auto& [b, m] : fm.blocks)
      write_block_entries(os, "face " + ts + " " + std::to_string(b.first) + " " + std::to_string(b.second), m);
  }
}

template <class K>
void write_cf_morphism(std::ostream& os, const CFMorphism<K>& f, const std::string& source, const std::string& target) {
  os << "type cf-morphism\nfield " << field_string<K>() << "\nsource " << source << "\ntarget " << target << "\n";
  for (auto& [tp, cm] : f.components) {
    std::string ts = tuple_string(tp);
    for (auto& [b, m] : cm.blocks)
      write_block_entries(os, "comp " + ts + " " + std::to_string(b.first) + " " + std::to_string(b.second), m);
  }
}

}  // namespace cyclic::io

#endif
