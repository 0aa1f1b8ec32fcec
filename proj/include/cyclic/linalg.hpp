#ifndef CYCLIC_LINALG_HPP
#define CYCLIC_LINALG_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace cyclic {

/// Sorted list of (index, nonzero value).
template <class K>
using SparseVec = std::vector<std::pair<int, K>>;

/// y += c * x
template <class K>
SparseVec<K> axpy(const SparseVec<K>& y, const K& c, const SparseVec<K>& x) {
  SparseVec<K> out;
  out.reserve(y.size() + x.size());
  size_t a = 0, b = 0;
  while (a < y.size() || b < x.size()) {
    if (b == x.size() || (a < y.size() && y[a].first < x[b].first)) {
      out.push_back(y[a++]);
    } else if (a == y.size() || x[b].first < y[a].first) {
      K v = c * x[b].second;
      if (!v.is_zero()) out.emplace_back(x[b].first, std::move(v));
      ++b;
    } else {
      K v = y[a].second + c * x[b].second;
      if (!v.is_zero()) out.emplace_back(y[a].first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

template <class K>
SparseVec<K> scaled(const SparseVec<K>& x, const K& c) {
  SparseVec<K> out;
  if (c.is_zero()) return out;
  out.reserve(x.size());
  for (auto& [i, v] : x) out.emplace_back(i, v * c);
  return out;
}

/// Accumulates a sparse combination keyed by arbitrary ordered keys.
template <class Key, class K>
class Accumulator {
 public:
  void add(const Key& k, const K& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = m_.try_emplace(k, v);
    if (!fresh) {
      it->second += v;
      if (it->second.is_zero()) m_.erase(it);
    }
  }
  const std::map<Key, K>& terms() const { return m_; }
  bool empty() const { return m_.empty(); }

 private:
  std::map<Key, K> m_;
};

/** \brief Sparse row-major matrix over an exact field. */
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : cols_(cols), rows_(rows) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.rows_[i].emplace_back(i, K(1));
    return m;
  }
  static Matrix from_dense(const std::vector<std::vector<K>>& d, int cols = -1) {
    int c = cols >= 0 ? cols : (d.empty() ? 0 : static_cast<int>(d[0].size()));
    Matrix m(static_cast<int>(d.size()), c);
    for (size_t i = 0; i < d.size(); ++i)
      for (int j = 0; j < c; ++j)
        if (!d[i][j].is_zero()) m.rows_[i].emplace_back(j, d[i][j]);
    return m;
  }

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  const SparseVec<K>& row(int i) const { return rows_[i]; }
  void set_row(int i, SparseVec<K> r) { rows_[i] = std::move(r); }

  K at(int i, int j) const {
    auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](auto& e, int c) { return e.first < c; });
    return (it != r.end() && it->first == j) ? it->second : K(0);
  }

  void add_entry(int i, int j, const K& v) {
    if (v.is_zero()) return;
    auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](auto& e, int c) { return e.first < c; });
    if (it != r.end() && it->first == j) {
      it->second += v;
      if (it->second.is_zero()) r.erase(it);
    } else {
      r.insert(it, {j, v});
    }
  }

  bool is_zero() const {
    for (auto& r : rows_)
      if (!r.empty()) return false;
    return true;
  }
  size_t nnz() const {
    size_t n = 0;
    for (auto& r : rows_) n += r.size();
    return n;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows());
    for (int i = 0; i < rows(); ++i)
      for (auto& [j, v] : rows_[i]) t.rows_[j].emplace_back(i, v);
    return t;
  }

  SparseVec<K> column(int j) const {
    SparseVec<K> c;
    for (int i = 0; i < rows(); ++i) {
      K v = at(i, j);
      if (!v.is_zero()) c.emplace_back(i, v);
    }
    return c;
  }

  SparseVec<K> apply(const SparseVec<K>& x) const {
    SparseVec<K> y;
    for (int i = 0; i < rows(); ++i) {
      K s(0);
      auto& r = rows_[i];
      size_t a = 0, b = 0;
      while (a < r.size() && b < x.size()) {
        if (r[a].first < x[b].first) ++a;
        else if (x[b].first < r[a].first) ++b;
        else s += r[a++].second * x[b++].second;
      }
      if (!s.is_zero()) y.emplace_back(i, std::move(s));
    }
    return y;
  }

  Matrix& operator*=(const K& c) {
    for (auto& r : rows_) r = scaled(r, c);
    return *this;
  }
  friend Matrix operator*(Matrix a, const K& c) { return a *= c; }
  Matrix operator-() const { return *this * K(-1); }

  Matrix& add_scaled(const Matrix& o, const K& c) {
    check_same(o);
    for (int i = 0; i < rows(); ++i)
      if (!o.rows_[i].empty()) rows_[i] = axpy(rows_[i], c, o.rows_[i]);
    return *this;
  }
  Matrix& operator+=(const Matrix& o) { return add_scaled(o, K(1)); }
  Matrix& operator-=(const Matrix& o) { return add_scaled(o, K(-1)); }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows())
      throw Error(Errc::size_mismatch, "product of " + a.shape() + " and " + b.shape());
    Matrix c(a.rows(), b.cols_);
    std::vector<K> acc(b.cols_);
    std::vector<char> mark(b.cols_, 0);
    std::vector<int> touched;
    for (int i = 0; i < a.rows(); ++i) {
      if (a.rows_[i].empty()) continue;
      touched.clear();
      for (auto& [k, av] : a.rows_[i])
        for (auto& [j, bv] : b.rows_[k]) {
          if (!mark[j]) {
            mark[j] = 1;
            touched.push_back(j);
            acc[j] = av * bv;
          } else {
            acc[j] += av * bv;
          }
        }
      std::sort(touched.begin(), touched.end());
      auto& out = c.rows_[i];
      for (int j : touched) {
        if (!acc[j].is_zero()) out.emplace_back(j, acc[j]);
        mark[j] = 0;
      }
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

  std::string shape() const { return std::to_string(rows()) + "x" + std::to_string(cols_); }

  /// First entry where the two matrices differ, for diagnostics.
  friend std::string first_difference(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return "shapes " + a.shape() + " vs " + b.shape();
    for (int i = 0; i < a.rows(); ++i) {
      if (a.rows_[i] == b.rows_[i]) continue;
      for (int j = 0; j < a.cols(); ++j) {
        K x = a.at(i, j), y = b.at(i, j);
        if (!(x == y)) {
          std::ostringstream os;
          os << "entry (" << i << "," << j << "): " << x << " vs " << y;
          return os.str();
        }
      }
    }
    return "";
  }

 private:
  void check_same(const Matrix& o) const {
    if (o.rows() != rows() || o.cols_ != cols_)
      throw Error(Errc::size_mismatch, "sum of " + shape() + " and " + o.shape());
  }

  int cols_ = 0;
  std::vector<SparseVec<K>> rows_;
};

/** \brief Incremental row echelon form with optional tags tracking combinations. */
template <class K>
class Echelon {
 public:
  explicit Echelon(int width, int tag_width = 0, bool reduced = false)
      : width_(width), tag_width_(tag_width), reduced_(reduced), pivot_row_(width, -1) {}

  struct Reduction {
    std::map<int, K> rest;
    std::vector<K> tag;
  };

  /// Reduce v against the stored rows; `tag` accumulates the tags of rows subtracted.
  Reduction reduce(const SparseVec<K>& v) const {
    Reduction r{std::map<int, K>(v.begin(), v.end()), std::vector<K>(tag_width_)};
    auto it = r.rest.begin();
    while (it != r.rest.end()) {
      int c = it->first;
      int pr = pivot_row_[c];
      if (pr < 0) {
        ++it;
        continue;
      }
      K coef = it->second;
      for (auto& [j, x] : rows_[pr]) {
        auto [jt, fresh] = r.rest.try_emplace(j, -coef * x);
        if (!fresh) {
          jt->second -= coef * x;
          if (jt->second.is_zero()) r.rest.erase(jt);
        }
      }
      for (int t = 0; t < tag_width_; ++t)
        if (!tags_[pr][t].is_zero()) r.tag[t] += coef * tags_[pr][t];
      it = r.rest.upper_bound(c);
    }
    return r;
  }

  /// Returns true when v was independent of the stored rows.
  bool insert(const SparseVec<K>& v, std::vector<K> tag = {}) {
    if (tag.empty()) tag.assign(tag_width_, K(0));
    Reduction r = reduce(v);
    if (r.rest.empty()) return false;
    for (int t = 0; t < tag_width_; ++t) tag[t] -= r.tag[t];
    auto lead = r.rest.begin();
    int c = lead->first;
    K inv = K(1) / lead->second;
    SparseVec<K> row;
    row.reserve(r.rest.size());
    for (auto& [j, x] : r.rest) row.emplace_back(j, x * inv);
    for (auto& t : tag) t *= inv;
    if (reduced_) {
      for (size_t k = 0; k < rows_.size(); ++k) {
        auto& other = rows_[k];
        auto pos = std::lower_bound(other.begin(), other.end(), c, [](auto& e, int cc) { return e.first < cc; });
        if (pos == other.end() || pos->first != c) continue;
        K f = -pos->second;
        other = axpy(other, f, row);
        for (int t = 0; t < tag_width_; ++t) tags_[k][t] += f * tag[t];
      }
    }
    pivot_row_[c] = static_cast<int>(rows_.size());
    pivots_.push_back(c);
    rows_.push_back(std::move(row));
    tags_.push_back(std::move(tag));
    return true;
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  int width() const { return width_; }
  const std::vector<int>& pivots() const { return pivots_; }
  const SparseVec<K>& row(int i) const { return rows_[i]; }
  int pivot_row(int col) const { return pivot_row_[col]; }

 private:
  int width_, tag_width_;
  bool reduced_;
  std::vector<int> pivot_row_;
  std::vector<int> pivots_;
  std::vector<SparseVec<K>> rows_;
  std::vector<std::vector<K>> tags_;
};

template <class K>
int rank(const Matrix<K>& m) {
  // eliminate along the shorter side
  if (m.rows() > m.cols()) return rank(m.transpose());
  Echelon<K> e(m.cols());
  for (int i = 0; i < m.rows(); ++i) e.insert(m.row(i));
  return e.rank();
}

/// Basis of {x : m x = 0}, one sparse column vector per free variable (listed in `free` when given).
template <class K>
std::vector<SparseVec<K>> kernel_basis(const Matrix<K>& m, std::vector<int>* free = nullptr) {
  Echelon<K> e(m.cols(), 0, true);
  for (int i = 0; i < m.rows(); ++i) e.insert(m.row(i));
  std::vector<char> is_pivot(m.cols(), 0);
  for (int c : e.pivots()) is_pivot[c] = 1;
  // column f of the reduced form, keyed by pivot column
  std::vector<std::vector<std::pair<int, K>>> by_free(m.cols());
  for (int r = 0; r < e.rank(); ++r) {
    int pc = e.pivots()[r];
    for (auto& [j, v] : e.row(r))
      if (j != pc) by_free[j].emplace_back(pc, -v);
  }
  std::vector<SparseVec<K>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseVec<K> x = by_free[f];
    x.emplace_back(f, K(1));
    std::sort(x.begin(), x.end(), [](auto& a, auto& b) { return a.first < b.first; });
    basis.push_back(std::move(x));
    if (free) free->push_back(f);
  }
  return basis;
}

/**
 * \brief Homology of V at the middle of  U --d_in--> V --d_out--> W.
 *
 * A cycle is determined by its coordinates at the free columns of d_out, so boundaries and
 * representatives are compared there.
 */
template <class K>
struct HomologyData {
  int dim = 0;
  int space_dim = 0;
  std::vector<SparseVec<K>> reps;
  Matrix<K> d_out, d_in;
  std::vector<int> free;      // free columns of d_out
  std::vector<int> rep_slot;  // position in `free` carrying each representative
};

namespace detail {

template <class K>
SparseVec<K> restrict_to(const SparseVec<K>& v, const std::vector<int>& slot_of) {
  SparseVec<K> out;
  for (auto& [j, x] : v)
    if (slot_of[j] >= 0) out.emplace_back(slot_of[j], x);
  return out;
}

template <class K>
std::vector<int> slots(const HomologyData<K>& h) {
  std::vector<int> s(h.space_dim, -1);
  for (size_t i = 0; i < h.free.size(); ++i) s[h.free[i]] = static_cast<int>(i);
  return s;
}

}  // namespace detail

template <class K>
HomologyData<K> homology_at(const Matrix<K>& d_out, const Matrix<K>& d_in) {
  if (d_out.cols() != d_in.rows())
    throw Error(Errc::size_mismatch, "d_out " + d_out.shape() + " and d_in " + d_in.shape());
  if (!(d_out * d_in).is_zero()) throw Error(Errc::composition_nonzero, "d_out d_in != 0");
  HomologyData<K> h;
  h.space_dim = d_out.cols();
  h.d_out = d_out;
  h.d_in = d_in;
  auto ker = kernel_basis(d_out, &h.free);
  auto slot_of = detail::slots(h);
  Echelon<K> im(static_cast<int>(h.free.size()));
  Matrix<K> dt = d_in.transpose();
  for (int j = 0; j < dt.rows(); ++j) im.insert(detail::restrict_to(dt.row(j), slot_of));
  for (size_t i = 0; i < h.free.size(); ++i)
    if (im.pivot_row(static_cast<int>(i)) < 0) {
      h.reps.push_back(ker[i]);
      h.rep_slot.push_back(static_cast<int>(i));
    }
  h.dim = static_cast<int>(h.reps.size());
  return h;
}

/** \brief Expresses cycles in the basis of homology representatives. */
template <class K>
class HomologyCoordinates {
 public:
  explicit HomologyCoordinates(const HomologyData<K>& h)
      : h_(&h), slot_of_(detail::slots(h)), e_(static_cast<int>(h.free.size()), h.dim) {
    Matrix<K> dt = h.d_in.transpose();
    for (int j = 0; j < dt.rows(); ++j) e_.insert(detail::restrict_to(dt.row(j), slot_of_));
    for (int r = 0; r < h.dim; ++r) {
      std::vector<K> tag(h.dim);
      tag[r] = K(1);
      e_.insert({{h.rep_slot[r], K(1)}}, tag);
    }
  }

  /// Coordinates of the class of y; throws NotChainMap when y is not a cycle.
  std::vector<K> coordinates(const SparseVec<K>& y) const {
    if (!h_->d_out.apply(y).empty()) throw Error(Errc::not_chain_map, "image of a cycle is not a cycle");
    auto r = e_.reduce(detail::restrict_to(y, slot_of_));
    if (!r.rest.empty()) throw Error(Errc::not_chain_map, "vector outside cycles");
    return r.tag;
  }

 private:
  const HomologyData<K>* h_;
  std::vector<int> slot_of_;
  Echelon<K> e_;
};

/// Matrix of the map induced by f on homology, columns indexed by source classes.
template <class K>
Matrix<K> induced_on_homology(const Matrix<K>& f, const HomologyData<K>& src, const HomologyData<K>& tgt) {
  if (f.cols() != src.space_dim || f.rows() != tgt.space_dim)
    throw Error(Errc::size_mismatch, "map " + f.shape() + " between spaces of dim " +
                                         std::to_string(src.space_dim) + " and " + std::to_string(tgt.space_dim));
  HomologyCoordinates<K> coords(tgt);
  Matrix<K> m(tgt.dim, src.dim);
  for (int c = 0; c < src.dim; ++c) {
    auto v = coords.coordinates(f.apply(src.reps[c]));
    for (int r = 0; r < tgt.dim; ++r) m.add_entry(r, c, v[r]);
  }
  return m;
}

/** \brief Finite graded vector space with labelled basis, ordered by degree. */
struct GradedSpace {
  std::vector<std::string> labels;
  std::vector<int> degrees;

  GradedSpace() = default;
  /// Basis elements are reordered stably by ascending degree.
  GradedSpace(const std::vector<std::pair<std::string, int>>& basis) {
    auto b = basis;
    std::stable_sort(b.begin(), b.end(), [](auto& x, auto& y) { return x.second < y.second; });
    for (auto& [l, d] : b) {
      labels.push_back(l);
      degrees.push_back(d);
    }
  }

  int size() const { return static_cast<int>(labels.size()); }
  int degree(int i) const { return degrees[i]; }
  int max_degree() const { return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end()); }
  int min_degree() const { return degrees.empty() ? 0 : *std::min_element(degrees.begin(), degrees.end()); }
  std::optional<int> index_of(const std::string& l) const {
    for (int i = 0; i < size(); ++i)
      if (labels[i] == l) return i;
    return std::nullopt;
  }
  std::map<int, int> dims() const {
    std::map<int, int> d;
    for (int x : degrees) ++d[x];
    return d;
  }
  std::map<int, std::vector<std::string>> basis_labels() const {
    std::map<int, std::vector<std::string>> m;
    for (int i = 0; i < size(); ++i) m[degrees[i]].push_back(labels[i]);
    return m;
  }
  /// Flat indices of the basis elements of degree d.
  std::vector<int> in_degree(int d) const {
    std::vector<int> r;
    for (int i = 0; i < size(); ++i)
      if (degrees[i] == d) r.push_back(i);
    return r;
  }
  friend bool operator==(const GradedSpace&, const GradedSpace&) = default;
};

/** \brief Homogeneous linear map between graded spaces, one block per source degree. */
template <class K>
struct GradedMap {
  GradedSpace source, target;
  int shift = 0;
  std::map<int, Matrix<K>> blocks;

  /// The whole map as one matrix in flat bases.
  Matrix<K> flat() const {
    Matrix<K> m(target.size(), source.size());
    for (auto& [d, b] : blocks) {
      auto s = source.in_degree(d), t = target.in_degree(d + shift);
      if (b.cols() != static_cast<int>(s.size()) || b.rows() != static_cast<int>(t.size()))
        throw Error(Errc::size_mismatch, "block at degree " + std::to_string(d));
      for (int i = 0; i < b.rows(); ++i)
        for (auto& [j, v] : b.row(i)) m.add_entry(t[i], s[j], v);
    }
    return m;
  }
};

}  // namespace cyclic

#endif
