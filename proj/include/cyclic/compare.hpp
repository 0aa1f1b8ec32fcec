#ifndef CYCLIC_COMPARE_HPP
#define CYCLIC_COMPARE_HPP

#include <string>
#include <vector>

#include "bicomplex.hpp"

namespace cyclic {

template <class K>
struct MapReport {
  std::vector<Matrix<K>> maps;  // HC_k(f) for k < N
  std::vector<int> ranks;

  bool invertible(int k) const {
    const auto& m = maps[k];
    return m.rows() == m.cols() && ranks[k] == m.rows();
  }

  std::string text() const {
    std::string s;
    for (size_t k = 0; k < maps.size(); ++k) {
      const auto& m = maps[k];
      s += "degree " + std::to_string(k) + "\t" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + "\trank " +
           std::to_string(ranks[k]) + "\t" + (invertible(static_cast<int>(k)) ? "invertible" : "not-invertible") + "\n";
      for (int r = 0; r < m.rows(); ++r) {
        s += " ";
        for (int c = 0; c < m.cols(); ++c) s += " " + m.at(r, c).to_string();
        s += "\n";
      }
    }
    return s;
  }
};

template <class K>
MapReport<K> hc_map_report(const CFMorphism<K>& f, int N, int jobs = 1) {
  MapReport<K> r;
  r.maps = induced_homology_map(f, N, jobs);
  for (auto& m : r.maps) r.ranks.push_back(rank(m));
  return r;
}

struct DegreeVerdict {
  int degree = 0, dim_source = 0, dim_target = 0, rank = 0;
  bool inverse_checked = false, inverse_ok = false;
  bool isomorphic() const { return dim_source == dim_target && rank == dim_source && (!inverse_checked || inverse_ok); }
};

struct CompareReport {
  std::vector<DegreeVerdict> degrees;

  bool all_isomorphic() const {
    for (auto& d : degrees)
      if (!d.isomorphic()) return false;
    return true;
  }
  std::string tsv() const {
    std::string s = "degree\tdim_source\tdim_target\trank\tinverse\tverdict\n";
    for (auto& d : degrees)
      s += std::to_string(d.degree) + "\t" + std::to_string(d.dim_source) + "\t" + std::to_string(d.dim_target) + "\t" +
           std::to_string(d.rank) + "\t" + (d.inverse_checked ? (d.inverse_ok ? "yes" : "no") : "-") + "\t" +
           (d.isomorphic() ? "ISOMORPHIC" : "NOT-SHOWN") + "\n";
    return s;
  }
};

/**
 * Per-degree comparison of HC(source) and HC(target) through HC(f). When g, a map back, is
 * given, HC(g)HC(f) and HC(f)HC(g) must also be identities for the degree to count.
 */
template <class K>
CompareReport compare_homology(const CFMorphism<K>& f, int N, const CFMorphism<K>* g = nullptr, int jobs = 1) {
  auto Hf = hc_map_report(f, N, jobs);
  std::vector<Matrix<K>> Hg;
  if (g) Hg = induced_homology_map(*g, N, jobs);
  CompareReport rep;
  for (int k = 0; k < N; ++k) {
    DegreeVerdict v;
    v.degree = k;
    v.dim_source = Hf.maps[k].cols();
    v.dim_target = Hf.maps[k].rows();
    v.rank = Hf.ranks[k];
    if (g) {
      v.inverse_checked = true;
      const auto &F = Hf.maps[k], &G = Hg[k];
      v.inverse_ok = G.rows() == F.cols() && G.cols() == F.rows() && G * F == Matrix<K>::identity(F.cols()) &&
                     F * G == Matrix<K>::identity(F.rows());
    }
    rep.degrees.push_back(v);
  }
  return rep;
}

}  // namespace cyclic

#endif
