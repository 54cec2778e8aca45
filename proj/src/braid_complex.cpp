#include "braidcx/braid_complex.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace braidcx {

namespace {

int sgn_pow(long k) { return k % 2 == 0 ? 1 : -1; }

// parity of |Gamma| + 1: for even n this is E+1, for odd n it is V_free+1.
int shifted_degree_parity(const Diagram& d, Parity p) {
  long x = (p == Parity::Even) ? (long)d.edges.size() + 1 : (long)d.n_free + 1;
  return (int)(x & 1);
}

}  // namespace

Grading grading_D(const Diagram& d, int n) {
  long E = (long)d.edges.size();
  long V = d.n_free;
  Grading g;
  g.degree = (n - 1) * E - n * V;
  g.order = (int)(E - V);
  g.defect = (int)(E - 2 * V - 1);
  return g;
}

BarGrading bar_grading(const BarWord& w, int n) {
  BarGrading g;
  g.p = w.p();
  for (const auto& f : w.factors) {
    Grading fg = grading_D(f, n);
    g.q += fg.degree;
    g.order += fg.order;
    g.defect += fg.defect;
  }
  g.total = g.q - g.p;
  if (g.total != (long)(n - 2) * g.order + g.defect)
    throw Error(Err::BadInput, "bar grading consistency identity failed");
  return g;
}

DLin differential_D(const DLin& x, Parity p) {
  DLin out;
  for (const auto& [d, c] : x.terms) {
    int N = d.num_vertices();
    int E = (int)d.edges.size();
    for (int idx = 0; idx < E; ++idx) {
      auto [u, v] = d.edges[idx];
      if (u > v) throw Error(Err::BadInput, "differential_D requires canonical representatives");
      if (v < d.m) continue;  // chord
      // Move-to-front conventions; these make d a derivation for the
      // superposition product (edges of b appended, free labels of b raised),
      // which the bar differential needs.
      int eps;
      if (p == Parity::Odd) {
        eps = sgn_pow(v);  // canonical reps point min -> max; v is deleted
      } else {
        eps = sgn_pow(idx);
      }
      (void)N;
      Diagram nd;
      nd.m = d.m;
      nd.n_free = d.n_free - 1;
      for (int j = 0; j < E; ++j) {
        if (j == idx) continue;
        auto remap = [&](int w) {
          if (w == v) return u;
          return w > v ? w - 1 : w;
        };
        nd.edges.push_back({remap(d.edges[j].first), remap(d.edges[j].second)});
      }
      Canonical cn = canonicalize(nd, p);
      if (cn.sign == 0) continue;
      out.add(cn.rep, c * eps * cn.sign);
    }
  }
  return out;
}

DLin product_D(const Diagram& a, const Diagram& b, Parity p) {
  if (a.m != b.m) throw Error(Err::BadInput, "product of diagrams with different m");
  Diagram nd;
  nd.m = a.m;
  nd.n_free = a.n_free + b.n_free;
  nd.edges = a.edges;
  for (auto [u, v] : b.edges) {
    auto shift = [&](int w) { return w < b.m ? w : w + a.n_free; };
    nd.edges.push_back({shift(u), shift(v)});
  }
  DLin out;
  Canonical cn = canonicalize(nd, p);
  if (cn.sign != 0) out.add(cn.rep, Rational(cn.sign));
  return out;
}

namespace {

// Backtracking enumeration of edge sets with per-vertex minimum degrees.
// min_deg[v] gives the required minimum; vertices with min 0 are
// unconstrained.  Calls out(edges) for every full selection.
void enumerate_edge_sets(int nv, int E, const std::vector<int>& min_deg,
                         const std::function<void(const std::vector<Edge>&)>& out) {
  std::vector<Edge> pairs;
  for (int u = 0; u < nv; ++u)
    for (int v = u + 1; v < nv; ++v) pairs.push_back({u, v});
  int np = (int)pairs.size();
  std::vector<int> last(nv, -1);
  for (int i = 0; i < np; ++i) {
    last[pairs[i].first] = i;
    last[pairs[i].second] = i;
  }
  std::vector<int> deg(nv, 0);
  std::vector<Edge> chosen;
  long deficit = 0;
  for (int v = 0; v < nv; ++v) deficit += min_deg[v];

  std::function<void(int, int)> rec = [&](int idx, int remaining) {
    if (remaining == 0) {
      if (deficit == 0) out(chosen);
      return;
    }
    if (np - idx < remaining) return;
    if (deficit > 2L * remaining) return;
    for (int v = 0; v < nv; ++v)
      if (deg[v] < min_deg[v] && last[v] < idx) return;
    if (idx >= np) return;
    // take pairs[idx]
    auto [u, v] = pairs[idx];
    long dd = (deg[u] < min_deg[u] ? 1 : 0) + (deg[v] < min_deg[v] ? 1 : 0);
    deg[u]++;
    deg[v]++;
    deficit -= dd;
    chosen.push_back(pairs[idx]);
    rec(idx + 1, remaining - 1);
    chosen.pop_back();
    deficit += dd;
    deg[u]--;
    deg[v]--;
    // skip pairs[idx]
    rec(idx + 1, remaining);
  };
  rec(0, E);
}

}  // namespace

const std::vector<Diagram>& enumerate_D(int m, int r, int s, Parity p) {
  static std::map<std::tuple<int, int, int, Parity>, std::vector<Diagram>> cache;
  auto key = std::make_tuple(m, r, s, p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  int V = r - s - 1;
  int E = 2 * r - s - 1;
  if (V < 0 || E < 0)
    throw Error(Err::InfeasibleGrading, "negative vertex or edge count from (r, s)");
  std::vector<Diagram> basis;
  if (E == 0) {
    if (V == 0) basis.push_back(Diagram{m, 0, {}});
  } else if (3 * V <= 2 * E) {
    int nv = m + V;
    std::vector<int> min_deg(nv, 0);
    for (int v = m; v < nv; ++v) min_deg[v] = 3;
    std::map<std::string, Diagram> seen;
    enumerate_edge_sets(nv, E, min_deg, [&](const std::vector<Edge>& edges) {
      // admissibility: every edge component must touch a segment vertex,
      // otherwise closed vacuum graphs (K4 and friends) pollute cohomology
      for (const auto& comp : edge_components(nv, edges))
        if (comp[0] >= m) return;
      Diagram d{m, V, edges};
      Canonical cn = canonicalize(d, p);
      if (cn.sign == 0) return;
      seen.emplace(cn.key, cn.rep);
    });
    for (auto& [k, d] : seen) basis.push_back(d);
  }
  auto [ins, ok] = cache.emplace(key, std::move(basis));
  return ins->second;
}

BarLin bar_differential(const BarLin& x, Parity par) {
  BarLin out;
  for (const auto& [w, c] : x.terms) {
    int p = w.p();
    std::vector<int> sp(p);
    for (int i = 0; i < p; ++i) sp[i] = shifted_degree_parity(w.factors[i], par);
    std::vector<int> eps(p + 1, 0);  // eps[i] = sum_{j<=i} sp_j mod 2
    for (int i = 1; i <= p; ++i) eps[i] = (eps[i - 1] + sp[i - 1]) & 1;

    // vertical: d in slot i with sign (-1)^{eps(i-1)}
    for (int i = 0; i < p; ++i) {
      DLin single;
      single.add(w.factors[i], Rational(1));
      DLin di = differential_D(single, par);
      if (di.empty()) continue;
      int sign = eps[i] ? -1 : 1;
      for (const auto& [nd, nc] : di.terms) {
        BarWord nw = w;
        nw.factors[i] = nd;
        out.add(nw, c * sign * nc);
      }
    }
    // horizontal: multiply slots i, i+1 with sign (-1)^{eps(i)}; outer faces vanish
    for (int i = 0; i + 1 < p; ++i) {
      DLin prod = product_D(w.factors[i], w.factors[i + 1], par);
      if (prod.empty()) continue;
      int sign = eps[i + 1] ? -1 : 1;
      for (const auto& [nd, nc] : prod.terms) {
        if (nd.edges.empty() && nd.n_free == 0) continue;  // normalization: drop empty factors
        BarWord nw;
        nw.factors.reserve(p - 1);
        for (int j = 0; j < i; ++j) nw.factors.push_back(w.factors[j]);
        nw.factors.push_back(nd);
        for (int j = i + 2; j < p; ++j) nw.factors.push_back(w.factors[j]);
        out.add(nw, c * sign * nc);
      }
    }
  }
  return out;
}

BarLin bar_shuffle(const BarWord& a, const BarWord& b, Parity par) {
  int pa = a.p(), pb = b.p();
  BarLin out;
  std::vector<int> spa(pa), spb(pb);
  for (int i = 0; i < pa; ++i) spa[i] = shifted_degree_parity(a.factors[i], par);
  for (int i = 0; i < pb; ++i) spb[i] = shifted_degree_parity(b.factors[i], par);
  // iterate all 0/1 masks with pa ones (slots taken by a's factors)
  std::vector<int> mask(pa + pb, 0);
  std::fill(mask.begin(), mask.begin() + pa, 1);
  std::sort(mask.begin(), mask.end(), std::greater<int>());
  do {
    BarWord w;
    w.factors.reserve(pa + pb);
    int ia = 0, ib = 0;
    long crossings_parity = 0;
    // Koszul sign: for each b_j placed before some a_i, factor (-1)^{spa_i*spb_j}
    for (int pos = 0; pos < pa + pb; ++pos) {
      if (mask[pos]) {
        w.factors.push_back(a.factors[ia]);
        ++ia;
      } else {
        // b_ib crosses all a_i with i >= ia
        if (spb[ib]) {
          for (int i = ia; i < pa; ++i) crossings_parity += spa[i];
        }
        w.factors.push_back(b.factors[ib]);
        ++ib;
      }
    }
    out.add(w, Rational(crossings_parity % 2 == 0 ? 1 : -1));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

BarLin bar_shuffle(const BarLin& a, const BarLin& b, Parity par) {
  BarLin out;
  for (const auto& [wa, ca] : a.terms)
    for (const auto& [wb, cb] : b.terms) {
      BarLin s = bar_shuffle(wa, wb, par);
      out.add_scaled(s, ca * cb);
    }
  return out;
}

LinComb<BarPair> bar_coproduct(const BarWord& w) {
  LinComb<BarPair> out;
  int p = w.p();
  for (int i = 0; i <= p; ++i) {
    BarWord left, right;
    left.factors.assign(w.factors.begin(), w.factors.begin() + i);
    right.factors.assign(w.factors.begin() + i, w.factors.end());
    out.add({left, right}, Rational(1));
  }
  return out;
}

const std::vector<BarWord>& enumerate_bar(int m, int r, int s, Parity p) {
  static std::map<std::tuple<int, int, int, Parity>, std::vector<BarWord>> cache;
  auto key = std::make_tuple(m, r, s, p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (r < 0) throw Error(Err::InfeasibleGrading, "negative order");

  std::vector<BarWord> words;
  // compositions of (r, s) into nonempty factors: r_i >= 1, s_i in [-r_i-1, r_i-1]
  std::vector<Diagram> current;
  std::function<void(int, int)> rec = [&](int r_rem, int s_rem) {
    if (r_rem == 0) {
      if (s_rem == 0 && !current.empty()) words.push_back(BarWord{current});
      return;
    }
    for (int r1 = 1; r1 <= r_rem; ++r1) {
      for (int s1 = -r1 - 1; s1 <= r1 - 1; ++s1) {
        // remaining slots (if any) bound the achievable defect
        int rr = r_rem - r1, sr = s_rem - s1;
        if (rr == 0) {
          if (sr != 0) continue;
        } else {
          if (sr < -2 * rr || sr > rr - 1) continue;  // p <= r bounds per remainder
        }
        const auto& basis = enumerate_D(m, r1, s1, p);
        for (const auto& d : basis) {
          current.push_back(d);
          rec(rr, sr);
          current.pop_back();
        }
      }
    }
  };
  rec(r, s);
  std::sort(words.begin(), words.end());
  auto [ins, ok] = cache.emplace(key, std::move(words));
  return ins->second;
}

namespace {

SparseMatrix bar_diff_matrix(int m, int r, int s, Parity p) {
  const auto& from = enumerate_bar(m, r, s, p);
  const auto& to = enumerate_bar(m, r, s + 1, p);
  std::map<BarWord, int> to_idx;
  for (size_t i = 0; i < to.size(); ++i) to_idx[to[i]] = (int)i;
  SparseMatrix mat((int)to.size(), (int)from.size());
  for (size_t j = 0; j < from.size(); ++j) {
    BarLin x;
    x.add(from[j], Rational(1));
    BarLin dx = bar_differential(x, p);
    for (const auto& [w, c] : dx.terms) {
      auto it = to_idx.find(w);
      if (it == to_idx.end()) throw Error(Err::BadInput, "differential image outside target basis");
      mat.add(it->second, (int)j, c);
    }
  }
  return mat;
}

}  // namespace

int bar_cohomology_dim(int m, int r, int s, Parity p) {
  SparseMatrix d_in = bar_diff_matrix(m, r, s - 1, p);
  SparseMatrix d_out = bar_diff_matrix(m, r, s, p);
  return cohomology_dim(d_in, d_out);
}

std::vector<long> poincare_dims(int m, int n) {
  if (m < 1 || n < 2) throw Error(Err::BadInput, "need m >= 1, n >= 2");
  std::vector<long> coeff{1};
  for (int j = 1; j < m; ++j) {
    std::vector<long> next(coeff.size() + (n - 1), 0);
    for (size_t i = 0; i < coeff.size(); ++i) {
      next[i] += coeff[i];
      next[i + (n - 1)] += j * coeff[i];
    }
    coeff = std::move(next);
  }
  return coeff;
}

namespace {

const std::vector<Diagram>& enum_D_safe(int m, int r, int s, Parity p) {
  static const std::vector<Diagram> empty;
  if (r - s - 1 < 0 || 2 * r - s - 1 < 0) return empty;
  return enumerate_D(m, r, s, p);
}

SparseMatrix diagram_diff_matrix(int m, int r, int s, Parity p) {
  const auto& from = enum_D_safe(m, r, s, p);
  const auto& to = enum_D_safe(m, r, s + 1, p);
  std::map<Diagram, int> to_idx;
  for (size_t i = 0; i < to.size(); ++i) to_idx[to[i]] = (int)i;
  SparseMatrix mat((int)to.size(), (int)from.size());
  for (size_t j = 0; j < from.size(); ++j) {
    DLin x;
    x.add(from[j], Rational(1));
    DLin dx = differential_D(x, p);
    for (const auto& [d, c] : dx.terms) {
      auto it = to_idx.find(d);
      if (it == to_idx.end()) throw Error(Err::BadInput, "differential image outside target basis");
      mat.add(it->second, (int)j, c);
    }
  }
  return mat;
}

}  // namespace

int diagram_cohomology_dim(int m, int r, int s, Parity p) {
  SparseMatrix d_in = diagram_diff_matrix(m, r, s - 1, p);
  SparseMatrix d_out = diagram_diff_matrix(m, r, s, p);
  return cohomology_dim(d_in, d_out);
}

ChordLin chord_normal_form(const ChordMonomial& word, Parity p) {
  const int comm = (p == Parity::Even) ? -1 : 1;      // (-1)^{n-1}
  const int rev = (p == Parity::Even) ? 1 : -1;       // (-1)^n
  ChordLin out;
  std::vector<std::pair<ChordMonomial, Rational>> work;
  {
    ChordMonomial w;
    Rational c(1);
    for (auto [a, b] : word) {
      if (a == b) throw Error(Err::BadInput, "chord generator with equal indices");
      if (a > b) {
        std::swap(a, b);
        c *= rev;
      }
      w.push_back({a, b});
    }
    work.push_back({w, c});
  }
  long steps = 0;
  while (!work.empty()) {
    if (++steps > 2000000) throw Error(Err::BadInput, "chord normal form did not terminate");
    auto [w, c] = work.back();
    work.pop_back();
    size_t viol = w.size();
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].first >= w[i + 1].first) {
        viol = i;
        break;
      }
    }
    if (viol == w.size()) {
      out.add(w, c);
      continue;
    }
    size_t i = viol;
    if (w[i].first > w[i + 1].first) {
      ChordMonomial nw = w;
      std::swap(nw[i], nw[i + 1]);
      work.push_back({nw, c * comm});
      continue;
    }
    // equal left indices
    if (w[i] == w[i + 1]) continue;  // alpha^2 = 0
    int a = w[i].first, j = w[i].second, k = w[i + 1].second;
    if (j < k) {
      // alpha_aj alpha_ak = alpha_aj alpha_jk - alpha_ak alpha_jk
      ChordMonomial w1 = w, w2 = w;
      w1[i] = {a, j};
      w1[i + 1] = {j, k};
      w2[i] = {a, k};
      w2[i + 1] = {j, k};
      work.push_back({w1, c});
      work.push_back({w2, -c});
    } else {
      // k < j: alpha_aj alpha_ak = (-1)^{n-1} (alpha_ak alpha_kj - alpha_aj alpha_kj)
      ChordMonomial w1 = w, w2 = w;
      w1[i] = {a, k};
      w1[i + 1] = {k, j};
      w2[i] = {a, j};
      w2[i + 1] = {k, j};
      work.push_back({w1, c * comm});
      work.push_back({w2, -c * comm});
    }
  }
  return out;
}

ChordLin project_chords(const Diagram& d, Parity p) {
  ChordLin out;
  if (d.n_free > 0) return out;
  ChordMonomial word;
  for (auto [u, v] : d.edges) word.push_back({std::min(u, v), std::max(u, v)});
  return chord_normal_form(word, p);
}

namespace {

std::vector<ChordGen> generators(int m) {
  std::vector<ChordGen> g;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) g.push_back({i, j});
  return g;
}

std::vector<ChordMonomial> all_words(const std::vector<ChordGen>& gens, int k) {
  std::vector<ChordMonomial> out;
  ChordMonomial cur;
  std::function<void()> rec = [&]() {
    if ((int)cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (auto& g : gens) {
      cur.push_back(g);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

}  // namespace

RelationKernel chord_relation_kernel(int m, int k, Parity p) {
  if (m < 1 || k < 0) throw Error(Err::BadInput, "need m >= 1, k >= 0");
  const int n_sign = (p == Parity::Even) ? 1 : -1;  // (-1)^n
  auto gens = generators(m);
  RelationKernel rk;
  rk.word_basis = all_words(gens, k);
  std::map<ChordMonomial, int> idx;
  for (size_t i = 0; i < rk.word_basis.size(); ++i) idx[rk.word_basis[i]] = (int)i;

  // a relation term: pair of generators (possibly with i > j entries needing
  // normalization) dropped into slots (pos, pos+1) of a context word
  struct Term {
    ChordGen x, y;
    int coeff;
  };
  std::vector<std::vector<Term>> relations;
  auto norm = [&](ChordGen g, int& mult) {
    if (g.first > g.second) {
      std::swap(g.first, g.second);
      mult *= n_sign;
    }
    return g;
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l) {
        if (i == j || j == l || i == l) continue;
        std::vector<Term> rel;
        auto push = [&](ChordGen x, ChordGen y, int c) {
          int mult = 1;
          x = norm(x, mult);
          y = norm(y, mult);
          rel.push_back({x, y, c * mult});
        };
        push({i, j}, {j, l}, 1);
        push({j, l}, {i, j}, -n_sign);
        push({i, j}, {i, l}, 1);
        push({i, l}, {i, j}, -n_sign);
        relations.push_back(rel);
      }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l)
        for (int o = 0; o < m; ++o) {
          if (i == j || i == l || i == o || j == l || j == o || l == o) continue;
          std::vector<Term> rel;
          auto push = [&](ChordGen x, ChordGen y, int c) {
            int mult = 1;
            x = norm(x, mult);
            y = norm(y, mult);
            rel.push_back({x, y, c * mult});
          };
          push({i, j}, {l, o}, 1);
          push({l, o}, {i, j}, -n_sign);
          relations.push_back(rel);
        }

  std::vector<std::map<int, Rational>> rows;
  if (k >= 2) {
    auto contexts = all_words(gens, k - 2);
    for (int pos = 0; pos + 1 < k; ++pos) {
      for (const auto& ctx : contexts) {
        for (const auto& rel : relations) {
          std::map<int, Rational> row;
          for (const auto& t : rel) {
            ChordMonomial w;
            int ci = 0;
            for (int q = 0; q < k; ++q) {
              if (q == pos) {
                w.push_back(t.x);
              } else if (q == pos + 1) {
                w.push_back(t.y);
              } else {
                w.push_back(ctx[ci++]);
              }
            }
            row[idx.at(w)] += t.coeff;
          }
          bool nonzero = false;
          for (auto& [c, v] : row)
            if (!is_zero(v)) nonzero = true;
          if (nonzero) rows.push_back(row);
        }
      }
    }
  }
  SparseMatrix mat((int)rows.size(), (int)rk.word_basis.size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (auto& [c, v] : rows[r]) mat.add((int)r, c, v);
  rk.kernel = rref(mat).kernel_basis;
  return rk;
}

BarWord chord_barword(int m, const ChordMonomial& word) {
  BarWord w;
  for (auto [i, j] : word) {
    Diagram d{m, 0, {{i, j}}};
    w.factors.push_back(d);
  }
  return w;
}

std::optional<ChordMonomial> barword_chords(const BarWord& w) {
  ChordMonomial out;
  for (const auto& f : w.factors) {
    if (f.n_free != 0 || f.edges.size() != 1) return std::nullopt;
    auto [u, v] = f.edges[0];
    out.push_back({std::min(u, v), std::max(u, v)});
  }
  return out;
}

int chord_kernel_indecomposable_dim(int m, int k, Parity p) {
  RelationKernel rk = chord_relation_kernel(m, k, p);
  std::map<ChordMonomial, int> idx;
  for (size_t i = 0; i < rk.word_basis.size(); ++i) idx[rk.word_basis[i]] = (int)i;
  std::vector<std::map<int, Rational>> products;
  for (int a = 1; a < k; ++a) {
    int b = k - a;
    if (a > b) break;  // products are graded-commutative; a <= b suffices for the span
    RelationKernel ka = chord_relation_kernel(m, a, p);
    RelationKernel kb = chord_relation_kernel(m, b, p);
    for (const auto& va : ka.kernel)
      for (const auto& vb : kb.kernel) {
        BarLin xa, xb;
        for (size_t i = 0; i < va.size(); ++i)
          if (!is_zero(va[i])) xa.add(chord_barword(m, ka.word_basis[i]), va[i]);
        for (size_t i = 0; i < vb.size(); ++i)
          if (!is_zero(vb[i])) xb.add(chord_barword(m, kb.word_basis[i]), vb[i]);
        BarLin prod = bar_shuffle(xa, xb, p);
        std::map<int, Rational> row;
        for (const auto& [w, c] : prod.terms) {
          auto cm = barword_chords(w);
          row[idx.at(*cm)] += c;
        }
        products.push_back(row);
      }
  }
  SparseMatrix mat((int)products.size(), (int)rk.word_basis.size());
  for (size_t r = 0; r < products.size(); ++r)
    for (auto& [c, v] : products[r]) mat.add((int)r, c, v);
  return rk.dim() - rank(mat);
}

std::optional<BarLin> verify_cocycle(const BarLin& x, Parity p) {
  BarLin dx = bar_differential(x, p);
  if (dx.empty()) return std::nullopt;
  return dx;
}

BarLin mu123(Parity p) {
  const int m = 3;
  Diagram tripod{m, 1, {{0, 3}, {1, 3}, {2, 3}}};
  Canonical tc = canonicalize(tripod, p);
  std::vector<BarWord> gens;
  gens.push_back(chord_barword(m, {{0, 1}, {0, 2}}));
  gens.push_back(chord_barword(m, {{0, 1}, {1, 2}}));
  gens.push_back(chord_barword(m, {{0, 2}, {1, 2}}));
  gens.push_back(BarWord{{tc.rep}});

  // closedness system over the 4 generators
  std::map<BarWord, int> target_idx;
  std::vector<BarLin> images;
  for (const auto& g : gens) {
    BarLin x;
    x.add(g, Rational(1));
    BarLin dx = bar_differential(x, p);
    for (const auto& [w, c] : dx.terms)
      if (!target_idx.count(w)) target_idx[w] = (int)target_idx.size();
    images.push_back(dx);
  }
  SparseMatrix mat((int)target_idx.size(), (int)gens.size());
  for (size_t j = 0; j < gens.size(); ++j)
    for (const auto& [w, c] : images[j].terms) mat.add(target_idx.at(w), (int)j, c);
  auto kr = rref(mat).kernel_basis;
  if (kr.size() != 1) throw Error(Err::BadInput, "mu123 closedness system is not 1-dimensional");
  Vec v = kr[0];
  // normalize the first chord word's coefficient to +1
  Rational scale = 1 / v[0];
  BarLin out;
  for (size_t j = 0; j < gens.size(); ++j) out.add(gens[j], v[j] * scale);
  return out;
}

}  // namespace braidcx
