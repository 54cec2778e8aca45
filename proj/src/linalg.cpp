#include "braidcx/linalg.hpp"

#include <algorithm>

namespace braidcx {

namespace {

// Row-major dense-of-maps working form for elimination.
struct WorkMatrix {
  std::vector<std::map<int, Rational>> rows;
  explicit WorkMatrix(const SparseMatrix& m) : rows(m.rows()) {
    for (const auto& [rc, v] : m.entries()) rows[rc.first][rc.second] = v;
  }
};

}  // namespace

RrefResult rref(const SparseMatrix& m) {
  WorkMatrix w(m);
  const int nrows = m.rows(), ncols = m.cols();
  std::vector<int> pivot_row_of_col(ncols, -1);
  int next_row = 0;
  for (int col = 0; col < ncols && next_row < nrows; ++col) {
    int piv = -1;
    for (int r = next_row; r < nrows; ++r) {
      auto it = w.rows[r].find(col);
      if (it != w.rows[r].end()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(w.rows[piv], w.rows[next_row]);
    piv = next_row;
    Rational inv = 1 / w.rows[piv].at(col);
    for (auto& [c, v] : w.rows[piv]) v *= inv;
    for (int r = 0; r < nrows; ++r) {
      if (r == piv) continue;
      auto it = w.rows[r].find(col);
      if (it == w.rows[r].end()) continue;
      Rational f = it->second;
      for (const auto& [c, v] : w.rows[piv]) {
        auto jt = w.rows[r].find(c);
        if (jt == w.rows[r].end()) {
          w.rows[r][c] = -f * v;
        } else {
          jt->second -= f * v;
          if (is_zero(jt->second)) w.rows[r].erase(jt);
        }
      }
    }
    pivot_row_of_col[col] = piv;
    ++next_row;
  }

  RrefResult res;
  res.rank = next_row;
  for (int col = 0; col < ncols; ++col) {
    if (pivot_row_of_col[col] >= 0) continue;
    Vec v(ncols, Rational(0));
    v[col] = 1;
    for (int c = 0; c < ncols; ++c) {
      int pr = pivot_row_of_col[c];
      if (pr < 0) continue;
      auto it = w.rows[pr].find(col);
      if (it != w.rows[pr].end()) v[c] = -it->second;
    }
    res.kernel_basis.push_back(std::move(v));
  }
  return res;
}

int rank(const SparseMatrix& m) { return rref(m).rank; }

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows(), b.cols());
  // index b by row
  std::vector<std::vector<std::pair<int, Rational>>> brows(b.rows());
  for (const auto& [rc, v] : b.entries()) brows[rc.first].push_back({rc.second, v});
  for (const auto& [rc, v] : a.entries()) {
    for (const auto& [c2, v2] : brows[rc.second]) out.add(rc.first, c2, v * v2);
  }
  return out;
}

int cohomology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  if (d_out.cols() != d_in.rows()) throw std::invalid_argument("shape mismatch");
  SparseMatrix comp = multiply(d_out, d_in);
  if (!comp.entries().empty()) throw NotAComplex();
  int dim_mid = d_out.cols();
  int ker = dim_mid - rank(d_out);
  return ker - rank(d_in);
}

}  // namespace braidcx
