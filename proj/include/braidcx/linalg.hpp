#ifndef BRAIDCX_LINALG_HPP
#define BRAIDCX_LINALG_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "braidcx/rational.hpp"

namespace braidcx {

struct NotAComplex : std::runtime_error {
  NotAComplex() : std::runtime_error("d_out * d_in != 0") {}
};

// Sparse exact-rational matrix; only nonzero entries are stored.
class SparseMatrix {
 public:
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void add(int r, int c, const Rational& v) {
    if (is_zero(v)) return;
    auto it = entries_.find({r, c});
    if (it == entries_.end()) {
      entries_.emplace(std::make_pair(r, c), v);
    } else {
      it->second += v;
      if (is_zero(it->second)) entries_.erase(it);
    }
  }

  Rational get(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Rational(0) : it->second;
  }

  const std::map<std::pair<int, int>, Rational>& entries() const { return entries_; }

 private:
  int rows_, cols_;
  std::map<std::pair<int, int>, Rational> entries_;
};

using Vec = std::vector<Rational>;

struct RrefResult {
  int rank = 0;
  std::vector<Vec> kernel_basis;  // vectors of length cols
};

// Gaussian elimination with the fixed pivot rule: scan columns left to
// right, pivot on the smallest remaining row index with a nonzero entry.
// Deterministic for a given matrix.
RrefResult rref(const SparseMatrix& m);

int rank(const SparseMatrix& m);

// Middle cohomology dimension of  . --d_in--> . --d_out--> .
// Requires d_out * d_in = 0 (checked; throws NotAComplex).
int cohomology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out);

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace braidcx

#endif
