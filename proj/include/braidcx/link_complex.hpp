#ifndef BRAIDCX_LINK_COMPLEX_HPP
#define BRAIDCX_LINK_COMPLEX_HPP

#include <vector>

#include "braidcx/diagram.hpp"
#include "braidcx/linalg.hpp"
#include "braidcx/lincomb.hpp"

namespace braidcx {

// order r = E - V_free, defect s = 2E - 3V_free - V_seg, degree (n-2)r + s
// (ambient dimension n+1).
struct LDGrading {
  int order = 0;
  int defect = 0;
  long degree = 0;
};

LDGrading grading_LD(const LinkDiagram& d, int n);

// defect 0 iff trivalent counting strand pieces: every free vertex has edge
// valence exactly 3 and every segment vertex exactly 1.
bool is_trivalent(const LinkDiagram& d);

using LDLin = LinComb<LinkDiagram>;

// Contraction of arcs and non-chord edges; preserves order, raises defect by
// one.  Inputs are canonical representatives.
LDLin differential_LD(const LDLin& x, Parity p);

// Sum over per-strand order-preserving interleavings of segment vertices.
LDLin shuffle_product_LD(const LinkDiagram& a, const LinkDiagram& b, Parity p);
LDLin shuffle_product_LD(const LDLin& a, const LDLin& b, Parity p);

using LDPair = std::pair<LinkDiagram, LinkDiagram>;

// Deconcatenation: sum over component subsets that are downward-closed on
// every strand.
LinComb<LDPair> coproduct_LD(const LinkDiagram& d, Parity p);

// All nonzero canonical classes at (r, s); forest_only restricts to diagrams
// whose components are trees and which satisfy the single-strand condition.
const std::vector<LinkDiagram>& enumerate_LD(int m, int r, int s, Parity p, bool forest_only);

bool is_forest(const LinkDiagram& d);
// single-strand components need a foreign segment vertex strictly inside
bool forest_condition2(const LinkDiagram& d);

struct STURow {
  LinkDiagram s, t, u;
  Rational cs, ct, cu;  // row: cs*x(S) + ct*x(T) + cu*x(U) = 0 for cocycles
};

// All STU rows over the defect-zero basis at order k, built site-by-site from
// trivalent diagrams with a free vertex attached to a segment vertex.
std::vector<STURow> stu_rows(int m, int k, Parity p);

Rational stu_pair_check(const LDLin& x, const STURow& row);

struct CocycleBasis {
  std::vector<LinkDiagram> basis;  // enumeration basis of the (k, 0) space
  std::vector<Vec> kernel;         // cocycle vectors over basis
  int dim() const { return (int)kernel.size(); }
};

// Kernel of the differential restricted to defect 0 at order k; cross-checked
// against the kernel of the STU pairing system (throws on mismatch).
CocycleBasis defect0_cocycles(int m, int k, Parity p, bool forest_only);

}  // namespace braidcx

#endif
