#ifndef BRAIDCX_BRAID_COMPLEX_HPP
#define BRAIDCX_BRAID_COMPLEX_HPP

#include <optional>
#include <vector>

#include "braidcx/diagram.hpp"
#include "braidcx/linalg.hpp"
#include "braidcx/lincomb.hpp"

namespace braidcx {

// Gradings for the diagram algebra: degree (n-1)E - nV_free, order E - V_free,
// defect E - 2V_free - 1.
struct Grading {
  long degree = 0;
  int order = 0;
  int defect = 0;
};

Grading grading_D(const Diagram& d, int n);

// A generator of the normalized bar complex: a word of nonempty canonical
// diagrams on a common strand count.  The empty factors vector is the unit.
struct BarWord {
  std::vector<Diagram> factors;
  int p() const { return (int)factors.size(); }
  auto operator<=>(const BarWord& o) const = default;
};

struct BarGrading {
  int p = 0;
  long q = 0;
  long total = 0;  // q - p
  int order = 0;
  int defect = 0;
};

BarGrading bar_grading(const BarWord& w, int n);

using DLin = LinComb<Diagram>;
using BarLin = LinComb<BarWord>;

// Contraction differential: sum over non-chord edges.  Inputs and outputs are
// linear combinations of canonical representatives.
DLin differential_D(const DLin& x, Parity p);

// Superposition product along the m segment vertices; zero or one term.
DLin product_D(const Diagram& a, const Diagram& b, Parity p);

// All nonzero canonical classes with V_free = r-s-1, E = 2r-s-1; results
// cached, ordered by canonical key.
const std::vector<Diagram>& enumerate_D(int m, int r, int s, Parity p);

// Total bar differential delta_1 + delta_2 with signs (-1)^{eps(i)},
// eps(i) = sum_{j<=i}(|a_j|+1); outer faces vanish (augmentation).
BarLin bar_differential(const BarLin& x, Parity p);

BarLin bar_shuffle(const BarWord& a, const BarWord& b, Parity p);
BarLin bar_shuffle(const BarLin& a, const BarLin& b, Parity p);

using BarPair = std::pair<BarWord, BarWord>;
LinComb<BarPair> bar_coproduct(const BarWord& w);

const std::vector<BarWord>& enumerate_bar(int m, int r, int s, Parity p);

// dim of the (order, defect)-graded cohomology of B(D(m)).
int bar_cohomology_dim(int m, int r, int s, Parity p);

// Coefficients of prod_{j=1}^{m-1} (1 + j t^{n-1}), indexed by degree.
std::vector<long> poincare_dims(int m, int n);

// dim of the (r,s)-graded cohomology of the diagram algebra D(m) itself.
int diagram_cohomology_dim(int m, int r, int s, Parity p);

// Chord monomials: words of generators (i,j), i<j, 0-based strands.  PBW
// normal form has strictly increasing left indices.
using ChordGen = std::pair<int, int>;
using ChordMonomial = std::vector<ChordGen>;
using ChordLin = LinComb<ChordMonomial>;

// Reduction modulo alpha_ij^2 = 0, alpha_ji = (-1)^n alpha_ij, graded
// commutativity (-1)^{n-1}, and the 3T relation; idempotent.
ChordLin chord_normal_form(const ChordMonomial& word, Parity p);

// The projection to cohomology: kills diagrams with free vertices, sends a
// chord diagram to its chord product in PBW normal form.
ChordLin project_chords(const Diagram& d, Parity p);

struct RelationKernel {
  std::vector<ChordMonomial> word_basis;  // all length-k generator words, lex order
  std::vector<Vec> kernel;                // kernel vectors over word_basis
  int dim() const { return (int)kernel.size(); }
};

// Kernel of the pairing against all 4T and shuffle rows on length-k words.
RelationKernel chord_relation_kernel(int m, int k, Parity p);

// dim of the kernel modulo bar-shuffle products of lower-order kernel elements.
int chord_kernel_indecomposable_dim(int m, int k, Parity p);

// nullopt if closed, else the nonzero differential as witness.
std::optional<BarLin> verify_cocycle(const BarLin& x, Parity p);

// The braid chord word [Gamma_{i1 j1} | ... ] for a chord monomial.
BarWord chord_barword(int m, const ChordMonomial& word);
// Inverse: nullopt if some factor is not a single chord.
std::optional<ChordMonomial> barword_chords(const BarWord& w);

// The order-2 Milnor cocycle on 3 strands: three chord words plus a tripod
// term, coefficients solved from closedness (all of magnitude 1).
BarLin mu123(Parity p);

}  // namespace braidcx

#endif
