#ifndef BRAIDCX_DIAGRAM_HPP
#define BRAIDCX_DIAGRAM_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace braidcx {

// Parity of the ambient sign convention: for braid-type diagrams the parity
// of n, for link diagrams the parity of n+1.  Odd selects vertex-order +
// edge-direction orientation data, Even selects edge-order data (plus a
// segment-vertex order on the link side).
enum class Parity { Even, Odd };

inline Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }
inline const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

enum class Err {
  SelfLoop,
  FreeValenceTooLow,
  DuplicateSegmentLabel,
  MalformedOrientation,
  SegmentValenceZero,
  NotATree,
  InfeasibleGrading,
  NotAComplex,
  CollisionDetected,
  ToleranceNotMet,
  NonChordTerm,
  NotInKernel,
  BadInput,
};

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

const char* err_name(Err e);

using Edge = std::pair<int, int>;

// Braid-type diagram on m strands.  Vertex ids: 0..m-1 are the segment
// vertices (id = strand), m..m+n_free-1 are free vertices.  The id order is
// the vertex-label order for Odd parity; the edges vector order is the edge
// labeling for Even parity; the pair (first, second) is the edge direction
// for Odd parity.  Canonical representatives store edges sorted with
// first < second.
struct Diagram {
  int m = 0;
  int n_free = 0;
  std::vector<Edge> edges;

  int num_vertices() const { return m + n_free; }
  bool is_segment(int v) const { return v < m; }
  auto operator<=>(const Diagram& o) const = default;
};

// Long-link diagram on m oriented strands.  Segment vertex ids 0..v_seg-1
// are ranked by (strand, position along strand); strand_sizes[i] gives the
// number of segment vertices on strand i.  Free vertex ids follow.  For Odd
// parity the id order is the total vertex-label order; for Even parity the
// segment-vertex label order is the id order and the edges vector order is
// the edge labeling.
struct LinkDiagram {
  int m = 0;
  std::vector<int> strand_sizes;
  int n_free = 0;
  std::vector<Edge> edges;

  int v_seg() const;
  int num_vertices() const { return v_seg() + n_free; }
  bool is_segment(int v) const { return v < v_seg(); }
  // strand and position of a segment vertex id
  std::pair<int, int> strand_pos(int seg_id) const;
  int seg_id(int strand, int pos) const;
  auto operator<=>(const LinkDiagram& o) const = default;
};

std::string encode_key(const Diagram& d);
std::string encode_key(const LinkDiagram& d);

// Validation.  Throws Error on the first violated rule.
void validate(const Diagram& d);
void validate(const LinkDiagram& d);

struct Canonical {
  std::string key;
  int sign = 0;  // 0 iff the class is zero (multi-edge or sign-reversing automorphism)
  Diagram rep;
};

struct CanonicalLink {
  std::string key;
  int sign = 0;
  LinkDiagram rep;
};

// Canonical labeling by brute force over free-vertex permutations (with
// invariant-class pruning).  The sign relates the input orientation to the
// canonical representative's orientation under the given parity's relations.
Canonical canonicalize(const Diagram& d, Parity p);
CanonicalLink canonicalize_link(const LinkDiagram& d, Parity p);

struct ConvertResult {
  Diagram rep;
  int sign = 0;
};

// Flow-preserving odd <-> even orientation conversion for diagrams whose
// unique edge-component is a tree.  Throws Error(NotATree) otherwise.
ConvertResult orientation_odd_to_even(const Diagram& d);
ConvertResult orientation_even_to_odd(const Diagram& d);

struct ComponentsGrafts {
  int components = 0;
  int grafts = 0;
};

ComponentsGrafts components_and_grafts(const LinkDiagram& d);
ComponentsGrafts components_and_grafts(const Diagram& d);

// Connected components of the edge graph (strands forgotten), as sorted
// vertex-id sets; components without edges are omitted.
std::vector<std::vector<int>> edge_components(int num_vertices, const std::vector<Edge>& edges);

namespace detail {

// Tree orientation conversion core.  Vertices 0..nv-1 with ids equal to the
// current label order; tree_vertices lists the vertices of the unique edge
// component.  tag(v) gives a deterministic identity string; the root is the
// tree vertex with the smallest tag.
struct OddToEven {
  std::vector<Edge> edge_order;  // pairs normalized first < second
  int sign = 0;
};
OddToEven odd_to_even_core(const std::vector<Edge>& directed_edges,
                           const std::vector<int>& tree_vertices,
                           const std::function<std::string(int)>& tag);

struct EvenToOdd {
  std::vector<int> vertex_order;    // tree vertices in flow label order
  std::vector<Edge> directed;       // edges directed away from the root
  int sign = 0;
};
EvenToOdd even_to_odd_core(const std::vector<Edge>& ordered_edges,
                           const std::vector<int>& tree_vertices,
                           const std::function<std::string(int)>& tag);

int perm_parity(const std::vector<int>& perm);  // +1 / -1

}  // namespace detail

}  // namespace braidcx

#endif
