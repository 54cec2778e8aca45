#include "braidcx/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace braidcx {

const char* err_name(Err e) {
  switch (e) {
    case Err::SelfLoop: return "SelfLoop";
    case Err::FreeValenceTooLow: return "FreeValenceTooLow";
    case Err::DuplicateSegmentLabel: return "DuplicateSegmentLabel";
    case Err::MalformedOrientation: return "MalformedOrientation";
    case Err::SegmentValenceZero: return "SegmentValenceZero";
    case Err::NotATree: return "NotATree";
    case Err::InfeasibleGrading: return "InfeasibleGrading";
    case Err::NotAComplex: return "NotAComplex";
    case Err::CollisionDetected: return "CollisionDetected";
    case Err::ToleranceNotMet: return "ToleranceNotMet";
    case Err::NonChordTerm: return "NonChordTerm";
    case Err::NotInKernel: return "NotInKernel";
    case Err::BadInput: return "BadInput";
  }
  return "Unknown";
}

int LinkDiagram::v_seg() const {
  int s = 0;
  for (int k : strand_sizes) s += k;
  return s;
}

std::pair<int, int> LinkDiagram::strand_pos(int seg) const {
  for (int i = 0; i < m; ++i) {
    if (seg < strand_sizes[i]) return {i, seg};
    seg -= strand_sizes[i];
  }
  throw Error(Err::BadInput, "segment id out of range");
}

int LinkDiagram::seg_id(int strand, int pos) const {
  int base = 0;
  for (int i = 0; i < strand; ++i) base += strand_sizes[i];
  return base + pos;
}

std::string encode_key(const Diagram& d) {
  std::ostringstream os;
  os << "B;m=" << d.m << ";f=" << d.n_free << ";e=";
  auto es = d.edges;
  for (auto& e : es)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(es.begin(), es.end());
  for (size_t i = 0; i < es.size(); ++i) {
    if (i) os << ",";
    os << es[i].first << "-" << es[i].second;
  }
  return os.str();
}

std::string encode_key(const LinkDiagram& d) {
  std::ostringstream os;
  os << "L;m=" << d.m << ";k=";
  for (int i = 0; i < d.m; ++i) {
    if (i) os << ".";
    os << d.strand_sizes[i];
  }
  os << ";f=" << d.n_free << ";e=";
  auto es = d.edges;
  for (auto& e : es)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(es.begin(), es.end());
  for (size_t i = 0; i < es.size(); ++i) {
    if (i) os << ",";
    os << es[i].first << "-" << es[i].second;
  }
  return os.str();
}

namespace {

std::vector<int> degrees(int nv, const std::vector<Edge>& edges) {
  std::vector<int> deg(nv, 0);
  for (auto& e : edges) {
    deg[e.first]++;
    deg[e.second]++;
  }
  return deg;
}

}  // namespace

void validate(const Diagram& d) {
  if (d.m < 1) throw Error(Err::BadInput, "strand count must be >= 1");
  if (d.n_free < 0) throw Error(Err::BadInput, "negative free vertex count");
  int nv = d.num_vertices();
  for (auto& e : d.edges) {
    if (e.first < 0 || e.first >= nv || e.second < 0 || e.second >= nv)
      throw Error(Err::BadInput, "edge endpoint out of range");
    if (e.first == e.second) throw Error(Err::SelfLoop, "self-loop");
  }
  auto deg = degrees(nv, d.edges);
  for (int v = d.m; v < nv; ++v)
    if (deg[v] < 3) throw Error(Err::FreeValenceTooLow, "free vertex of valence < 3");
}

void validate(const LinkDiagram& d) {
  if (d.m < 1) throw Error(Err::BadInput, "strand count must be >= 1");
  if ((int)d.strand_sizes.size() != d.m) throw Error(Err::BadInput, "strand_sizes size mismatch");
  for (int k : d.strand_sizes)
    if (k < 0) throw Error(Err::BadInput, "negative strand size");
  int nv = d.num_vertices();
  for (auto& e : d.edges) {
    if (e.first < 0 || e.first >= nv || e.second < 0 || e.second >= nv)
      throw Error(Err::BadInput, "edge endpoint out of range");
    if (e.first == e.second) throw Error(Err::SelfLoop, "self-loop");
  }
  auto deg = degrees(nv, d.edges);
  int vs = d.v_seg();
  for (int v = 0; v < vs; ++v)
    if (deg[v] < 1) throw Error(Err::SegmentValenceZero, "segment vertex with no incident edge");
  for (int v = vs; v < nv; ++v)
    if (deg[v] < 3) throw Error(Err::FreeValenceTooLow, "free vertex of valence < 3");
}

namespace detail {

int perm_parity(const std::vector<int>& perm) {
  int inv = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace detail

namespace {

// Iterates over all bijections of the free vertices.  The canonical form is
// the plain lexicographic minimum of the relabeled edge list over every
// permutation; free-vertex counts stay small enough for the factorial sweep.
struct FreePerms {
  int base;  // first free id
  std::vector<int> cur;

  FreePerms(int base_, int nfree) : base(base_), cur(nfree) {
    std::iota(cur.begin(), cur.end(), base);
  }

  // perm[f - base] = image of free vertex f
  const std::vector<int>& current() const { return cur; }

  bool next() { return std::next_permutation(cur.begin(), cur.end()); }
};

int perm_sign_of_map(const std::vector<int>& image, int base) {
  // image[i] = target id of (base + i); parity as a permutation of 0..k-1
  std::vector<int> p(image.size());
  for (size_t i = 0; i < image.size(); ++i) p[i] = image[i] - base;
  return braidcx::detail::perm_parity(p);
}

int sort_parity(std::vector<Edge> es) {
  // parity of the permutation sorting es (entries assumed distinct)
  int inv = 0;
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i + 1; j < es.size(); ++j)
      if (es[j] < es[i]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

bool has_duplicate_pairs(std::vector<Edge> es) {
  for (auto& e : es)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(es.begin(), es.end());
  return std::adjacent_find(es.begin(), es.end()) != es.end();
}

struct CanonCore {
  std::vector<Edge> best_sorted;  // canonical edge list, pairs normalized, sorted
  int sign = 0;                   // 0 for zero classes
  bool multi = false;
};

// seg_count vertices are fixed; free vertices base..base+nfree-1 permute.
CanonCore canonicalize_core(int base, int nfree, const std::vector<Edge>& edges, int nv,
                            Parity p) {
  CanonCore out;
  if (has_duplicate_pairs(edges)) {
    out.multi = true;
    out.sign = 0;
  }
  (void)nv;
  FreePerms perms(base, nfree);
  bool first = true;
  bool sign_conflict = false;
  int best_sign = 0;
  do {
    const auto& pm = perms.current();
    auto map = [&](int v) { return v < base ? v : pm[v - base]; };
    std::vector<Edge> rel(edges.size());
    int flips = 0;
    for (size_t i = 0; i < edges.size(); ++i) {
      int a = map(edges[i].first), b = map(edges[i].second);
      if (a > b) {
        std::swap(a, b);
        ++flips;
      }
      rel[i] = {a, b};
    }
    std::vector<Edge> sorted = rel;
    std::sort(sorted.begin(), sorted.end());
    int sgn;
    if (p == Parity::Odd) {
      sgn = perm_sign_of_map(pm, base) * (flips % 2 == 0 ? 1 : -1);
    } else {
      sgn = out.multi ? 1 : sort_parity(rel);
    }
    if (first || sorted < out.best_sorted) {
      out.best_sorted = sorted;
      best_sign = sgn;
      sign_conflict = false;
      first = false;
    } else if (sorted == out.best_sorted && sgn != best_sign) {
      sign_conflict = true;
    }
  } while (perms.next());
  out.sign = (out.multi || sign_conflict) ? 0 : best_sign;
  return out;
}

}  // namespace

Canonical canonicalize(const Diagram& d, Parity p) {
  CanonCore core = canonicalize_core(d.m, d.n_free, d.edges, d.num_vertices(), p);
  Canonical c;
  c.rep = Diagram{d.m, d.n_free, core.best_sorted};
  c.key = encode_key(c.rep);
  c.sign = core.sign;
  return c;
}

CanonicalLink canonicalize_link(const LinkDiagram& d, Parity p) {
  CanonCore core = canonicalize_core(d.v_seg(), d.n_free, d.edges, d.num_vertices(), p);
  CanonicalLink c;
  c.rep = LinkDiagram{d.m, d.strand_sizes, d.n_free, core.best_sorted};
  c.key = encode_key(c.rep);
  c.sign = core.sign;
  return c;
}

std::vector<std::vector<int>> edge_components(int nv, const std::vector<Edge>& edges) {
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto& e : edges) parent[find(e.first)] = find(e.second);
  std::map<int, std::vector<int>> comp;
  std::vector<bool> touched(nv, false);
  for (auto& e : edges) touched[e.first] = touched[e.second] = true;
  for (int v = 0; v < nv; ++v)
    if (touched[v]) comp[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, vs] : comp) out.push_back(vs);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

int count_grafts(int seg_count, const std::vector<Edge>& edges) {
  // edges adjacent iff they share a free endpoint
  int ne = (int)edges.size();
  if (ne == 0) return 0;
  std::vector<int> parent(ne);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < ne; ++i)
    for (int j = i + 1; j < ne; ++j) {
      auto shares_free = [&](int v) {
        return v >= seg_count && (edges[j].first == v || edges[j].second == v);
      };
      if (shares_free(edges[i].first) || shares_free(edges[i].second)) parent[find(i)] = find(j);
    }
  std::set<int> roots;
  for (int i = 0; i < ne; ++i) roots.insert(find(i));
  return (int)roots.size();
}

}  // namespace

ComponentsGrafts components_and_grafts(const LinkDiagram& d) {
  ComponentsGrafts cg;
  cg.components = (int)edge_components(d.num_vertices(), d.edges).size();
  cg.grafts = count_grafts(d.v_seg(), d.edges);
  return cg;
}

ComponentsGrafts components_and_grafts(const Diagram& d) {
  ComponentsGrafts cg;
  cg.components = (int)edge_components(d.num_vertices(), d.edges).size();
  cg.grafts = count_grafts(d.m, d.edges);
  return cg;
}

namespace detail {

namespace {

struct RootedTree {
  int root = -1;
  std::vector<std::vector<int>> children;
  std::vector<int> parent;
  std::vector<int> preorder;               // vertices in DFS order
  std::vector<Edge> discovery;             // (parent, child) in DFS order
};

std::string subtree_enc(int v, int par, const std::vector<std::vector<int>>& adj,
                        const std::function<std::string(int)>& tag) {
  std::vector<std::string> kids;
  for (int w : adj[v])
    if (w != par) kids.push_back(subtree_enc(w, v, adj, tag));
  std::sort(kids.begin(), kids.end());
  std::string s = "(" + tag(v);
  for (auto& k : kids) s += k;
  s += ")";
  return s;
}

RootedTree build_rooted(const std::vector<Edge>& edges, const std::vector<int>& tree_vertices,
                        const std::function<std::string(int)>& tag) {
  int nv = 0;
  for (int v : tree_vertices) nv = std::max(nv, v + 1);
  for (auto& e : edges) nv = std::max({nv, e.first + 1, e.second + 1});
  std::vector<std::vector<int>> adj(nv);
  for (auto& e : edges) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  // acyclicity / connectedness of the claimed tree
  if (edges.size() + 1 != tree_vertices.size())
    throw Error(Err::NotATree, "edge component is not a tree");

  RootedTree t;
  t.children.assign(nv, {});
  t.parent.assign(nv, -1);
  int root = tree_vertices[0];
  std::string best = tag(root);
  for (int v : tree_vertices) {
    std::string tv = tag(v);
    if (tv < best || (tv == best && v < root)) {
      best = tv;
      root = v;
    }
  }
  t.root = root;
  // iterative DFS with canonical child order
  std::vector<std::pair<int, int>> stack{{root, -1}};
  std::vector<bool> seen(nv, false);
  while (!stack.empty()) {
    auto [v, par] = stack.back();
    stack.pop_back();
    if (seen[v]) throw Error(Err::NotATree, "cycle in edge component");
    seen[v] = true;
    t.preorder.push_back(v);
    if (par >= 0) t.discovery.push_back({par, v});
    std::vector<std::pair<std::string, int>> kids;
    for (int w : adj[v])
      if (w != par) kids.push_back({subtree_enc(w, v, adj, tag), w});
    std::sort(kids.begin(), kids.end());
    t.parent[v] = par;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      t.children[v].push_back(it->second);
      stack.push_back({it->second, v});
    }
  }
  if (t.preorder.size() != tree_vertices.size())
    throw Error(Err::NotATree, "edge component not connected");
  return t;
}

int order_parity(const std::vector<int>& from_order, const std::vector<int>& to_order) {
  std::map<int, int> rank;
  for (size_t i = 0; i < to_order.size(); ++i) rank[to_order[i]] = (int)i;
  std::vector<int> perm;
  perm.reserve(from_order.size());
  for (int v : from_order) perm.push_back(rank.at(v));
  return perm_parity(perm);
}

}  // namespace

OddToEven odd_to_even_core(const std::vector<Edge>& directed_edges,
                           const std::vector<int>& tree_vertices,
                           const std::function<std::string(int)>& tag) {
  RootedTree t = build_rooted(directed_edges, tree_vertices, tag);
  // label order: tree vertices ascending (induced labels); flow order: preorder
  std::vector<int> asc = tree_vertices;
  std::sort(asc.begin(), asc.end());
  int sgn = order_parity(t.preorder, asc);
  // reversals: stored direction vs away-from-root
  std::set<Edge> stored(directed_edges.begin(), directed_edges.end());
  int flips = 0;
  OddToEven out;
  for (auto& e : t.discovery) {
    if (!stored.count(e)) {
      if (!stored.count({e.second, e.first}))
        throw Error(Err::BadInput, "edge direction lookup failed");
      ++flips;
    }
    out.edge_order.push_back({std::min(e.first, e.second), std::max(e.first, e.second)});
  }
  out.sign = sgn * (flips % 2 == 0 ? 1 : -1);
  return out;
}

EvenToOdd even_to_odd_core(const std::vector<Edge>& ordered_edges,
                           const std::vector<int>& tree_vertices,
                           const std::function<std::string(int)>& tag) {
  RootedTree t = build_rooted(ordered_edges, tree_vertices, tag);
  // parity of rearranging the stored edge order into discovery order
  std::map<Edge, int> pos;
  for (size_t i = 0; i < ordered_edges.size(); ++i) {
    Edge e = ordered_edges[i];
    if (e.first > e.second) std::swap(e.first, e.second);
    pos[e] = (int)i;
  }
  std::vector<int> perm;
  for (auto& e : t.discovery) {
    Edge n = {std::min(e.first, e.second), std::max(e.first, e.second)};
    perm.push_back(pos.at(n));
  }
  EvenToOdd out;
  out.sign = perm_parity(perm);
  out.vertex_order = t.preorder;
  out.directed = t.discovery;
  return out;
}

}  // namespace detail

namespace {

std::function<std::string(int)> braid_tag(const Diagram& d) {
  return [m = d.m](int v) {
    char buf[16];
    if (v < m) {
      snprintf(buf, sizeof buf, "S%06d", v);
    } else {
      snprintf(buf, sizeof buf, "F");
    }
    return std::string(buf);
  };
}

std::vector<int> unique_tree_component(const Diagram& d) {
  auto comps = edge_components(d.num_vertices(), d.edges);
  if (comps.size() != 1) throw Error(Err::NotATree, "diagram must have exactly one edge component");
  return comps[0];
}

}  // namespace

ConvertResult orientation_odd_to_even(const Diagram& d) {
  auto comp = unique_tree_component(d);
  auto r = detail::odd_to_even_core(d.edges, comp, braid_tag(d));
  ConvertResult out;
  out.rep = Diagram{d.m, d.n_free, r.edge_order};
  out.sign = r.sign;
  return out;
}

ConvertResult orientation_even_to_odd(const Diagram& d) {
  auto comp = unique_tree_component(d);
  auto r = detail::even_to_odd_core(d.edges, comp, braid_tag(d));
  // bring the flow vertex order to the stored form (ascending ids)
  std::vector<int> asc = comp;
  std::sort(asc.begin(), asc.end());
  std::map<int, int> rank;
  for (size_t i = 0; i < asc.size(); ++i) rank[asc[i]] = (int)i;
  std::vector<int> perm;
  for (int v : r.vertex_order) perm.push_back(rank.at(v));
  int sgn = r.sign * detail::perm_parity(perm);
  auto edges = r.directed;
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    Edge na{std::min(a.first, a.second), std::max(a.first, a.second)};
    Edge nb{std::min(b.first, b.second), std::max(b.first, b.second)};
    return na < nb;
  });
  ConvertResult out;
  out.rep = Diagram{d.m, d.n_free, edges};
  out.sign = sgn;
  return out;
}

}  // namespace braidcx
