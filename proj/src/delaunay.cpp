#include "trim/delaunay.hpp"

#include "trim/predicates.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace trim {

namespace {

constexpr int kGhost = -1;
constexpr double kCollapseTol = 1e-9;

struct Tri {
  int v[3];
  int nbr[3];  // nbr[k] lies across the edge opposite v[k]
  bool alive = true;
};

/// Incremental Bowyer-Watson triangulation. The hull is bordered by ghost
/// triangles carrying one kGhost vertex, so insertions outside the current
/// hull and collinear border chains need no special casing.
class Builder {
 public:
  explicit Builder(const std::vector<Eigen::Vector2d>& pts) : pts_(pts) {}

  void run() {
    const int n = static_cast<int>(pts_.size());
    if (n < 3) throw std::invalid_argument("delaunay: need at least 3 points");

    // seed triangle: first point, first point distinct from it, first point
    // not collinear with those two
    const int i0 = 0;
    int i1 = -1, i2 = -1;
    for (int i = 1; i < n && i1 < 0; ++i)
      if (pts_[i] != pts_[i0]) i1 = i;
    if (i1 < 0) throw std::invalid_argument("delaunay: all points coincide");
    double ori = 0;
    for (int i = 1; i < n && i2 < 0; ++i) {
      if (i == i1) continue;
      ori = orient2d(pts_[i0], pts_[i1], pts_[i]);
      if (ori != 0) i2 = i;
    }
    if (i2 < 0) throw std::invalid_argument("delaunay: all points are collinear");

    seed(i0, i1, i2, ori > 0);
    std::vector<bool> done(n, false);
    done[i0] = done[i1] = done[i2] = true;
    for (int i = 0; i < n; ++i)
      if (!done[i]) insert(i);
  }

  std::vector<Eigen::Vector3i> realTriangles() const {
    std::vector<Eigen::Vector3i> out;
    for (const auto& t : tris_)
      if (t.alive && !isGhost(t)) out.emplace_back(t.v[0], t.v[1], t.v[2]);
    return out;
  }

 private:
  static bool isGhost(const Tri& t) {
    return t.v[0] == kGhost || t.v[1] == kGhost || t.v[2] == kGhost;
  }
  static int ghostSlot(const Tri& t) {
    for (int k = 0; k < 3; ++k)
      if (t.v[k] == kGhost) return k;
    return -1;
  }

  void seed(int a, int b, int c, bool ccw) {
    if (!ccw) std::swap(b, c);
    // interior triangle 0 plus one ghost per hull edge
    tris_.push_back({{a, b, c}, {1, 2, 3}, true});
    tris_.push_back({{c, b, kGhost}, {0, 0, 0}, true});  // across (b,c)
    tris_.push_back({{a, c, kGhost}, {0, 0, 0}, true});  // across (c,a)
    tris_.push_back({{b, a, kGhost}, {0, 0, 0}, true});  // across (a,b)
    tris_[1].nbr[2] = 0;
    tris_[2].nbr[2] = 0;
    tris_[3].nbr[2] = 0;
    // ghost-to-ghost adjacency around the hull
    linkBySharedEdge(1, 2);
    linkBySharedEdge(2, 3);
    linkBySharedEdge(3, 1);
    tris_[0].nbr[0] = 1;  // across (b,c)
    tris_[0].nbr[1] = 2;  // across (c,a)
    tris_[0].nbr[2] = 3;  // across (a,b)
    last_real_ = 0;
  }

  void linkBySharedEdge(int ta, int tb) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int a1 = tris_[ta].v[(i + 1) % 3], a2 = tris_[ta].v[(i + 2) % 3];
        const int b1 = tris_[tb].v[(j + 1) % 3], b2 = tris_[tb].v[(j + 2) % 3];
        if (a1 == b2 && a2 == b1) {
          tris_[ta].nbr[i] = tb;
          tris_[tb].nbr[j] = ta;
          return;
        }
      }
  }

  bool strictlyBetween(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                       const Eigen::Vector2d& p) const {
    // assumes p collinear with a,b; compare along the dominant axis
    if (std::abs(b.x() - a.x()) >= std::abs(b.y() - a.y())) {
      const auto [lo, hi] = std::minmax(a.x(), b.x());
      return p.x() > lo && p.x() < hi;
    }
    const auto [lo, hi] = std::minmax(a.y(), b.y());
    return p.y() > lo && p.y() < hi;
  }

  bool conflicts(int ti, const Eigen::Vector2d& p) const {
    const Tri& t = tris_[ti];
    const int g = ghostSlot(t);
    if (g < 0) return incircle(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], p) > 0;
    // ghost circumdisk: open halfplane beyond the hull edge plus the open edge
    const Eigen::Vector2d& a = pts_[t.v[(g + 1) % 3]];
    const Eigen::Vector2d& b = pts_[t.v[(g + 2) % 3]];
    const double o = orient2d(a, b, p);
    if (o > 0) return true;
    return o == 0 && strictlyBetween(a, b, p);
  }

  int locateConflict(const Eigen::Vector2d& p) {
    int cur = last_real_;
    if (!tris_[cur].alive) cur = firstAlive();
    const int cap = static_cast<int>(tris_.size()) + 8;
    for (int step = 0; step < cap; ++step) {
      const Tri& t = tris_[cur];
      if (ghostSlot(t) >= 0) {
        if (conflicts(cur, p)) return cur;
        cur = t.nbr[ghostSlot(t)];  // retreat to the interior neighbor
        continue;
      }
      int next = -1;
      for (int k = 0; k < 3 && next < 0; ++k) {
        const int e = (k + step) % 3;  // rotate edge order to avoid walk cycles
        const Eigen::Vector2d& a = pts_[t.v[(e + 1) % 3]];
        const Eigen::Vector2d& b = pts_[t.v[(e + 2) % 3]];
        if (orient2d(a, b, p) < 0) next = t.nbr[e];
      }
      if (next < 0) return cur;  // p inside or on the boundary of cur
      cur = next;
    }
    for (int i = 0; i < static_cast<int>(tris_.size()); ++i)
      if (tris_[i].alive && conflicts(i, p)) return i;
    throw std::runtime_error("delaunay: point location failed");
  }

  int firstAlive() const {
    for (int i = 0; i < static_cast<int>(tris_.size()); ++i)
      if (tris_[i].alive && !isGhost(tris_[i])) return i;
    return 0;
  }

  void insert(int pi) {
    const Eigen::Vector2d& p = pts_[pi];
    const int start = locateConflict(p);
    if (!conflicts(start, p))
      throw std::runtime_error("delaunay: inserted point conflicts with no triangle");

    // flood fill the conflict cavity
    std::vector<int> cavity, stack{start};
    std::unordered_map<int, bool> mark;
    mark[start] = true;
    while (!stack.empty()) {
      const int ti = stack.back();
      stack.pop_back();
      cavity.push_back(ti);
      for (int k = 0; k < 3; ++k) {
        const int nb = tris_[ti].nbr[k];
        if (mark.count(nb)) continue;
        if (conflicts(nb, p)) {
          mark[nb] = true;
          stack.push_back(nb);
        } else {
          mark[nb] = false;
        }
      }
    }

    // boundary edges, directed as seen from inside the cavity
    struct BEdge {
      int a, b, outside, outside_slot;
    };
    std::vector<BEdge> boundary;
    for (int ti : cavity) {
      for (int k = 0; k < 3; ++k) {
        const int nb = tris_[ti].nbr[k];
        if (mark[nb]) continue;
        const int a = tris_[ti].v[(k + 1) % 3], b = tris_[ti].v[(k + 2) % 3];
        int slot = -1;
        for (int j = 0; j < 3; ++j)
          if (tris_[nb].nbr[j] == ti) slot = j;
        boundary.push_back({a, b, nb, slot});
      }
    }

    for (int ti : cavity) tris_[ti].alive = false;

    // one new triangle (a, b, p) per boundary edge; stitch fan edges via map
    std::unordered_map<std::int64_t, std::pair<int, int>> open_edges;
    auto key = [](int u, int v) {
      return (std::int64_t(u + 1) << 32) | std::uint32_t(v + 1);
    };
    for (const auto& e : boundary) {
      const int nt = allocate({{e.a, e.b, pi}, {-1, -1, -1}, true});
      tris_[nt].nbr[2] = e.outside;
      if (e.outside_slot >= 0) tris_[e.outside].nbr[e.outside_slot] = nt;
      // edge (b, p) opposite slot 0, edge (p, a) opposite slot 1
      for (auto [u, v, slot] : {std::tuple{e.b, pi, 0}, std::tuple{pi, e.a, 1}}) {
        const auto it = open_edges.find(key(v, u));
        if (it != open_edges.end()) {
          tris_[nt].nbr[slot] = it->second.first;
          tris_[it->second.first].nbr[it->second.second] = nt;
          open_edges.erase(it);
        } else {
          open_edges[key(u, v)] = {nt, slot};
        }
      }
      if (!isGhost(tris_[nt])) last_real_ = nt;
    }
    if (!open_edges.empty()) throw std::runtime_error("delaunay: cavity stitching failed");
  }

  int allocate(Tri t) {
    tris_.push_back(t);
    return static_cast<int>(tris_.size()) - 1;
  }

  const std::vector<Eigen::Vector2d>& pts_;
  std::vector<Tri> tris_;
  int last_real_ = 0;
};

bool lexLess(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
}

/// Compares unordered coordinate pairs {a1,a2} vs {b1,b2} lexicographically.
bool diagonalLess(Eigen::Vector2d a1, Eigen::Vector2d a2, Eigen::Vector2d b1,
                  Eigen::Vector2d b2) {
  if (lexLess(a2, a1)) std::swap(a1, a2);
  if (lexLess(b2, b1)) std::swap(b1, b2);
  if (a1 != b1) return lexLess(a1, b1);
  return lexLess(a2, b2);
}

/// Flips exactly-cocircular quads until every chosen diagonal is the
/// lexicographically smallest one; deterministic across platforms.
void canonicalizeCocircular(std::vector<Eigen::Vector3i>& tris,
                            const std::vector<Eigen::Vector2d>& pts) {
  bool changed = true;
  int guard = 0;
  while (changed && guard++ < 4096) {
    changed = false;
    std::unordered_map<std::int64_t, std::pair<int, int>> half;  // directed edge -> (tri, slot)
    auto key = [](int u, int v) { return (std::int64_t(u) << 32) | std::uint32_t(v); };
    for (int t = 0; t < static_cast<int>(tris.size()); ++t)
      for (int k = 0; k < 3; ++k) half[key(tris[t][(k + 1) % 3], tris[t][(k + 2) % 3])] = {t, k};

    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
      for (int k = 0; k < 3; ++k) {
        const int u = tris[t][(k + 1) % 3], v = tris[t][(k + 2) % 3];
        if (u > v) continue;  // visit each undirected edge once
        const auto it = half.find(key(v, u));
        if (it == half.end()) continue;
        const auto [t2, k2] = it->second;
        const int w = tris[t][k], x = tris[t2][k2];
        if (incircle(pts[tris[t][0]], pts[tris[t][1]], pts[tris[t][2]], pts[x]) != 0) continue;
        if (!diagonalLess(pts[w], pts[x], pts[u], pts[v])) continue;
        // flip (u,v) -> (w,x); quad (u, x, v, w) is strictly convex here
        tris[t] = Eigen::Vector3i(w, u, x);
        tris[t2] = Eigen::Vector3i(x, v, w);
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
}

}  // namespace

TriMesh delaunay(const std::vector<Eigen::Vector2d>& points,
                 const std::vector<int>& landmark_indices) {
  if (points.size() < 3) throw std::invalid_argument("delaunay: need at least 3 points");

  // collapse near-duplicates; landmarks win collisions
  std::vector<bool> is_landmark(points.size(), false);
  for (int li : landmark_indices) is_landmark.at(li) = true;
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return is_landmark[a] > is_landmark[b];  // landmarks claim their spot first
  });
  std::vector<Eigen::Vector2d> unique_pts;
  std::vector<int> remap(points.size(), -1);
  for (int idx : order) {
    const auto& p = points[idx];
    int found = -1;
    for (int j = 0; j < static_cast<int>(unique_pts.size()) && found < 0; ++j)
      if ((unique_pts[j] - p).cwiseAbs().maxCoeff() <= kCollapseTol) found = j;
    if (found < 0) {
      unique_pts.push_back(p);
      remap[idx] = static_cast<int>(unique_pts.size()) - 1;
    } else {
      remap[idx] = found;
    }
  }

  Builder builder(unique_pts);
  builder.run();

  TriMesh mesh;
  mesh.vertices = std::move(unique_pts);
  auto tris = builder.realTriangles();
  canonicalizeCocircular(tris, mesh.vertices);
  mesh.triangles = std::move(tris);
  for (int li : landmark_indices) mesh.landmark_vertices.push_back(remap[li]);
  mesh.boundary_vertices = hullVertices(mesh);
  return mesh;
}

TriMesh delaunay(const FeaturePointSet& features) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(features.points.size());
  for (const auto& fp : features.points) pts.push_back(fp.pos);
  return delaunay(pts, features.landmark_indices);
}

}  // namespace trim
