#pragma once

// Advancing-front triangulation of the two-dimensional equilibrium manifold.
//
// The mesh grows by completing the polygonal patch around one node at a time:
// the angular sectors covered by the node's incident triangles are measured
// on its tangent plane, and every uncovered gap is filled with near-60-degree
// sectors. New vertices are predicted on the tangent plane at the node's
// current stepsize and corrected back to the manifold with Gauss-Newton steps
// perpendicular to that plane. Stepsize is accepted when the tangent plane at
// the corrected point tilts less than theta_max from the center's, halved
// otherwise, and grown again after clean completions, which makes it scale
// inversely with local curvature. Predictions landing near an existing mesh
// vertex snap to it instead of duplicating it; this closes seams when fronts
// collide and closes compact manifolds. Nodes outside the (slightly inflated)
// exploration window become frontier nodes whose patches are never completed.
//
// Everything is deterministic: nodes are processed in id order and no
// randomness is involved.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "cuspid/manifold.hpp"
#include "cuspid/model.hpp"

namespace cuspid {

enum class TriFlag { UNTESTED, CUSP, NO_CUSP, UNDETERMINED };

inline const char* to_string(TriFlag f) {
  switch (f) {
    case TriFlag::UNTESTED: return "UNTESTED";
    case TriFlag::CUSP: return "CUSP";
    case TriFlag::NO_CUSP: return "NO_CUSP";
    default: return "UNDETERMINED";
  }
}
inline TriFlag tri_flag_from_string(const std::string& s) {
  if (s == "UNTESTED") return TriFlag::UNTESTED;
  if (s == "CUSP") return TriFlag::CUSP;
  if (s == "NO_CUSP") return TriFlag::NO_CUSP;
  if (s == "UNDETERMINED") return TriFlag::UNDETERMINED;
  throw SchemaError("unknown triangle flag '" + s + "'");
}

struct Node {
  int id = -1;
  Eigen::VectorXd z;
  Eigen::MatrixXd tangent;  // m x 2
  Eigen::MatrixXd normal;   // m x n
  double h = 0.0;           // stepsize budget for patches grown from here
  double residual = 0.0;
  bool frontier = false;  // outside the window; left incomplete on purpose
  bool stalled = false;
  bool complete = false;
  std::vector<int> tris;  // incident simplices
};

struct Simplex {
  int id = -1;
  std::array<int, 3> nodes{-1, -1, -1};
  std::array<int, 3> neighbors{-1, -1, -1};
  TriFlag flag = TriFlag::UNTESTED;
};

struct ContinuationOptions {
  double h0 = 0.1;
  double h_max = 0.5;
  double h_min = 0.0;  // 0: derived as h0 / 64
  double theta_max_deg = 10.0;
  double node_tol = 1e-10;
  int max_gn_iter = 20;
  double region_margin_frac = 0.02;
  double snap_frac = 0.5;
  double grow_factor = 1.3;
  int max_nodes = 400000;

  double theta_max() const { return theta_max_deg * M_PI / 180.0; }
  double h_floor() const { return h_min > 0 ? h_min : h0 / 64.0; }
};

struct Triangulation {
  std::string model;
  ContinuationOptions opts;
  std::vector<Node> nodes;
  std::vector<Simplex> tris;
  int stalled_nodes = 0;

  // V - E + F over the simplicial complex
  long euler_characteristic() const {
    std::set<std::pair<int, int>> edges;
    for (const Simplex& t : tris)
      for (int e = 0; e < 3; ++e) {
        int a = t.nodes[size_t(e)], b = t.nodes[size_t((e + 1) % 3)];
        edges.insert({std::min(a, b), std::max(a, b)});
      }
    return long(nodes.size()) - long(edges.size()) + long(tris.size());
  }

  Eigen::VectorXd centroid(int tri_id) const {
    const Simplex& t = tris[size_t(tri_id)];
    return (nodes[size_t(t.nodes[0])].z + nodes[size_t(t.nodes[1])].z + nodes[size_t(t.nodes[2])].z) / 3.0;
  }
};

namespace detail {

class FrontMesher {
 public:
  FrontMesher(const EquilibriumModel& md, const ContinuationOptions& opts) : md_(md), opts_(opts) {
    cell_ = std::max(opts.h0, opts.h_max);
  }

  Triangulation run(const Eigen::VectorXd& seed_z) {
    tri_.model = md_.name;
    tri_.opts = opts_;
    init_hexagon(seed_z);
    while (!pending_.empty()) {
      int p = *pending_.begin();
      pending_.erase(pending_.begin());
      complete_node(p);
      if (int(tri_.nodes.size()) > opts_.max_nodes)
        throw FrontStall("node budget exceeded (" + std::to_string(opts_.max_nodes) + ")");
    }
    fill_neighbors();
    for (const Node& nd : tri_.nodes)
      if (nd.stalled) ++tri_.stalled_nodes;
    return std::move(tri_);
  }

  // exposed for tests
  Triangulation init_only(const Eigen::VectorXd& seed_z) {
    tri_.model = md_.name;
    tri_.opts = opts_;
    init_hexagon(seed_z);
    fill_neighbors();
    return std::move(tri_);
  }

 private:
  struct VertexPlan {
    int snap_id = -1;  // >= 0: reuse this node
    Eigen::VectorXd z;
    Eigen::MatrixXd tangent, normal;
    double residual = 0.0;
  };

  void init_hexagon(const Eigen::VectorXd& seed_z) {
    ProjectionResult pr = project_min_norm(md_, seed_z, opts_.node_tol, opts_.max_gn_iter);
    TangentFrame fr = tangent_frame(md_, pr.z);
    double h = opts_.h0;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 40 || h < opts_.h_floor()) throw FrontStall("could not build the initial hexagon");
      std::vector<VertexPlan> ring;
      bool ok = true;
      for (int k = 0; k < 6 && ok; ++k) {
        double ang = k * M_PI / 3.0;
        Eigen::VectorXd pred = pr.z + h * (std::cos(ang) * fr.tangent.col(0) + std::sin(ang) * fr.tangent.col(1));
        VertexPlan vp;
        ok = correct_prediction(pred, fr, pr.z, h, vp);
        if (ok) ring.push_back(std::move(vp));
      }
      if (!ok) {
        h *= 0.5;
        continue;
      }
      int center = add_node(pr.z, fr, h, pr.residual);
      std::vector<int> ids;
      for (VertexPlan& vp : ring) ids.push_back(add_node(vp.z, {vp.tangent, vp.normal}, h, vp.residual));
      for (int k = 0; k < 6; ++k) add_triangle(center, ids[size_t(k)], ids[size_t((k + 1) % 6)]);
      tri_.nodes[size_t(center)].complete = true;
      pending_.erase(center);
      return;
    }
  }

  // project a tangent-plane prediction back to the manifold and vet it
  bool correct_prediction(const Eigen::VectorXd& pred, const TangentFrame& fr, const Eigen::VectorXd& center,
                          double h, VertexPlan& out) {
    try {
      ProjectionResult pr = project_along_normal(md_, pred, fr.normal, opts_.node_tol, opts_.max_gn_iter);
      double dist = (pr.z - center).norm();
      if (dist < 0.35 * h || dist > 2.0 * h) return false;
      TangentFrame nf = tangent_frame(md_, pr.z);
      if (tangent_angle(fr.tangent, nf.tangent) > opts_.theta_max()) return false;
      out.z = pr.z;
      out.tangent = nf.tangent;
      out.normal = nf.normal;
      out.residual = pr.residual;
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  void complete_node(int p) {
    Node& node = tri_.nodes[size_t(p)];
    if (node.complete || node.frontier) return;

    // angular coverage of the incident triangles on the tangent plane
    std::map<int, double> angle_of;  // neighbor node -> angle
    auto angle = [&](int q) {
      auto it = angle_of.find(q);
      if (it != angle_of.end()) return it->second;
      Eigen::Vector2d u = node.tangent.transpose() * (tri_.nodes[size_t(q)].z - node.z);
      double a = std::atan2(u[1], u[0]);
      if (a < 0) a += 2 * M_PI;
      angle_of[q] = a;
      return a;
    };

    struct Arc {
      double start, end;  // end >= start, possibly > 2*pi after unwrap
      int start_node, end_node;
    };
    std::vector<Arc> arcs;
    for (int t : node.tris) {
      const Simplex& s = tri_.tris[size_t(t)];
      int u = -1, v = -1;
      for (int q : s.nodes)
        if (q != p) (u < 0 ? u : v) = q;
      double au = angle(u), av = angle(v);
      double d = av - au;
      while (d > M_PI) d -= 2 * M_PI;
      while (d < -M_PI) d += 2 * M_PI;
      Arc arc = d >= 0 ? Arc{au, au + d, u, v} : Arc{av, av - d, v, u};
      arcs.push_back(arc);
    }
    if (arcs.empty()) {
      node.stalled = true;  // isolated node; nothing to grow from
      return;
    }
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });

    // merge into maximal covered arcs (tolerating float dust at shared edges)
    const double eps = 1e-9;
    std::vector<Arc> covered;
    for (const Arc& a : arcs) {
      if (!covered.empty() && a.start <= covered.back().end + eps) {
        if (a.end > covered.back().end) {
          covered.back().end = a.end;
          covered.back().end_node = a.end_node;
        }
      } else {
        covered.push_back(a);
      }
    }
    // circular wrap: last arc may reach around to the first
    if (covered.size() > 1) {
      Arc& last = covered.back();
      if (last.end >= covered.front().start + 2 * M_PI - eps) {
        covered.front().start = last.start - 2 * M_PI;
        covered.front().start_node = last.start_node;
        covered.pop_back();
      }
    }

    bool all_filled = true;
    if (covered.size() == 1 && covered.front().end - covered.front().start >= 2 * M_PI - 1e-7) {
      node.complete = true;
      return;
    }
    for (size_t g = 0; g < covered.size(); ++g) {
      const Arc& cur = covered[g];
      const Arc& nxt = covered[(g + 1) % covered.size()];
      double gap_start = cur.end;
      double width = (g + 1 < covered.size()) ? nxt.start - cur.end : nxt.start + 2 * M_PI - cur.end;
      if (width <= 1e-7) continue;
      if (!fill_gap(p, cur.end_node, nxt.start_node, gap_start, width)) all_filled = false;
    }
    Node& nd = tri_.nodes[size_t(p)];  // vector may have reallocated
    if (all_filled)
      nd.complete = true;
    else
      nd.stalled = true;
  }

  bool fill_gap(int p, int left, int right, double start, double width) {
    for (int attempt = 0; attempt < 40; ++attempt) {
      Node& node = tri_.nodes[size_t(p)];
      double h = node.h;
      int sectors = std::clamp(int(std::lround(width / (M_PI / 3))), 1, 12);
      if (sectors == 1) {
        if (left != right && triangle_legal(p, left, right)) {
          add_triangle(p, left, right);
          return true;
        }
        if (width < 0.30) return true;  // sliver wedge already bounded elsewhere
        sectors = 2;
      }

      TangentFrame fr{node.tangent, node.normal};
      std::vector<VertexPlan> plans;
      bool soft_fail = false;
      std::vector<int> seq{left};
      for (int i = 1; i < sectors && !soft_fail; ++i) {
        double ang = start + width * i / sectors;
        Eigen::VectorXd pred =
            node.z + h * (std::cos(ang) * node.tangent.col(0) + std::sin(ang) * node.tangent.col(1));
        // prefer joining an existing vertex over creating a near-duplicate
        int snap = find_snap(pred, p, opts_.snap_frac * h, node.tangent);
        if (snap >= 0) {
          if (snap == seq.back()) continue;
          seq.push_back(snap);
          if (snap == right) break;
          continue;
        }
        VertexPlan vp;
        if (!correct_prediction(pred, fr, node.z, h, vp)) {
          soft_fail = true;
          break;
        }
        int snap2 = find_snap(vp.z, p, opts_.snap_frac * h, node.tangent);
        if (snap2 >= 0) {
          if (snap2 == seq.back()) continue;
          seq.push_back(snap2);
          if (snap2 == right) break;
          continue;
        }
        vp.snap_id = -2 - int(plans.size());  // placeholder marker
        seq.push_back(vp.snap_id);
        plans.push_back(std::move(vp));
      }
      if (soft_fail) {
        if (h <= opts_.h_floor() * (1 + 1e-12)) return false;
        tri_.nodes[size_t(p)].h = std::max(h * 0.5, opts_.h_floor());
        continue;
      }
      if (seq.back() != right) seq.push_back(right);

      // materialize planned vertices, then the fan of triangles
      std::vector<int> ids;
      ids.reserve(seq.size());
      double child_h = std::min(h * opts_.grow_factor, opts_.h_max);
      if (attempt > 0) child_h = h;
      for (int s : seq) {
        if (s >= 0) {
          ids.push_back(s);
        } else {
          VertexPlan& vp = plans[size_t(-2 - s)];
          ids.push_back(add_node(vp.z, {vp.tangent, vp.normal}, child_h, vp.residual));
        }
      }
      bool ok = true;
      for (size_t i = 0; i + 1 < ids.size(); ++i) {
        if (ids[i] == ids[i + 1]) continue;
        if (!triangle_legal(p, ids[i], ids[i + 1])) {
          ok = false;
          continue;
        }
        add_triangle(p, ids[i], ids[i + 1]);
      }
      return ok;
    }
    return false;
  }

  bool triangle_legal(int a, int b, int c) const {
    if (a == b || b == c || a == c) return false;
    std::array<int, 3> want{a, b, c};
    std::sort(want.begin(), want.end());
    for (auto [e1, e2] : {std::pair{a, b}, {b, c}, {a, c}}) {
      auto it = edges_.find(edge_key(e1, e2));
      if (it == edges_.end()) continue;
      if (it->second.size() >= 2) return false;
      for (int t : it->second) {
        std::array<int, 3> have = tri_.tris[size_t(t)].nodes;
        std::sort(have.begin(), have.end());
        if (have == want) return false;
      }
    }
    return true;
  }

  int add_node(const Eigen::VectorXd& z, const TangentFrame& fr, double h, double residual) {
    Node nd;
    nd.id = int(tri_.nodes.size());
    nd.z = z;
    nd.tangent = fr.tangent;
    nd.normal = fr.normal;
    nd.h = h;
    nd.residual = residual;
    nd.frontier = !md_.inside_region(z, opts_.region_margin_frac);
    tri_.nodes.push_back(std::move(nd));
    grid_[grid_key(z)].push_back(tri_.nodes.back().id);
    if (!tri_.nodes.back().frontier) pending_.insert(tri_.nodes.back().id);
    return tri_.nodes.back().id;
  }

  void add_triangle(int a, int b, int c) {
    Simplex s;
    s.id = int(tri_.tris.size());
    s.nodes = {a, b, c};
    tri_.tris.push_back(s);
    for (auto [e1, e2] : {std::pair{a, b}, {b, c}, {a, c}}) edges_[edge_key(e1, e2)].push_back(s.id);
    for (int q : {a, b, c}) tri_.nodes[size_t(q)].tris.push_back(s.id);
  }

  int find_snap(const Eigen::VectorXd& pos, int p, double radius, const Eigen::MatrixXd& tangent) const {
    int best = -1;
    double best_d = radius;
    auto key = grid_key(pos);
    std::vector<long long> cell(key);
    int dims = int(key.size());
    std::vector<int> offs(size_t(dims), -1);
    while (true) {
      for (int d = 0; d < dims; ++d) cell[size_t(d)] = key[size_t(d)] + offs[size_t(d)];
      auto it = grid_.find(cell);
      if (it != grid_.end())
        for (int q : it->second) {
          const Node& cand = tri_.nodes[size_t(q)];
          if (q == p || cand.complete) continue;
          double d = (cand.z - pos).norm();
          if (d >= best_d) continue;
          if (tangent_angle(tangent, cand.tangent) > M_PI / 4) continue;  // different sheet
          best = q;
          best_d = d;
        }
      int d = 0;
      for (; d < dims; ++d) {
        if (offs[size_t(d)] < 1) {
          ++offs[size_t(d)];
          break;
        }
        offs[size_t(d)] = -1;
      }
      if (d == dims) break;
    }
    return best;
  }

  void fill_neighbors() {
    for (Simplex& s : tri_.tris) {
      for (int e = 0; e < 3; ++e) {
        int a = s.nodes[size_t(e)], b = s.nodes[size_t((e + 1) % 3)];
        const auto& owners = edges_.at(edge_key(a, b));
        s.neighbors[size_t(e)] = -1;
        for (int t : owners)
          if (t != s.id) s.neighbors[size_t(e)] = t;
      }
    }
  }

  static std::pair<int, int> edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

  std::vector<long long> grid_key(const Eigen::VectorXd& z) const {
    std::vector<long long> key(size_t(z.size()));
    for (int i = 0; i < z.size(); ++i) key[size_t(i)] = llround(std::floor(z[i] / cell_));
    return key;
  }

  struct VecHash {
    size_t operator()(const std::vector<long long>& v) const {
      size_t h = 1469598103934665603ull;
      for (long long x : v) h = (h ^ size_t(x)) * 1099511628211ull;
      return h;
    }
  };

  const EquilibriumModel& md_;
  ContinuationOptions opts_;
  Triangulation tri_;
  std::set<int> pending_;
  std::map<std::pair<int, int>, std::vector<int>> edges_;
  std::unordered_map<std::vector<long long>, std::vector<int>, VecHash> grid_;
  double cell_ = 1.0;
};

}  // namespace detail

// Build the patch of six triangles around a (projected) seed point.
inline Triangulation init_hexagon(const EquilibriumModel& md, const Eigen::VectorXd& seed_z,
                                  const ContinuationOptions& opts) {
  detail::FrontMesher mesher(md, opts);
  return mesher.init_only(seed_z);
}

// Triangulate the connected component of the seed inside the exploration
// window (plus a small margin ring).
inline Triangulation continue_manifold(const EquilibriumModel& md, const Eigen::VectorXd& seed_z,
                                       const ContinuationOptions& opts) {
  detail::FrontMesher mesher(md, opts);
  return mesher.run(seed_z);
}

inline Triangulation continue_manifold(const EquilibriumModel& md, const ContinuationOptions& opts) {
  return continue_manifold(md, Eigen::Map<const Eigen::VectorXd>(md.seed.data(), md.m()), opts);
}

}  // namespace cuspid
