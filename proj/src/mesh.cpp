#include "lawson/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace lawson {

std::unordered_map<Edge, std::vector<int>, EdgeHash> edge_faces(const TriMeshS3& m) {
  std::unordered_map<Edge, std::vector<int>, EdgeHash> out;
  out.reserve(m.triangles.size() * 2);
  for (std::size_t f = 0; f < m.triangles.size(); ++f) {
    const auto& t = m.triangles[f];
    for (int s = 0; s < 3; ++s) out[make_edge(t[s], t[(s + 1) % 3])].push_back(static_cast<int>(f));
  }
  return out;
}

std::vector<Edge> sorted_edges(const TriMeshS3& m) {
  std::vector<Edge> e;
  e.reserve(m.triangles.size() * 3);
  for (const auto& t : m.triangles) {
    for (int s = 0; s < 3; ++s) e.push_back(make_edge(t[s], t[(s + 1) % 3]));
  }
  std::sort(e.begin(), e.end(), [](const Edge& x, const Edge& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

std::vector<std::vector<int>> boundary_loops(const TriMeshS3& m) {
  const auto ef = edge_faces(m);
  std::map<int, int> next;
  for (const auto& t : m.triangles) {
    for (int s = 0; s < 3; ++s) {
      const int a = t[s], b = t[(s + 1) % 3];
      if (ef.at(make_edge(a, b)).size() == 1) next[a] = b;
    }
  }
  std::vector<std::vector<int>> loops;
  std::map<int, char> used;
  for (const auto& [start, unused] : next) {
    (void)unused;
    if (used[start]) continue;
    std::vector<int> loop;
    int v = start;
    while (!used[v]) {
      used[v] = 1;
      loop.push_back(v);
      const auto it = next.find(v);
      if (it == next.end()) break;
      v = it->second;
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

std::vector<std::vector<int>> vertex_neighbors(const TriMeshS3& m) {
  std::vector<std::vector<int>> nb(m.vertices.size());
  for (const auto& t : m.triangles) {
    for (int s = 0; s < 3; ++s) {
      nb[t[s]].push_back(t[(s + 1) % 3]);
      nb[t[s]].push_back(t[(s + 2) % 3]);
    }
  }
  for (auto& n : nb) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
  return nb;
}

std::vector<std::vector<int>> vertex_faces(const TriMeshS3& m) {
  std::vector<std::vector<int>> vf(m.vertices.size());
  for (std::size_t f = 0; f < m.triangles.size(); ++f) {
    for (int v : m.triangles[f]) vf[v].push_back(static_cast<int>(f));
  }
  return vf;
}

int connected_components(const TriMeshS3& m, std::vector<int>* label) {
  std::vector<int> parent(m.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& t : m.triangles) {
    for (int s = 1; s < 3; ++s) {
      const int a = find(t[0]), b = find(t[s]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<char> used(m.vertices.size(), 0);
  for (const auto& t : m.triangles) {
    for (int v : t) used[v] = 1;
  }
  std::map<int, int> ids;
  std::vector<int> lab(m.vertices.size(), -1);
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    if (!used[v]) continue;
    const int r = find(static_cast<int>(v));
    auto it = ids.find(r);
    if (it == ids.end()) it = ids.emplace(r, static_cast<int>(ids.size())).first;
    lab[v] = it->second;
  }
  if (label) *label = lab;
  return static_cast<int>(ids.size());
}

double mean_edge_length(const TriMeshS3& m) {
  const auto e = sorted_edges(m);
  if (e.empty()) return 0.0;
  double s = 0;
  for (const auto& x : e) s += (m.vertices[x.a] - m.vertices[x.b]).norm();
  return s / static_cast<double>(e.size());
}

Vec4 face_normal(const Vec4& a, const Vec4& b, const Vec4& c) { return cross4(a, b, c).normalized(); }

std::vector<Vec4> vertex_normals(const TriMeshS3& m) {
  std::vector<Vec4> n(m.vertices.size(), Vec4::Zero());
  for (const auto& t : m.triangles) {
    const Vec4& a = m.vertices[t[0]];
    const Vec4& b = m.vertices[t[1]];
    const Vec4& c = m.vertices[t[2]];
    const Vec4 w = face_normal(a, b, c) * triangle_area(a, b, c);
    for (int v : t) n[v] += w;
  }
  for (std::size_t v = 0; v < n.size(); ++v) {
    const Vec4& x = m.vertices[v];
    n[v] -= n[v].dot(x) * x;
    const double len = n[v].norm();
    if (len > 0) n[v] /= len;
  }
  return n;
}

TriMeshS3 subdivide(const TriMeshS3& m) {
  TriMeshS3 out;
  out.vertices = m.vertices;
  out.boundary = m.boundary;
  out.boundary.resize(m.vertices.size(), 0);
  const auto ef = edge_faces(m);
  std::unordered_map<Edge, int, EdgeHash> mid;
  auto midpoint_of = [&](int a, int b) {
    const Edge e = make_edge(a, b);
    const auto it = mid.find(e);
    if (it != mid.end()) return it->second;
    const int idx = static_cast<int>(out.vertices.size());
    out.vertices.push_back((m.vertices[e.a] + m.vertices[e.b]).normalized());
    out.boundary.push_back(ef.at(e).size() == 1 ? 1 : 0);
    mid.emplace(e, idx);
    return idx;
  };
  out.triangles.reserve(m.triangles.size() * 4);
  for (const auto& t : m.triangles) {
    const int ab = midpoint_of(t[0], t[1]);
    const int bc = midpoint_of(t[1], t[2]);
    const int ca = midpoint_of(t[2], t[0]);
    out.triangles.push_back({t[0], ab, ca});
    out.triangles.push_back({ab, t[1], bc});
    out.triangles.push_back({ca, bc, t[2]});
    out.triangles.push_back({ab, bc, ca});
  }
  out.orbit_tag.assign(out.vertices.size(), -1);
  return out;
}

TriMeshS3 compact(const TriMeshS3& m) {
  std::vector<int> remap(m.vertices.size(), -1);
  TriMeshS3 out;
  for (const auto& t : m.triangles) {
    Tri n;
    for (int s = 0; s < 3; ++s) {
      int& r = remap[t[s]];
      if (r < 0) {
        r = static_cast<int>(out.vertices.size());
        out.vertices.push_back(m.vertices[t[s]]);
        out.boundary.push_back(t[s] < static_cast<int>(m.boundary.size()) ? m.boundary[t[s]] : 0);
        out.orbit_tag.push_back(t[s] < static_cast<int>(m.orbit_tag.size()) ? m.orbit_tag[t[s]] : -1);
      }
      n[s] = r;
    }
    out.triangles.push_back(n);
  }
  return out;
}

long euler_characteristic(const TriMeshS3& m) {
  std::vector<char> used(m.vertices.size(), 0);
  for (const auto& t : m.triangles) {
    for (int v : t) used[v] = 1;
  }
  const long v = std::count(used.begin(), used.end(), 1);
  return v - static_cast<long>(sorted_edges(m).size()) + static_cast<long>(m.triangles.size());
}

TriMeshS3 clip(const TriMeshS3& m, std::span<const Vec4> halfspaces, double tol) {
  TriMeshS3 cur = m;
  cur.boundary.resize(cur.vertices.size(), 0);
  cur.orbit_tag.resize(cur.vertices.size(), -1);
  for (const auto& h : halfspaces) {
    TriMeshS3 next;
    next.vertices = cur.vertices;
    next.boundary = cur.boundary;
    next.orbit_tag = cur.orbit_tag;
    std::vector<double> s(cur.vertices.size());
    std::vector<int> sign(cur.vertices.size());
    for (std::size_t v = 0; v < cur.vertices.size(); ++v) {
      s[v] = h.dot(cur.vertices[v]);
      sign[v] = std::abs(s[v]) <= tol ? 0 : (s[v] > 0 ? 1 : -1);
    }
    std::unordered_map<Edge, int, EdgeHash> cross;
    auto crossing = [&](int a, int b) {
      const Edge e = make_edge(a, b);
      const auto it = cross.find(e);
      if (it != cross.end()) return it->second;
      const double sa = s[e.a], sb = s[e.b];
      const Vec4 p = (sa * cur.vertices[e.b] - sb * cur.vertices[e.a]) / (sa - sb);
      const int idx = static_cast<int>(next.vertices.size());
      next.vertices.push_back(p.normalized());
      next.boundary.push_back(0);
      next.orbit_tag.push_back(-1);
      cross.emplace(e, idx);
      return idx;
    };
    for (const auto& t : cur.triangles) {
      std::vector<int> poly;
      for (int k = 0; k < 3; ++k) {
        const int a = t[k], b = t[(k + 1) % 3];
        if (sign[a] >= 0) poly.push_back(a);
        if (sign[a] * sign[b] < 0) poly.push_back(crossing(a, b));
      }
      if (poly.size() < 3) continue;
      bool all_on = true;
      for (int v : t) all_on = all_on && sign[v] == 0;
      if (all_on) continue;
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) next.triangles.push_back({poly[0], poly[k], poly[k + 1]});
    }
    cur = compact(next);
  }
  return cur;
}

VertexIndex::VertexIndex(const std::vector<Vec4>& pts, double cell) : pts_(&pts), cell_(cell) {
  map_.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) map_[key(pts[i])].push_back(static_cast<int>(i));
}

std::size_t VertexIndex::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (long long x : k) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
  return h;
}

VertexIndex::Key VertexIndex::key(const Vec4& p) const {
  Key k;
  for (int i = 0; i < 4; ++i) k[i] = static_cast<long long>(std::floor(p[i] / cell_));
  return k;
}

int VertexIndex::nearest(const Vec4& p, double radius) const {
  const Key base = key(p);
  int best = -1;
  double bd = radius;
  for (int d = 0; d < 81; ++d) {
    Key k = base;
    int r = d;
    for (int i = 0; i < 4; ++i) {
      k[i] += r % 3 - 1;
      r /= 3;
    }
    const auto it = map_.find(k);
    if (it == map_.end()) continue;
    for (int idx : it->second) {
      const double dist = ((*pts_)[idx] - p).norm();
      if (dist < bd || (dist == bd && (best < 0 || idx < best))) {
        bd = dist;
        best = idx;
      }
    }
  }
  return best;
}

}  // namespace lawson
