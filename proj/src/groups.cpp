#include "lawson/groups.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

namespace lawson {

namespace {

constexpr double kBucket = 1e-5;

// Fixed linear functional on matrices for bucketing.
double signature(const Mat4& m) {
  static const std::array<double, 16> w = [] {
    std::array<double, 16> x{};
    for (int i = 0; i < 16; ++i) x[i] = std::sin(1.0 + 1.618 * i);
    return x;
  }();
  double s = 0;
  for (int i = 0; i < 16; ++i) s += w[i] * m(i / 4, i % 4);
  return s;
}

long long bucket_of(const Mat4& m) { return static_cast<long long>(std::floor(signature(m) / kBucket)); }

bool lex_less(const Isometry4& a, const Isometry4& b) {
  for (int i = 0; i < 16; ++i) {
    const double x = a.matrix()(i / 4, i % 4), y = b.matrix()(i / 4, i % 4);
    if (std::abs(x - y) > FiniteGroup::kDedupTol) return x < y;
  }
  return false;
}

struct Lookup {
  std::vector<Isometry4>* elems;
  std::unordered_multimap<long long, std::size_t> map;

  std::optional<std::size_t> find(const Isometry4& g) const {
    const long long b = bucket_of(g.matrix());
    for (long long k = b - 1; k <= b + 1; ++k) {
      auto [lo, hi] = map.equal_range(k);
      for (auto it = lo; it != hi; ++it) {
        if ((*elems)[it->second].distance(g) < FiniteGroup::kDedupTol) return it->second;
      }
    }
    return std::nullopt;
  }
  void insert(const Isometry4& g, std::size_t idx) { map.emplace(bucket_of(g.matrix()), idx); }
};

std::string mat_str(const Mat4& m) {
  std::ostringstream os;
  os.precision(6);
  os << "[";
  for (int i = 0; i < 16; ++i) os << (i ? "," : "") << m(i / 4, i % 4);
  os << "]";
  return os.str();
}

}  // namespace

FiniteGroup FiniteGroup::close(std::span<const Isometry4> generators, std::size_t cap) {
  FiniteGroup g;
  g.generators_.assign(generators.begin(), generators.end());
  g.elements_.push_back(Isometry4::identity());
  Lookup seen{&g.elements_, {}};
  seen.insert(g.elements_[0], 0);
  std::vector<std::size_t> layer{0};
  while (!layer.empty()) {
    std::vector<Isometry4> next;
    Lookup fresh{&next, {}};
    for (std::size_t a : layer) {
      for (const auto& s : g.generators_) {
        const Isometry4 h = g.elements_[a] * s;
        if (seen.find(h) || fresh.find(h)) continue;
        fresh.insert(h, next.size());
        next.push_back(h);
        if (g.elements_.size() + next.size() > cap) {
          throw Error(ErrorCode::CapExceeded, "closure exceeds cap " + std::to_string(cap));
        }
      }
    }
    std::sort(next.begin(), next.end(), lex_less);
    layer.clear();
    for (auto& h : next) {
      layer.push_back(g.elements_.size());
      seen.insert(h, g.elements_.size());
      g.elements_.push_back(h);
    }
  }
  g.build_index();
  g.build_table();
  return g;
}

void FiniteGroup::build_index() {
  index_.clear();
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(bucket_of(elements_[i].matrix()), i);
}

std::optional<std::size_t> FiniteGroup::find(const Isometry4& g) const {
  const long long b = bucket_of(g.matrix());
  for (long long k = b - 1; k <= b + 1; ++k) {
    auto [lo, hi] = index_.equal_range(k);
    std::optional<std::size_t> best;
    for (auto it = lo; it != hi; ++it) {
      if (elements_[it->second].distance(g) < kDedupTol && (!best || it->second < *best)) best = it->second;
    }
    if (best) return best;
  }
  return std::nullopt;
}

void FiniteGroup::build_table() {
  const std::size_t n = elements_.size();
  table_.assign(n * n, 0);
  inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto p = find(elements_[a] * elements_[b]);
      if (!p) throw Error(ErrorCode::InvalidInput, "element set is not closed under products");
      table_[a * n + b] = *p;
    }
    const auto inv = find(elements_[a].inverse());
    if (!inv) throw Error(ErrorCode::InvalidInput, "element set is not closed under inverses");
    inverse_[a] = *inv;
  }
}

FiniteGroup FiniteGroup::subgroup(const std::vector<std::size_t>& indices) const {
  std::vector<char> in(order(), 0);
  for (auto i : indices) in.at(i) = 1;
  if (!in[identity_index()]) throw Error(ErrorCode::InvalidInput, "subset lacks the identity");
  for (auto a : indices) {
    for (auto b : indices) {
      if (!in[product(a, b)]) throw Error(ErrorCode::InvalidInput, "subset is not closed under products");
    }
  }
  FiniteGroup g;
  g.elements_.push_back(Isometry4::identity());
  for (std::size_t i = 0; i < order(); ++i) {
    if (in[i] && i != identity_index()) g.elements_.push_back(elements_[i]);
  }
  g.generators_ = g.elements_;
  g.build_index();
  g.build_table();
  return g;
}

bool FiniteGroup::is_subgroup_of(const FiniteGroup& other) const {
  return std::all_of(elements_.begin(), elements_.end(), [&](const Isometry4& g) { return other.contains(g); });
}

bool FiniteGroup::same_elements(const FiniteGroup& other) const {
  return order() == other.order() && is_subgroup_of(other);
}

std::vector<std::size_t> FiniteGroup::intersection_indices(const FiniteGroup& other) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < order(); ++i) {
    if (other.contains(elements_[i])) out.push_back(i);
  }
  return out;
}

std::size_t default_cap(const Lattice& lat) { return 160u * static_cast<std::size_t>(lat.m() * lat.k()); }

NamedGroups build_named_groups(const Lattice& lat) {
  const std::size_t cap = default_cap(lat);
  std::vector<Isometry4> rs, rq, ra;
  for (const auto& s : lat.spheres()) rs.push_back(reflection(s));
  for (const auto& c : lat.quad_circles()) rq.push_back(reflection(c));
  for (const auto& c : lat.axis_circles()) ra.push_back(reflection(c));
  std::vector<Isometry4> rc = rq;
  rc.insert(rc.end(), ra.begin(), ra.end());
  std::vector<Isometry4> rm = ra;
  for (const auto& q : rq) {
    for (const auto& s : rs) rm.push_back(q * s);
  }
  std::vector<Isometry4> rf = rs;
  rf.insert(rf.end(), rc.begin(), rc.end());
  return NamedGroups{FiniteGroup::close(rs, cap), FiniteGroup::close(rq, cap), FiniteGroup::close(ra, cap),
                     FiniteGroup::close(rc, cap), FiniteGroup::close(rm, cap), FiniteGroup::close(rf, cap)};
}

Isometry4 exchange_element() {
  Mat4 m = Mat4::Zero();
  m(0, 2) = m(1, 3) = m(2, 0) = m(3, 1) = 1;
  return Isometry4(m);
}

bool GroupCertificate::pass() const {
  return std::all_of(items.begin(), items.end(), [](const auto& x) { return x.second; });
}

GroupCertificate certify_named_groups(const NamedGroups& g, const Lattice& lat) {
  GroupCertificate c;
  const std::size_t km = static_cast<std::size_t>(lat.m() * lat.k());
  const std::size_t cap = default_cap(lat);
  auto order_item = [&](const std::string& name, const FiniteGroup& grp, std::size_t want) {
    c.orders.emplace_back(name, grp.order());
    c.items.emplace_back("order-" + name, grp.order() == want);
  };
  order_item("full", g.full, 8 * km);
  order_item("spheres", g.spheres, 4 * km);
  order_item("circles", g.circles, 4 * km);
  order_item("mplus", g.mplus, 4 * km);
  order_item("quad", g.quad, 2 * km);
  order_item("axes", g.axes, 2 * km);

  c.items.emplace_back("quad-meet-axes-order", g.quad.intersection_indices(g.axes).size() == km);

  auto meet_is_axes = [&](const FiniteGroup& a, const FiniteGroup& b) {
    const auto idx = a.intersection_indices(b);
    if (idx.size() != g.axes.order()) return false;
    return std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return g.axes.contains(a.element(i)); });
  };
  c.items.emplace_back("spheres-meet-circles-is-axes", meet_is_axes(g.spheres, g.circles));
  c.items.emplace_back("spheres-meet-mplus-is-axes", meet_is_axes(g.spheres, g.mplus));
  c.items.emplace_back("circles-meet-mplus-is-axes", meet_is_axes(g.circles, g.mplus));

  auto joins_to_full = [&](const FiniteGroup& a, const FiniteGroup& b) {
    std::vector<Isometry4> gens = a.elements();
    gens.insert(gens.end(), b.elements().begin(), b.elements().end());
    return FiniteGroup::close(gens, cap).same_elements(g.full);
  };
  c.items.emplace_back("spheres-and-circles-generate-full", joins_to_full(g.spheres, g.circles));
  c.items.emplace_back("spheres-and-mplus-generate-full", joins_to_full(g.spheres, g.mplus));
  c.items.emplace_back("circles-and-mplus-generate-full", joins_to_full(g.circles, g.mplus));

  std::vector<std::size_t> rot;
  for (std::size_t i = 0; i < g.full.order(); ++i) {
    if (g.full.element(i).det() > 0) rot.push_back(i);
  }
  bool rot_ok = rot.size() == g.circles.order();
  for (auto i : rot) rot_ok = rot_ok && g.circles.contains(g.full.element(i));
  c.items.emplace_back("rotations-of-full-are-circles", rot_ok);

  c.items.emplace_back("quad-in-circles", g.quad.is_subgroup_of(g.circles));
  c.items.emplace_back("axes-in-circles", g.axes.is_subgroup_of(g.circles));
  c.items.emplace_back("spheres-in-full", g.spheres.is_subgroup_of(g.full));
  c.items.emplace_back("circles-in-full", g.circles.is_subgroup_of(g.full));
  c.items.emplace_back("mplus-in-full", g.mplus.is_subgroup_of(g.full));

  if (lat.m() == lat.k()) {
    const Isometry4 e = exchange_element();
    std::vector<Isometry4> gens = g.full.elements();
    gens.push_back(e);
    const FiniteGroup ext = FiniteGroup::close(gens, 2 * cap);
    c.orders.emplace_back("full-with-exchange", ext.order());
    c.items.emplace_back("order-full-with-exchange", ext.order() == 16 * km);
    bool normal = true;
    for (const auto& x : g.full.elements()) normal = normal && g.full.contains(e * x * e.inverse());
    c.items.emplace_back("exchange-normalizes-full", normal);
  }
  return c;
}

GroupAction act(const FiniteGroup& group, const Lattice& lat, Family family) {
  GroupAction a;
  a.family = family;
  a.cells = lat.cells(family);
  const std::size_t nc = a.cells.size();
  std::vector<std::array<PointS3, 4>> verts;
  std::vector<Vec4> centroids;
  for (const auto& c : a.cells) {
    verts.push_back(cell_vertices(lat, c));
    centroids.push_back(lat.tetra(c).centroid().vec());
  }
  a.perm.assign(group.order(), std::vector<std::size_t>(nc, 0));
  for (std::size_t g = 0; g < group.order(); ++g) {
    const Mat4& M = group.element(g).matrix();
    for (std::size_t c = 0; c < nc; ++c) {
      const Vec4 img = M * centroids[c];
      std::size_t best = 0;
      double bd = 1e300;
      for (std::size_t d = 0; d < nc; ++d) {
        const double dist = (centroids[d] - img).norm();
        if (dist < bd) {
          bd = dist;
          best = d;
        }
      }
      bool match = bd < 1e-9;
      for (int v = 0; v < 4 && match; ++v) {
        const Vec4 gv = M * verts[c][v].vec();
        bool found = false;
        for (int w = 0; w < 4; ++w) found = found || (verts[best][w].vec() - gv).norm() < 1e-9;
        match = found;
      }
      if (!match) {
        throw Error(ErrorCode::NotAnAction, "element " + mat_str(M) + " maps " + to_string(a.cells[c]) +
                                                 " off the family " + std::string(to_string(family)));
      }
      a.perm[g][c] = best;
    }
  }
  std::vector<char> reached(nc, 0);
  for (std::size_t g = 0; g < group.order(); ++g) reached[a.perm[g][0]] = 1;
  a.transitive = std::all_of(reached.begin(), reached.end(), [](char x) { return x != 0; });
  a.stabilizer_orders.assign(nc, 0);
  for (std::size_t g = 0; g < group.order(); ++g) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (a.perm[g][c] == c) ++a.stabilizer_orders[c];
    }
  }
  a.simply_transitive = a.transitive && group.order() == nc &&
                        std::all_of(a.stabilizer_orders.begin(), a.stabilizer_orders.end(),
                                    [](std::size_t s) { return s == 1; });
  a.homomorphism = true;
  for (std::size_t x = 0; x < group.order() && a.homomorphism; ++x) {
    for (std::size_t y = 0; y < group.order() && a.homomorphism; ++y) {
      const auto& pxy = a.perm[group.product(x, y)];
      for (std::size_t c = 0; c < nc; ++c) {
        if (pxy[c] != a.perm[x][a.perm[y][c]]) {
          a.homomorphism = false;
          break;
        }
      }
    }
  }
  return a;
}

FiniteGroup stabilizer(const FiniteGroup& group, std::span<const Vec4> points, double tol) {
  std::vector<std::size_t> keep;
  for (std::size_t g = 0; g < group.order(); ++g) {
    const Mat4& M = group.element(g).matrix();
    bool ok = true;
    for (const auto& p : points) {
      const Vec4 q = M * p;
      ok = std::any_of(points.begin(), points.end(), [&](const Vec4& r) { return (r - q).norm() <= tol; });
      if (!ok) break;
    }
    if (ok) keep.push_back(g);
  }
  return group.subgroup(keep);
}

FiniteGroup stabilizer(const FiniteGroup& group, const Lattice& lat, const CellIndex& cell, double tol) {
  const auto v = cell_vertices(lat, lat.canonical(cell));
  const std::array<Vec4, 4> pts{v[0].vec(), v[1].vec(), v[2].vec(), v[3].vec()};
  return stabilizer(group, pts, tol);
}

std::vector<Isometry4> tetra_symmetries(const SphericalTetrahedron& t, double tol) {
  Mat4 V;
  V << t.vertex(0).vec(), t.vertex(1).vec(), t.vertex(2).vec(), t.vertex(3).vec();
  const Mat4 Vinv = V.inverse();
  std::array<int, 4> s{0, 1, 2, 3};
  std::vector<Isometry4> out;
  do {
    Mat4 W;
    W << t.vertex(s[0]).vec(), t.vertex(s[1]).vec(), t.vertex(s[2]).vec(), t.vertex(s[3]).vec();
    const Mat4 M = W * Vinv;
    if ((M.transpose() * M - Mat4::Identity()).cwiseAbs().maxCoeff() <= tol) out.emplace_back(M, tol);
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

CheckResult hemisphere_orbit_check(const Lattice& lat, const FiniteGroup& spheres, std::size_t n, Rng& rng) {
  CheckResult r;
  const auto& cells = lat.cells(Family::OmegaHalf);
  std::vector<SphericalTetrahedron> tets;
  for (const auto& c : cells) tets.push_back(lat.tetra(c));
  std::vector<Vec4> probes;
  for (const auto& t : tets) probes.push_back(t.centroid().vec());
  {
    // a face point of the first cell
    const auto& t = tets[0];
    probes.push_back((t.vertex(0).vec() + t.vertex(1).vec() + t.vertex(2).vec()).normalized());
  }
  for (std::size_t s = 0; s < n; ++s) probes.push_back(rng.unit4());
  for (const auto& p : probes) {
    std::vector<Vec4> orbit;
    for (const auto& g : spheres.elements()) {
      const Vec4 q = g.matrix() * p;
      if (std::none_of(orbit.begin(), orbit.end(), [&](const Vec4& o) { return (o - q).norm() < 1e-9; })) {
        orbit.push_back(q);
      }
    }
    for (std::size_t c = 0; c < tets.size(); ++c) {
      int count = 0;
      for (const auto& q : orbit) count += tets[c].coefficients(q).minCoeff() >= -1e-9 ? 1 : 0;
      if (count != 1) {
        std::ostringstream os;
        os << "orbit of (" << p.transpose() << ") meets " << to_string(cells[c]) << " " << count << " times";
        r.fail(os.str());
      }
    }
  }
  return r;
}

CheckResult table_check(const FiniteGroup& g, std::size_t triples, Rng& rng) {
  CheckResult r;
  const std::size_t n = g.order();
  for (std::size_t s = 0; s < triples; ++s) {
    const std::size_t a = rng.index(n), b = rng.index(n), c = rng.index(n);
    if (g.product(g.product(a, b), c) != g.product(a, g.product(b, c))) {
      r.fail("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
    }
    r.track(g.element(g.product(a, b)).distance(g.element(a) * g.element(b)), 1e-8, "table entry disagrees with matrices");
    if (g.product(a, g.inverse(a)) != g.identity_index()) r.fail("inverse entry wrong at " + std::to_string(a));
  }
  return r;
}

}  // namespace lawson
