#include "shapesep/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "shapesep/errors.hpp"

namespace shapesep {

double coordinate_scale(const std::vector<Point>& pts) {
  double s = 0;
  for (const auto& p : pts)
    for (double x : p) s = std::max(s, std::fabs(x));
  return s;
}

namespace {

double cross2(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::array<double, 3> sub3(const Point& a, const Point& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
std::array<double, 3> cross3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
double norm3(const std::array<double, 3>& a) { return std::sqrt(dot3(a, a)); }

} // namespace

std::vector<Point> hull2d(const std::vector<Point>& pts, double eps) {
  std::vector<Point> p = pts;
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end(),
                      [&](const Point& a, const Point& b) {
                        return std::fabs(a[0] - b[0]) <= eps && std::fabs(a[1] - b[1]) <= eps;
                      }),
          p.end());
  const int n = static_cast<int>(p.size());
  if (n < 3) throw InvariantViolationError("polygon needs at least 3 distinct vertices");
  const double s = std::max(coordinate_scale(p), 1e-30);
  const double area_eps = eps * s * s; // cross2 is twice a signed area, ~scale^2

  std::vector<Point> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) { // lower chain
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p[i]) <= area_eps) --k;
    h[k++] = p[i];
  }
  for (int i = n - 2, t = k + 1; i >= 0; --i) { // upper chain
    while (k >= t && cross2(h[k - 2], h[k - 1], p[i]) <= area_eps) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw InvariantViolationError("degenerate polygon (collinear points)");
  return h;
}

Hull3d hull3d(const std::vector<Point>& pts, double eps) {
  std::vector<Point> p = pts;
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  const int n = static_cast<int>(p.size());
  if (n < 4) throw InvariantViolationError("polytope needs at least 4 distinct vertices");
  const double scale = std::max(coordinate_scale(p), 1e-30);
  const double tol = eps * scale; // a distance tolerance

  // seed tetrahedron: two distinct, then non-collinear, then non-coplanar
  int i1 = 1;
  int i2 = -1, i3 = -1;
  const auto dir = sub3(p[i1], p[0]);
  for (int i = 2; i < n; ++i) {
    auto c = cross3(dir, sub3(p[i], p[0]));
    if (norm3(c) > tol * norm3(dir)) { // point-to-line distance > tol
      i2 = i;
      break;
    }
  }
  if (i2 < 0) throw InvariantViolationError("degenerate polytope (collinear points)");
  auto nrm = cross3(sub3(p[i1], p[0]), sub3(p[i2], p[0]));
  for (int i = 0; i < n; ++i) {
    if (std::fabs(dot3(nrm, sub3(p[i], p[0]))) > tol * norm3(nrm)) { // plane distance > tol
      i3 = i;
      break;
    }
  }
  if (i3 < 0) throw InvariantViolationError("degenerate polytope (coplanar points)");

  struct Face {
    int a, b, c;
    std::array<double, 3> normal; // unit outward
    double offset;                // normal . x = offset on the face plane
    bool alive = true;
  };
  std::vector<Face> faces;
  auto face_make = [&](int a, int b, int c, const Point& inside) {
    Face f{a, b, c, {}, 0, true};
    auto nn = cross3(sub3(p[b], p[a]), sub3(p[c], p[a]));
    double len = norm3(nn);
    for (auto& v : nn) v /= len;
    double off = dot3(nn, {p[a][0], p[a][1], p[a][2]});
    if (dot3(nn, {inside[0], inside[1], inside[2]}) > off) { // flip outward
      std::swap(f.b, f.c);
      for (auto& v : nn) v = -v;
      off = -off;
    }
    f.normal = nn;
    f.offset = off;
    return f;
  };

  Point inside(3, 0.0);
  for (int idx : {0, i1, i2, i3})
    for (int k = 0; k < 3; ++k) inside[k] += p[idx][k] / 4.0;
  faces.push_back(face_make(0, i1, i2, inside));
  faces.push_back(face_make(0, i1, i3, inside));
  faces.push_back(face_make(0, i2, i3, inside));
  faces.push_back(face_make(i1, i2, i3, inside));

  const double vis_tol = tol;
  for (int i = 0; i < n; ++i) {
    if (i == 0 || i == i1 || i == i2 || i == i3) continue;
    std::vector<int> visible;
    for (size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive) continue;
      if (dot3(faces[f].normal, {p[i][0], p[i][1], p[i][2]}) > faces[f].offset + vis_tol)
        visible.push_back(static_cast<int>(f));
    }
    if (visible.empty()) continue;
    // horizon = edges of visible faces shared with a live invisible face
    std::map<std::pair<int, int>, int> edge_count;
    for (int f : visible) {
      faces[f].alive = false;
      const int vs[3] = {faces[f].a, faces[f].b, faces[f].c};
      for (int e = 0; e < 3; ++e) {
        int u = vs[e], v = vs[(e + 1) % 3];
        auto key = std::minmax(u, v);
        edge_count[{key.first, key.second}] ^= 1;
        if (edge_count[{key.first, key.second}] == 0) edge_count.erase({key.first, key.second});
      }
    }
    for (const auto& [edge, parity] : edge_count)
      faces.push_back(face_make(edge.first, edge.second, i, inside));
  }

  Hull3d out;
  std::set<int> used;
  for (const auto& f : faces)
    if (f.alive) {
      used.insert(f.a);
      used.insert(f.b);
      used.insert(f.c);
    }
  std::map<int, int> remap;
  for (int idx : used) {
    remap[idx] = static_cast<int>(out.vertices.size());
    out.vertices.push_back(p[idx]);
  }
  for (const auto& f : faces)
    if (f.alive) out.faces.push_back({remap[f.a], remap[f.b], remap[f.c]});
  return out;
}

std::vector<Halfspace> hull_facets(int dim, const std::vector<Point>& pts, double eps) {
  std::vector<Halfspace> out;
  auto push_unique = [&](std::vector<double> a, double b) {
    for (const auto& h : out) {
      double d2 = 0;
      for (size_t i = 0; i < a.size(); ++i) d2 += (h.a[i] - a[i]) * (h.a[i] - a[i]);
      if (d2 < 1e-18 && std::fabs(h.b - b) <= eps * std::max(1.0, std::fabs(b))) return;
    }
    out.push_back({std::move(a), b});
  };

  if (dim == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& q : pts) {
      lo = std::min(lo, q[0]);
      hi = std::max(hi, q[0]);
    }
    out.push_back({{1.0}, hi});
    out.push_back({{-1.0}, -lo});
    return out;
  }
  if (dim == 2) {
    auto ring = hull2d(pts, eps);
    const int n = static_cast<int>(ring.size());
    for (int i = 0; i < n; ++i) {
      const Point& u = ring[i];
      const Point& v = ring[(i + 1) % n];
      // CCW ring: outward normal is the right-hand normal of the edge
      double nx = v[1] - u[1], ny = u[0] - v[0];
      double len = std::hypot(nx, ny);
      push_unique({nx / len, ny / len}, (nx * u[0] + ny * u[1]) / len);
    }
    return out;
  }
  if (dim == 3) {
    auto h = hull3d(pts, eps);
    for (const auto& f : h.faces) {
      const Point& a = h.vertices[f[0]];
      auto nn = cross3(sub3(h.vertices[f[1]], a), sub3(h.vertices[f[2]], a));
      double len = norm3(nn);
      if (len <= 0) continue;
      for (auto& v : nn) v /= len;
      push_unique({nn[0], nn[1], nn[2]}, dot3(nn, {a[0], a[1], a[2]}));
    }
    return out;
  }
  throw UnsupportedDimensionError("hull_facets supports dimensions 1..3");
}

} // namespace shapesep
