#include "webtrace/annulus.hpp"

#include <climits>
#include <cmath>
#include <stdexcept>

#include "webtrace/connection.hpp"
#include "webtrace/kasteleyn.hpp"
#include "webtrace/matrix.hpp"

namespace webtrace {

AnnulusGrid build_annulus_grid(int m, int n) {
  if (m < 1 || m % 2 == 0)
    throw std::invalid_argument("half-circumference m must be odd");
  if (n < 1) throw std::invalid_argument("height must be at least 1");
  AnnulusGrid ag;
  ag.m = m;
  ag.n = n;
  EmbeddedBipartiteGraph& g = ag.graph;
  const int w = 2 * m;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < w; ++c)
      g.vertices.push_back({ag.vertex_id(r, c), (r + c) % 2 == 0
                                                    ? VertexColor::Black
                                                    : VertexColor::White});
  auto add_edge = [&](int id, int va, int vb) {
    // va is the endpoint used to decide orientation; store black first.
    const Vertex& a = g.vertices[static_cast<std::size_t>(va - 1)];
    if (a.color == VertexColor::Black)
      g.edges.push_back({id, va, vb});
    else
      g.edges.push_back({id, vb, va});
  };
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < w; ++c)
      add_edge(ag.h_edge(r, c), ag.vertex_id(r, c), ag.vertex_id(r, (c + 1) % w));
  for (int r = 0; r + 1 < n; ++r)
    for (int c = 0; c < w; ++c)
      add_edge(ag.v_edge(r, c), ag.vertex_id(r, c), ag.vertex_id(r + 1, c));
  // CCW rotation: east, north, west, south.
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < w; ++c) {
      std::vector<int> rot;
      rot.push_back(ag.h_edge(r, c));                    // east
      if (r + 1 < n) rot.push_back(ag.v_edge(r, c));     // north
      rot.push_back(ag.h_edge(r, (c + w - 1) % w));      // west
      if (r > 0) rot.push_back(ag.v_edge(r - 1, c));     // south
      g.rotation[ag.vertex_id(r, c)] = std::move(rot);
    }
  const FaceData& fd = g.faces();
  auto north_face = [&](int r, int c) {
    return fd.face_of(g.edge_index(ag.h_edge(r, c)), ag.east_is_bw(r, c));
  };
  auto south_face = [&](int r, int c) {
    return fd.face_of(g.edge_index(ag.h_edge(r, c)), !ag.east_is_bw(r, c));
  };
  ag.bottom_face = south_face(0, 0);
  ag.top_face = north_face(n - 1, 0);
  g.surface.kind = SurfaceKind::Annulus;
  g.surface.punctured_faces = {ag.bottom_face, ag.top_face};
  for (int r = 0; r < n; ++r) ag.seam_edges.push_back(ag.h_edge(r, w - 1));
  g.surface.seams = {ag.seam_edges};
  g.invalidate_caches();
  g.validate();
  return ag;
}

AnnulusSpectrum annulus_spectrum(int n) {
  AnnulusSpectrum sp;
  for (int k = 1; k <= n; ++k) {
    double th = M_PI * k / (n + 1);
    sp.theta.push_back(th);
    double c = std::cos(th);
    sp.alpha.push_back(-c + std::sqrt(1 + c * c));
  }
  return sp;
}

LaurentPoly det_Kz(int m, int n) {
  AnnulusGrid ag = build_annulus_grid(m, n);
  Connection<LaurentPoly> conn;
  conn.rank = 1;
  LaurentPoly one = LaurentPoly::constant(Rational(1));
  for (const auto& e : ag.graph.edges) {
    Matrix<LaurentPoly> mat(1, 1, one);
    conn.edge_matrix.emplace(e.id, mat);
  }
  for (int r = 0; r < n; ++r) {
    // weight z on the seam column so an eastward circuit has monodromy z
    bool east_bw = ag.east_is_bw(r, 2 * m - 1);
    Matrix<LaurentPoly> mat(1, 1,
                            LaurentPoly::monomial(east_bw ? 1 : -1, Rational(1)));
    conn.edge_matrix.at(ag.seam_edges[static_cast<std::size_t>(r)]) = mat;
  }
  KasteleynSigns s = kasteleyn_signs(ag.graph);
  LaurentPoly det = det_tilde(ag.graph, conn, s);
  if (det.is_zero()) return det;
  long lo = det.min_exponent(), hi = det.max_exponent();
  // center the exponent range (floor shift when the span is odd)
  long c = lo + hi;
  long half = (c >= 0) ? c / 2 : -((-c + 1) / 2);
  return det.shifted(-half);
}

double closed_form(int m, int n, double z) {
  if (z <= 0) throw std::invalid_argument("z must be positive");
  if (m < 1 || m % 2 == 0)
    throw std::invalid_argument("half-circumference m must be odd");
  AnnulusSpectrum sp = annulus_spectrum(n);
  double prod = 1.0;
  int half = n / 2;
  for (int k = 1; k <= half; ++k) {
    double a2m = std::pow(sp.alpha[static_cast<std::size_t>(k - 1)], 2 * m);
    prod *= (z + a2m) * (z + 1.0 / a2m) / z;
  }
  if (n % 2 == 1) prod *= std::sqrt(z) + 1.0 / std::sqrt(z);
  return std::fabs(prod);
}

ClosedFormFit fit_closed_form(int m, int n, const std::vector<double>& zs,
                              double tol) {
  LaurentPoly det = det_Kz(m, n);
  ClosedFormFit best;
  best.max_rel_err = 1e300;
  double d1 = det.evaluate(1.0);
  int sign = d1 >= 0 ? 1 : -1;
  for (int twice_t = -2 * (n + 2); twice_t <= 2 * (n + 2); ++twice_t) {
    double t = twice_t / 2.0;
    double worst = 0;
    for (double z : zs) {
      double lhs = sign * det.evaluate(z);
      double rhs = closed_form(m, n, z) * std::pow(z, t);
      double err = std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs));
      worst = std::max(worst, err);
    }
    if (worst < best.max_rel_err) {
      best.max_rel_err = worst;
      best.power = t;
      best.sign = sign;
    }
  }
  best.ok = best.max_rel_err <= tol;
  return best;
}

MultiPoly det_uv(int m, int n) {
  LaurentPoly det = det_Kz(m, n);
  PolyRingPtr ring = make_ring({"u", "v"});
  if (det.is_zero()) return MultiPoly(ring);
  long lo = det.min_exponent(), hi = det.max_exponent();
  std::vector<MultiPoly> q;
  for (long e = lo; e <= hi; ++e)
    q.push_back(MultiPoly::constant(ring, det.coefficient(e)));
  MultiPoly p = product_over_char_roots(q, ring);
  Rational at1 = p.evaluate({Rational(1), Rational(1)});
  if (sgn(at1) < 0) p = -p;
  return p;
}

MultiPoly pgf(int m, int n) {
  MultiPoly d = det_uv(m, n);
  Rational z = d.evaluate({Rational(1), Rational(1)});
  if (is_zero(z)) throw std::domain_error("zero partition function");
  return d * (Rational(1) / z);
}

double mean_crossings(int m, int n) {
  if (n % 2 != 0) throw std::invalid_argument("finite mean formula needs even height");
  AnnulusSpectrum sp = annulus_spectrum(n);
  double s = 0;
  for (int j = 1; j <= n / 2; ++j) {
    double a2m = std::pow(sp.alpha[static_cast<std::size_t>(j - 1)], 2 * m);
    s += 3 * a2m / ((1 + a2m) * (1 + a2m));
  }
  return s;
}

double asymptotic_mean(double tau, int terms) {
  if (tau <= 0 || terms < 1) throw std::invalid_argument("bad series parameters");
  double q = std::exp(-M_PI * tau);
  double s = 0;
  for (int l = 0; l < terms; ++l) {
    double ql = std::pow(q, 2 * l + 1);
    s += 3 * ql / ((1 + ql) * (1 + ql));
  }
  return s;
}

int crossing_exponent(int j, int k) {
  if (j < 0 || k < 0) throw std::invalid_argument("negative loop counts");
  int num = 2 * (j * j + j * k + k * k);
  return (num + 2) / 3;  // ceil(num / 3)
}

namespace {

// Minimum of (weight1 * sum of S1) + (weight2 * sum of S2) over disjoint
// subsets S1, S2 of the first `pool` odd integers with |S1| = a, |S2| = b;
// table[a][b] filled by labeling each odd value none/S1/S2.
std::vector<std::vector<long>> min_sum_table(int pool, int amax, int bmax,
                                             int weight1, int weight2) {
  std::vector<std::vector<long>> best(
      static_cast<std::size_t>(amax + 1),
      std::vector<long>(static_cast<std::size_t>(bmax + 1), LONG_MAX));
  auto rec = [&](auto&& self, int i, int a, int b, long sum) -> void {
    if (a > amax || b > bmax) return;
    if (i == pool) {
      if (sum < best[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
        best[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = sum;
      return;
    }
    long v = 2L * i + 1;
    self(self, i + 1, a, b, sum);
    self(self, i + 1, a + 1, b, sum + weight1 * v);
    self(self, i + 1, a, b + 1, sum + weight2 * v);
  };
  rec(rec, 0, 0, 0, 0);
  return best;
}

}  // namespace

int crossing_exponent_oracle(int j, int k) {
  if (j < 0 || k < 0) throw std::invalid_argument("negative loop counts");
  if (j == 0 && k == 0) return 0;
  const int pool = j + k;  // odd integers up to 2(j+k) - 1
  // A-side: u terms cost x, v terms cost 2x; B-side: u terms 2x, v terms x.
  auto a_side = min_sum_table(pool, j, k, 1, 2);
  auto b_side = min_sum_table(pool, j, k, 2, 1);
  long best = LONG_MAX;
  for (int l1 = 0; l1 <= j; ++l1)
    for (int m1 = 0; m1 <= k; ++m1) {
      long a = a_side[static_cast<std::size_t>(l1)][static_cast<std::size_t>(m1)];
      long b = b_side[static_cast<std::size_t>(j - l1)]
                     [static_cast<std::size_t>(k - m1)];
      if (a == LONG_MAX || b == LONG_MAX) continue;
      best = std::min(best, a + b);
    }
  return static_cast<int>(best);
}

std::vector<std::vector<double>> kprod1_coefficients(int m, int n) {
  if (n % 2 != 0) throw std::invalid_argument("even height required");
  AnnulusSpectrum sp = annulus_spectrum(n);
  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<double>> acc(dim, std::vector<double>(dim, 0));
  acc[0][0] = 1;
  auto mul_factor = [&](double cu, double cv, double c1) {
    // multiply acc by (c1 + cu*u + cv*v)
    std::vector<std::vector<double>> out(dim, std::vector<double>(dim, 0));
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        if (acc[j][k] == 0) continue;
        out[j][k] += c1 * acc[j][k];
        if (j + 1 < dim) out[j + 1][k] += cu * acc[j][k];
        if (k + 1 < dim) out[j][k + 1] += cv * acc[j][k];
      }
    acc = std::move(out);
  };
  for (int j = 1; j <= n / 2; ++j) {
    double a2m = std::pow(sp.alpha[static_cast<std::size_t>(j - 1)], 2 * m);
    mul_factor(3 * a2m * a2m, 3 * a2m, 1 + a2m * a2m * a2m);
    double b = 1.0 / a2m;
    mul_factor(3 * b * b, 3 * b, 1 + b * b * b);
  }
  // normalize to a probability generating function
  double total = 0;
  for (auto& row : acc)
    for (double c : row) total += c;
  for (auto& row : acc)
    for (double& c : row) c /= total;
  return acc;
}

double kprod1_q(int m, int n) {
  if (n % 2 != 0) throw std::invalid_argument("even height required");
  AnnulusSpectrum sp = annulus_spectrum(n);
  return std::pow(sp.alpha[static_cast<std::size_t>(n / 2 - 1)], 2 * m);
}

}  // namespace webtrace
