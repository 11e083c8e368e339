#pragma once

#include <vector>

#include "webtrace/graph.hpp"
#include "webtrace/laurent.hpp"
#include "webtrace/multipoly.hpp"

namespace webtrace {

// Square-grid graph on the annulus: circumference 2m (m odd), height n.
// Vertex (r, c), r = 0..n-1 bottom to top, c = 0..2m-1 around. The seam is
// the column of horizontal edges joining c = 2m-1 to c = 0.
struct AnnulusGrid {
  int m = 1, n = 1;
  EmbeddedBipartiteGraph graph;
  std::vector<int> seam_edges;      // ascending by row
  int bottom_face = -1, top_face = -1;

  int vertex_id(int r, int c) const { return r * 2 * m + c + 1; }
  int h_edge(int r, int c) const { return r * 2 * m + c + 1; }
  int v_edge(int r, int c) const { return 2 * m * n + r * 2 * m + c + 1; }
  // true when the eastward direction of h_edge(r,c) runs black -> white
  bool east_is_bw(int r, int c) const { return (r + c) % 2 == 0; }
};

AnnulusGrid build_annulus_grid(int m, int n);

// alpha_k = -cos(theta_k) + sqrt(1 + cos^2(theta_k)), theta_k = pi k/(n+1)
struct AnnulusSpectrum {
  std::vector<double> theta, alpha;  // index 0 is k = 1
};
AnnulusSpectrum annulus_spectrum(int n);

// Scalar Kasteleyn determinant with monodromy variable z on the seam,
// normalized so the exponent range is centered (symmetric when possible).
LaurentPoly det_Kz(int m, int n);

// |det K| from the closed product formula, in double precision.
double closed_form(int m, int n, double z);

// Fit of det_Kz against closed_form over sample points z > 0: a sign and a
// half-integer power of z (the seam placement can shift the exponent by a
// half-integer for odd heights).
struct ClosedFormFit {
  bool ok = false;
  int sign = 1;
  double power = 0;  // multiple of 1/2
  double max_rel_err = 0;
};
ClosedFormFit fit_closed_form(int m, int n, const std::vector<double>& zs,
                              double tol = 1e-9);

// det of the SL3 block matrix for a diagonalizable monodromy with symmetric
// functions u = Tr(A)/3, v = Tr(A^-1)/3, via the resultant with the
// characteristic cubic. Sign-normalized to be positive at u = v = 1.
MultiPoly det_uv(int m, int n);

// P(u, v) = det_uv / det_uv(1,1).
MultiPoly pgf(int m, int n);

// Finite-sum mean number of noncontractible loop pairs (n even).
double mean_crossings(int m, int n);

// Series mean for modulus tau: sum of 3q^(2l+1)/(1+q^(2l+1))^2, q = e^(-pi tau).
double asymptotic_mean(double tau, int terms);

int crossing_exponent(int j, int k);
// Direct minimization over disjoint odd-integer index sets.
int crossing_exponent_oracle(int j, int k);

// Finite product of Prop-A.1 factors as a polynomial in u, v with double
// coefficients (entry [j][k] is the u^j v^k coefficient), and the associated
// small parameter q = alpha_{n/2}^{2m}. n must be even.
std::vector<std::vector<double>> kprod1_coefficients(int m, int n);
double kprod1_q(int m, int n);

}  // namespace webtrace
