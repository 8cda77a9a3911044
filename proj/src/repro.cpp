#include "skw/repro.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "skw/families.hpp"
#include "skw/parallel.hpp"
#include "skw/witness.hpp"

namespace skw {

namespace {

void check_lambda01(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0,1]");
}

double hs(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace().real(); }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

GramSpectrum eigvals_family1(double lambda, Complex alpha3, Complex alpha1) {
  check_lambda01(lambda);
  const double a3 = std::norm(alpha3), a1 = std::norm(alpha1);
  if (a3 + a1 > 1.0 + tol::num)
    throw std::invalid_argument("eigvals_family1: |alpha3|^2 + |alpha1|^2 <= 1 required");
  const double mu = (1.0 - lambda) / 3.0 * a3;
  const double base = mu + lambda / 2.0 * a1;
  const double root =
      std::sqrt(a1) * std::sqrt(lambda) * std::sqrt(mu + lambda / 4.0 * a1);
  return {mu, base + root, base - root};
}

GramSpectrum eigvals_family2(double lambda, Complex alpha3, Complex alpha2) {
  check_lambda01(lambda);
  const double a3 = std::norm(alpha3), a2 = std::norm(alpha2);
  if (a3 + a2 > 1.0 + tol::num)
    throw std::invalid_argument("eigvals_family2: |alpha3|^2 + |alpha2|^2 <= 1 required");
  const double nu = (1.0 - lambda) / 3.0 * a3;
  const double base = nu + lambda / 2.0 * a2;
  const double cross = std::abs(alpha3 * std::conj(alpha2) + std::conj(alpha3) * alpha2);
  const double root = std::sqrt(lambda * (1.0 - lambda) / 6.0) * cross;
  return {nu, base + root, base - root};
}

double closed_form_knorm(int family, double lambda, int k) {
  check_lambda01(lambda);
  if (family != 1 && family != 2) throw std::invalid_argument("family must be 1 or 2");
  if (k < 1 || k > 3) throw std::invalid_argument("k must be 1, 2 or 3");

  if (k == 3) return std::max(1.0 - lambda, lambda);

  if (family == 1) {
    if (k == 1)
      return lambda <= 0.4 ? (4.0 / 3.0) * (1.0 - lambda) * (1.0 - lambda) / (4.0 - 7.0 * lambda)
                           : lambda;
    return lambda <= 0.5
               ? (2.0 * std::sqrt((1.0 - lambda) / (4.0 - 7.0 * lambda)) + 1.0) *
                     (1.0 - lambda) / 3.0
               : lambda;
  }

  if (k == 1) return (2.0 + lambda) / 6.0;
  return lambda <= 0.5
             ? (4.0 - lambda +
                std::sqrt(25.0 * lambda * lambda - 32.0 * lambda + 16.0)) /
                   12.0
             : lambda;
}

State family_state(int family, double lambda) {
  if (family != 1 && family != 2) throw std::invalid_argument("family must be 1 or 2");
  FamilySpec spec{family == 1 ? Family::rho1_lambda : Family::rho2_lambda,
                  BipartiteDim(3, 3), lambda, {}, {}, {}};
  return State(build(spec));
}

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = double(i) / double(points - 1);
  return grid;
}

std::vector<CurvePoint> sweep_family(int family, int k, const std::vector<double>& lambdas,
                                     const SolverConfig& cfg) {
  std::vector<CurvePoint> out(lambdas.size());
  parallel::parallel_for(static_cast<int>(lambdas.size()), [&](int i) {
    const double lambda = lambdas[i];
    const double closed = closed_form_knorm(family, lambda, k);
    const double opt = knorm(family_state(family, lambda), k, cfg).value;
    out[i] = {lambda, k, closed, opt, std::abs(closed - opt)};
  });
  return out;
}

BoundaryCheck boundary_segment_check(const HermitianOp& w1, const HermitianOp& w2, int k,
                                     const std::vector<PureVector>& candidates,
                                     const SolverConfig& cfg) {
  check_k_range(w1.dim(), k);
  if (!(w1.dim() == w2.dim()))
    throw std::invalid_argument("boundary_segment_check: dimension mismatch");
  if (!is_k_blockpositive(w1, k, cfg) || !is_k_blockpositive(w2, k, cfg))
    throw std::invalid_argument("boundary_segment_check: inputs must be k-blockpositive");

  auto forms = [&](const Vector& xi) {
    const double q1 = (xi.adjoint() * w1.matrix() * xi).value().real();
    const double q2 = (xi.adjoint() * w2.matrix() * xi).value().real();
    return std::pair<double, double>(q1, q2);
  };
  auto joint_zero = [&](const Vector& xi) {
    auto [q1, q2] = forms(xi);
    return std::abs(q1) <= tol::blockpos && std::abs(q2) <= tol::blockpos;
  };

  for (const PureVector& eta : candidates) {
    if (tau_k(w1.dim(), eta.amplitudes(), k) < 1.0 - tol::num)
      continue;  // candidate exceeds the allowed Schmidt rank
    if (joint_zero(eta.amplitudes())) return {true, eta};
  }

  // Both forms are nonnegative on Schmidt rank <= k vectors, so a joint zero
  // exists iff the minimum of their sum vanishes there.
  HermitianOp sum(w1.dim(), w1.matrix() + w2.matrix());
  KNormResult r = min_knorm(sum, k, cfg);
  if (joint_zero(r.certificate.amplitudes())) return {true, r.certificate};
  return {false, std::nullopt};
}

namespace {

struct PlaneFrame {
  Matrix origin;       // rho*
  Matrix e1, e2;       // HS-orthonormal in-plane directions
  Matrix rho3, rho_i;  // triangle vertices
  Matrix sigma_i;
  Matrix draw_ex, draw_ey;  // drawing axes anchored at rho_i
  BipartiteDim dim{3, 3};

  PlaneCoord locate(Plane plane, int k, int ray, const Matrix& point) const {
    // Affine coordinates w.r.t. (rho3, rho_i, rho*).
    const Matrix d = point - origin;
    const Matrix v3 = rho3 - origin, vi = rho_i - origin;
    const double p11 = hs(e1, v3);
    const double q1 = hs(e1, vi), q2 = hs(e2, vi);
    const double c1 = hs(e1, d), c2 = hs(e2, d);
    const double b = c2 / q2;
    const double a = (c1 - b * q1) / p11;
    const Matrix rel = point - rho_i;
    return {plane, k, ray, a, b, 1.0 - a - b, hs(draw_ex, rel), hs(draw_ey, rel)};
  }
};

PlaneFrame make_frame(Plane plane) {
  const BipartiteDim dim(3, 3);
  PlaneFrame f;
  f.rho3 = build(FamilySpec::simple(Family::rho3, dim)).matrix();
  f.rho_i =
      build(FamilySpec::simple(plane == Plane::H1 ? Family::rho1 : Family::rho2, dim)).matrix();
  f.sigma_i =
      build(FamilySpec::simple(plane == Plane::H1 ? Family::sigma1 : Family::sigma2, dim))
          .matrix();
  f.origin = Matrix::Identity(9, 9) / 9.0;

  Matrix d1 = f.rho3 - f.origin;
  f.e1 = d1 / std::sqrt(hs(d1, d1));
  Matrix d2 = f.rho_i - f.origin;
  d2 -= hs(f.e1, d2) * f.e1;
  f.e2 = d2 / std::sqrt(hs(d2, d2));

  // Drawing frame of the figure: rho_i at the origin, rho3 straight up,
  // sigma_i in the right half-plane; isometric for the HS metric.
  Matrix ey = f.rho3 - f.rho_i;
  f.draw_ey = ey / std::sqrt(hs(ey, ey));
  Matrix ex = f.sigma_i - f.rho_i;
  ex -= hs(f.draw_ey, ex) * f.draw_ey;
  f.draw_ex = ex / std::sqrt(hs(ex, ex));
  return f;
}

}  // namespace

std::vector<PlaneCoord> bp_boundary_on_plane(Plane plane, int k, int num_rays,
                                             const SolverConfig& cfg) {
  if (num_rays < 3) throw std::invalid_argument("bp_boundary_on_plane: num_rays >= 3");
  const PlaneFrame frame = make_frame(plane);
  check_k_range(frame.dim, k);

  std::vector<PlaneCoord> out(num_rays);
  parallel::parallel_for(num_rays, [&](int r) {
    const double theta = 2.0 * 3.14159265358979323846 * double(r) / double(num_rays);
    const Matrix dir = std::cos(theta) * frame.e1 + std::sin(theta) * frame.e2;

    std::vector<PureVector> warm;
    auto blockpositive_at = [&](double t) {
      HermitianOp x(frame.dim, frame.origin + t * dir);
      KNormResult res = min_knorm(x, k, cfg, warm);
      warm.assign(1, res.certificate);
      return res.value >= -tol::blockpos;
    };

    // rho* is interior, so the ray crosses the compact BP_k boundary once:
    // expand to bracket it, then bisect.
    double lo = 0.0, hi = 0.5;
    int guard = 0;
    while (blockpositive_at(hi)) {
      lo = hi;
      hi *= 2.0;
      if (++guard > 40) throw std::runtime_error("bp_boundary_on_plane: no boundary found");
    }
    for (int step = 0; step < 64 && hi - lo > tol::ray; ++step) {
      const double mid = 0.5 * (lo + hi);
      (blockpositive_at(mid) ? lo : hi) = mid;
    }
    out[r] = frame.locate(plane, k, r, frame.origin + lo * dir);
  });
  return out;
}

std::string sweep_csv(const std::vector<CurvePoint>& points) {
  std::string csv = "lambda,k,closed_form,optimizer,gap\n";
  for (const CurvePoint& p : points) {
    csv += format_double(p.lambda);
    csv += ',';
    csv += std::to_string(p.k);
    csv += ',';
    csv += format_double(p.value_closed_form);
    csv += ',';
    csv += format_double(p.value_optimizer);
    csv += ',';
    csv += format_double(p.abs_gap);
    csv += '\n';
  }
  return csv;
}

std::string plane_csv(const std::vector<PlaneCoord>& points) {
  std::string csv =
      "# point = a*rho3 + b*rho_i + c*rho_star with a+b+c = 1\n"
      "# drawing frame (x,y): Hilbert-Schmidt isometric embedding with rho_i at the\n"
      "# origin, rho3 on the positive y axis and sigma_i in the right half-plane\n"
      "plane,k,ray_index,a,b,c,x,y\n";
  for (const PlaneCoord& p : points) {
    csv += p.plane == Plane::H1 ? "H1" : "H2";
    csv += ',';
    csv += std::to_string(p.k);
    csv += ',';
    csv += std::to_string(p.ray_index);
    for (double v : {p.a, p.b, p.c, p.x, p.y}) {
      csv += ',';
      csv += format_double(v);
    }
    csv += '\n';
  }
  return csv;
}

std::string plane_svg(Plane plane, const std::vector<std::vector<PlaneCoord>>& boundaries) {
  const PlaneFrame frame = make_frame(plane);
  const double tri_top = std::sqrt(hs(frame.rho3 - frame.rho_i, frame.rho3 - frame.rho_i));
  const Matrix rel_sigma = frame.sigma_i - frame.rho_i;
  const double sx = hs(frame.draw_ex, rel_sigma), sy = hs(frame.draw_ey, rel_sigma);

  double min_x = 0.0, max_x = sx, min_y = 0.0, max_y = tri_top;
  for (const auto& line : boundaries)
    for (const PlaneCoord& p : line) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }

  const double margin = 0.1 * std::max(max_x - min_x, max_y - min_y);
  min_x -= margin;
  max_x += margin;
  min_y -= margin;
  max_y += margin;
  const double scale = 500.0 / std::max(max_x - min_x, max_y - min_y);
  const double width = (max_x - min_x) * scale, height = (max_y - min_y) * scale;
  auto px = [&](double x) { return (x - min_x) * scale; };
  auto py = [&](double y) { return height - (y - min_y) * scale; };
  auto pt = [&](double x, double y) {
    return format_double(px(x)) + "," + format_double(py(y));
  };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    format_double(width) + "\" height=\"" + format_double(height) + "\">\n";
  svg += "<polygon points=\"" + pt(0.0, tri_top) + " " + pt(0.0, 0.0) + " " + pt(sx, sy) +
         "\" fill=\"#e8e8e8\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (boundaries[i].empty()) continue;
    svg += "<polygon points=\"";
    for (const PlaneCoord& p : boundaries[i]) svg += pt(p.x, p.y) + " ";
    svg.pop_back();
    svg += "\" fill=\"none\" stroke=\"";
    svg += colors[i % 4];
    svg += "\" stroke-width=\"1.5\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace skw
