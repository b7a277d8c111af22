#include <cmath>
#include <cstdio>
#include <sstream>

#include "tvgrav/app.hpp"
#include "tvgrav/forward.hpp"
#include "tvgrav/oracle.hpp"
#include "tvgrav/regparam.hpp"
#include "tvgrav/rgsvd.hpp"

namespace tvgrav::app {

double GsvdResiduals::max() const {
  return std::max({orth_u, orth_v, cs_identity, recon_a, recon_b});
}

GsvdResiduals gsvd_residuals(const Matrix& A, const Matrix& B, const GsvdFactors& f) {
  GsvdResiduals r;
  const Index nu = f.U.cols();
  const Index nv = f.V.cols();
  r.orth_u = (f.U.transpose() * f.U - Matrix::Identity(nu, nu)).norm();
  r.orth_v = (f.V.transpose() * f.V - Matrix::Identity(nv, nv)).norm();
  r.cs_identity = (f.lambda.array().square() + f.mu.array().square() - 1.0).abs().maxCoeff();
  const Matrix Z = f.Z();
  const Matrix UL = f.U * f.lambda.tail(nu).asDiagonal() * Z.bottomRows(nu);
  const Matrix VM = f.V * f.mu.head(nv).asDiagonal() * Z.topRows(nv);
  r.recon_a = (A - UL).norm() / A.norm();
  r.recon_b = (B - VM).norm() / B.norm();
  return r;
}

bool VerifyReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-4s %-40s residual=%.3e threshold=%.1e", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.residual, c.threshold);
    os << line;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << '\n';
  }
  os << (all_passed() ? "all checks passed\n" : "some checks FAILED\n");
  return os.str();
}

namespace {

VerifyCheck below(std::string name, double residual, double threshold, std::string detail = {}) {
  return {std::move(name), residual, threshold, residual < threshold, std::move(detail)};
}

}  // namespace

VerifyReport run_verify(int instances) {
  VerifyReport report;

  double gsvd_worst = 0.0, filter_worst = 0.0, upre_worst = 0.0;
  for (int t = 0; t < instances; ++t) {
    const Index m = 5 + t % 10;
    const Index n = m + 3 + (7 * t) % 20;
    const Index p = (t % 2 == 0) ? n : 3 * n;
    const Matrix A = oracle::random_matrix(m, n, 100 + t);
    const Matrix B = oracle::random_matrix(p, n, 200 + t);
    const GsvdFactors f = gsvd_pair(A, B);
    gsvd_worst = std::max(gsvd_worst, gsvd_residuals(A, B, f).max());

    const Vector r = oracle::random_matrix(m, 1, 300 + t).col(0);
    double gmed = f.gamma[f.size() - 1 - (std::min(m, n) / 2)];
    for (double scale : {0.1, 1.0, 10.0}) {
      const double alpha = gmed * scale;
      const Vector h = filtered_solution(f, r, alpha);
      const Vector ref = oracle::tikhonov_direct(A, B, r, alpha);
      filter_worst = std::max(filter_worst, (h - ref).norm() / ref.norm());
      const double u = upre_value(f, r, alpha);
      const double uref = oracle::upre_trace(A, B, r, alpha, f.size());
      upre_worst = std::max(upre_worst, std::abs(u - uref) / std::max(1.0, std::abs(uref)));
    }
  }
  report.checks.push_back(below("gsvd identities", gsvd_worst, 1e-10,
                                std::to_string(instances) + " random pairs"));
  report.checks.push_back(below("filtered solution vs direct solve", filter_worst, 1e-8));
  report.checks.push_back(below("upre vs explicit influence trace", upre_worst, 1e-8));

  {
    // Low-rank operator: sketched factorization reproduces the full one.
    const Index m = 20, n = 60, rank = 8;
    const Matrix A = oracle::random_matrix(m, rank, 41) * oracle::random_matrix(rank, n, 42);
    const Matrix D = Matrix::Identity(n, n);
    const Vector r = A * oracle::random_matrix(n, 1, 43).col(0);
    const SketchBasis basis = sketch_basis(A, 10, 5, 44);
    const GsvdFactors fr = rgsvd(A, D, basis);
    const GsvdFactors ff = gsvd_pair(A, D);
    const double alpha = 0.5;
    const Vector hr = filtered_solution(fr, r, alpha);
    const Vector hf = filtered_solution(ff, r, alpha);
    report.checks.push_back(below("rgsvd vs full gsvd (rank 8, q 10)", (hr - hf).norm() / hf.norm(), 1e-6));
  }

  {
    double worst = 0.0;
    const Box cube{-50, 50, -50, 50, 0, 100};
    const Point3 stations[] = {{0, 0, -50}, {30, -20, -10}, {120, 80, -5}, {-200, 10, 0}, {60, 60, -100}};
    for (const Point3& s : stations) {
      const double g = prism_gz(s, cube, 1.0);
      const double q = oracle::gz_quadrature(s, cube, 1.0);
      worst = std::max(worst, std::abs(g - q) / std::abs(q));
    }
    report.checks.push_back(below("prism kernel vs quadrature", worst, 1e-6));
    const double diag = std::sqrt(3.0) * 100.0;
    const Point3 far{0.3 * diag * 100.0, -0.2 * diag * 100.0, -0.93 * diag * 100.0};
    const double g = prism_gz(far, cube, 1.0);
    const double pm = oracle::gz_point_mass(far, cube, 1.0);
    report.checks.push_back(below("prism kernel far-field limit", std::abs(g - pm) / std::abs(pm), 1e-2));
  }

  {
    // Negative control: a 1e-3 perturbation of lambda must break reconstruction.
    const Matrix A = oracle::random_matrix(6, 10, 77);
    const Matrix B = oracle::random_matrix(10, 10, 78);
    GsvdFactors f = gsvd_pair(A, B);
    f.lambda *= 1.0 + 1e-3;
    const double res = gsvd_residuals(A, B, f).recon_a;
    report.checks.push_back({"negative control: perturbed lambda detected", res, 1e-10, res >= 1e-10,
                             "reconstruction residual must exceed threshold"});
  }
  return report;
}

}  // namespace tvgrav::app
