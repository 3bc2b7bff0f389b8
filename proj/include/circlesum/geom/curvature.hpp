#pragma once

#include "circlesum/geom/metric_field.hpp"

#include <Eigen/Dense>

#include <vector>

namespace circlesum {

/// Gamma^k_ij stored as data[(k*d + i)*d + j].
struct Christoffel {
  int dim = 0;
  std::vector<double> data;
  double operator()(int k, int i, int j) const { return data[(k * dim + i) * dim + j]; }
};

/// Fully covariant curvature tensor with R_ijij = K (g_ii g_jj - g_ij^2),
/// i.e. R_ijkl = g_ik g_jl - g_il g_jk on the unit sphere.
/// data[((i*d + j)*d + k)*d + l]; viewed as a d^2 x d^2 matrix over index
/// pairs (ij),(kl) it is symmetric.
struct Riemann {
  int dim = 0;
  std::vector<double> data;
  double operator()(int i, int j, int k, int l) const {
    return data[((i * dim + j) * dim + k) * dim + l];
  }
};

struct TwoPlane {
  Point point;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

inline constexpr double kDegeneratePlaneFloor = 1e-12;
inline constexpr double kMaxConditionNumber = 1e12;

/// Throws metric_not_invertible when g is not positive definite or its
/// condition number exceeds kMaxConditionNumber.
Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& g);

Christoffel christoffel(const MetricField& m, const Point& p);
Christoffel christoffel(const MetricJets& jets);
Riemann riemann(const MetricField& m, const Point& p);
Riemann riemann(const MetricJets& jets);

/// Gram determinant g(X,X)g(Y,Y) - g(X,Y)^2.
double gram_determinant(const Eigen::MatrixXd& g, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y);

/// K = R(X,Y,X,Y) / Gram with the sign convention above.
double sectional_curvature(const Riemann& r, const Eigen::MatrixXd& g, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y);
double sectional_curvature(const MetricField& m, const TwoPlane& plane);

}  // namespace circlesum
