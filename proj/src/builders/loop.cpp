#include "circlesum/builders/loop.hpp"

#include "circlesum/builders/action.hpp"
#include "circlesum/error.hpp"

namespace circlesum {

RotationLoop::RotationLoop(int n, std::vector<LoopTerm> terms) : n_(n), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.i < 0 || t.j < 0 || t.i >= n_ || t.j >= n_ || t.i == t.j)
      throw Error(ErrorKind::invalid_argument, "loop term plane outside SO(" + std::to_string(n_) + ")");
}

bool RotationLoop::is_identity() const {
  for (const auto& t : terms_)
    if (t.multiple != 0) return false;
  return true;
}

std::string RotationLoop::label() const {
  if (is_identity()) return "id";
  std::string s = "alpha[";
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(terms_[k].i) + std::to_string(terms_[k].j) + "^" +
         std::to_string(terms_[k].multiple);
  }
  return s + "]";
}

Eigen::MatrixXd RotationLoop::at(double angle) const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n_, n_);
  for (const auto& t : terms_) a *= ambient::plane_rotation(n_, t.i, t.j, t.multiple * angle);
  return a;
}

Eigen::MatrixXd RotationLoop::derivative(double angle) const {
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(n_, n_);
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n_, n_);
    for (std::size_t l = 0; l < terms_.size(); ++l) {
      const auto& t = terms_[l];
      if (l != k) {
        a *= ambient::plane_rotation(n_, t.i, t.j, t.multiple * angle);
        continue;
      }
      // d/dx R(m x) = m R(m x + pi/2) restricted to the plane.
      Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_, n_);
      const double c = std::cos(t.multiple * angle), s = std::sin(t.multiple * angle);
      d(t.i, t.i) = -s * t.multiple;
      d(t.j, t.j) = -s * t.multiple;
      d(t.i, t.j) = -c * t.multiple;
      d(t.j, t.i) = c * t.multiple;
      a *= d;
    }
    total += a;
  }
  return total;
}

RotationLoop RotationLoop::then(const RotationLoop& other) const {
  if (other.n_ != n_) throw Error(ErrorKind::invalid_argument, "loops act on different spheres");
  std::vector<LoopTerm> t = terms_;
  t.insert(t.end(), other.terms_.begin(), other.terms_.end());
  return RotationLoop(n_, t);
}

int loop_class(const RotationLoop& loop) {
  int sum = 0;
  for (const auto& t : loop.terms()) sum += t.multiple;
  return ((sum % 2) + 2) % 2;
}

}  // namespace circlesum
