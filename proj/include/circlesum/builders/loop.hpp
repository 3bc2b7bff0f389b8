#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace circlesum {

/// One block rotation: the (i, j) coordinate plane turned by multiple * angle.
struct LoopTerm {
  int i = 0;
  int j = 1;
  int multiple = 1;
};

/// Loop angle -> SO(n) built as the ordered product of block rotations.
/// The empty loop is the identity (phi_id).
class RotationLoop {
 public:
  RotationLoop() = default;
  RotationLoop(int n, std::vector<LoopTerm> terms);

  static RotationLoop identity(int n) { return RotationLoop(n, {}); }
  /// Single essential block rotation in the plane (i, j).
  static RotationLoop block_rotation(int n, int i, int j, int multiple = 1) {
    return RotationLoop(n, {{i, j, multiple}});
  }

  int n() const { return n_; }
  const std::vector<LoopTerm>& terms() const { return terms_; }
  bool is_identity() const;
  std::string label() const;

  Eigen::MatrixXd at(double angle) const;
  /// d/d angle of at(angle).
  Eigen::MatrixXd derivative(double angle) const;

  /// Concatenation (pointwise product), homotopic to loop concatenation.
  RotationLoop then(const RotationLoop& other) const;

 private:
  int n_ = 0;
  std::vector<LoopTerm> terms_;
};

/// Class in pi_1(SO(n)) = Z/2 (n >= 3): sum of winding multiples mod 2.
int loop_class(const RotationLoop& loop);

}  // namespace circlesum
