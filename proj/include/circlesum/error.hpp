#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circlesum {

enum class ErrorKind {
  invalid_argument,
  point_outside_domain,
  metric_not_invertible,
  degenerate_plane,
  too_many_skipped,
  map_leaves_domain,
  action_not_isometric,
  action_not_free,
  blend_failed_concavity,
  no_disk_factor,
  boundary_mismatch,
  jet_mismatch,
  raw_metric_needs_monte_carlo,
  gauss_sum_modulus_mismatch,
  structure_mismatch,
  not_a_recognized_double,
  missing_characteristic_tag,
  unknown_descriptor,
  item_violation,
  epsilon_out_of_range,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace circlesum
