#pragma once

#include <functional>
#include <span>
#include <vector>

namespace arms::diffcore {

// A scalar loss over a flat parameter vector. When `grad` is non-null the
// function also writes the analytic gradient into it (same length as params).
using LossFn =
    std::function<double(std::span<const double> params, std::vector<double>* grad)>;

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
};

// |a - n| / max(|a|, |n|, floor). The floor keeps entries that are zero up to
// rounding from reporting spurious relative errors.
double relative_error(double analytic, double numeric, double floor = 1e-6);

/// Compares the analytic gradient of `loss` with central differences over
/// every parameter and reports the worst relative error.
GradCheckResult grad_check(std::span<const double> params, const LossFn& loss,
                           double epsilon);

}  // namespace arms::diffcore
