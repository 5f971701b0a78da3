#include "arms/diffcore/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "arms/core/errors.hpp"

namespace arms::diffcore {

double relative_error(double analytic, double numeric, double floor) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / scale;
}

GradCheckResult grad_check(std::span<const double> params, const LossFn& loss,
                           double epsilon) {
  if (!(epsilon > 0.0)) throw InputError("grad_check: epsilon must be > 0");
  std::vector<double> analytic(params.size(), 0.0);
  loss(params, &analytic);
  std::vector<double> probe(params.begin(), params.end());
  GradCheckResult result;
  for (std::size_t k = 0; k < probe.size(); ++k) {
    const double original = probe[k];
    probe[k] = original + epsilon;
    const double up = loss(probe, nullptr);
    probe[k] = original - epsilon;
    const double down = loss(probe, nullptr);
    probe[k] = original;
    const double numeric = (up - down) / (2.0 * epsilon);
    const double err = relative_error(analytic[k], numeric);
    if (err > result.max_relative_error || k == 0) {
      result = {err, k, analytic[k], numeric};
    }
  }
  return result;
}

}  // namespace arms::diffcore
