#pragma once

#include <functional>
#include <string>

#include "cct/kernel/params.hpp"

namespace cct::kernel {

struct GradCheckReport {
    double max_rel_error = 0.0;
    int coordinates = 0;
    std::string worst_tensor;
    double worst_analytic = 0.0;
    double worst_fd = 0.0;
};

// Central finite differences against analytic gradients on randomly sampled
// coordinates. `loss_fn(nullptr)` must return the loss at the current
// params; `loss_fn(&grads)` must also accumulate analytic gradients into the
// zeroed container. Relative error uses a small floor so coordinates whose
// true gradient sits at the finite-difference noise level do not dominate.
GradCheckReport grad_check(const std::function<double(EncoderParams*)>& loss_fn,
                           EncoderParams& params, int sample_coordinates, double step,
                           Rng& rng);

}  // namespace cct::kernel
