#include "cct/kernel/gradcheck.hpp"

#include <cmath>

namespace cct::kernel {

GradCheckReport grad_check(const std::function<double(EncoderParams*)>& loss_fn,
                           EncoderParams& params, int sample_coordinates, double step,
                           Rng& rng) {
    EncoderParams analytic = params;
    analytic.set_zero();
    loss_fn(&analytic);

    auto tensors = params.tensors();
    const auto analytic_tensors = analytic.tensors();

    // total coordinate count for uniform sampling
    std::vector<size_t> offsets(tensors.size() + 1, 0);
    for (size_t t = 0; t < tensors.size(); ++t)
        offsets[t + 1] = offsets[t] + static_cast<size_t>(tensors[t].second->size());
    const size_t total = offsets.back();

    GradCheckReport report;
    for (int s = 0; s < sample_coordinates; ++s) {
        const size_t flat = static_cast<size_t>(rng.below(total));
        size_t t = 0;
        while (offsets[t + 1] <= flat) ++t;
        const size_t local = flat - offsets[t];
        MatrixXd& tensor = *tensors[t].second;
        const Eigen::Index r = static_cast<Eigen::Index>(local) / tensor.cols();
        const Eigen::Index c = static_cast<Eigen::Index>(local) % tensor.cols();

        const double saved = tensor(r, c);
        tensor(r, c) = saved + step;
        const double up = loss_fn(nullptr);
        tensor(r, c) = saved - step;
        const double down = loss_fn(nullptr);
        tensor(r, c) = saved;

        const double fd = (up - down) / (2.0 * step);
        const double an = (*analytic_tensors[t].second)(r, c);
        const double denom = std::max({std::abs(fd), std::abs(an), 1e-3});
        const double rel = std::abs(fd - an) / denom;
        ++report.coordinates;
        if (rel > report.max_rel_error) {
            report.max_rel_error = rel;
            report.worst_tensor = tensors[t].first;
            report.worst_analytic = an;
            report.worst_fd = fd;
        }
    }
    return report;
}

}  // namespace cct::kernel
