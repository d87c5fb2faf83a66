#include "tsuq/gradcheck.hpp"

#include <cmath>

namespace tsuq {

Tensor finite_diff_grad(const std::function<double(const Tensor&)>& f,
                        const Tensor& x, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("finite_diff_grad: eps must be > 0");
    Tensor grad(x.shape());
    Tensor probe = x;
    auto pd = probe.data();
    auto gd = grad.data();
    for (std::size_t i = 0; i < pd.size(); ++i) {
        const double orig = pd[i];
        pd[i] = orig + eps;
        const double fp = f(probe);
        pd[i] = orig - eps;
        const double fm = f(probe);
        pd[i] = orig;
        if (!std::isfinite(fp) || !std::isfinite(fm)) {
            throw NumericError("finite_diff_grad: non-finite function value");
        }
        gd[i] = (fp - fm) / (2.0 * eps);
    }
    return grad;
}

double max_rel_error(const Tensor& a, const Tensor& b, double floor) {
    require_same_shape(a, b, "max_rel_error");
    double worst = 0.0;
    auto pa = a.data();
    auto pb = b.data();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        const double denom =
            std::max({std::abs(pa[i]), std::abs(pb[i]), floor});
        worst = std::max(worst, std::abs(pa[i] - pb[i]) / denom);
    }
    return worst;
}

}  // namespace tsuq
