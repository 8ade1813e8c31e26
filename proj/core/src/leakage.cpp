#include "kdp/leakage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kdp {

LeakageReport hashing_leakage(double k, double ell, double t, double r, double s) {
    LeakageReport rep;
    rep.mechanism = LeakageReport::Mechanism::hashing;
    double margin = k - ell - t - r - s;
    rep.log2_bound = -margin - std::log2(std::log(2.0));
    rep.bound = std::clamp(std::exp2(rep.log2_bound), 0.0, ell);
    rep.risk = std::min(1.0, std::exp2(-s / 2.0 - 1.0));
    return rep;
}

double renyi_side_info(double t_base, double r, double s) {
    return t_base + r + s;
}

MinEntropyBound minentropy_side_info(double h_base, double r, double s) {
    MinEntropyBound b;
    b.bound = h_base - r - s;
    b.risk = std::min(1.0, std::exp2(-s));
    if (b.bound < 0.0) {
        b.bound = 0.0;
        b.infeasible = true;
    }
    return b;
}

double extractor_leakage(double ell, double eps) {
    if (eps < 0.0) throw std::invalid_argument("extractor_leakage: eps < 0");
    return 2.0 * ell * std::sqrt(eps);
}

double required_eps(double I_adm, double ell) {
    if (!(I_adm > 0.0)) throw std::invalid_argument("required_eps: I_adm <= 0");
    if (!(ell >= 1.0)) throw std::invalid_argument("required_eps: ell < 1");
    double v = I_adm / (2.0 * ell);
    return v * v;
}

} // namespace kdp
