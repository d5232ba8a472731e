#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "treedist/errors.hpp"

namespace treedist {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_valid_p(double p) { return p >= 1.0; } // includes +inf

inline void require_valid_p(double p) {
    if (!is_valid_p(p)) throw InputError("p must lie in [1, inf]");
}

// l^p norm of a vector for runtime p in [1, inf]. p = 1, 2 and inf avoid pow.
inline double lp_norm(const Eigen::VectorXd& v, double p) {
    require_valid_p(p);
    if (v.size() == 0) return 0.0;
    if (p == kInf) return v.cwiseAbs().maxCoeff();
    if (p == 1.0) return v.cwiseAbs().sum();
    if (p == 2.0) return v.norm();
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
    return std::pow(s, 1.0 / p);
}

// |x|^p with the convention used for summed p-costs (finite p only).
inline double pow_abs(double x, double p) {
    x = std::abs(x);
    if (p == 1.0) return x;
    if (p == 2.0) return x * x;
    return std::pow(x, p);
}

inline double p_root(double s, double p) {
    if (p == 1.0) return s;
    if (p == 2.0) return std::sqrt(s);
    return std::pow(s, 1.0 / p);
}

} // namespace treedist
