#pragma once

#include "spinchain/mps.hpp"

namespace spinchain::detail {

// Left grouping: rows (sigma, left) with sigma slowest, i.e. a[0] over a[1] over a[2].
inline Eigen::MatrixXd stack_left(const SiteTensor &a) {
    const Eigen::Index l = a[0].rows();
    Eigen::MatrixXd    m(kLocalDim * l, a[0].cols());
    for(int s = 0; s < kLocalDim; ++s) m.middleRows(s * l, l) = a[s];
    return m;
}

inline SiteTensor unstack_left(const Eigen::MatrixXd &m, Eigen::Index left) {
    SiteTensor a;
    for(int s = 0; s < kLocalDim; ++s) a[s] = m.middleRows(s * left, left);
    return a;
}

// Right grouping: columns (sigma, right) with sigma slowest, i.e. [a[0] a[1] a[2]].
inline Eigen::MatrixXd stack_right(const SiteTensor &a) {
    const Eigen::Index r = a[0].cols();
    Eigen::MatrixXd    m(a[0].rows(), kLocalDim * r);
    for(int s = 0; s < kLocalDim; ++s) m.middleCols(s * r, r) = a[s];
    return m;
}

inline SiteTensor unstack_right(const Eigen::MatrixXd &m, Eigen::Index right) {
    SiteTensor a;
    for(int s = 0; s < kLocalDim; ++s) a[s] = m.middleCols(s * right, right);
    return a;
}

} // namespace spinchain::detail
