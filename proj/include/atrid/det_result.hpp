#pragma once

namespace atrid {

/// Determinant in sign/log form alongside the plain value. The value may
/// overflow to +-inf for large well-conditioned matrices; sign and log_abs
/// stay exact.
struct DetResult {
    double value = 0.0;
    int sign = 0;          ///< -1, 0, +1; 0 iff the matrix is singular
    double log_abs = 0.0;  ///< ln|det|, -inf when sign == 0
};

}  // namespace atrid
