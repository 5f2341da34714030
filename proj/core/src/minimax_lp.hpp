#pragma once

#include <optional>

#include "tsylv/matrix.hpp"

namespace tsylv::detail {

/// argmin ||z||_inf subject to h z = r, or nullopt when infeasible.
std::optional<Vector> min_inf_norm_solution(const Matrix& h, const Vector& r);

}  // namespace tsylv::detail
