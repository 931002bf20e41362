#pragma once

#include <string>

#include <Eigen/Dense>

#include "spinrsc/propagate.hpp"

namespace spinrsc::io {

/// 17 significant digits, round-trip exact.
std::string num(double v);

/// [re, im]
std::string json_complex(cplx z);

/// [[z00, z01], [z10, z11]] with each entry as [re, im].
std::string json_matrix(const Eigen::Matrix2cd& m);

}  // namespace spinrsc::io
