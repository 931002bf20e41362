#include "spinrsc/format.hpp"

#include <fmt/format.h>

namespace spinrsc::io {

std::string num(double v) { return fmt::format("{:.17g}", v == 0.0 ? 0.0 : v); }

std::string json_complex(cplx z) { return fmt::format("[{}, {}]", num(z.real()), num(z.imag())); }

std::string json_matrix(const Eigen::Matrix2cd& m) {
  return fmt::format("[[{}, {}], [{}, {}]]", json_complex(m(0, 0)), json_complex(m(0, 1)), json_complex(m(1, 0)),
                     json_complex(m(1, 1)));
}

}  // namespace spinrsc::io
