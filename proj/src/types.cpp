#include "posprod/types.hpp"

#include <atomic>
#include <cmath>

namespace posprod {

namespace {
std::atomic<std::size_t> g_max_side{256};
}  // namespace

std::size_t max_matrix_side() { return g_max_side.load(); }

void set_max_matrix_side(std::size_t side) {
  if (side == 0) {
    throw Error(ErrorCode::invalid_parameter, "size cap must be positive");
  }
  g_max_side.store(side);
}

void check_side_limit(std::size_t rows, std::size_t cols, const char* where) {
  const std::size_t cap = max_matrix_side();
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::invalid_parameter,
                std::string(where) + ": matrix dimensions must be positive");
  }
  if (rows > cap || cols > cap) {
    throw Error(ErrorCode::size_limit,
                std::string(where) + ": requested " + std::to_string(rows) +
                    "x" + std::to_string(cols) +
                    " exceeds the size cap of " + std::to_string(cap) +
                    " per side");
  }
}

void require_finite(const ComplexMatrix& m, const char* where) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::invalid_parameter,
                    std::string(where) + ": non-finite entry at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace posprod
