#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace posprod {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

// Default tolerances. Double-precision symmetric eigensolvers deliver
// ~1e-13 backward error; the margins absorb accumulation across Kronecker
// blowup at the supported sizes.
inline constexpr double kHermTol = 1e-10;  // relative Hermiticity slack
inline constexpr double kPsdTol = 1e-8;    // PSD slack, scaled by max(1, |M|_2)
inline constexpr double kRankTol = 1e-10;  // singular values below kRankTol*sigma_max count as 0
inline constexpr double kCertTol = 1e-8;   // default certification tolerance

enum class ErrorCode {
  dimension_mismatch,
  not_hermitian,
  not_psd,
  invalid_parameter,
  degenerate_input,
  ill_conditioned,
  size_limit,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Dense storage means parameter matrices grow like (m*n*N)^2 entries; the
// cap keeps a mistyped dimension from allocating gigabytes. Overridable at
// runtime (CLI --max-side).
std::size_t max_matrix_side();
void set_max_matrix_side(std::size_t side);

// Throws Error(size_limit) when a to-be-created matrix would exceed the cap.
void check_side_limit(std::size_t rows, std::size_t cols,
                      const char* where);

// Throws Error(invalid_parameter) on NaN/Inf entries.
void require_finite(const ComplexMatrix& m, const char* where);

}  // namespace posprod
