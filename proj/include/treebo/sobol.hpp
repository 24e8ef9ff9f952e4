#ifndef TREEBO_SOBOL_HPP
#define TREEBO_SOBOL_HPP

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "treebo/types.hpp"

namespace treebo {

/// Direction numbers in the standard published format: one line per
/// dimension >= 2, "d s a m_1 ... m_s". Dimension 1 is implicit (all m = 1).
class SobolDirectionTable {
 public:
  struct Row {
    int degree = 0;
    std::uint32_t poly_coeffs = 0;      // the "a" column
    std::vector<std::uint32_t> m_init;  // s initial values
  };

  static SobolDirectionTable parse(std::istream& in);
  static SobolDirectionTable load_file(const std::string& path);

  /// Joe-Kuo table bundled with the library, dimensions up to 64.
  static const SobolDirectionTable& builtin();

  int max_dimension() const { return static_cast<int>(rows_.size()) + 1; }
  const Row& row(int dimension) const;  // dimension >= 2

 private:
  std::vector<Row> rows_;  // rows_[k] describes dimension k + 2
};

/// Gray-code Sobol' sequence over [0,1)^dim with 32-bit resolution. The
/// initial all-zeros point is skipped: the first emitted point is (0.5, ...).
class SobolSequence {
 public:
  explicit SobolSequence(int dim);
  SobolSequence(int dim, const SobolDirectionTable& table);

  int dim() const { return dim_; }

  /// Next point, written into out[0..dim).
  void next(Scalar* out);

 private:
  int dim_;
  std::uint64_t index_ = 0;                      // points emitted so far
  std::vector<std::uint32_t> state_;             // current integer lattice point
  std::vector<std::uint32_t> directions_;        // dim * 32, dimension-major
};

/// First n points of the Sobol' sequence (zero point skipped) as an n x dim
/// matrix. Supported dimensions: 1..64 with the builtin table.
Matrix sobol_points(int dim, Index n);

/// Centered L2 discrepancy of a point set in the unit cube (Hickernell's
/// closed form). Lower is more uniform.
Scalar centered_l2_discrepancy(const Matrix& points);

}  // namespace treebo

#endif
