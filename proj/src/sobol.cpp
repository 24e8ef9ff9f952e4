#include "treebo/sobol.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace treebo {

const char* builtin_direction_table_text();  // sobol_table.cpp

namespace {
constexpr int kBits = 32;
constexpr Scalar kScale = 0x1.0p-32;
}  // namespace

SobolDirectionTable SobolDirectionTable::parse(std::istream& in) {
  SobolDirectionTable table;
  std::string line;
  int expected_dim = 2;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    int d = 0;
    if (!(ls >> d)) continue;  // header or blank line
    if (d != expected_dim) {
      throw std::runtime_error("direction table: expected dimension " +
                               std::to_string(expected_dim) + ", got " + line);
    }
    Row row;
    if (!(ls >> row.degree >> row.poly_coeffs) || row.degree < 1) {
      throw std::runtime_error("direction table: malformed row: " + line);
    }
    row.m_init.resize(static_cast<std::size_t>(row.degree));
    for (auto& m : row.m_init) {
      if (!(ls >> m) || m % 2 == 0) {
        throw std::runtime_error("direction table: m values must be odd: " + line);
      }
    }
    table.rows_.push_back(std::move(row));
    ++expected_dim;
  }
  if (table.rows_.empty()) throw std::runtime_error("direction table: no rows");
  return table;
}

SobolDirectionTable SobolDirectionTable::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open direction table: " + path);
  return parse(f);
}

const SobolDirectionTable& SobolDirectionTable::builtin() {
  static const SobolDirectionTable table = [] {
    std::istringstream in(builtin_direction_table_text());
    return parse(in);
  }();
  return table;
}

const SobolDirectionTable::Row& SobolDirectionTable::row(int dimension) const {
  if (dimension < 2 || dimension > max_dimension()) {
    throw std::out_of_range("direction table has no dimension " + std::to_string(dimension));
  }
  return rows_[static_cast<std::size_t>(dimension - 2)];
}

SobolSequence::SobolSequence(int dim) : SobolSequence(dim, SobolDirectionTable::builtin()) {}

SobolSequence::SobolSequence(int dim, const SobolDirectionTable& table) : dim_(dim) {
  if (dim < 1 || dim > table.max_dimension()) {
    throw std::invalid_argument("unsupported Sobol' dimension " + std::to_string(dim));
  }
  state_.assign(static_cast<std::size_t>(dim), 0);
  directions_.assign(static_cast<std::size_t>(dim) * kBits, 0);

  // First coordinate: van der Corput, m_k = 1 for all k.
  for (int k = 0; k < kBits; ++k) directions_[static_cast<std::size_t>(k)] = 1u << (31 - k);

  for (int j = 2; j <= dim; ++j) {
    const auto& row = table.row(j);
    const int s = row.degree;
    std::uint32_t* v = &directions_[static_cast<std::size_t>(j - 1) * kBits];
    for (int k = 0; k < std::min(s, kBits); ++k) {
      v[k] = row.m_init[static_cast<std::size_t>(k)] << (31 - k);
    }
    for (int k = s; k < kBits; ++k) {
      v[k] = v[k - s] ^ (v[k - s] >> s);
      for (int i = 1; i < s; ++i) {
        if ((row.poly_coeffs >> (s - 1 - i)) & 1u) v[k] ^= v[k - i];
      }
    }
  }
}

void SobolSequence::next(Scalar* out) {
  // Gray-code update: raw point index i+1 flips the direction number at the
  // lowest zero bit of i. index_ counts emitted points, and the zero point
  // (raw index 0) is never emitted.
  const int c = std::countr_one(index_);
  if (c >= kBits) throw std::overflow_error("Sobol' sequence exhausted (2^32 points)");
  for (int j = 0; j < dim_; ++j) {
    state_[static_cast<std::size_t>(j)] ^=
        directions_[static_cast<std::size_t>(j) * kBits + c];
    out[j] = static_cast<Scalar>(state_[static_cast<std::size_t>(j)]) * kScale;
  }
  ++index_;
}

Matrix sobol_points(int dim, Index n) {
  if (n < 1) throw std::invalid_argument("sobol_points requires n >= 1");
  SobolSequence seq(dim);
  Matrix pts(n, dim);
  std::vector<Scalar> buf(static_cast<std::size_t>(dim));
  for (Index i = 0; i < n; ++i) {
    seq.next(buf.data());
    for (int j = 0; j < dim; ++j) pts(i, j) = buf[static_cast<std::size_t>(j)];
  }
  return pts;
}

Scalar centered_l2_discrepancy(const Matrix& points) {
  const Index n = points.rows();
  const Index d = points.cols();
  if (n < 1) throw std::invalid_argument("discrepancy requires at least one point");

  // Hickernell's closed form.
  Scalar sum_single = 0.0;
  for (Index i = 0; i < n; ++i) {
    Scalar prod = 1.0;
    for (Index j = 0; j < d; ++j) {
      const Scalar a = std::abs(points(i, j) - 0.5);
      prod *= 1.0 + 0.5 * a - 0.5 * a * a;
    }
    sum_single += prod;
  }

  Scalar sum_pair = 0.0;
  for (Index i = 0; i < n; ++i) {
    // diagonal term k = i
    Scalar diag = 1.0;
    for (Index j = 0; j < d; ++j) {
      const Scalar a = std::abs(points(i, j) - 0.5);
      diag *= 1.0 + a;
    }
    sum_pair += diag;
    for (Index k = i + 1; k < n; ++k) {
      Scalar prod = 1.0;
      for (Index j = 0; j < d; ++j) {
        const Scalar ai = std::abs(points(i, j) - 0.5);
        const Scalar ak = std::abs(points(k, j) - 0.5);
        prod *= 1.0 + 0.5 * ai + 0.5 * ak - 0.5 * std::abs(points(i, j) - points(k, j));
      }
      sum_pair += 2.0 * prod;
    }
  }

  const Scalar nn = static_cast<Scalar>(n);
  const Scalar sq = std::pow(13.0 / 12.0, static_cast<Scalar>(d)) -
                    (2.0 / nn) * sum_single + sum_pair / (nn * nn);
  return std::sqrt(std::max(Scalar(0), sq));
}

}  // namespace treebo
