#ifndef TREEBO_IO_HPP
#define TREEBO_IO_HPP

#include <string>
#include <vector>

#include "treebo/types.hpp"

namespace treebo {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(Scalar value);

/// Middle value (mean of the two middle values for even counts).
Scalar median(std::vector<Scalar> values);

/// Minimal CSV splitting for the files this project writes (no quoting).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace treebo

#endif
