#include "ftvn/point.h"

namespace ftvn {

Point::Point(std::initializer_list<double> values) : coords(values.size()) {
  int i = 0;
  for (double v : values) coords(i++) = v;
}

SpecVector::SpecVector(std::initializer_list<double> vals) : values(vals.size()) {
  int i = 0;
  for (double v : vals) values(i++) = v;
}

SpecVector::SpecVector(std::span<const double> vals) : values(vals.size()) {
  for (std::size_t i = 0; i < vals.size(); ++i) values(i) = vals[i];
}

std::vector<double> SpecVector::to_std() const {
  return std::vector<double>(values.data(), values.data() + values.size());
}

}  // namespace ftvn
