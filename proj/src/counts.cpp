#include "coaudit/counts.hpp"

#include "coaudit/error.hpp"

namespace coaudit {

void WindowConfig::validate() const {
  if (sizes.empty() && !include_document)
    throw ConfigError("window config has no windows");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 2 || sizes[i] % 2 != 0)
      throw ConfigError("window size " + std::to_string(sizes[i]) +
                        " must be even and at least 2");
    if (i > 0 && sizes[i] <= sizes[i - 1])
      throw ConfigError("window sizes must be strictly increasing");
  }
}

std::string WindowConfig::label(std::size_t w) const {
  return is_document(w) ? std::string("document") : std::to_string(sizes[w]);
}

std::size_t WindowConfig::index_of(const std::string& label) const {
  for (std::size_t w = 0; w < count(); ++w)
    if (this->label(w) == label) return w;
  return std::string::npos;
}

CountBlock& CountBlock::operator+=(const CountBlock& o) {
  if (!same_shape(o)) throw MismatchError("count blocks differ in shape");
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] += o.cells[i];
  for (std::size_t i = 0; i < totals.size(); ++i) totals[i] += o.totals[i];
  for (std::size_t i = 0; i < no_demo.size(); ++i) no_demo[i] += o.no_demo[i];
  return *this;
}

}  // namespace coaudit
