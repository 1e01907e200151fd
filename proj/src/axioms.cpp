#include "invlim/axioms.hpp"

#include <stdexcept>

namespace invlim {

const Rational& Witness::value(const std::string& name) const {
  for (const auto& [k, v] : values)
    if (k == name) return v;
  throw std::out_of_range("witness has no value '" + name + "'");
}

}  // namespace invlim
