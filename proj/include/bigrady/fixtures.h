#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bigrady/error.h"

namespace bigrady {

// Shipped example models. Expected verdicts live in the text as `expect` items.
struct Fixture {
  std::string name;
  std::string text;
};

const std::vector<Fixture>& fixtures();
// Throws UnknownExample.
const Fixture& find_fixture(std::string_view name);

}  // namespace bigrady
