#include "bigrady/fixtures.h"

namespace bigrady {

const Fixture& find_fixture(std::string_view name) {
  for (const Fixture& f : fixtures()) {
    if (f.name == name) return f;
  }
  std::string known;
  for (const Fixture& f : fixtures()) known += (known.empty() ? "" : ", ") + f.name;
  throw Error(ErrorKind::kUnknownExample, "no example named '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace bigrady
