#pragma once

#include <string>

#include "bigrady/bigraph.h"

namespace bigrady {

// Printable key; equal keys iff the bigraphs are isomorphic. Link names are not
// part of the structure, only whether a link is an edge or an outer name.
std::string canonical_form(const Bigraph& b);

bool is_isomorphic(const Bigraph& a, const Bigraph& b);

}  // namespace bigrady
