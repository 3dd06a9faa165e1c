#pragma once

#include <string>

#include "ufc/setalg/periodic_set.hpp"
#include "ufc/setalg/split_set.hpp"

namespace ufc {

/// Text in the CLI set grammar. Parsing and normalizing the rendering of a
/// PeriodicSet gives back the same canonical form.
std::string render(const PeriodicSet& s);
std::string render(const SplitSet& s);
std::string render(const SetBounds& b);

}  // namespace ufc
