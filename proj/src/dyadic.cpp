#include "normset/dyadic.hpp"

// Header-only for now; this TU pins the vtable-free class into the library
// and keeps a single definition point if out-of-line helpers grow later.

namespace normset {} // namespace normset
